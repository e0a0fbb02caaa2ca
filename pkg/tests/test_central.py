from __future__ import annotations

import pytest

import oracles
from centralext.algebra import AlgebraError, AlgebraHom, direct_product, iter_homs, pullback_algebra
from centralext.catalog import e1, e2, idempotent, matrix_algebra, zero_mult
from centralext.central import (
    CentralityContradiction,
    NotSurjectiveError,
    algebraically_central,
    annihilator_central,
    categorically_central,
    centrality_agreement,
    centrality_report,
    classically_central,
    is_pullback_square,
    pullback_stability,
    split_central_flags,
    symmetric_kernel_flags,
)
from centralext.corpus import enumerate_algebras_of_dim
from centralext.exactfield import GF2, Matrix
from centralext.extension import Action, semidirect
from conftest import consts

ALPHA = Matrix.from_rows(GF2, [[1, 0]])
ONE, ZERO = Matrix.from_rows(GF2, [[1]]), Matrix.from_rows(GF2, [[0]])
B, X = idempotent(), zero_mult(1)
SMALL = [a for d in (0, 1, 2) for a in enumerate_algebras_of_dim(GF2, d)]


def alpha_e1():
    return AlgebraHom(e1(), B, ALPHA)


def alpha_e2():
    return AlgebraHom(e2(), B, ALPHA)


def flags4(rep):
    return (rep.classic, rep.algebraic, rep.categorical, rep.annihilator)


def test_bijection_is_central_every_way():
    for a in (e1(), e2(), matrix_algebra(2)):
        ident = AlgebraHom.identity(a)
        assert flags4(centrality_agreement(ident)) == (True, True, True, True)


def test_e1_alpha():
    rep = centrality_agreement(alpha_e1())
    assert flags4(rep) == (True, True, True, False)
    # u t = t != 0
    assert rep.witnesses["annihilator"] == ((0, 0),)


def test_e2_alpha():
    rep = centrality_agreement(alpha_e2())
    assert flags4(rep) == (False, False, False, False)
    assert classically_central(alpha_e2()).witnesses[0] == (0, 0)


def test_zero_action_product_is_annihilator_central():
    p = direct_product(B, X)
    assert annihilator_central(p.pr1).holds


def test_requires_surjection():
    inc = AlgebraHom(B, e1(), Matrix.from_rows(GF2, [[1], [0]]))
    for fn in (classically_central, annihilator_central, algebraically_central, categorically_central):
        with pytest.raises(NotSurjectiveError):
            fn(inc)


def test_pullback_square_examples():
    a = e2()
    ident = AlgebraHom.identity(a)
    assert is_pullback_square(ident, ident, ident, ident)
    z = AlgebraHom.zero(a, zero_mult(0))
    # a x_0 0 = a
    assert is_pullback_square(ident, AlgebraHom.zero(a, zero_mult(0)), z, AlgebraHom.identity(zero_mult(0)))
    twice = direct_product(a, a)
    assert not is_pullback_square(twice.pr1, AlgebraHom.zero(twice.algebra, zero_mult(0)), z,
                                  AlgebraHom.identity(zero_mult(0)))
    with pytest.raises(AlgebraError):
        is_pullback_square(ident, AlgebraHom(a, B, ALPHA), ident, AlgebraHom.zero(B, a))


@pytest.mark.parametrize("a", SMALL, ids=lambda a: str(a.table))
def test_three_notions_agree_and_match_oracle(a):
    for b in SMALL:
        for alpha in iter_homs(a, b, surjective=True):
            rep = centrality_report(alpha)
            assert rep.agree
            assert not rep.annihilator or rep.classic
            ref = oracles.classically_central_elementwise(consts(a), 2, [list(r) for r in alpha.matrix.data])
            assert rep.classic == ref


def test_agreement_raises_loudly(monkeypatch):
    import centralext.central as c

    monkeypatch.setattr(c, "algebraically_central", lambda alpha: False)
    with pytest.raises(CentralityContradiction):
        c.centrality_agreement(alpha_e1())


def test_pullback_stability():
    # pull E1's alpha back along the identity and along B x B -> B
    assert pullback_stability(alpha_e1(), AlgebraHom.identity(B)) == (True, True)
    bb = direct_product(B, B)
    chk = pullback_stability(alpha_e2(), bb.pr1)
    assert chk.forward and chk.backward
    pb = pullback_algebra(alpha_e2(), bb.pr1)
    assert not classically_central(pb.pi2).holds


# -- condition lists on split extensions -----------------------------------


def test_seven_conditions_examples():
    assert set(symmetric_kernel_flags(semidirect(Action(B, X, (ONE,), (ONE,)))).values()) == {True}
    assert set(symmetric_kernel_flags(semidirect(Action(B, X, (ONE,), (ZERO,)))).values()) == {False}
    z = Matrix.zeros(GF2, 2, 2)
    flags = symmetric_kernel_flags(semidirect(Action(e2(), zero_mult(2), (z, z), (z, z))))
    assert set(flags.values()) == {True} and len(flags) == 7


def test_five_conditions_examples():
    assert set(split_central_flags(semidirect(Action(B, X, (ONE,), (ONE,)))).values()) == {True}
    assert set(split_central_flags(semidirect(Action(B, X, (ONE,), (ZERO,)))).values()) == {False}
    empty = (Matrix.zeros(GF2, 0, 0),) * 2
    ident = semidirect(Action(e2(), zero_mult(0), empty, empty))
    flags = split_central_flags(ident)
    assert set(flags.values()) == {True} and len(flags) == 5
