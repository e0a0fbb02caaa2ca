from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from centralext.algebra import (
    Algebra,
    AlgebraHom,
    AssociativityError,
    HomError,
    NotAnIdealError,
    Subspace,
    check_associative,
    check_hom,
    comm_of_hom,
    comm_reflection,
    commutator_ideal,
    direct_product,
    ideal_closure,
    image_of_hom,
    is_commutative,
    iter_homs,
    kernel_of_hom,
    largest_central_ideal,
    multiply,
    pullback_algebra,
    quotient_by_ideal,
)
from centralext.catalog import e1, e2, idempotent, matrix_algebra, nilpotent_t, zero_mult
from centralext.corpus import enumerate_algebras_of_dim
from centralext.exactfield import GF2, Field, Matrix
from conftest import consts

U, T = (1, 0), (0, 1)
ALPHA = Matrix.from_rows(GF2, [[1, 0]])  # u -> b, t -> 0
SMALL = list(enumerate_algebras_of_dim(GF2, 0)) + list(enumerate_algebras_of_dim(GF2, 1)) + list(
    enumerate_algebras_of_dim(GF2, 2)
)


def element_set(s: Subspace) -> set:
    """All elements of a subspace over F_2, by enumerating combinations of the basis."""
    out = set()
    rows = s.basis.data
    for mask in range(2 ** len(rows)):
        v = [0] * s.ambient.dim
        for k, r in enumerate(rows):
            if mask >> k & 1:
                v = [(x + y) % 2 for x, y in zip(v, r)]
        out.add(tuple(v))
    return out


# -- associativity and basic products ---------------------------------------


def test_associativity_examples():
    assert check_associative(zero_mult(1)).ok
    assert check_associative(idempotent()).ok
    bad = Algebra.from_products(GF2, 2, [(0, 0, [(1, 1)]), (1, 0, [(0, 1)])], check=False)
    rep = check_associative(bad)
    assert not rep.ok and rep.violations[0].witness == (0, 0, 0)
    with pytest.raises(AssociativityError):
        Algebra.from_products(GF2, 2, [(0, 0, [(1, 1)]), (1, 0, [(0, 1)])])


def test_multiply_examples():
    assert multiply(e2(), (0, 0), T) == (0, 0)
    assert multiply(e2(), U, T) == T
    assert multiply(e2(), T, U) == (0, 0)
    with pytest.raises(ValueError):
        multiply(e2(), (1,), T)


def test_commutativity_examples():
    assert is_commutative(zero_mult(1)) and is_commutative(idempotent())
    assert not is_commutative(e2())
    assert is_commutative(e1())


def test_dim2_table_count_matches_oracle():
    # golden value confirmed by the elementwise oracle over all 256 tables
    assert oracles.count_associative_tables(2, 2) == 28
    assert len(list(enumerate_algebras_of_dim(GF2, 2))) == 28
    assert len(list(enumerate_algebras_of_dim(GF2, 1))) == 2
    assert len(list(enumerate_algebras_of_dim(GF2, 0))) == 1


def test_dim1_over_f3_matches_oracle():
    F3 = Field(3)
    assert len(list(enumerate_algebras_of_dim(F3, 1))) == oracles.count_associative_tables(3, 1) == 3


# -- homs -------------------------------------------------------------------


def test_check_hom_examples():
    a = e2()
    assert check_hom(AlgebraHom.identity(a)).ok
    assert check_hom(AlgebraHom.zero(a, idempotent())).ok
    assert check_hom(AlgebraHom(a, idempotent(), ALPHA)).ok
    with pytest.raises(HomError):
        AlgebraHom(a, idempotent(), Matrix.from_rows(GF2, [[0, 1]]))


def test_kernel_and_image_examples():
    a = e2()
    assert kernel_of_hom(AlgebraHom.identity(a)).dim == 0
    assert kernel_of_hom(AlgebraHom.zero(a, idempotent())).dim == 2
    f = AlgebraHom(a, idempotent(), ALPHA)
    assert kernel_of_hom(f).vectors() == [T]
    assert image_of_hom(AlgebraHom.identity(a)).subspace.dim == 2
    assert image_of_hom(AlgebraHom.zero(a, idempotent())).algebra.dim == 0
    img = image_of_hom(f).algebra
    assert img.dim == 1 and img.table == idempotent().table


@pytest.mark.parametrize("ai", range(0, len(SMALL), 3))
def test_hom_count_matches_oracle(ai):
    a = SMALL[ai]
    for b in SMALL[:8]:
        for surj in (False, True):
            got = sum(1 for _ in iter_homs(a, b, surj))
            assert got == oracles.homs_count(consts(a), consts(b), 2, surj)


# -- ideals, commutators, quotients ----------------------------------------


def test_ideal_closure_examples():
    a = e2()
    assert ideal_closure(a, Subspace.zero(a)).dim == 0
    assert ideal_closure(a, Subspace.whole(a)).dim == 2
    assert ideal_closure(a, Subspace.span(a, [T])).vectors() == [T]
    # span{u} generates everything
    assert ideal_closure(a, Subspace.span(a, [U])).dim == 2


def test_commutator_ideal_golden():
    assert commutator_ideal(e1()).dim == 0
    assert commutator_ideal(e2()).vectors() == [T]
    assert element_set(commutator_ideal(e2())) == oracles.commutator_ideal_elements(consts(e2()), 2)
    m2 = matrix_algebra(2)
    assert commutator_ideal(m2).dim == 4
    assert len(oracles.commutator_ideal_elements(consts(m2), 2)) == 16


@pytest.mark.parametrize("a", SMALL, ids=lambda a: str(a.table))
def test_commutator_ideal_matches_oracle(a):
    assert element_set(commutator_ideal(a)) == oracles.commutator_ideal_elements(consts(a), 2)


def test_quotient_examples():
    a = e2()
    q = quotient_by_ideal(a, Subspace.zero(a))
    assert q.algebra.table == a.table and q.proj.matrix == Matrix.identity(GF2, 2)
    assert quotient_by_ideal(a, Subspace.whole(a)).algebra.dim == 0
    q = quotient_by_ideal(a, Subspace.span(a, [T]))
    assert q.algebra.table == idempotent().table
    with pytest.raises(NotAnIdealError):
        quotient_by_ideal(a, Subspace.span(a, [U]))


def test_comm_reflection_examples():
    r = comm_reflection(e1())
    assert r.ideal.dim == 0 and r.eta.is_bijective()
    r = comm_reflection(e2())
    assert r.algebra.table == idempotent().table
    assert r.eta.matrix == ALPHA
    assert comm_reflection(matrix_algebra(2)).algebra.dim == 0


def test_comm_of_hom_examples():
    a = e2()
    assert comm_of_hom(AlgebraHom.identity(a)).matrix == Matrix.identity(GF2, 1)
    assert comm_of_hom(AlgebraHom.zero(a, idempotent())).matrix.is_zero()
    cf = comm_of_hom(AlgebraHom(a, idempotent(), ALPHA))
    assert cf.is_bijective()


@pytest.mark.parametrize("a", SMALL, ids=lambda a: str(a.table))
def test_comm_reflection_is_commutative_quotient(a):
    r = comm_reflection(a)
    assert is_commutative(r.algebra)
    assert r.eta.is_surjective() and kernel_of_hom(r.eta) == r.ideal
    assert check_hom(r.eta).ok


# -- products and pullbacks -------------------------------------------------


def test_direct_product_examples():
    a = e2()
    p = direct_product(a, zero_mult(0)).algebra
    assert p.table == a.table
    bb = direct_product(idempotent(), idempotent()).algebra
    assert bb.products() == [(0, 0, [(0, 1)]), (1, 1, [(1, 1)])]
    assert direct_product(e1(), e2()).algebra.dim == 4


def test_pullback_examples():
    a = e2()
    f = AlgebraHom(a, idempotent(), ALPHA)
    pb = pullback_algebra(f, AlgebraHom.identity(idempotent()))
    assert pb.algebra.dim == 2 and pb.pi1.is_bijective()
    z = zero_mult(0)
    pb = pullback_algebra(AlgebraHom.zero(e1(), z), AlgebraHom.zero(e2(), z))
    assert pb.algebra.dim == 4
    alpha = AlgebraHom(e1(), idempotent(), ALPHA)
    assert pullback_algebra(alpha, alpha).algebra.dim == 3


def test_pullback_is_subalgebra():
    a = e1()
    alpha = AlgebraHom(a, idempotent(), ALPHA)
    pb = pullback_algebra(alpha, alpha)
    assert check_associative(pb.algebra).ok
    assert check_hom(pb.pi1).ok and check_hom(pb.pi2).ok
    assert (alpha.compose(pb.pi1)).matrix == (alpha.compose(pb.pi2)).matrix


# -- centres ----------------------------------------------------------------


def test_largest_central_ideal_examples():
    assert largest_central_ideal(e1(), "commuting").dim == 2
    assert largest_central_ideal(e2(), "commuting").dim == 0
    assert largest_central_ideal(e1(), "annihilating").dim == 0
    assert largest_central_ideal(nilpotent_t(), "annihilating").vectors() == [(0, 1)]
    with pytest.raises(ValueError):
        largest_central_ideal(e1(), "bogus")


# -- properties -------------------------------------------------------------


@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
@settings(max_examples=80, deadline=None)
def test_product_of_associative_is_associative(a, b):
    p = direct_product(a, b)
    assert check_associative(p.algebra).ok
    for h in (p.pr1, p.pr2, p.in1, p.in2):
        assert check_hom(h).ok


@given(st.sampled_from(SMALL), st.data())
@settings(max_examples=80, deadline=None)
def test_bilinear_extension(a, data):
    vec = st.tuples(*[st.integers(0, 1)] * a.dim)
    u, v, w = data.draw(vec), data.draw(vec), data.draw(vec)
    assert a.mul(a.mul(u, v), w) == a.mul(u, a.mul(v, w))
    assert a.mul(u, v) == oracles.mul(consts(a), 2, u, v)
