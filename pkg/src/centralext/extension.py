"""Actions (B, X, l, r), split extensions and the correspondence between them.

``l[i]`` is the matrix of x -> e_i x on X and ``r[i]`` the matrix of
x -> x e_i, for each basis vector e_i of B.  Values at other elements of B
are obtained linearly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import (
    Algebra,
    AlgebraError,
    AlgebraHom,
    Report,
    Violation,
    _joint_names,
    check_hom,
    iter_homs,
)
from .exactfield import Field, FieldError, Matrix, all_matrices, inverse, kernel_basis, solve_linear


class ActionError(AlgebraError):
    pass


class ExtensionError(AlgebraError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def _lin_comb(field: Field, mats: Sequence[Matrix], coeffs: Sequence, n: int) -> Matrix:
    """sum coeffs[i] * mats[i] for n x n matrices."""
    red = field.red
    acc = [[field.zero] * n for _ in range(n)]
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        for i, row in enumerate(m.data):
            arow = acc[i]
            for j, x in enumerate(row):
                if x:
                    arow[j] += c * x
    return Matrix._raw(field, ([red(x) for x in row] for row in acc), n)


@dataclass(frozen=True)
class Action:
    B: Algebra
    X: Algebra
    l: tuple
    r: tuple

    def __post_init__(self):
        if self.B.field != self.X.field:
            raise FieldError("action between algebras over different fields")
        n = self.X.dim
        if len(self.l) != self.B.dim or len(self.r) != self.B.dim:
            raise ActionError("need one l and one r matrix per basis vector of B")
        for m in self.l + self.r:
            if (m.nrows, m.ncols) != (n, n):
                raise ActionError(f"action matrices must be {n}x{n}")

    @property
    def field(self) -> Field:
        return self.B.field

    def left(self, b: Sequence) -> Matrix:
        return _lin_comb(self.field, self.l, b, self.X.dim)

    def right(self, b: Sequence) -> Matrix:
        return _lin_comb(self.field, self.r, b, self.X.dim)

    @classmethod
    def zero(cls, B: Algebra, X: Algebra) -> "Action":
        z = Matrix.zeros(B.field, X.dim, X.dim)
        return cls(B, X, (z,) * B.dim, (z,) * B.dim)

    def key(self) -> tuple:
        return tuple(m.flat() for m in self.l) + tuple(m.flat() for m in self.r)


def _left_hom_violations(B: Algebra, X: Algebra, l: Sequence[Matrix]) -> list[Violation]:
    bad = []
    n = B.dim
    for i in range(n):
        for j in range(n):
            if _lin_comb(B.field, l, B.structconsts[i][j], X.dim).data != (l[i] @ l[j]).data:
                bad.append(Violation("l-hom", (i, j)))
    return bad


def _right_hom_violations(B: Algebra, X: Algebra, r: Sequence[Matrix]) -> list[Violation]:
    bad = []
    n = B.dim
    for i in range(n):
        for j in range(n):
            if _lin_comb(B.field, r, B.structconsts[i][j], X.dim).data != (r[j] @ r[i]).data:
                bad.append(Violation("r-antihom", (i, j)))
    return bad


def _left_only_violations(X: Algebra, l: Sequence[Matrix]) -> list[Violation]:
    # b(xx') = (bx)x'
    bad = []
    sx = X.structconsts
    for i, L in enumerate(l):
        cols = L.columns()
        for k in range(X.dim):
            for m in range(X.dim):
                if L.apply(sx[k][m]) != X.mul(cols[k], X.basis_vector(m)):
                    bad.append(Violation("b(xx')=(bx)x'", (i, k, m)))
    return bad


def _right_only_violations(X: Algebra, r: Sequence[Matrix]) -> list[Violation]:
    # x(x'b) = (xx')b
    bad = []
    sx = X.structconsts
    for i, R in enumerate(r):
        cols = R.columns()
        for k in range(X.dim):
            for m in range(X.dim):
                if X.mul(X.basis_vector(k), cols[m]) != R.apply(sx[k][m]):
                    bad.append(Violation("x(x'b)=(xx')b", (k, m, i)))
    return bad


def _mixed_violations(X: Algebra, l: Sequence[Matrix], r: Sequence[Matrix]) -> list[Violation]:
    bad = []
    nb = len(l)
    # b(xb') = (bx)b'  <=>  l_i r_j = r_j l_i
    for i in range(nb):
        for j in range(nb):
            lr = l[i] @ r[j]
            rl = r[j] @ l[i]
            if lr.data != rl.data:
                k = next(c for c in range(X.dim) if lr.column(c) != rl.column(c))
                bad.append(Violation("b(xb')=(bx)b'", (i, k, j)))
    # x(bx') = (xb)x'
    for i in range(nb):
        lcols = l[i].columns()
        rcols = r[i].columns()
        for k in range(X.dim):
            for m in range(X.dim):
                if X.mul(X.basis_vector(k), lcols[m]) != X.mul(rcols[k], X.basis_vector(m)):
                    bad.append(Violation("x(bx')=(xb)x'", (k, i, m)))
    return bad


def check_action(act: Action) -> Report:
    """Hom conditions on l and r plus the four mixed axioms, on basis vectors."""
    B, X = act.B, act.X
    bad = (
        _left_hom_violations(B, X, act.l)
        + _right_hom_violations(B, X, act.r)
        + _mixed_violations(X, act.l, act.r)
        + _left_only_violations(X, act.l)
        + _right_only_violations(X, act.r)
    )
    return Report(tuple(bad))


def check_mixed_associativity(act: Action) -> Report:
    """u(vw) = (uv)w for all basis u, v, w of B and X, through the semidirect product."""
    A = semidirect_algebra(act)
    n = A.dim
    bad = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                ei, ej, ek = A.basis_vector(i), A.basis_vector(j), A.basis_vector(k)
                if A.mul(ei, A.mul(ej, ek)) != A.mul(A.mul(ei, ej), ek):
                    bad.append(Violation("mixed-associativity", (i, j, k)))
    return Report(tuple(bad))


def is_symmetric(act: Action) -> bool:
    return all(a.data == b.data for a, b in zip(act.l, act.r))


# --------------------------------------------------------------------------
# Split extensions


@dataclass(frozen=True)
class SplitExtension:
    A: Algebra
    B: Algebra
    X: Algebra
    alpha: AlgebraHom
    beta: AlgebraHom
    kappa: AlgebraHom


@dataclass(frozen=True)
class ExtMorphism:
    f: AlgebraHom
    g: AlgebraHom
    h: AlgebraHom


def check_split_extension(e: SplitExtension) -> Report:
    bad = []
    F = e.A.field
    shapes = [
        ("alpha", e.alpha, e.A, e.B),
        ("beta", e.beta, e.B, e.A),
        ("kappa", e.kappa, e.X, e.A),
    ]
    for name, hom, src, tgt in shapes:
        if hom.source != src or hom.target != tgt:
            bad.append(Violation("wiring", (name,), f"{name} has the wrong source or target"))
    if bad:
        return Report(tuple(bad))
    for name, hom, _, _ in shapes:
        for v in check_hom(hom).violations:
            bad.append(Violation(f"{name}-hom", v.witness))
    ab = e.alpha.matrix @ e.beta.matrix
    if ab.data != Matrix.identity(F, e.B.dim).data:
        bad.append(Violation("alpha.beta=id", (), "beta is not a section of alpha"))
    if e.kappa.rank() != e.X.dim:
        bad.append(Violation("kappa-injective", ()))
    ak = e.alpha.matrix @ e.kappa.matrix
    for j in range(e.X.dim):
        if any(ak.column(j)):
            bad.append(Violation("kappa-in-ker-alpha", (j,)))
    if e.A.dim != e.B.dim + e.X.dim:
        bad.append(Violation("dimension", (), f"dim A = {e.A.dim} != {e.B.dim} + {e.X.dim}"))
    return Report(tuple(bad))


def semidirect_algebra(act: Action) -> Algebra:
    """B x X with (b,x)(b',x') = (bb', bx' + xb' + xx'); B-basis first."""
    B, X = act.B, act.X
    nb, nx = B.dim, X.dim
    prods = []
    for i in range(nb):
        for j in range(nb):
            prods.append((i, j, list(B.table[i * nb + j])))
        lcols = act.l[i].columns()
        rcols = act.r[i].columns()
        for k in range(nx):
            prods.append((i, nb + k, [(nb + t, c) for t, c in enumerate(lcols[k]) if c]))
            prods.append((nb + k, i, [(nb + t, c) for t, c in enumerate(rcols[k]) if c]))
    for k in range(nx):
        for m in range(nx):
            prods.append((nb + k, nb + m, [(nb + t, c) for t, c in X.table[k * nx + m]]))
    return Algebra.from_products(B.field, nb + nx, prods, _joint_names(B.names, X.names), check=False)


def semidirect(act: Action, check: bool = True) -> SplitExtension:
    if check:
        rep = check_action(act)
        if not rep.ok:
            raise ActionError(f"invalid action: {rep.checks_failed()}")
    A = semidirect_algebra(act)
    F = act.field
    nb, nx = act.B.dim, act.X.dim
    ib, ix = Matrix.identity(F, nb), Matrix.identity(F, nx)
    alpha = AlgebraHom.unchecked(A, act.B, ib.hstack(Matrix.zeros(F, nb, nx)))
    beta = AlgebraHom.unchecked(act.B, A, ib.vstack(Matrix.zeros(F, nx, nb)))
    kappa = AlgebraHom.unchecked(act.X, A, Matrix.zeros(F, nb, nx).vstack(ix))
    return SplitExtension(A, act.B, act.X, alpha, beta, kappa)


def extract_action(e: SplitExtension) -> Action:
    """Solve kappa(l(b)x) = beta(b)kappa(x) and kappa(r(b)x) = kappa(x)beta(b)."""
    A, K = e.A, e.kappa.matrix
    F = A.field
    ls, rs = [], []
    kcols = K.columns()
    for i in range(e.B.dim):
        bi = e.beta.image_of_basis(i)
        lcols, rcols = [], []
        for k in range(e.X.dim):
            lx = solve_linear(K, A.mul(bi, kcols[k]))
            rx = solve_linear(K, A.mul(kcols[k], bi))
            if lx is None or rx is None:
                raise ExtensionError("beta(b)kappa(x) escapes kappa(X); the extension is corrupted")
            lcols.append(lx)
            rcols.append(rx)
        ls.append(Matrix.from_columns(F, lcols, e.X.dim))
        rs.append(Matrix.from_columns(F, rcols, e.X.dim))
    return Action(e.B, e.X, tuple(ls), tuple(rs))


def complete_morphism(g: AlgebraHom, h: AlgebraHom, e: SplitExtension, e2: SplitExtension) -> ExtMorphism | None:
    """The f with f(kappa(x) + beta(b)) = kappa'h(x) + beta'g(b), if (f, g, h) is a morphism."""
    F = e.A.field
    A = e.A
    # a -> x with kappa(x) = a - beta(alpha(a))
    ba = e.beta.matrix @ e.alpha.matrix
    cols = []
    for j in range(A.dim):
        a = A.basis_vector(j)
        rest = tuple(F.red(x - y) for x, y in zip(a, ba.column(j)))
        x = solve_linear(e.kappa.matrix, rest)
        if x is None:
            raise ExtensionError("kernel decomposition failed")
        cols.append(x)
    to_x = Matrix.from_columns(F, cols, e.X.dim)
    fm = e2.kappa.matrix @ h.matrix @ to_x + e2.beta.matrix @ g.matrix @ e.alpha.matrix
    f = AlgebraHom.unchecked(A, e2.A, fm)
    if not check_hom(f).ok:
        return None
    if (e2.kappa.matrix @ h.matrix).data != (fm @ e.kappa.matrix).data:
        return None
    if (e2.alpha.matrix @ fm).data != (g.matrix @ e.alpha.matrix).data:
        return None
    if (fm @ e.beta.matrix).data != (e2.beta.matrix @ g.matrix).data:
        return None
    return ExtMorphism(f, g, h)


def is_ext_morphism(m: ExtMorphism, e: SplitExtension, e2: SplitExtension) -> bool:
    f, g, h = m.f.matrix, m.g.matrix, m.h.matrix
    return (
        check_hom(m.f).ok
        and (e2.kappa.matrix @ h).data == (f @ e.kappa.matrix).data
        and (e2.alpha.matrix @ f).data == (g @ e.alpha.matrix).data
        and (f @ e.beta.matrix).data == (e2.beta.matrix @ g).data
    )


def is_action_morphism(g: AlgebraHom, h: AlgebraHom, act: Action, act2: Action) -> bool:
    """h(bx) = g(b)h(x) and h(xb) = h(x)g(b) on basis pairs."""
    for i in range(act.B.dim):
        gb = g.image_of_basis(i)
        if (h.matrix @ act.l[i]).data != (act2.left(gb) @ h.matrix).data:
            return False
        if (h.matrix @ act.r[i]).data != (act2.right(gb) @ h.matrix).data:
            return False
    return True


class InducedActionError(ActionError):
    pass


def induced_action(act: Action, g: AlgebraHom) -> Action:
    """The action (B', X, l', r') with l = l'g and r = r'g, for surjective g: B -> B'."""
    if g.source != act.B:
        raise InducedActionError("g does not start at the acting algebra")
    if not g.is_surjective():
        raise InducedActionError("g is not surjective")
    for v in kernel_basis(g.matrix).data:
        if not act.left(v).is_zero() or not act.right(v).is_zero():
            raise InducedActionError("ker g is not inside ker l and ker r; no factorization exists")
    Bp = g.target
    ls, rs = [], []
    for k in range(Bp.dim):
        pre = solve_linear(g.matrix, Bp.basis_vector(k))
        ls.append(act.left(pre))
        rs.append(act.right(pre))
    out = Action(Bp, act.X, tuple(ls), tuple(rs))
    rep = check_action(out)
    if not rep.ok:
        raise AssertionError(f"induced action violates {rep.checks_failed()}")
    return out


def pullback_action(act: Action, g: AlgebraHom) -> Action:
    """Restriction of an action of B' along g: B -> B' (l' g, r' g)."""
    ls = tuple(act.left(g.image_of_basis(i)) for i in range(g.source.dim))
    rs = tuple(act.right(g.image_of_basis(i)) for i in range(g.source.dim))
    return Action(g.source, act.X, ls, rs)


def enumerate_actions(B: Algebra, X: Algebra, budget: int = 2**20) -> list[Action]:
    """Every action of B on X over F_p, lexicographic in (l, r)."""
    F = B.field
    if F.p is None:
        raise ActionError("action enumeration needs a finite field")
    space = F.p ** (2 * B.dim * X.dim * X.dim)
    if space > budget:
        raise BudgetExceeded(f"{space} candidate actions exceed the budget {budget}")
    mats = list(all_matrices(F, X.dim, X.dim))
    ls = [fam for fam in itertools.product(mats, repeat=B.dim)
          if not _left_only_violations(X, fam) and not _left_hom_violations(B, X, fam)]
    rs = [fam for fam in itertools.product(mats, repeat=B.dim)
          if not _right_only_violations(X, fam) and not _right_hom_violations(B, X, fam)]
    out = []
    for l in ls:
        for r in rs:
            if not _mixed_violations(X, l, r):
                out.append(Action(B, X, tuple(l), tuple(r)))
    return out


def iter_split_morphisms(e: SplitExtension, e2: SplitExtension, g: AlgebraHom, h: AlgebraHom) -> Iterator[AlgebraHom]:
    """Brute force: every hom f: A -> A' making (f, g, h) a morphism of split extensions."""
    for f in iter_homs(e.A, e2.A):
        if is_ext_morphism(ExtMorphism(f, g, h), e, e2):
            yield f


def transport_extension(e: SplitExtension, basis: Matrix) -> SplitExtension:
    """The same extension with A re-presented on a new basis.

    Column j of ``basis`` holds the old coordinates of new basis vector j.
    """
    A = e.A
    to_new = inverse(basis)
    cols = basis.columns()
    prods = []
    for i in range(A.dim):
        for j in range(A.dim):
            w = to_new.apply(A.mul(cols[i], cols[j]))
            prods.append((i, j, [(k, c) for k, c in enumerate(w) if c]))
    A2 = Algebra.from_products(A.field, A.dim, prods, [f"a{k}" for k in range(A.dim)], check=False)
    return SplitExtension(
        A2, e.B, e.X,
        AlgebraHom.unchecked(A2, e.B, e.alpha.matrix @ basis),
        AlgebraHom.unchecked(e.B, A2, to_new @ e.beta.matrix),
        AlgebraHom.unchecked(e.X, A2, to_new @ e.kappa.matrix),
    )


def shear_basis(field: Field, n: int) -> Matrix:
    """Deterministic non-trivial change of basis: reverse the order, then add the last vector to the first."""
    rows = [[field.one if j == n - 1 - i else field.zero for j in range(n)] for i in range(n)]
    if n >= 2:
        # new vector 0 = old vector n-1 + old vector 0
        rows[0][0] = field.one
    return Matrix._raw(field, rows, n)
