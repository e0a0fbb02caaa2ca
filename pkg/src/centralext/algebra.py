"""Finite-dimensional non-unital associative algebras over an exact field.

An algebra is stored by its sparse structure constants: ``table[i*n + j]``
lists the nonzero ``(k, c)`` with ``e_i e_j = sum c e_k``.  Homomorphisms are
matrices whose column ``j`` is the image of the source basis vector ``j``.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .exactfield import (
    Field,
    FieldError,
    Matrix,
    Vector,
    all_vectors,
    coordinates_in,
    kernel_basis,
    row_basis,
    rref,
    unit,
    zero_vec,
)


class AlgebraError(ValueError):
    pass


class AssociativityError(AlgebraError):
    pass


class HomError(AlgebraError):
    pass


class NotAnIdealError(AlgebraError):
    pass


class Violation(NamedTuple):
    check: str
    witness: tuple
    detail: str = ""


@dataclass(frozen=True)
class Report:
    """Outcome of an invariant check; empty ``violations`` means pass."""

    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def checks_failed(self) -> list[str]:
        return sorted({v.check for v in self.violations})


# --------------------------------------------------------------------------
# Algebra


@dataclass(frozen=True)
class Algebra:
    field: Field
    dim: int
    table: tuple
    names: tuple = ()

    def __post_init__(self):
        if len(self.table) != self.dim * self.dim:
            raise AlgebraError("structure table has the wrong size")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(self.dim)))
        elif len(self.names) != self.dim:
            raise AlgebraError("need one basis name per dimension")

    @classmethod
    def from_products(cls, field: Field, dim: int, products: Iterable, names: Sequence[str] | None = None,
                      check: bool = True) -> "Algebra":
        """Build from ``(i, j, [(k, c), ...])`` entries; absent pairs multiply to zero."""
        acc: dict = {}
        for i, j, terms in products:
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraError(f"basis index out of range in product ({i}, {j})")
            slot = acc.setdefault((i, j), {})
            for k, c in terms:
                if not 0 <= k < dim:
                    raise AlgebraError(f"basis index {k} out of range")
                slot[k] = field.red(slot.get(k, field.zero) + field(c))
        table = tuple(
            tuple(sorted((k, c) for k, c in acc.get((i, j), {}).items() if c != 0))
            for i in range(dim) for j in range(dim)
        )
        alg = cls(field, dim, table, tuple(names) if names else ())
        if check:
            rep = check_associative(alg)
            if not rep.ok:
                i, j, k = rep.violations[0].witness
                raise AssociativityError(f"not associative: (e{i}e{j})e{k} != e{i}(e{j}e{k})")
        return alg

    @classmethod
    def from_structconsts(cls, field: Field, consts, names=None, check: bool = True) -> "Algebra":
        n = len(consts)
        prods = [(i, j, [(k, consts[i][j][k]) for k in range(n)]) for i in range(n) for j in range(n)]
        return cls.from_products(field, n, prods, names, check)

    @classmethod
    def zero_algebra(cls, field: Field, dim: int = 0, names=None) -> "Algebra":
        """Algebra with identically zero multiplication."""
        return cls(field, dim, ((),) * (dim * dim), tuple(names) if names else ())

    def product_terms(self, i: int, j: int) -> tuple:
        return self.table[i * self.dim + j]

    @cached_property
    def structconsts(self) -> tuple:
        n, z = self.dim, self.field.zero
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                v = [z] * n
                for k, c in self.table[i * n + j]:
                    v[k] = c
                row.append(tuple(v))
            out.append(tuple(row))
        return tuple(out)

    def products(self) -> list:
        """Sparse product list, lexicographic in (i, j)."""
        n = self.dim
        return [(i, j, list(self.table[i * n + j])) for i in range(n) for j in range(n) if self.table[i * n + j]]

    @cached_property
    def basis(self) -> tuple:
        return tuple(unit(self.field, self.dim, i) for i in range(self.dim))

    def basis_vector(self, i: int) -> Vector:
        return self.basis[i]

    def zero(self) -> Vector:
        return zero_vec(self.field, self.dim)

    def mul(self, u: Sequence, v: Sequence) -> Vector:
        n = self.dim
        if len(u) != n or len(v) != n:
            raise AlgebraError("vector length does not match algebra dimension")
        out = [self.field.zero] * n
        table = self.table
        for i, a in enumerate(u):
            if not a:
                continue
            base = i * n
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in table[base + j]:
                    out[k] += ab * c
        red = self.field.red
        return tuple(red(x) for x in out)

    def basis_product(self, i: int, j: int) -> Vector:
        return self.structconsts[i][j]

    @cached_property
    def left_mult(self) -> tuple:
        """Matrix of x -> e_i x for each basis vector e_i."""
        n = self.dim
        sc = self.structconsts
        return tuple(Matrix.from_columns(self.field, [sc[i][j] for j in range(n)], n) for i in range(n))

    @cached_property
    def right_mult(self) -> tuple:
        """Matrix of x -> x e_i for each basis vector e_i."""
        n = self.dim
        sc = self.structconsts
        return tuple(Matrix.from_columns(self.field, [sc[j][i] for j in range(n)], n) for i in range(n))

    def __repr__(self):
        return f"Algebra({self.field}, dim={self.dim}, names={list(self.names)}, products={self.products()})"


def multiply(a: Algebra, u: Sequence, v: Sequence) -> Vector:
    return a.mul(u, v)


def check_associative(a: Algebra) -> Report:
    """Associativity on every basis triple; violating triples in lexicographic order."""
    n = a.dim
    sc = a.structconsts
    red = a.field.red
    z = a.field.zero
    bad = []
    for i in range(n):
        for j in range(n):
            eij = sc[i][j]
            for k in range(n):
                ejk = sc[j][k]
                for l in range(n):
                    left = red(sum((eij[m] * sc[m][k][l] for m in range(n) if eij[m]), z))
                    right = red(sum((ejk[m] * sc[i][m][l] for m in range(n) if ejk[m]), z))
                    if left != right:
                        bad.append(Violation("associativity", (i, j, k)))
                        break
    return Report(tuple(bad))


def is_commutative(a: Algebra) -> bool:
    n = a.dim
    return all(a.table[i * n + j] == a.table[j * n + i] for i in range(n) for j in range(i + 1, n))


def commutativity_witnesses(a: Algebra) -> list[tuple[int, int]]:
    n = a.dim
    return [(i, j) for i in range(n) for j in range(i + 1, n) if a.table[i * n + j] != a.table[j * n + i]]


# --------------------------------------------------------------------------
# Homomorphisms


@dataclass(frozen=True)
class AlgebraHom:
    source: Algebra
    target: Algebra
    matrix: Matrix
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if self.source.field != self.target.field or self.matrix.field != self.source.field:
            raise FieldError("hom between algebras over different fields")
        if (self.matrix.nrows, self.matrix.ncols) != (self.target.dim, self.source.dim):
            raise HomError(
                f"hom matrix must be {self.target.dim}x{self.source.dim}, got {self.matrix.nrows}x{self.matrix.ncols}"
            )
        if check:
            rep = check_hom(self)
            if not rep.ok:
                i, j = rep.violations[0].witness
                raise HomError(f"not multiplicative on basis pair ({i}, {j})")

    @classmethod
    def unchecked(cls, source: Algebra, target: Algebra, matrix: Matrix) -> "AlgebraHom":
        return cls(source, target, matrix, False)

    @classmethod
    def identity(cls, a: Algebra) -> "AlgebraHom":
        return cls(a, a, Matrix.identity(a.field, a.dim), False)

    @classmethod
    def zero(cls, a: Algebra, b: Algebra) -> "AlgebraHom":
        return cls(a, b, Matrix.zeros(a.field, b.dim, a.dim), False)

    def __call__(self, v: Sequence) -> Vector:
        return self.matrix.apply(v)

    def image_of_basis(self, j: int) -> Vector:
        return self.matrix.column(j)

    def compose(self, inner: "AlgebraHom") -> "AlgebraHom":
        """self ∘ inner."""
        if inner.target.dim != self.source.dim or inner.target.field != self.source.field:
            raise HomError("composition of non-composable homs")
        return AlgebraHom(inner.source, self.target, self.matrix @ inner.matrix, False)

    def rank(self) -> int:
        return self.matrix.rank()

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()


def check_hom(f: AlgebraHom) -> Report:
    """Multiplicativity of f on all basis pairs (enough by bilinearity)."""
    if f.source.field != f.target.field:
        raise FieldError("hom between algebras over different fields")
    src, tgt = f.source, f.target
    cols = f.matrix.columns()
    bad = []
    n = src.dim
    for i in range(n):
        for j in range(n):
            lhs = tgt.mul(cols[i], cols[j])
            rhs = f.matrix.apply(src.structconsts[i][j])
            if lhs != rhs:
                bad.append(Violation("multiplicative", (i, j)))
    return Report(tuple(bad))


# --------------------------------------------------------------------------
# Subspaces


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of an algebra's carrier, held as an RREF row basis."""

    ambient: Algebra
    basis: Matrix
    pivots: tuple
    is_ideal: bool = False

    @classmethod
    def span(cls, a: Algebra, vectors: Iterable[Sequence], is_ideal: bool = False) -> "Subspace":
        basis, pivots = row_basis(a.field, vectors, a.dim)
        return cls(a, basis, tuple(pivots), is_ideal)

    @classmethod
    def zero(cls, a: Algebra) -> "Subspace":
        return cls.span(a, [], True)

    @classmethod
    def whole(cls, a: Algebra) -> "Subspace":
        return cls(a, Matrix.identity(a.field, a.dim), tuple(range(a.dim)), True)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> list:
        return list(self.basis.data)

    def contains(self, v: Sequence) -> bool:
        return coordinates_in(self.basis, self.pivots, v) is not None

    def coordinates(self, v: Sequence) -> Vector | None:
        return coordinates_in(self.basis, self.pivots, v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis.data)

    def same_space(self, other: "Subspace") -> bool:
        return self.basis.data == other.basis.data

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis.data == other.basis.data

    def __hash__(self):
        return hash(self.basis.data)

    def as_ideal(self) -> "Subspace":
        return Subspace(self.ambient, self.basis, self.pivots, True)


def ideal_violations(a: Algebra, s: Subspace) -> list[Violation]:
    bad = []
    for r, v in enumerate(s.basis.data):
        for i in range(a.dim):
            e = a.basis_vector(i)
            if not s.contains(a.mul(e, v)):
                bad.append(Violation("left-ideal", (i, r)))
            if not s.contains(a.mul(v, e)):
                bad.append(Violation("right-ideal", (r, i)))
    return bad


def is_ideal(a: Algebra, s: Subspace) -> bool:
    return not ideal_violations(a, s)


def ideal_closure(a: Algebra, s: Subspace) -> Subspace:
    """Least two-sided ideal containing s."""
    cur = s
    for _ in range(a.dim + 1):
        gens = list(cur.basis.data)
        for v in cur.basis.data:
            for i in range(a.dim):
                e = a.basis_vector(i)
                gens.append(a.mul(e, v))
                gens.append(a.mul(v, e))
        nxt = Subspace.span(a, gens)
        if nxt.dim == cur.dim:
            return nxt.as_ideal()
        cur = nxt
    raise AssertionError("ideal closure failed to stabilise")  # pragma: no cover


def commutator_ideal(a: Algebra) -> Subspace:
    """R(A): the ideal generated by all e_i e_j - e_j e_i."""
    n = a.dim
    sc = a.structconsts
    red = a.field.red
    gens = [tuple(red(x - y) for x, y in zip(sc[i][j], sc[j][i])) for i in range(n) for j in range(i + 1, n)]
    return ideal_closure(a, Subspace.span(a, gens))


class Presented(NamedTuple):
    subspace: Subspace
    algebra: Algebra
    inclusion: AlgebraHom


def present_subalgebra(a: Algebra, s: Subspace, names: Sequence[str] | None = None) -> Presented:
    """Structure constants of a multiplicatively closed subspace on its RREF basis."""
    rows = s.basis.data
    d = len(rows)
    prods = []
    for r in range(d):
        for t in range(d):
            w = a.mul(rows[r], rows[t])
            c = s.coordinates(w)
            if c is None:
                raise AlgebraError(f"subspace not closed under multiplication (basis rows {r}, {t})")
            prods.append((r, t, [(k, x) for k, x in enumerate(c) if x]))
    if names is None:
        names = [format_vector(a, v) for v in rows]
    sub = Algebra.from_products(a.field, d, prods, names, check=False)
    incl = AlgebraHom.unchecked(sub, a, Matrix.from_columns(a.field, rows, a.dim))
    return Presented(s, sub, incl)


def format_vector(a: Algebra, v: Sequence) -> str:
    parts = []
    for name, c in zip(a.names, v):
        if c == 1:
            parts.append(name)
        elif c:
            parts.append(f"{a.field.format(c)}*{name}")
    return "+".join(parts) if parts else "0"


def kernel_of_hom(f: AlgebraHom) -> Subspace:
    k = kernel_basis(f.matrix)
    s = Subspace(f.source, k, tuple(rref(k)[1]), True)
    bad = ideal_violations(f.source, s)
    if bad:
        raise AlgebraError("kernel is not an ideal; the map is not a homomorphism")
    return s


def image_of_hom(f: AlgebraHom) -> Presented:
    s = Subspace.span(f.target, f.matrix.columns())
    return present_subalgebra(f.target, s)


# --------------------------------------------------------------------------
# Quotients and the commutative reflection


class Quotient(NamedTuple):
    algebra: Algebra
    proj: AlgebraHom
    ideal: Subspace
    complement: tuple


def _reduce_mod(s: Subspace, v: Sequence) -> list:
    red = s.ambient.field.red
    out = list(v)
    for p, row in zip(s.pivots, s.basis.data):
        c = out[p]
        if c:
            out = [red(x - c * y) if y else x for x, y in zip(out, row)]
    return out


def quotient_by_ideal(a: Algebra, i: Subspace) -> Quotient:
    """A/I carried by the non-pivot coordinates of I's RREF basis."""
    if i.ambient.dim != a.dim:
        raise AlgebraError("ideal lives in a different algebra")
    if ideal_violations(a, i):
        raise NotAnIdealError("quotient by a subspace that is not a two-sided ideal")
    piv = set(i.pivots)
    comp = tuple(c for c in range(a.dim) if c not in piv)

    def project(v):
        r = _reduce_mod(i, v)
        return tuple(r[c] for c in comp)

    cols = [project(a.basis_vector(j)) for j in range(a.dim)]
    prods = []
    for x, c in enumerate(comp):
        for y, d in enumerate(comp):
            w = project(a.structconsts[c][d])
            prods.append((x, y, [(k, v) for k, v in enumerate(w) if v]))
    q = Algebra.from_products(a.field, len(comp), prods, [a.names[c] for c in comp], check=False)
    proj = AlgebraHom.unchecked(a, q, Matrix.from_columns(a.field, cols, len(comp)))
    return Quotient(q, proj, i.as_ideal(), comp)


class Reflection(NamedTuple):
    ideal: Subspace
    algebra: Algebra
    eta: AlgebraHom


def comm_reflection(a: Algebra) -> Reflection:
    """R(A), Comm(A) = A/R(A) and the unit eta_A."""
    r = commutator_ideal(a)
    q = quotient_by_ideal(a, r)
    if not is_commutative(q.algebra):
        raise AssertionError("commutative reflection is not commutative")
    return Reflection(r, q.algebra, q.proj)


def comm_of_hom(f: AlgebraHom, src: Reflection | None = None, tgt: Reflection | None = None) -> AlgebraHom:
    """Comm(f): the unique hom with Comm(f) eta_src = eta_tgt f."""
    src = src or comm_reflection(f.source)
    tgt = tgt or comm_reflection(f.target)
    for v in src.ideal.basis.data:
        if not tgt.ideal.contains(f(v)):
            raise AssertionError("f does not map R(source) into R(target)")
    piv = set(src.ideal.pivots)
    comp = [c for c in range(f.source.dim) if c not in piv]
    cols = [tgt.eta(f.image_of_basis(c)) for c in comp]
    m = Matrix.from_columns(f.source.field, cols, tgt.algebra.dim)
    cf = AlgebraHom.unchecked(src.algebra, tgt.algebra, m)
    if (cf.matrix @ src.eta.matrix).data != (tgt.eta.matrix @ f.matrix).data:
        raise AssertionError("Comm(f) fails naturality")
    return cf


# --------------------------------------------------------------------------
# Products and pullbacks


class Product(NamedTuple):
    algebra: Algebra
    pr1: AlgebraHom
    pr2: AlgebraHom
    in1: AlgebraHom
    in2: AlgebraHom


def _joint_names(a: Sequence[str], b: Sequence[str]) -> list[str]:
    if len(set(a) | set(b)) == len(a) + len(b):
        return list(a) + list(b)
    return [f"{x}.1" for x in a] + [f"{y}.2" for y in b]


def direct_product(a: Algebra, b: Algebra) -> Product:
    if a.field != b.field:
        raise FieldError("direct product of algebras over different fields")
    n, m = a.dim, b.dim
    prods = [(i, j, list(a.table[i * n + j])) for i in range(n) for j in range(n)]
    prods += [(n + i, n + j, [(n + k, c) for k, c in b.table[i * m + j]]) for i in range(m) for j in range(m)]
    p = Algebra.from_products(a.field, n + m, prods, _joint_names(a.names, b.names), check=False)
    F = a.field
    ia, ib = Matrix.identity(F, n), Matrix.identity(F, m)
    pr1 = AlgebraHom.unchecked(p, a, ia.hstack(Matrix.zeros(F, n, m)))
    pr2 = AlgebraHom.unchecked(p, b, Matrix.zeros(F, m, n).hstack(ib))
    in1 = AlgebraHom.unchecked(a, p, ia.vstack(Matrix.zeros(F, m, n)))
    in2 = AlgebraHom.unchecked(b, p, Matrix.zeros(F, n, m).vstack(ib))
    return Product(p, pr1, pr2, in1, in2)


class Pullback(NamedTuple):
    algebra: Algebra
    pi1: AlgebraHom
    pi2: AlgebraHom
    subspace: Subspace


def pullback_algebra(f: AlgebraHom, g: AlgebraHom) -> Pullback:
    """A x_C B = {(a, b) : f(a) = g(b)} as a subalgebra of A x B."""
    if f.target != g.target:
        raise HomError("pullback of homs with different codomains")
    prod = direct_product(f.source, g.source)
    diff = f.matrix.hstack(-g.matrix)
    sub = Subspace.span(prod.algebra, kernel_basis(diff).data)
    pres = present_subalgebra(prod.algebra, sub, [f"p{k}" for k in range(sub.dim)])
    pi1 = prod.pr1.compose(pres.inclusion)
    pi2 = prod.pr2.compose(pres.inclusion)
    expected = f.source.dim + g.source.dim - diff.rank()
    assert pres.algebra.dim == expected
    return Pullback(pres.algebra, pi1, pi2, sub)


# --------------------------------------------------------------------------
# Centres


def largest_central_ideal(a: Algebra, mode: str = "commuting") -> Subspace:
    """Largest ideal X with ax = xa (``commuting``) or ax = 0 = xa (``annihilating``)."""
    if mode not in ("commuting", "annihilating"):
        raise ValueError(f"unknown centre mode {mode!r}")
    F = a.field
    blocks = []
    for L, R in zip(a.left_mult, a.right_mult):
        if mode == "commuting":
            blocks.append(L - R)
        else:
            blocks.append(L)
            blocks.append(R)
    stacked = Matrix.zeros(F, 0, a.dim)
    for b in blocks:
        stacked = stacked.vstack(b)
    cur = Subspace.span(a, kernel_basis(stacked).data)
    for _ in range(a.dim + 1):
        if cur.dim == 0:
            return cur.as_ideal()
        q = _complement_projector(cur)
        S = Matrix.from_columns(F, cur.basis.data, a.dim)
        conds = Matrix.zeros(F, 0, cur.dim)
        for L, R in zip(a.left_mult, a.right_mult):
            conds = conds.vstack(q @ L @ S).vstack(q @ R @ S)
        coeffs = kernel_basis(conds)
        nxt = Subspace.span(a, [S.apply(c) for c in coeffs.data])
        if nxt.dim == cur.dim:
            assert is_ideal(a, nxt)
            return nxt.as_ideal()
        cur = nxt
    raise AssertionError("centre iteration failed to stabilise")  # pragma: no cover


def _complement_projector(s: Subspace) -> Matrix:
    """Linear map v -> (v mod s) read on the non-pivot coordinates."""
    a = s.ambient
    piv = set(s.pivots)
    comp = [c for c in range(a.dim) if c not in piv]
    cols = []
    for j in range(a.dim):
        r = _reduce_mod(s, a.basis_vector(j))
        cols.append(tuple(r[c] for c in comp))
    return Matrix.from_columns(a.field, cols, len(comp))


# --------------------------------------------------------------------------
# Hom enumeration


def iter_homs(a: Algebra, b: Algebra, surjective: bool = False) -> Iterator[AlgebraHom]:
    """Every algebra hom a -> b over F_p, lexicographic in the column images.

    Backtracks over the images of a's basis vectors and checks each basis
    product as soon as every vector it involves has been assigned.
    """
    if a.field != b.field:
        raise FieldError("homs between algebras over different fields")
    F = a.field
    n = a.dim
    sc = a.structconsts
    ready: list[list] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            support = [k for k, _ in a.table[i * n + j]]
            ready[max([i, j] + support)].append((i, j))
    candidates = list(all_vectors(F, b.dim))
    red = F.red
    z = F.zero
    images: list = [None] * n

    def lin(v):
        out = [z] * b.dim
        for k, c in enumerate(v):
            if c:
                for t, x in enumerate(images[k]):
                    if x:
                        out[t] += c * x
        return tuple(red(x) for x in out)

    def rec(k):
        if k == n:
            m = Matrix.from_columns(F, images, b.dim)
            if surjective and m.rank() != b.dim:
                return
            yield AlgebraHom.unchecked(a, b, m)
            return
        for v in candidates:
            images[k] = v
            if all(b.mul(images[i], images[j]) == lin(sc[i][j]) for i, j in ready[k]):
                yield from rec(k + 1)
        images[k] = None

    if surjective and b.dim > n:
        return
    yield from rec(0)
