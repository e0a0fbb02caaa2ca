"""Named small algebras used as fixtures and curated corpus members."""

from __future__ import annotations

from .algebra import Algebra, direct_product
from .exactfield import GF2, Field


def zero_mult(dim: int = 1, field: Field = GF2, names=None) -> Algebra:
    return Algebra.zero_algebra(field, dim, names or (["x"] if dim == 1 else None))


def idempotent(field: Field = GF2, name: str = "b") -> Algebra:
    """The 1-dim algebra K with b^2 = b."""
    return Algebra.from_products(field, 1, [(0, 0, [(0, 1)])], [name])


def e1(field: Field = GF2) -> Algebra:
    """K[t]/(t^2) on basis u = 1, t: u^2 = u, ut = tu = t, t^2 = 0."""
    return Algebra.from_products(
        field, 2, [(0, 0, [(0, 1)]), (0, 1, [(1, 1)]), (1, 0, [(1, 1)])], ["u", "t"]
    )


def e2(field: Field = GF2) -> Algebra:
    """Basis u, t with u^2 = u, ut = t, tu = 0, t^2 = 0 (noncommutative)."""
    return Algebra.from_products(field, 2, [(0, 0, [(0, 1)]), (0, 1, [(1, 1)])], ["u", "t"])


def nilpotent_t(field: Field = GF2) -> Algebra:
    """tK[t]/(t^3) on basis t, s = t^2."""
    return Algebra.from_products(field, 2, [(0, 0, [(1, 1)])], ["t", "s"])


def matrix_algebra(n: int = 2, field: Field = GF2) -> Algebra:
    """M_n(K) on matrix units E_ij, row-major."""
    prods = []
    for i in range(n):
        for j in range(n):
            for l in range(n):
                prods.append((i * n + j, j * n + l, [(i * n + l, 1)]))
    names = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return Algebra.from_products(field, n * n, prods, names)


def curated(field: Field = GF2) -> dict[str, Algebra]:
    """The curated corpus: E1, E2, K[t]/(t^2) products and M_2, all of dim <= 4."""
    base = {
        "E1": e1(field),
        "E2": e2(field),
        "M2": matrix_algebra(2, field),
    }
    out = dict(base)
    small = {"idem": idempotent(field), "zero1": zero_mult(1, field)}
    for x in ("E1", "E2"):
        for y in ("E1", "E2"):
            out[f"{x}x{y}"] = direct_product(base[x], base[y]).algebra
        for y, s in small.items():
            out[f"{x}x{y}"] = direct_product(base[x], s).algebra
    return out
