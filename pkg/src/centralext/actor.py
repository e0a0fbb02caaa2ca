"""Acting morphisms into End(X) x End(X)^op, the weak actor [X], and faithfulness.

M = End(X) x End(X)^op is presented on matrix units: first the units of the
first coordinate row-major, then those of the second.  The second
coordinate multiplies in reverse order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .algebra import (
    Algebra,
    AlgebraHom,
    Subspace,
    iter_homs,
    kernel_of_hom,
    present_subalgebra,
    quotient_by_ideal,
)
from .exactfield import Matrix, kernel_basis
from .extension import (
    Action,
    ExtMorphism,
    SplitExtension,
    complete_morphism,
    enumerate_actions,
    extract_action,
    induced_action,
    semidirect,
)


class WeakActorError(AssertionError):
    pass


@dataclass(frozen=True)
class ActorTarget:
    X: Algebra
    M: Algebra

    @property
    def n(self) -> int:
        return self.X.dim

    def embed(self, phi: Matrix, psi: Matrix) -> tuple:
        """Coordinates of (phi, psi) in M."""
        return phi.flat() + psi.flat()

    def project(self, v) -> tuple[Matrix, Matrix]:
        n = self.n
        F = self.X.field
        first = [v[i * n:(i + 1) * n] for i in range(n)]
        second = [v[n * n + i * n:n * n + (i + 1) * n] for i in range(n)]
        return Matrix._raw(F, first, n), Matrix._raw(F, second, n)


def endo_pair_algebra(X: Algebra) -> ActorTarget:
    n = X.dim
    nn = n * n
    prods = []
    for i in range(n):
        for j in range(n):
            for l in range(n):
                # E_ij E_jl = E_il
                prods.append((i * n + j, j * n + l, [(i * n + l, 1)]))
                # opposite: E_ij * E_ki = E_ki E_ij = E_kj
                prods.append((nn + i * n + j, nn + l * n + i, [(nn + l * n + j, 1)]))
    names = [f"L{i + 1}{j + 1}" for i in range(n) for j in range(n)] + [
        f"R{i + 1}{j + 1}" for i in range(n) for j in range(n)
    ]
    M = Algebra.from_products(X.field, 2 * nn, prods, names, check=False)
    return ActorTarget(X, M)


@dataclass(frozen=True)
class WeakActor:
    target: ActorTarget
    subspace: Subspace
    algebra: Algebra
    inclusion: AlgebraHom

    @property
    def dim(self) -> int:
        return self.subspace.dim


def weak_actor(X: Algebra, target: ActorTarget | None = None) -> WeakActor:
    """[X] = {(phi, psi) : x phi(x') = psi(x) x' for all x, x'}."""
    target = target or endo_pair_algebra(X)
    n = X.dim
    nn = n * n
    F = X.field
    sc = X.structconsts
    rows = []
    # unknowns: phi[m][j] at m*n + j, psi[m][i] at nn + m*n + i
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [F.zero] * (2 * nn)
                # x_i phi(x_j) = sum_m phi[m][j] x_i x_m
                for m in range(n):
                    row[m * n + j] = F.red(row[m * n + j] + sc[i][m][k])
                # psi(x_i) x_j = sum_m psi[m][i] x_m x_j
                for m in range(n):
                    row[nn + m * n + i] = F.red(row[nn + m * n + i] - sc[m][j][k])
                rows.append(row)
    system = Matrix._raw(F, rows, 2 * nn)
    sol = kernel_basis(system)
    sub = Subspace.span(target.M, sol.data)
    try:
        pres = present_subalgebra(target.M, sub)
    except ValueError as exc:
        raise WeakActorError(f"[X] is not closed under multiplication: {exc}") from None
    return WeakActor(target, sub, pres.algebra, pres.inclusion)


def acting_morphism(act: Action, target: ActorTarget | None = None) -> AlgebraHom:
    """b -> (l(b), r(b))."""
    target = target or endo_pair_algebra(act.X)
    cols = [target.embed(act.l[i], act.r[i]) for i in range(act.B.dim)]
    m = Matrix.from_columns(act.field, cols, target.M.dim)
    return AlgebraHom(act.B, target.M, m)


def _as_action(x) -> Action:
    return extract_action(x) if isinstance(x, SplitExtension) else x


def is_faithful(x: SplitExtension | Action) -> bool:
    act = _as_action(x)
    return kernel_of_hom(acting_morphism(act)).dim == 0


class Accessified(NamedTuple):
    morphism: ExtMorphism
    extension: SplitExtension
    action: Action


def accessify(e: SplitExtension) -> Accessified:
    """Map e onto a faithful split extension by quotienting B by ker <l, r>."""
    act = extract_action(e)
    mu = acting_morphism(act)
    ker = kernel_of_hom(mu)
    q = quotient_by_ideal(e.B, ker)
    g = q.proj
    bar = induced_action(act, g)
    e2 = semidirect(bar)
    m = complete_morphism(g, AlgebraHom.identity(e.X), e, e2)
    if m is None:
        raise AssertionError("no morphism onto the induced extension")
    if not is_faithful(bar):
        raise AssertionError("accessified extension is not faithful")
    return Accessified(m, e2, bar)


def homs_into_weak_actor(B: Algebra, X: Algebra) -> int:
    """Number of algebra homs B -> [X]."""
    return sum(1 for _ in iter_homs(B, weak_actor(X).algebra))


def acting_vs_weak_actor_homs(B: Algebra, X: Algebra, budget: int = 2**20) -> tuple[int, int]:
    """(number of actions of B on X, number of homs B -> [X]); reported, not asserted."""
    return len(enumerate_actions(B, X, budget)), homs_into_weak_actor(B, X)
