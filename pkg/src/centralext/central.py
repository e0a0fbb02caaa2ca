"""Centrality of surjective homomorphisms and the equivalence checks built on it.

Three notions are computed independently and cross-checked:

* classic: every element of A commutes with every element of ker(alpha);
* algebraic: the two kernel-pair projections pi1, pi2: A x_B A -> A agree
  on R(A x_B A).  A parallel pair u, v with alpha u = alpha v factors as
  u = pi1 w, v = pi2 w, and R is a functor, so agreement on the kernel pair
  is equivalent to agreement for every such pair;
* categorical: the square eta_A pi = Comm(pi) eta_P is a pullback.

The annihilator variant (a k = 0 = k a) is also provided.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .algebra import (
    AlgebraError,
    AlgebraHom,
    comm_of_hom,
    comm_reflection,
    is_commutative,
    pullback_algebra,
)
from .exactfield import kernel_basis
from .extension import (
    Action,
    ExtensionError,
    InducedActionError,
    SplitExtension,
    check_split_extension,
    complete_morphism,
    extract_action,
    induced_action,
    is_symmetric,
    semidirect,
    semidirect_algebra,
)


class NotSurjectiveError(AlgebraError):
    pass


class CentralityContradiction(AssertionError):
    """Raised when the equivalent centrality notions disagree."""


class Verdict(NamedTuple):
    holds: bool
    witnesses: tuple = ()


def _require_surjective(alpha: AlgebraHom):
    if not alpha.is_surjective():
        raise NotSurjectiveError("centrality is only defined for surjective homs")


def classically_central(alpha: AlgebraHom) -> Verdict:
    """a k = k a for basis a of A and kernel-basis k; witnesses are (i, r) index pairs."""
    _require_surjective(alpha)
    A = alpha.source
    ker = kernel_basis(alpha.matrix).data
    bad = []
    for i in range(A.dim):
        e = A.basis_vector(i)
        for r, k in enumerate(ker):
            if A.mul(e, k) != A.mul(k, e):
                bad.append((i, r))
    return Verdict(not bad, tuple(bad))


def annihilator_central(alpha: AlgebraHom) -> Verdict:
    _require_surjective(alpha)
    A = alpha.source
    z = A.zero()
    ker = kernel_basis(alpha.matrix).data
    bad = []
    for i in range(A.dim):
        e = A.basis_vector(i)
        for r, k in enumerate(ker):
            if A.mul(e, k) != z or A.mul(k, e) != z:
                bad.append((i, r))
    return Verdict(not bad, tuple(bad))


def kernel_pair(alpha: AlgebraHom):
    return pullback_algebra(alpha, alpha)


def algebraically_central(alpha: AlgebraHom) -> bool:
    _require_surjective(alpha)
    kp = kernel_pair(alpha)
    r = comm_reflection(kp.algebra).ideal
    return all(kp.pi1(v) == kp.pi2(v) for v in r.basis.data)


def is_pullback_square(f: AlgebraHom, p: AlgebraHom, eta: AlgebraHom, q: AlgebraHom) -> bool:
    """Is P (with f: P -> A, p: P -> Q) a pullback of eta: A -> C <- Q: q?"""
    if (eta.matrix @ f.matrix).data != (q.matrix @ p.matrix).data:
        raise AlgebraError("square does not commute")
    pb = pullback_algebra(eta, q)
    if pb.algebra.dim != f.source.dim:
        return False
    return f.matrix.vstack(p.matrix).rank() == f.source.dim


def categorically_central(alpha: AlgebraHom) -> bool:
    _require_surjective(alpha)
    kp = kernel_pair(alpha)
    refl_p = comm_reflection(kp.algebra)
    refl_a = comm_reflection(alpha.source)
    comm_pi = comm_of_hom(kp.pi1, refl_p, refl_a)
    return is_pullback_square(kp.pi1, refl_p.eta, refl_a.eta, comm_pi)


# --------------------------------------------------------------------------
# Condition lists on split extensions


def _factors_linearly(ideal_basis, act: Action, side: str = "both") -> bool:
    for v in ideal_basis:
        if side in ("left", "both") and not act.left(v).is_zero():
            return False
        if side in ("right", "both") and not act.right(v).is_zero():
            return False
    return True


def symmetric_kernel_flags(e: SplitExtension, act: Action | None = None) -> dict[str, bool]:
    """Seven equivalent conditions (a)-(g) for a split extension to be central."""
    if not check_split_extension(e).ok:
        raise ExtensionError("invalid split extension")
    act = act or extract_action(e)
    A, B, X = e.A, e.B, e.X
    flags: dict[str, bool] = {}
    flags["a"] = classically_central(e.alpha).holds
    kx = e.kappa.matrix.columns()
    flags["b"] = all(
        A.mul(A.basis_vector(i), k) == A.mul(k, A.basis_vector(i)) for i in range(A.dim) for k in kx
    )
    S = semidirect_algebra(act)
    nb = B.dim
    flags["c"] = all(
        S.mul(S.basis_vector(i), S.basis_vector(nb + k)) == S.mul(S.basis_vector(nb + k), S.basis_vector(i))
        for i in range(S.dim) for k in range(X.dim)
    )
    d = is_commutative(X) and is_symmetric(act)
    flags["d"] = d
    refl = comm_reflection(B)
    flags["e"] = d and _factors_linearly(refl.ideal.basis.data, act, "left")
    flags["f"] = False
    flags["g"] = False
    if is_commutative(X):
        try:
            bar = induced_action(act, refl.eta)
        except InducedActionError:
            bar = None
        if bar is not None and is_symmetric(bar):
            flags["f"] = True
            flags["g"] = is_commutative(semidirect_algebra(bar))
    return flags


def comm_square_is_pullback(alpha: AlgebraHom) -> bool:
    """The square eta_B alpha = Comm(alpha) eta_A is a pullback."""
    ra = comm_reflection(alpha.source)
    rb = comm_reflection(alpha.target)
    ca = comm_of_hom(alpha, ra, rb)
    return is_pullback_square(alpha, ra.eta, rb.eta, ca)


def split_central_flags(e: SplitExtension, act: Action | None = None) -> dict[str, bool]:
    """Five equivalent conditions (a)-(e) for a split epimorphism to be central."""
    if not check_split_extension(e).ok:
        raise ExtensionError("invalid split extension")
    act = act or extract_action(e)
    flags: dict[str, bool] = {}
    a = classically_central(e.alpha).holds
    flags["a"] = a
    b = False
    if a and is_commutative(e.X):
        refl = comm_reflection(e.B)
        try:
            bar = induced_action(act, refl.eta)
        except InducedActionError:
            bar = None
        if bar is not None and is_symmetric(bar):
            target = semidirect(bar)
            ident = AlgebraHom.identity(e.X)
            m = complete_morphism(refl.eta, ident, e, target)
            b = m is not None and is_commutative(target.A)
    flags["b"] = b
    ra = comm_reflection(e.A)
    rb = comm_reflection(e.B)
    ca = comm_of_hom(e.alpha, ra, rb)
    c = is_pullback_square(e.alpha, ra.eta, rb.eta, ca)
    flags["c"] = c
    # (d) is decided on the canonical candidate: Comm(A), Comm(B) are commutative.
    flags["d"] = c and is_commutative(ra.algebra) and is_commutative(rb.algebra)
    flags["e"] = flags["d"] and all(h.is_surjective() for h in (e.alpha, ra.eta, rb.eta, ca))
    return flags


# --------------------------------------------------------------------------
# Pullback stability


class StabilityCheck(NamedTuple):
    forward: bool | None
    backward: bool | None


def pullback_stability(alpha_prime: AlgebraHom, g: AlgebraHom) -> StabilityCheck:
    """Pull the surjection alpha': A' -> B' back along g: B -> B'.

    ``forward`` is the implication "alpha' central => pulled-back alpha
    central"; ``backward`` is the converse, checked only for surjective g
    (None otherwise).
    """
    pb = pullback_algebra(alpha_prime, g)
    alpha = pb.pi2
    c_prime = classically_central(alpha_prime).holds
    c = classically_central(alpha).holds
    forward = (not c_prime) or c
    backward = ((not c) or c_prime) if g.is_surjective() else None
    return StabilityCheck(forward, backward)


@dataclass
class CentralityReport:
    classic: bool
    algebraic: bool
    categorical: bool
    annihilator: bool
    witnesses: dict = field(default_factory=dict)
    stability: StabilityCheck | None = None

    @property
    def agree(self) -> bool:
        return self.classic == self.algebraic == self.categorical

    def as_dict(self) -> dict:
        out = {
            "classic": self.classic,
            "algebraic": self.algebraic,
            "categorical": self.categorical,
            "annihilator": self.annihilator,
            "witnesses": {k: [list(w) for w in v] for k, v in sorted(self.witnesses.items())},
        }
        if self.stability is not None:
            out["pullback_stability"] = {"forward": self.stability.forward, "backward": self.stability.backward}
        return out


def centrality_report(alpha: AlgebraHom, pullback_along: AlgebraHom | None = None) -> CentralityReport:
    """All four notions, without asserting agreement."""
    classic = classically_central(alpha)
    ann = annihilator_central(alpha)
    rep = CentralityReport(
        classic=classic.holds,
        algebraic=algebraically_central(alpha),
        categorical=categorically_central(alpha),
        annihilator=ann.holds,
        witnesses={k: v.witnesses for k, v in (("classic", classic), ("annihilator", ann)) if not v.holds},
    )
    if pullback_along is not None:
        rep.stability = pullback_stability(alpha, pullback_along)
    return rep


def centrality_agreement(alpha: AlgebraHom, pullback_along: AlgebraHom | None = None) -> CentralityReport:
    """Like :func:`centrality_report` but raises if the notions disagree."""
    rep = centrality_report(alpha, pullback_along)
    if not rep.agree:
        raise CentralityContradiction(
            f"classic={rep.classic} algebraic={rep.algebraic} categorical={rep.categorical}"
        )
    if rep.annihilator and not rep.classic:
        raise CentralityContradiction("annihilator-central but not classically central")
    if rep.stability is not None and (rep.stability.forward is False or rep.stability.backward is False):
        raise CentralityContradiction(f"pullback stability failed: {rep.stability}")
    return rep

