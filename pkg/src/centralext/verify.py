"""Exhaustive verification of the centrality and action results over a corpus.

Work is split into independent units (one per surjection chunk, one per
(B, X) pair, ...).  Each unit returns a :class:`Tallies` and units are merged
in index order, so the report does not depend on ``jobs``.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .actor import (
    accessify,
    acting_morphism,
    endo_pair_algebra,
    is_faithful,
    weak_actor,
)
from .algebra import (
    AlgebraHom,
    check_associative,
    iter_homs,
    kernel_of_hom,
    present_subalgebra,
    pullback_algebra,
    quotient_by_ideal,
)
from .central import (
    centrality_report,
    kernel_pair,
    pullback_stability,
    split_central_flags,
    symmetric_kernel_flags,
)
from .corpus import Corpus, CorpusSpec, build_corpus
from .exactfield import Matrix, kernel_basis
from .extension import (
    Action,
    InducedActionError,
    SplitExtension,
    check_action,
    check_mixed_associativity,
    check_split_extension,
    complete_morphism,
    enumerate_actions,
    extract_action,
    induced_action,
    is_ext_morphism,
    iter_split_morphisms,
    pullback_action,
    semidirect,
    shear_basis,
    transport_extension,
)
from .fileformat import to_json

ACTION_MAX_DIM = 2

CHECKS = {
    "centrality_agreement": "classic = algebraic = categorical on every surjection",
    "annihilator_implies_classic": "annihilator-central surjections are classically central",
    "annihilator_strictly_weaker": "some surjection is classically but not annihilator-central",
    "pullback_stability": "classic centrality is stable under pullback (and reflected along surjections)",
    "action_axioms": "enumerated actions pass the axioms and mixed associativity",
    "semidirect_valid": "semidirect products are associative split extensions",
    "roundtrip_extract_semidirect": "extract_action(semidirect(act)) = act, also after a change of basis",
    "roundtrip_semidirect_extract": "semidirect(extract_action(e)) is isomorphic to e via (f, id, id)",
    "seven_flags_unanimous": "the seven split-extension centrality conditions agree",
    "five_flags_unanimous": "the five split-epimorphism centrality conditions agree",
    "image_in_weak_actor": "image of <l, r> lies in [X]",
    "acting_morphism_injective": "distinct actions have distinct acting morphisms",
    "completion_iff_factorization": "a morphism (f, g, 1_X) exists iff mu' g = mu",
    "completion_unique": "the completing f is unique (brute force)",
    "acting_morphisms_along_surjections": "phi is acting iff phi g is acting, for surjective g",
    "induced_action": "induced actions along surjections are actions and pull back to the original",
    "faithful_iff_mono": "faithful (at most one morphism into e) iff the acting morphism is injective",
    "accessify_faithful": "every split extension maps onto a faithful one fixing X",
}


@dataclass
class Tally:
    checked: int = 0
    passed: int = 0
    counterexample: dict | None = None

    def record(self, ok: bool, witness: Callable[[], dict] | None = None):
        self.checked += 1
        if ok:
            self.passed += 1
        elif self.counterexample is None and witness is not None:
            self.counterexample = witness()

    def merge(self, other: "Tally"):
        self.checked += other.checked
        self.passed += other.passed
        if self.counterexample is None:
            self.counterexample = other.counterexample

    @property
    def ok(self) -> bool:
        return self.passed == self.checked


class Tallies(dict):
    def __missing__(self, key):
        t = self[key] = Tally()
        return t

    def merge(self, other: "Tallies"):
        for k, v in other.items():
            self[k].merge(v)


@dataclass
class VerifyReport:
    spec: dict
    corpus: dict
    tallies: dict
    info: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return all(self._passes(k, t) for k, t in self.tallies.items())

    @staticmethod
    def _passes(name: str, t: Tally) -> bool:
        if name == "annihilator_strictly_weaker":
            return t.checked > 0 and t.passed > 0
        return t.ok

    def to_dict(self, timing: bool = False) -> dict:
        checks = {}
        for name in sorted(self.tallies):
            t = self.tallies[name]
            checks[name] = {
                "checked": t.checked,
                "passed": t.passed,
                "ok": self._passes(name, t),
                "counterexample": t.counterexample,
            }
        out = {"spec": self.spec, "corpus": self.corpus, "checks": checks, "info": self.info, "ok": self.ok}
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2) + "\n"

    def render(self) -> str:
        lines = [f"corpus: {self.corpus['size']} algebras over F_{self.spec['prime']} (by dim {self.corpus['dims']})"]
        width = max(len(n) for n in self.tallies) if self.tallies else 0
        for name in sorted(self.tallies):
            t = self.tallies[name]
            mark = "PASS" if self._passes(name, t) else "FAIL"
            lines.append(f"{mark}  {name:<{width}}  {t.passed}/{t.checked}")
        for k, v in sorted(self.info.items()):
            lines.append(f"info  {k}: {v}")
        lines.append(f"wall time {self.wall_time:.1f}s")
        lines.append("ALL PASS" if self.ok else "COUNTEREXAMPLE FOUND")
        return "\n".join(lines)


# --------------------------------------------------------------------------
# shared state for worker processes

_STATE: dict = {}


def _init_worker(state):
    if state is _STATE:  # forked worker already holds the parent's state
        return
    snapshot = dict(state)
    _STATE.clear()
    _STATE.update(snapshot)


def _actions(bi: int, xi: int) -> list[Action]:
    cache = _STATE.setdefault("actions", {})
    if (bi, xi) not in cache:
        algs = _STATE["algebras"]
        cache[(bi, xi)] = enumerate_actions(algs[bi], algs[xi], _STATE["action_budget"])
    return cache[(bi, xi)]


def _weak(xi: int):
    cache = _STATE.setdefault("weak", {})
    if xi not in cache:
        X = _STATE["algebras"][xi]
        cache[xi] = weak_actor(X, endo_pair_algebra(X))
    return cache[xi]


def _homs(ai: int, bi: int, surjective: bool) -> list[AlgebraHom]:
    cache = _STATE.setdefault("homs", {})
    key = (ai, bi, surjective)
    if key not in cache:
        algs = _STATE["algebras"]
        cache[key] = list(iter_homs(algs[ai], algs[bi], surjective))
    return cache[key]


def _w(**objs) -> Callable[[], dict]:
    return lambda: {k: (to_json(v) if not isinstance(v, (dict, list, str, int, bool)) else v) for k, v in objs.items()}


# --------------------------------------------------------------------------
# units


def _unit_surjections(items) -> Tallies:
    tallies = Tallies()
    for ai, bi, hi in items:
        alpha = _homs(ai, bi, True)[hi]
        rep = centrality_report(alpha)
        tallies["centrality_agreement"].record(rep.agree, _w(alpha=alpha, report=rep.as_dict()))
        tallies["annihilator_implies_classic"].record(not rep.annihilator or rep.classic, _w(alpha=alpha))
        t = tallies["annihilator_strictly_weaker"]
        t.checked += 1
        if rep.classic and not rep.annihilator:
            t.passed += 1
        for g in _stability_probes(bi):

            st = pullback_stability(alpha, g)
            ok = st.forward is not False and st.backward is not False
            tallies["pullback_stability"].record(ok, _w(alpha=alpha, g=g))
        if _STATE["kernel_pair_extensions"] and hi < _STATE["kernel_pair_per_pair"]:
            _check_kernel_pair_extension(alpha, tallies)
    return tallies


def _stability_probes(bi: int) -> list[AlgebraHom]:
    """Homs into B used to pull a surjection back: identity, 0 -> B, and homs from 1-dim algebras."""
    cache = _STATE.setdefault("probes", {})
    if bi not in cache:
        algs = _STATE["algebras"]
        B = algs[bi]
        probes = [AlgebraHom.identity(B)]
        for ci, C in enumerate(algs):
            if C.dim <= 1:
                probes.extend(_homs(ci, bi, False))
        cache[bi] = probes
    return cache[bi]


def _check_kernel_pair_extension(alpha: AlgebraHom, tallies: Tallies):
    """The projection of a kernel pair is split by the diagonal; check it as a split extension."""
    A = alpha.source
    kp = kernel_pair(alpha)
    P = kp.algebra
    diag_cols = [kp.subspace.coordinates(v + v) for v in (A.basis_vector(i) for i in range(A.dim))]
    beta = AlgebraHom.unchecked(A, P, Matrix.from_columns(A.field, diag_cols, P.dim))
    ker = kernel_of_hom(kp.pi1)

    X = present_subalgebra(P, ker)
    e = SplitExtension(P, A, X.algebra, kp.pi1, beta, X.inclusion)
    valid = check_split_extension(e).ok
    tallies["semidirect_valid"].record(valid, _w(alpha=alpha))
    if not valid:
        return
    _extension_checks(e, extract_action(e), tallies)


def _extension_checks(e: SplitExtension, act: Action, tallies: Tallies):
    seven = symmetric_kernel_flags(e, act)
    tallies["seven_flags_unanimous"].record(len(set(seven.values())) == 1, _w(extension=e, flags=seven))
    five = split_central_flags(e, act)
    tallies["five_flags_unanimous"].record(len(set(five.values())) == 1, _w(extension=e, flags=five))
    s = semidirect(act)
    m = complete_morphism(AlgebraHom.identity(e.B), AlgebraHom.identity(e.X), e, s)
    tallies["roundtrip_semidirect_extract"].record(
        m is not None and m.f.is_bijective(), _w(extension=e)
    )


def _unit_actions(pair) -> Tallies:
    bi, xi = pair
    tallies = Tallies()
    algs = _STATE["algebras"]
    B, X = algs[bi], algs[xi]
    acts = _actions(bi, xi)
    target = _weak(xi).target
    wk = _weak(xi).subspace
    mus = set()
    for act in acts:
        rep = check_action(act)
        ok = rep.ok and check_mixed_associativity(act).ok
        tallies["action_axioms"].record(ok, _w(action=act))
        e = semidirect(act, check=False)
        tallies["semidirect_valid"].record(
            check_split_extension(e).ok and check_associative(e.A).ok, _w(action=act)
        )
        tallies["roundtrip_extract_semidirect"].record(extract_action(e) == act, _w(action=act))
        et = transport_extension(e, shear_basis(e.A.field, e.A.dim))
        back = extract_action(et)
        tallies["roundtrip_extract_semidirect"].record(back == act, _w(action=act, extension=et))
        _extension_checks(et, back, tallies)

        mu = acting_morphism(act, target)
        mus.add(mu.matrix.data)
        tallies["image_in_weak_actor"].record(
            all(wk.contains(c) for c in mu.matrix.columns()), _w(action=act)
        )
        faithful = is_faithful(act)
        if not faithful:
            tallies["faithful_iff_mono"].record(_two_morphisms_witness(act, mu), _w(action=act))
        elif X.dim <= 1:
            tallies["faithful_iff_mono"].record(_at_most_one_morphism(act, xi), _w(action=act))
        acc = accessify(e)
        ok = (
            is_faithful(acc.action)
            and is_ext_morphism(acc.morphism, e, acc.extension)
            and pullback_action(acc.action, acc.morphism.g) == act
            and acc.morphism.h.matrix.data == Matrix.identity(X.field, X.dim).data
        )
        tallies["accessify_faithful"].record(ok, _w(action=act))
    tallies["acting_morphism_injective"].record(len(mus) == len(acts), _w(B=B, X=X))
    return tallies


def _two_morphisms_witness(act: Action, mu: AlgebraHom) -> bool:
    """Non-faithful: the kernel pair of B -> B/ker(mu) gives two distinct morphisms into e."""

    q = quotient_by_ideal(act.B, kernel_of_hom(mu))
    kp = pullback_algebra(q.proj, q.proj)
    e = semidirect(act, check=False)
    e2 = semidirect(pullback_action(act, kp.pi1), check=False)
    ident = AlgebraHom.identity(act.X)
    m1 = complete_morphism(kp.pi1, ident, e2, e)
    m2 = complete_morphism(kp.pi2, ident, e2, e)
    return m1 is not None and m2 is not None and m1.g.matrix != m2.g.matrix


def _at_most_one_morphism(act: Action, xi: int) -> bool:
    """Faithful: every extension of a small algebra on X maps into e in at most one way."""
    algs = _STATE["algebras"]
    bi = algs.index(act.B)
    e = semidirect(act, check=False)
    ident = AlgebraHom.identity(act.X)
    for ci, C in enumerate(algs):
        if C.dim > 1:
            continue
        for other in _actions(ci, xi):
            e2 = semidirect(other, check=False)
            count = sum(1 for g in _homs(ci, bi, False) if complete_morphism(g, ident, e2, e) is not None)
            if count > 1:
                return False
    return True


def _unit_completion(item) -> Tallies:
    bi, b2i, xi = item
    tallies = Tallies()
    target = _weak(xi).target
    acts = _actions(bi, xi)
    acts2 = _actions(b2i, xi)
    if not acts or not acts2:
        return tallies
    ident = AlgebraHom.identity(_STATE["algebras"][xi])
    exts = [semidirect(a, check=False) for a in acts]
    exts2 = [semidirect(a, check=False) for a in acts2]
    mus = [acting_morphism(a, target).matrix for a in acts]
    mus2 = [acting_morphism(a, target).matrix for a in acts2]
    for g in _homs(bi, b2i, False):
        for e, mu in zip(exts, mus):
            for e2, mu2 in zip(exts2, mus2):
                m = complete_morphism(g, ident, e, e2)
                factor = (mu2 @ g.matrix).data == mu.data
                tallies["completion_iff_factorization"].record(
                    (m is not None) == factor, _w(g=g, e=e, e2=e2)
                )
                if e.A.dim <= 2 and e2.A.dim <= 2:
                    n = sum(1 for _ in iter_split_morphisms(e, e2, g, ident))
                    tallies["completion_unique"].record(n == (1 if m is not None else 0), _w(g=g, e=e, e2=e2))
    return tallies


def _unit_surjective_actions(item) -> Tallies:
    bi, b2i, xi = item
    tallies = Tallies()
    target = _weak(xi).target
    acts = _actions(bi, xi)
    keys = {a.key() for a in acts}
    acts2 = _actions(b2i, xi)
    keys2 = {a.key() for a in acts2}
    for g in _homs(bi, b2i, True):
        for a2 in acts2:
            pulled = pullback_action(a2, g)
            tallies["acting_morphisms_along_surjections"].record(
                check_action(pulled).ok and pulled.key() in keys, _w(g=g, action=a2)
            )
        kg = kernel_basis(g.matrix).data
        for a in acts:
            mu = acting_morphism(a, target)
            factors = all(not any(mu(v)) for v in kg)
            try:
                bar = induced_action(a, g)
            except InducedActionError:
                bar = None
            tallies["induced_action"].record(
                (bar is not None) == factors and (bar is None or pullback_action(bar, g) == a),
                _w(g=g, action=a),
            )
            if bar is not None:
                tallies["acting_morphisms_along_surjections"].record(bar.key() in keys2, _w(g=g, action=a))
    return tallies


# --------------------------------------------------------------------------
# driver


def _run(units, fn, jobs: int, state: dict) -> Tallies:
    out = Tallies()
    if jobs <= 1 or len(units) <= 1:
        if _STATE.get("algebras") is not state["algebras"]:
            _init_worker(state)
        for u in units:
            out.merge(fn(u))
        return out
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(state,)) as ex:
        for t in ex.map(fn, units, chunksize=max(1, len(units) // (4 * jobs))):
            out.merge(t)
    return out


def verify_corpus(spec: CorpusSpec, jobs: int = 1, action_max_dim: int = ACTION_MAX_DIM,
                  corpus: Corpus | None = None) -> VerifyReport:
    start = time.perf_counter()
    corpus = corpus or build_corpus(spec)
    algs = corpus.algebras
    state = {
        "algebras": algs,
        "action_budget": 2**20,
        "kernel_pair_extensions": True,
        "kernel_pair_per_pair": 2,
    }
    _init_worker(state)
    # caches live in the worker-global dict; share them with the inline path
    state = _STATE

    # surjections between corpus pairs, capped by the budget
    surj = []
    for ai, A in enumerate(algs):
        for bi, B in enumerate(algs):
            if B.dim <= A.dim:
                surj.extend((ai, bi, hi) for hi in range(len(_homs(ai, bi, True))))
    total_surj = len(surj)
    if total_surj > spec.budget:
        rng = random.Random(spec.seed)
        surj = sorted(rng.sample(surj, spec.budget))
    chunk = 64
    units = [surj[i:i + chunk] for i in range(0, len(surj), chunk)]
    tallies = _run(units, _unit_surjections, jobs, state)

    small = [i for i, a in enumerate(algs) if a.dim <= min(action_max_dim, spec.max_dim)]
    pairs = [(bi, xi) for bi in small for xi in small]
    tallies.merge(_run(pairs, _unit_actions, jobs, state))

    # all triples with dim X <= 1; for dim X = 2 only those with dim B, dim B' <= 1
    # or one of them 0 (the full dim-2 cube is about 1.6e7 action pairs)
    completion = []
    for xi in small:
        for bi in small:
            for b2i in small:
                db, db2 = algs[bi].dim, algs[b2i].dim
                if algs[xi].dim <= 1 or max(db, db2) <= 1 or min(db, db2) == 0:
                    completion.append((bi, b2i, xi))
    tallies.merge(_run(completion, _unit_completion, jobs, state))

    surj_actions = [
        (bi, b2i, xi)
        for xi in small for bi in small for b2i in small
        if algs[b2i].dim <= algs[bi].dim
    ]
    tallies.merge(_run(surj_actions, _unit_surjective_actions, jobs, state))

    report = VerifyReport(
        spec=spec.describe(),
        corpus={"size": len(algs), "dims": corpus.dims(), "labels": list(corpus.labels)},
        tallies={k: tallies[k] for k in sorted(tallies)},
        info={
            "surjections_enumerated": total_surj,
            "surjections_checked": len(surj),
            "action_pairs": len(pairs),
            "actions_enumerated": sum(len(_actions(b, x)) for b, x in pairs),
        },
    )
    report.wall_time = time.perf_counter() - start
    return report
