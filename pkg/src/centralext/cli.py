"""Command-line interface.

Exit codes: 0 pass, 1 property violation or counterexample, 2 input error.
Query commands (``central``, ``faithful``) exit 0 whatever the answer and
reserve 1 for disagreements between notions that must coincide.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .actor import accessify, acting_morphism, is_faithful, weak_actor
from .algebra import (
    Algebra,
    AlgebraHom,
    check_associative,
    check_hom,
    commutator_ideal,
    comm_reflection,
    format_vector,
    kernel_of_hom,
)
from .central import (
    algebraically_central,
    annihilator_central,
    categorically_central,
    classically_central,
    split_central_flags,
    symmetric_kernel_flags,
)
from .corpus import BUILTIN_CURATED, CorpusSpec, curated_files, enumerate_algebras_of_dim
from .exactfield import Field, FieldError
from .extension import (
    Action,
    BudgetExceeded,
    SplitExtension,
    check_action,
    check_split_extension,
    extract_action,
    semidirect,
)
from .fileformat import FileFormatError, InvariantError, dump, dumps, load_file, to_json
from .verify import verify_corpus

OK, VIOLATION, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str, *kinds: str):
    obj = load_file(path)
    kind = to_json(obj)["kind"]
    if kinds and kind not in kinds:
        raise InputError(f"{path}: expected {' or '.join(kinds)}, got {kind}")
    return obj


def _emit(obj, out: str | None):
    if out:
        dump(obj, out)
    else:
        sys.stdout.write(dumps(obj))


def _print_json(d: dict):
    sys.stdout.write(json.dumps(d, sort_keys=True, indent=2) + "\n")


def _as_extension(obj) -> tuple[SplitExtension, Action]:
    if isinstance(obj, Action):
        return semidirect(obj), obj
    return obj, extract_action(obj)


def _span(a: Algebra, vectors) -> str:
    return "span{" + ", ".join(format_vector(a, v) for v in vectors) + "}"


# --------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    obj = load_file(args.file, check=False)
    if isinstance(obj, Algebra):
        rep = check_associative(obj)
    elif isinstance(obj, AlgebraHom):
        rep = check_hom(obj)
    elif isinstance(obj, Action):
        rep = check_action(obj)
    else:
        rep = check_split_extension(obj)
    kind = to_json(obj)["kind"]
    if rep.ok:
        print(f"{args.file}: valid {kind}")
        return OK
    for v in rep.violations:
        print(f"{args.file}: {v.check} violated at {v.witness}" + (f" ({v.detail})" if v.detail else ""))
    return VIOLATION


def cmd_comm(args) -> int:
    a = _load(args.file, "algebra")
    refl = comm_reflection(a)
    if args.out:
        dump(refl.algebra, args.out)
    if args.json:
        _print_json({
            "commutator_ideal": [list(map(a.field.format, v)) for v in commutator_ideal(a).vectors()],
            "comm": to_json(refl.algebra),
            "eta": refl.eta.matrix.to_lists(),
        })
        return OK
    print(f"R(A) = {_span(a, refl.ideal.vectors())}  (dim {refl.ideal.dim})")
    print(f"Comm(A): dim {refl.algebra.dim}, basis {list(refl.algebra.names)}")
    for i, j, terms in refl.algebra.products():
        b = refl.algebra
        print(f"  {b.names[i]}*{b.names[j]} = {format_vector(b, b.basis_product(i, j))}")
    return OK


def cmd_central(args) -> int:
    alpha = _load(args.file, "hom")
    if not alpha.is_surjective():
        raise InputError(f"{args.file}: hom is not surjective")
    modes = ["classic", "algebraic", "categorical", "annihilator"] if args.mode == "all" else [args.mode]
    fns = {
        "classic": lambda: classically_central(alpha).holds,
        "algebraic": lambda: algebraically_central(alpha),
        "categorical": lambda: categorically_central(alpha),
        "annihilator": lambda: annihilator_central(alpha).holds,
    }
    verdicts = {m: fns[m]() for m in modes}
    if args.json:
        _print_json(verdicts)
    else:
        for m in modes:
            print(f"{m}: {'central' if verdicts[m] else 'not central'}")
    equiv = [verdicts[m] for m in ("classic", "algebraic", "categorical") if m in verdicts]
    if len(set(equiv)) > 1:
        print("DISAGREEMENT between equivalent notions", file=sys.stderr)
        return VIOLATION
    if verdicts.get("annihilator") and verdicts.get("classic") is False:
        print("annihilator-central but not classically central", file=sys.stderr)
        return VIOLATION
    return OK


def cmd_semidirect(args) -> int:
    act = _load(args.file, "action")
    _emit(semidirect(act), args.out)
    return OK


def cmd_action_of(args) -> int:
    e = _load(args.file, "extension")
    _emit(extract_action(e), args.out)
    return OK


def _flags_command(args, fn, title: str) -> int:
    e, act = _as_extension(_load(args.file, "extension", "action"))
    flags = fn(e, act)
    agree = len(set(flags.values())) == 1
    if args.json:
        _print_json({"flags": flags, "unanimous": agree})
    else:
        print(title)
        for k, v in flags.items():
            print(f"  ({k}) {v}")
        print("unanimous" if agree else "DISAGREEMENT")
    return OK if agree else VIOLATION


def cmd_lemma31(args) -> int:
    return _flags_command(args, symmetric_kernel_flags, "split extension centrality, seven conditions")


def cmd_thm33(args) -> int:
    return _flags_command(args, split_central_flags, "split epimorphism centrality, five conditions")


def cmd_actor(args) -> int:
    X = _load(args.file, "algebra")
    w = weak_actor(X)
    n = X.dim
    if args.json:
        _print_json({
            "dim": w.dim,
            "target_dim": w.target.M.dim,
            "basis": [[w.target.project(v)[0].to_lists(), w.target.project(v)[1].to_lists()]
                      for v in w.subspace.vectors()],
        })
        return OK
    print(f"[X]: dim {w.dim} inside End(X) x End(X)^op (dim {2 * n * n})")
    for v in w.subspace.vectors():
        phi, psi = w.target.project(v)
        print(f"  phi={phi.to_lists()} psi={psi.to_lists()}")
    return OK


def cmd_faithful(args) -> int:
    e, act = _as_extension(_load(args.file, "extension", "action"))
    mu = acting_morphism(act)
    ker = kernel_of_hom(mu)
    inside = weak_actor(act.X).subspace
    contained = all(inside.contains(c) for c in mu.matrix.columns())
    print(f"acting morphism kernel: {_span(act.B, ker.vectors())}")
    print("faithful" if is_faithful(act) else "not faithful")
    if not contained:
        print("image of the acting morphism is not contained in [X]", file=sys.stderr)
        return VIOLATION
    return OK


def cmd_accessify(args) -> int:
    e, _ = _as_extension(_load(args.file, "extension", "action"))
    res = accessify(e)
    _emit(res.extension, args.out)
    if args.morphism:
        dump(
            {
                "kind": "ext-morphism",
                "f": res.morphism.f.matrix.to_lists(),
                "g": res.morphism.g.matrix.to_lists(),
                "h": res.morphism.h.matrix.to_lists(),
            },
            args.morphism,
        )
    return OK


def cmd_enumerate(args) -> int:
    F = Field(args.prime)
    algs = list(enumerate_algebras_of_dim(F, args.dim, args.budget))
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        for k, a in enumerate(algs):
            dump(a, d / f"enum{args.dim}_{k}.json")
    if args.json:
        _print_json({"prime": args.prime, "dim": args.dim, "count": len(algs),
                     "algebras": [to_json(a) for a in algs] if args.list else None})
    else:
        print(f"{len(algs)} associative algebras of dim {args.dim} over F_{args.prime}")
        if args.list:
            for a in algs:
                print("  " + "; ".join(
                    f"{a.names[i]}*{a.names[j]}={format_vector(a, a.basis_product(i, j))}"
                    for i, j, _ in a.products()) or "  (zero multiplication)")
    return OK


def cmd_verify(args) -> int:
    curated: list = []
    if args.builtin:
        curated += curated_files(BUILTIN_CURATED)
    if args.curated:
        curated += curated_files(args.curated)
    spec = CorpusSpec(prime=args.prime, max_dim=args.max_dim, curated=tuple(curated),
                      budget=args.budget, seed=args.seed)
    report = verify_corpus(spec, jobs=args.jobs)
    if args.json:
        sys.stdout.write(report.to_json(timing=args.timing))
    else:
        print(report.render())
    if args.witness_dir and not report.ok:
        d = Path(args.witness_dir)
        d.mkdir(parents=True, exist_ok=True)
        for name, t in sorted(report.tallies.items()):
            if t.counterexample is not None:
                for key, obj in t.counterexample.items():
                    if isinstance(obj, dict) and "kind" in obj:
                        dump(obj, d / f"{name}.{key}.json")
    return OK if report.ok else VIOLATION


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="centralext", description="Central extensions of finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, kinds="FILE"):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file", metavar=kinds)
        s.set_defaults(fn=fn)
        return s

    add("validate", cmd_validate, "check the invariants of an algebra/hom/action/extension file")
    s = add("comm", cmd_comm, "commutator ideal and commutative reflection", "ALGEBRA")
    s.add_argument("--out", help="write Comm(A) to this file")
    s.add_argument("--json", action="store_true")
    s = add("central", cmd_central, "centrality of a surjective hom", "HOM")
    s.add_argument("--mode", choices=["classic", "algebraic", "categorical", "annihilator", "all"], default="all")
    s.add_argument("--json", action="store_true")
    s = add("semidirect", cmd_semidirect, "split extension of an action", "ACTION")
    s.add_argument("--out")
    s = add("action-of", cmd_action_of, "action of a split extension", "EXTENSION")
    s.add_argument("--out")
    for name, fn, h in (
        ("lemma31", cmd_lemma31, "seven centrality conditions on a split extension"),
        ("thm33", cmd_thm33, "five centrality conditions on a split epimorphism"),
    ):
        s = add(name, fn, h, "EXTENSION|ACTION")
        s.add_argument("--json", action="store_true")
    s = add("actor", cmd_actor, "weak actor [X]", "ALGEBRA")
    s.add_argument("--json", action="store_true")
    add("faithful", cmd_faithful, "is the acting morphism injective", "EXTENSION|ACTION")
    s = add("accessify", cmd_accessify, "map onto a faithful split extension fixing X", "EXTENSION|ACTION")
    s.add_argument("--out")
    s.add_argument("--morphism", help="write the (f, g, 1_X) morphism to this file")

    s = sub.add_parser("enumerate", help="all associative structure tables of one dimension")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--prime", type=int, default=2)
    s.add_argument("--budget", type=int, default=10**6)
    s.add_argument("--list", action="store_true", help="list the tables")
    s.add_argument("--out-dir", help="write one file per algebra")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("verify", help="exhaustive verification over a corpus")
    s.add_argument("--prime", type=int, default=2)
    s.add_argument("--max-dim", type=int, default=2)
    s.add_argument("--curated", help="directory of curated algebra files")
    s.add_argument("--builtin", action="store_true", help="include the bundled curated algebras")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--budget", type=int, default=10**6)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", action="store_true")
    s.add_argument("--timing", action="store_true", help="include wall time in JSON output")
    s.add_argument("--witness-dir", help="write counterexample files here")
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATION if args.command == "validate" else INPUT_ERROR
    except (FileFormatError, InputError, FieldError, BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
