"""JSON interchange files for algebras, homs, actions and split extensions.

Every file is one JSON object with a ``kind`` key.  Scalars are canonical
residues (prime fields) or ``"num/den"`` strings (rationals).  Algebras may be
embedded objects or relative paths to algebra files.  :func:`dumps` writes
the canonical layout, so ``dumps(loads(text)) == text`` for canonical text.

Example algebra::

    {
      "kind": "algebra",
      "field": {"kind": "prime", "p": 2},
      "dim": 2,
      "basis": ["u", "t"],
      "products": [
        [0, 0, [[0, 1]]],
        [0, 1, [[1, 1]]]
      ]
    }
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import Algebra, AlgebraError, AlgebraHom, check_associative, check_hom
from .exactfield import Field, FieldError, Matrix
from .extension import Action, SplitExtension, check_action, check_split_extension


class FileFormatError(ValueError):
    pass


class FileSyntaxError(FileFormatError):
    def __init__(self, msg: str, line: int, column: int):
        super().__init__(f"syntax error at line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


class SemanticError(FileFormatError):
    pass


class InvariantError(SemanticError):
    """Well-formed input whose object breaks an algebraic invariant."""


# --------------------------------------------------------------------------
# canonical writer


def _inline(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def _dump(obj, indent: int) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if all(not isinstance(v, (dict, list)) for v in obj.values()):
            return _inline(obj)
        items = [f"{pad}{json.dumps(k)}: {_dump(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj or not any(isinstance(x, (list, dict)) for x in obj):
            return _inline(obj)
        if any(isinstance(x, dict) for x in obj):
            items = [pad + _dump(x, indent + 1) for x in obj]
        else:
            items = [pad + _inline(x) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return _inline(obj)


def dumps(obj) -> str:
    return _dump(to_json(obj), 0) + "\n"


def dump(obj, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _matrix_json(m: Matrix) -> list:
    return m.to_lists()


def algebra_json(a: Algebra) -> dict:
    fmt = a.field.format
    return {
        "kind": "algebra",
        "field": a.field.describe(),
        "dim": a.dim,
        "basis": list(a.names),
        "products": [[i, j, [[k, fmt(c)] for k, c in terms]] for i, j, terms in a.products()],
    }


def to_json(obj) -> dict:
    if isinstance(obj, dict):
        return obj
    if isinstance(obj, Algebra):
        return algebra_json(obj)
    if isinstance(obj, AlgebraHom):
        return {
            "kind": "hom",
            "source": algebra_json(obj.source),
            "target": algebra_json(obj.target),
            "matrix": _matrix_json(obj.matrix),
        }
    if isinstance(obj, Action):
        return {
            "kind": "action",
            "B": algebra_json(obj.B),
            "X": algebra_json(obj.X),
            "l": [_matrix_json(m) for m in obj.l],
            "r": [_matrix_json(m) for m in obj.r],
        }
    if isinstance(obj, SplitExtension):
        return {
            "kind": "extension",
            "A": algebra_json(obj.A),
            "B": algebra_json(obj.B),
            "X": algebra_json(obj.X),
            "alpha": _matrix_json(obj.alpha.matrix),
            "beta": _matrix_json(obj.beta.matrix),
            "kappa": _matrix_json(obj.kappa.matrix),
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# --------------------------------------------------------------------------
# reader


def _need(d: dict, key: str, where: str):
    if key not in d:
        raise SemanticError(f"{where}: missing key {key!r}")
    return d[key]


def parse_field(raw) -> Field:
    if not isinstance(raw, dict):
        raise SemanticError("field: expected an object")
    kind = raw.get("kind")
    try:
        if kind == "prime":
            return Field(_need(raw, "p", "field"))
        if kind == "rational":
            return Field(None)
    except FieldError as exc:
        raise SemanticError(f"field: {exc}") from None
    raise SemanticError(f"field: unknown kind {kind!r}")


def _as_int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SemanticError(f"{where}: expected an integer, got {x!r}")
    return x


def algebra_from_json(d, base_dir: Path | None = None, check: bool = True) -> Algebra:
    if isinstance(d, str):
        return load_file(_resolve(d, base_dir), expect="algebra", check=check)
    if not isinstance(d, dict) or d.get("kind", "algebra") != "algebra":
        raise SemanticError("expected an algebra object")
    F = parse_field(_need(d, "field", "algebra"))
    dim = _as_int(_need(d, "dim", "algebra"), "algebra.dim")
    if dim < 0:
        raise SemanticError("algebra.dim must be non-negative")
    names = d.get("basis") or None
    if names is not None and (len(names) != dim or not all(isinstance(n, str) for n in names)):
        raise SemanticError("algebra.basis must list one name per dimension")
    prods = []
    for entry in _need(d, "products", "algebra"):
        if not (isinstance(entry, list) and len(entry) == 3 and isinstance(entry[2], list)):
            raise SemanticError(f"algebra.products: malformed entry {entry!r}")
        i, j = _as_int(entry[0], "product index"), _as_int(entry[1], "product index")
        terms = []
        for t in entry[2]:
            if not (isinstance(t, list) and len(t) == 2):
                raise SemanticError(f"algebra.products: malformed term {t!r}")
            try:
                terms.append((_as_int(t[0], "product term"), F.parse(t[1])))
            except FieldError as exc:
                raise SemanticError(f"algebra.products: {exc}") from None
        prods.append((i, j, terms))
    try:
        alg = Algebra.from_products(F, dim, prods, names, check=False)
    except AlgebraError as exc:
        raise SemanticError(f"algebra: {exc}") from None
    if check:
        rep = check_associative(alg)
        if not rep.ok:
            i, j, k = rep.violations[0].witness
            raise InvariantError(f"algebra: associativity violated on basis triple ({i}, {j}, {k})")
    return alg


def matrix_from_json(raw, field: Field, nrows: int, ncols: int, where: str) -> Matrix:
    if not isinstance(raw, list) or len(raw) != nrows:
        raise SemanticError(f"{where}: expected {nrows} rows")
    rows = []
    for r in raw:
        if not isinstance(r, list) or len(r) != ncols:
            raise SemanticError(f"{where}: expected rows of length {ncols}")
        try:
            rows.append([field.parse(x) for x in r])
        except FieldError as exc:
            raise SemanticError(f"{where}: {exc}") from None
    return Matrix._raw(field, rows, ncols)


def _hom(raw, src: Algebra, tgt: Algebra, where: str, check: bool) -> AlgebraHom:
    m = matrix_from_json(raw, src.field, tgt.dim, src.dim, where)
    h = AlgebraHom.unchecked(src, tgt, m)
    if check:
        rep = check_hom(h)
        if not rep.ok:
            i, j = rep.violations[0].witness
            raise InvariantError(f"{where}: not multiplicative on basis pair ({i}, {j})")
    return h


def _same_field(*algs: Algebra):
    if len({a.field for a in algs}) > 1:
        raise SemanticError("algebras over different fields")


def from_json(d: dict, base_dir: Path | None = None, check: bool = True, expect: str | None = None):
    if not isinstance(d, dict):
        raise SemanticError("top level must be an object")
    kind = d.get("kind", "algebra")
    if expect is not None and kind != expect:
        raise SemanticError(f"expected a {expect} file, got {kind!r}")
    if kind == "algebra":
        return algebra_from_json(d, base_dir, check)
    if kind == "hom":
        src = algebra_from_json(_need(d, "source", "hom"), base_dir, check)
        tgt = algebra_from_json(_need(d, "target", "hom"), base_dir, check)
        _same_field(src, tgt)
        return _hom(_need(d, "matrix", "hom"), src, tgt, "hom.matrix", check)
    if kind == "action":
        B = algebra_from_json(_need(d, "B", "action"), base_dir, check)
        X = algebra_from_json(_need(d, "X", "action"), base_dir, check)
        _same_field(B, X)
        mats = {}
        for side in ("l", "r"):
            raw = _need(d, side, "action")
            if not isinstance(raw, list) or len(raw) != B.dim:
                raise SemanticError(f"action.{side}: need one matrix per basis vector of B")
            mats[side] = tuple(matrix_from_json(m, B.field, X.dim, X.dim, f"action.{side}") for m in raw)
        act = Action(B, X, mats["l"], mats["r"])
        if check:
            rep = check_action(act)
            if not rep.ok:
                v = rep.violations[0]
                raise InvariantError(f"action: axiom {v.check} violated at basis indices {v.witness}")
        return act
    if kind == "extension":
        A = algebra_from_json(_need(d, "A", "extension"), base_dir, check)
        B = algebra_from_json(_need(d, "B", "extension"), base_dir, check)
        X = algebra_from_json(_need(d, "X", "extension"), base_dir, check)
        _same_field(A, B, X)
        e = SplitExtension(
            A, B, X,
            _hom(_need(d, "alpha", "extension"), A, B, "extension.alpha", False),
            _hom(_need(d, "beta", "extension"), B, A, "extension.beta", False),
            _hom(_need(d, "kappa", "extension"), X, A, "extension.kappa", False),
        )
        if check:
            rep = check_split_extension(e)
            if not rep.ok:
                raise InvariantError(f"extension: invariant {rep.violations[0].check} violated")
        return e
    raise SemanticError(f"unknown kind {kind!r}")


def loads(text: str, base_dir: Path | None = None, check: bool = True, expect: str | None = None):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return from_json(d, base_dir, check, expect)


def _resolve(ref: str, base_dir: Path | None) -> Path:
    p = Path(ref)
    if not p.is_absolute() and base_dir is not None:
        p = base_dir / p
    return p


def load_file(path, expect: str | None = None, check: bool = True):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror}") from None
    try:
        return loads(text, path.parent, check, expect)
    except FileFormatError as exc:
        exc.args = (f"{path}: {exc}",)
        raise


def parse_algebra_file(text: str) -> Algebra:
    return loads(text, expect="algebra")


def canonicalize(text: str) -> str:
    return dumps(loads(text))


def kind_of(obj: Any) -> str:
    return to_json(obj)["kind"]
