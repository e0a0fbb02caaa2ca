from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centralext.algebra import Algebra, AlgebraHom
from centralext.catalog import curated, e1, e2
from centralext.corpus import BUILTIN_CURATED, curated_files, enumerate_algebras_of_dim
from centralext.exactfield import GF2, QQ, Matrix
from centralext.extension import enumerate_actions, semidirect
from centralext.fileformat import (
    FileSyntaxError,
    InvariantError,
    SemanticError,
    canonicalize,
    dumps,
    load_file,
    loads,
    parse_algebra_file,
)

E1_TEXT = json.dumps({
    "kind": "algebra",
    "field": {"kind": "prime", "p": 2},
    "dim": 2,
    "basis": ["u", "t"],
    "products": [[0, 0, [[0, 1]]], [0, 1, [[1, 1]]], [1, 0, [[1, 1]]]],
})


def test_parse_e1():
    assert parse_algebra_file(E1_TEXT) == e1()


def test_empty_products_is_zero_algebra():
    a = parse_algebra_file('{"field": {"kind": "prime", "p": 3}, "dim": 3, "products": []}')
    assert a.dim == 3 and a.products() == []


def test_rejects_nonassociative():
    d = json.loads(dumps(e2()))
    d["products"].append([1, 1, [[0, 1]]])
    with pytest.raises(InvariantError, match="associativity"):
        loads(json.dumps(d))


def test_syntax_error_position():
    with pytest.raises(FileSyntaxError) as info:
        loads('{\n  "dim": 1,\n  "products": [,]\n}')
    assert (info.value.line, info.value.column) == (3, 16)


@pytest.mark.parametrize("text, msg", [
    ('{"kind": "algebra", "dim": 1, "products": []}', "field"),
    ('{"field": {"kind": "prime", "p": 4}, "dim": 1, "products": []}', "prime"),
    ('{"field": {"kind": "prime", "p": 2}, "dim": 1, "products": [[0, 0, [[0, 2]]]]}', "range"),
    ('{"field": {"kind": "prime", "p": 2}, "dim": 1, "products": [[0, 1, [[0, 1]]]]}', "out of range"),
    ('{"kind": "widget"}', "unknown kind"),
])
def test_semantic_errors(text, msg):
    with pytest.raises(SemanticError, match=msg):
        loads(text)


def test_canonical_round_trip_curated():
    files = curated_files(BUILTIN_CURATED)
    assert {f.stem for f in files} == set(curated())
    for f in files:
        text = f.read_text()
        assert canonicalize(text) == text
        assert load_file(f) == curated()[f.stem]


def test_rational_scalars_round_trip():
    a = Algebra.from_products(QQ, 1, [(0, 0, [(0, Fraction(1, 1))])])
    text = dumps(a)
    assert '"1/1"' in text
    assert loads(text) == a
    h = AlgebraHom(a, a, Matrix.from_rows(QQ, [[1]]))
    assert canonicalize(dumps(h)) == dumps(h)


def test_references_resolve_relative_to_file(tmp_path):
    (tmp_path / "a.json").write_text(dumps(e1()))
    (tmp_path / "h.json").write_text(json.dumps({
        "kind": "hom", "source": "a.json", "target": "a.json", "matrix": [[1, 0], [0, 1]],
    }))
    h = load_file(tmp_path / "h.json")
    assert h.source == e1() and h.is_bijective()


def test_non_hom_rejected():
    text = json.dumps({"kind": "hom", "source": json.loads(dumps(e2())), "target": json.loads(dumps(e2())),
                       "matrix": [[0, 1], [1, 0]]})
    with pytest.raises(InvariantError, match="multiplicative"):
        loads(text)


ALGS = [a for d in (0, 1, 2) for a in enumerate_algebras_of_dim(GF2, d)]
ACTS = [act for b in ALGS[:4] for x in ALGS[:4] for act in enumerate_actions(b, x)]


@given(st.sampled_from(ALGS))
@settings(max_examples=40, deadline=None)
def test_algebra_round_trip(a):
    text = dumps(a)
    assert loads(text) == a and canonicalize(text) == text


@given(st.sampled_from(ACTS))
@settings(max_examples=40, deadline=None)
def test_action_and_extension_round_trip(act):
    for obj in (act, semidirect(act)):
        text = dumps(obj)
        assert loads(text) == obj and dumps(loads(text)) == text
