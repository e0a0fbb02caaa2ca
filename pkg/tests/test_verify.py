from __future__ import annotations

import json

import pytest

from centralext.corpus import CorpusSpec, build_corpus, enumerate_algebras
from centralext.extension import BudgetExceeded
from centralext.verify import CHECKS, verify_corpus


def test_small_spec_all_pass():
    rep = verify_corpus(CorpusSpec(prime=2, max_dim=1))
    assert rep.ok
    assert set(rep.tallies) == set(CHECKS)
    assert all(t.counterexample is None for t in rep.tallies.values())
    assert rep.tallies["centrality_agreement"].checked == 5


def test_renderings_agree():
    rep = verify_corpus(CorpusSpec(prime=2, max_dim=1))
    d = json.loads(rep.to_json())
    text = rep.render()
    for name, c in d["checks"].items():
        assert f"{name}" in text and f"{c['passed']}/{c['checked']}" in text
    assert "wall_time" in rep.to_dict(timing=True)


def test_enumeration_order_and_budget():
    algs = list(enumerate_algebras(CorpusSpec(prime=2, max_dim=1)))
    assert [a.products() for a in algs] == [[], [], [(0, 0, [(0, 1)])]]
    with pytest.raises(BudgetExceeded, match="dim 3"):
        list(enumerate_algebras(CorpusSpec(prime=2, max_dim=3, budget=10**6)))


def test_surjection_sampling_is_seeded():
    a = verify_corpus(CorpusSpec(prime=2, max_dim=1, budget=3, seed=1))
    b = verify_corpus(CorpusSpec(prime=2, max_dim=1, budget=3, seed=1))
    assert a.info["surjections_checked"] == 3 and a.info["surjections_enumerated"] == 5
    assert a.to_json() == b.to_json()


def test_over_f3():
    rep = verify_corpus(CorpusSpec(prime=3, max_dim=1))
    assert rep.ok and rep.corpus["size"] == 4


def test_corpus_dedupes_curated(tmp_path):
    from centralext.catalog import idempotent
    from centralext.fileformat import dump

    dump(idempotent(), tmp_path / "idem.json")
    c = build_corpus(CorpusSpec(prime=2, max_dim=1, curated=(tmp_path / "idem.json",)))
    assert len(c) == 3 and c.labels == ["enum0_0", "enum1_0", "enum1_1"]
