import json

import pytest

from conevex.convexity import AlphaGrid
from conevex.generators import GeneratorConfig
from conevex.suite import FAIL, PASS, SKIP, check_instance, run_suite


def test_counts_add_up():
    r = run_suite(GeneratorConfig(5, "H2"), 12)
    c = r.counts()
    assert c[PASS] + c[FAIL] + c[SKIP] == 12 and r.passed
    assert r.first_counterexample is None


def test_free_family_gating():
    r = run_suite(GeneratorConfig(5, "FREE"), 10)
    table = r.check_counts()
    for gated in ("alternative_forward", "scalarization", "vector_saddle", "scalar_saddle", "hypotheses",
                  "family_guarantees"):
        assert table[gated][SKIP] == 10
    assert table["alternative_backward"][PASS] == 10
    assert table["pmin_pmax_conjugation"][PASS] == 10
    assert table["oracles"][PASS] == 1


def test_reports_are_byte_identical_across_jobs():
    cfg = GeneratorConfig(9, "H3")
    one = run_suite(cfg, 8, jobs=1).to_json()
    assert one == run_suite(cfg, 8, jobs=1).to_json()
    assert one == run_suite(cfg, 8, jobs=3).to_json()
    json.loads(one)


def test_failure_is_serialized(inst_a):
    # INST-A breaks the H3 guarantees (not anchored), so the suite must fail and keep the instance
    res = check_instance(inst_a, "H3", 0, AlphaGrid(4))
    assert res.status == FAIL and res.checks["family_guarantees"] == FAIL
    assert '"version": 1' in res.instance_text
    assert "family_guarantees" in res.to_dict(full=True)["details"]


def test_bad_count():
    with pytest.raises(ValueError):
        run_suite(GeneratorConfig(1, "H1"), 0)


def test_h3_seed_7_passes():
    r = run_suite(GeneratorConfig(7, "H3"), 100)
    assert r.passed and r.counts()[PASS] == 100
