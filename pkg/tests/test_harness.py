import math

import pytest

from commhide import harness, neural
from commhide.datasets import karate_graph
from commhide.detectors import DetectorConfig
from commhide.harness import ExperimentSpec


def test_default_budget_rounds_up():
    assert harness.default_budget(10) == 3
    assert harness.default_budget(11) == 4
    assert harness.default_budget(1) == 1


def test_make_budget_split():
    b = harness.make_budget(10, add_frac=0.7)
    assert (b.beta_add, b.beta_del) == (7, 3)
    b = harness.make_budget(10, del_frac=0.7)
    assert (b.beta_add, b.beta_del) == (3, 7)
    assert harness.make_budget(10).beta_add is None


def test_run_method_dispatch():
    g = karate_graph()
    from commhide.detectors import detect

    p = detect(g, DetectorConfig("louvain", seed=0))
    c = p.community_ids()[0]
    for method in harness.METHODS:
        g2, plan = harness.run_method(method, g, p, c, neural.Budget(2), 0)
        assert g2.n == g.n
    with pytest.raises(ValueError):
        harness.run_method("sadden", g, p, c, neural.Budget(2), 0)


def test_run_protocol_shapes_and_meta():
    g = karate_graph()
    spec = ExperimentSpec(method="neural", runs=2, seed=0)
    records = harness.run_protocol(g, spec)
    assert records
    for rec in records:
        assert {"nmi", "mnmi", "comm_splits", "comm_uniformity"} <= set(rec)
        assert rec["method"] == "neural"
        assert 0 <= rec["nmi"] <= 1
    agg = harness.aggregate(records)
    assert 0 <= agg["nmi"] <= 1


def test_run_protocol_single_target():
    g = karate_graph()
    spec = ExperimentSpec(method="dice", runs=2, seed=0, target="largest")
    records = harness.run_protocol(g, spec)
    assert len(records) == 2


def test_protocol_parallel_matches_serial(monkeypatch):
    g = karate_graph()
    spec = ExperimentSpec(method="neural", runs=2, seed=3, target="largest")
    serial = harness.run_protocol(g, spec)
    monkeypatch.setenv(harness.THREADS_ENV, "2")
    parallel = harness.run_protocol(g, spec)
    assert serial == parallel


def test_sweep_rejects_unknown_axis():
    with pytest.raises(ValueError):
        harness.sweep("resolution", [1.0])


def test_loglog_slope_exact_on_synthetic_rows():
    rows = [{"e_c": x, "seconds": 2.5 * x} for x in (10, 100, 1000)]
    assert harness.loglog_slope(rows) == pytest.approx(1.0, abs=1e-9)
    rows = [{"e_c": x, "seconds": 0.1 * x * x} for x in (10, 100, 1000)]
    assert harness.loglog_slope(rows) == pytest.approx(2.0, abs=1e-9)


def test_format_table_and_records(tmp_path):
    rows = [{"a": 1, "b": 0.5}, {"a": 2, "b": 0.25}]
    table = harness.format_table(rows)
    assert "a" in table.splitlines()[0]
    path = tmp_path / "rows.jsonl"
    harness.write_records(str(path), rows)
    assert len(path.read_text().splitlines()) == 2
