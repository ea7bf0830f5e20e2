import csv
import io
import json

import pytest

from kmp_spectra.sweep import SweepConfig, draw_graph, evaluate, replay, sweep, to_csv, to_json


def test_sweep_reproducible_and_worker_independent():
    cfg = SweepConfig(n=3, k_max=3, trials=12, seed=4)
    a, sa = sweep(cfg)
    b, sb = sweep(SweepConfig(n=3, k_max=3, trials=12, seed=4, workers=2))
    assert [r.digest for r in a] == [r.digest for r in b]
    assert to_csv(a, 3) == to_csv(b, 3)
    assert sa == sb


def test_trial_stream_independent_of_trial_count():
    short, _ = sweep(SweepConfig(n=4, k_max=2, trials=3, seed=9))
    long, _ = sweep(SweepConfig(n=4, k_max=2, trials=6, seed=9))
    assert [r.digest for r in short] == [r.digest for r in long[:3]]


def test_zero_violations_small():
    _, summary = sweep(SweepConfig(n=3, k_max=3, trials=100))
    assert summary.total_violations == 0


def test_codim1_family_is_strict():
    records, summary = sweep(SweepConfig(n=4, k_max=4, trials=30, family="codim1", seed=2))
    assert summary.total_violations == 0
    assert summary.non_strict_parity == 0


def test_exact_mode():
    records, summary = sweep(SweepConfig(n=3, k_max=3, trials=5, mode="exact"))
    assert summary.total_violations == 0


def test_csv_and_json_shapes():
    cfg = SweepConfig(n=3, k_max=2, trials=4, seed=1)
    records, summary = sweep(cfg)
    rows = list(csv.DictReader(io.StringIO(to_csv(records, 2))))
    assert len(rows) == 4
    assert {"omega_1", "omega_2", "lambda_star_2", "graph"} <= set(rows[0])
    doc = json.loads(to_json(records, summary, cfg))
    assert doc["summary"]["trials"] == 4
    assert "workers" not in doc["config"]


def test_replay_matches_record():
    cfg = SweepConfig(n=4, k_max=3, trials=1, seed=7)
    graph = draw_graph(cfg, 0)
    res = replay(graph.dumps(), 3, tol=1e-8)
    assert res == evaluate(graph, 3, False, 1e-8)


@pytest.mark.parametrize(
    "kwargs",
    [dict(trials=0), dict(k_max=0), dict(mode="fuzzy"), dict(tolerance=0.0), dict(weight_law="x"), dict(edge_probability=2.0)],
)
def test_config_validation(kwargs):
    base = dict(n=3, k_max=2, trials=1)
    base.update(kwargs)
    with pytest.raises(ValueError):
        SweepConfig(**base).validate()
