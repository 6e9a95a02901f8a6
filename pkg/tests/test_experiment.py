import csv
import io
import json
from unittest import mock

import pytest

from clusterability.errors import ContractError, DegenerateDataError
from clusterability.experiment import (
    ExperimentSpec,
    run_experiment,
    run_runtime_bench,
)
from clusterability.pipeline import AssessmentConfig
from clusterability.report import render_rejection, render_runtime

FAST_CFG = AssessmentConfig(dip_null_replicates=400, silverman_bootstrap=150)


def _spec(**kw):
    base = dict(rows=(1,), methods=("dip-dist", "hopkins"), replicates=10, seed=5, config=FAST_CFG)
    base.update(kw)
    return ExperimentSpec(**base)


def test_spec_validation():
    with pytest.raises(ContractError):
        _spec(rows=())
    with pytest.raises(ContractError):
        _spec(rows=(77,))
    with pytest.raises(ContractError):
        _spec(methods=("bogus",))
    with pytest.raises(ContractError):
        _spec(replicates=0)


def test_counts_and_sum_law():
    table = run_experiment(_spec(replicates=20))
    for row in table.rows:
        for m in table.methods:
            count = table.clusterable[(row, m)]
            assert 0 <= count <= 20
            assert table.proportion(row, m) * table.replicates == pytest.approx(count)


def test_single_replicate_cells_are_bernoulli():
    table = run_experiment(_spec(replicates=1))
    for key, count in table.clusterable.items():
        assert count in (0, 1)


def test_separated_clusters_reject_everywhere():
    table = run_experiment(_spec(rows=(11,), methods=("dip-dist", "hopkins"), replicates=10))
    assert table.proportion(11, "dip-dist") == 1.0
    assert table.proportion(11, "hopkins") == 1.0


def test_parallel_equals_serial():
    serial = run_experiment(_spec(replicates=16, workers=1))
    parallel = run_experiment(_spec(replicates=16, workers=3))
    assert serial.clusterable == parallel.clusterable
    assert serial.failures == parallel.failures


def test_degenerate_failures_counted_not_dropped():
    real_assess = __import__("clusterability.experiment", fromlist=["assess"]).assess

    def flaky(data, method, config):
        if method == "hopkins" and config.seed[-1] % 2 == 0:
            raise DegenerateDataError("synthetic degeneracy")
        return real_assess(data, method, config)

    with mock.patch("clusterability.experiment.assess", side_effect=flaky):
        table = run_experiment(_spec(replicates=10))
    assert table.failures[(1, "hopkins")] == 5
    assert table.failures[(1, "dip-dist")] == 0
    # degenerate replicates count toward the denominator as not clusterable
    assert table.clusterable[(1, "hopkins")] <= 5


def test_every_scenario_runs_every_method():
    # Smoke coverage of the full grid: no generator/method pairing may
    # crash or go statistically degenerate on catalog data.
    spec = ExperimentSpec(
        rows=tuple(range(1, 32)),
        methods=("dip-dist", "silv-dist", "hopkins", "classic-dip", "classic-silv", "pca-dip", "pca-silv"),
        replicates=2,
        seed=77,
        config=FAST_CFG,
    )
    table = run_experiment(spec)
    assert len(table.clusterable) == 31 * 7
    assert sum(table.failures.values()) == 0


def test_rejection_csv_round_trips_exactly():
    table = run_experiment(_spec(replicates=7))
    text = render_rejection(table, "csv")
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert len(parsed) == len(table.rows) * len(table.methods)
    for rec in parsed:
        row, m = int(rec["row"]), rec["method"]
        assert float(rec["proportion"]) == table.proportion(row, m)
        assert int(rec["clusterable"]) == table.clusterable[(row, m)]


def test_rejection_renders():
    table = run_experiment(_spec(replicates=4))
    plain = render_rejection(table, "plain")
    assert "dip-dist" in plain and "row" in plain
    payload = json.loads(render_rejection(table, "json"))
    assert payload["replicates"] == 4
    assert payload["metadata"]["seed"] == 5
    with pytest.raises(ContractError):
        render_rejection(table, "yaml")


def test_runtime_bench_classic_dip_is_fast():
    # Loose absolute bound; the flattening path is linear-ish work on a
    # 100-value vector and should be far under a tenth of a second.
    table = run_runtime_bench((1,), ("classic-dip",), repeats=10, seed=1, config=FAST_CFG)
    assert table.mean_seconds[(1, "classic-dip")] <= 0.1


def test_runtime_bench_structure():
    table = run_runtime_bench((1,), ("dip-dist", "hopkins"), repeats=10, seed=3, config=FAST_CFG)
    assert set(table.mean_seconds) == {(1, "dip-dist"), (1, "hopkins")}
    assert all(v > 0 for v in table.mean_seconds.values())
    assert table.repeats == 10 and table.hardware
    text = render_runtime(table, "plain")
    assert "mean seconds" in text
    csv_text = render_runtime(table, "csv")
    assert csv_text.splitlines()[0] == "row,method,mean_seconds,repeats"
    with pytest.raises(ContractError):
        run_runtime_bench((1,), ("dip-dist",), repeats=5, config=FAST_CFG)
