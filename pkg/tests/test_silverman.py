import numpy as np
import pytest

from clusterability.errors import ContractError, DegenerateDataError
from clusterability.kde import critical_bandwidth
from clusterability.silverman import hall_york_lambda, silverman_pvalue


def test_hall_york_lambda_values():
    assert hall_york_lambda(0.05) == pytest.approx(1.129, abs=0.002)
    # inflation factor exceeds 1 and decreases with alpha
    alphas = np.linspace(0.01, 0.4, 20)
    lams = [hall_york_lambda(a) for a in alphas]
    assert all(l > 1.0 for l in lams)
    assert np.all(np.diff(lams) < 0)
    with pytest.raises(ContractError):
        hall_york_lambda(0.0)


def test_reproducible_given_seed():
    rng = np.random.default_rng(0)
    x = rng.normal(size=150)
    r1 = silverman_pvalue(x, 200, np.random.default_rng(7))
    r2 = silverman_pvalue(x, 200, np.random.default_rng(7))
    assert r1.p_value == r2.p_value and r1.h_crit == r2.h_crit


def test_calibration_changes_only_the_comparison_bandwidth():
    rng = np.random.default_rng(1)
    x = rng.normal(size=120)
    cal = silverman_pvalue(x, 300, np.random.default_rng(3), calibrated=True)
    raw = silverman_pvalue(x, 300, np.random.default_rng(3), calibrated=False)
    assert cal.h_crit == raw.h_crit
    assert cal.calibrated and not raw.calibrated
    # with shared draws, testing at the inflated bandwidth can only
    # shrink the multimodal fraction
    assert cal.p_value <= raw.p_value
    assert cal.h_crit == critical_bandwidth(x)


def test_detects_strong_bimodality():
    rng = np.random.default_rng(2)
    bi = np.r_[rng.normal(size=80), rng.normal(15, 1, 80)]
    res = silverman_pvalue(bi, 200, np.random.default_rng(5))
    assert res.p_value < 0.01


def test_unimodal_sample_usually_retained():
    hits = 0
    for seed in range(20):
        x = np.random.default_rng(100 + seed).normal(size=100)
        res = silverman_pvalue(x, 200, np.random.default_rng(seed))
        hits += res.p_value < 0.05
    assert hits <= 4


def test_rejection_rate_monotone_in_cluster_gap():
    # Doubling the separation of two tight clusters never lowers the
    # rejection count over a fixed set of seeds.
    def rejections(gap):
        count = 0
        for seed in range(50):
            rng = np.random.default_rng(seed)
            x = np.r_[rng.normal(0, 0.5, 30), rng.normal(gap, 0.5, 30)]
            res = silverman_pvalue(x, 150, np.random.default_rng(1000 + seed))
            count += res.p_value < 0.05
        return count

    assert rejections(4.0) >= rejections(2.0)


def test_degenerate_and_contract_errors():
    with pytest.raises(DegenerateDataError):
        silverman_pvalue(np.full(20, 3.0), 200, np.random.default_rng(0))
    with pytest.raises(ContractError):
        silverman_pvalue(np.array([0.0, 1.0]), 50, np.random.default_rng(0))
