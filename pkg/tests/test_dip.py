import numpy as np
import pytest

from clusterability.dip import (
    DipResult,
    dip_pvalue,
    dip_pvalue_from_table,
    dip_statistic,
    dip_test,
    null_dips_cached,
    simulate_null_dips,
)
from clusterability.errors import ContractError
from clusterability.reduce import Series

from oracles import dip_oracle


def _random_corpus(rng, max_size=50):
    """Mixed sample shapes: smooth, bimodal, tied, integer-valued."""
    corpus = []
    for size in (2, 3, 4, 5, 8, 13, 21, 34, 50):
        corpus.append(np.sort(rng.normal(size=size)))
        half = max(1, size // 2)
        corpus.append(np.sort(np.r_[rng.normal(size=size - half), rng.normal(6, 0.4, half)]))
        corpus.append(np.sort(np.round(rng.uniform(0, 3, size), 0)))
        corpus.append(np.sort(rng.integers(0, 4, size).astype(float)))
    return [c for c in corpus if c.size <= max_size]


def test_known_dip_values():
    assert dip_statistic(np.array([0.0, 1.0]), sorted=True) == 0.25
    assert np.isclose(dip_statistic(np.array([0.0, 1.0, 2.0]), sorted=True), 1 / 6)
    for n in (5, 10, 40):
        assert np.isclose(dip_statistic(np.linspace(0, 1, n), sorted=True), 1 / (2 * n))
    # two equal atoms: the most bimodal sample possible
    assert dip_statistic(np.array([0.0, 0.0, 1.0, 1.0]), sorted=True) == 0.25


def test_dip_constant_sample_is_zero():
    assert dip_statistic(np.array([5.0, 5.0, 5.0]), sorted=True) == 0.0


def test_dip_bounds_on_random_samples():
    rng = np.random.default_rng(10)
    for _ in range(100):
        m = int(rng.integers(4, 200))
        x = np.sort(rng.normal(size=m))
        d = dip_statistic(x, sorted=True)
        assert 1 / (2 * m) - 1e-12 <= d <= 0.25 + 1e-12


def test_dip_positive_affine_invariance():
    rng = np.random.default_rng(11)
    for _ in range(20):
        x = np.sort(rng.normal(size=int(rng.integers(5, 80))))
        a, b = rng.uniform(0.1, 50), rng.uniform(-100, 100)
        d0 = dip_statistic(x, sorted=True)
        d1 = dip_statistic(a * x + b, sorted=True)
        assert np.isclose(d0, d1, rtol=1e-12, atol=1e-15)


def test_dip_matches_lp_oracle_up_to_size_50():
    rng = np.random.default_rng(12)
    for x in _random_corpus(rng):
        assert abs(dip_statistic(x, sorted=True) - dip_oracle(x)) <= 1e-6, x


def test_bimodal_dip_exceeds_near_constant_dip():
    bimodal = np.array([0.0, 0.0, 0.0, 10.0, 10.0, 10.0])
    jitter = np.sort(np.linspace(0, 1e-9, 6))
    d_bi, d_flat = dip_oracle(bimodal), dip_oracle(jitter)
    assert d_bi > d_flat
    assert dip_statistic(bimodal, sorted=True) > dip_statistic(jitter, sorted=True)


def test_dip_requires_sorted_input():
    with pytest.raises(ContractError):
        dip_statistic(np.array([3.0, 1.0, 2.0]))
    with pytest.raises(ContractError):
        dip_statistic(Series(np.array([3.0, 1.0, 2.0]), sorted=False))
    # a Series constructed sorted passes through
    assert dip_statistic(Series(np.array([0.0, 1.0]), sorted=True)) == 0.25


def test_pvalue_trivials():
    rng = np.random.default_rng(13)
    assert dip_pvalue(0.0, 50, 200, rng) == 1.0
    rng = np.random.default_rng(13)
    assert dip_pvalue(0.25, 50, 200, rng) == pytest.approx(1 / 201)


def test_pvalue_reproducible_and_guarded():
    p1 = dip_pvalue(0.03, 100, 500, np.random.default_rng(99))
    p2 = dip_pvalue(0.03, 100, 500, np.random.default_rng(99))
    assert p1 == p2
    with pytest.raises(ContractError):
        dip_pvalue(0.03, 100, 50, np.random.default_rng(0))
    with pytest.raises(ContractError):
        dip_pvalue(-0.01, 100, 200, np.random.default_rng(0))


def test_null_dip_simulation_is_sorted_uniform_based():
    null = simulate_null_dips(40, 300, np.random.default_rng(5))
    assert null.shape == (300,)
    assert np.all(null >= 1 / 80 - 1e-12) and np.all(null <= 0.25)


def test_cached_table_and_formula_agree():
    table = null_dips_cached(60, 250, (42,))
    assert np.array_equal(table, null_dips_cached(60, 250, (42,)))
    for d in (0.0, table[100], 0.3):
        expected = (1 + np.count_nonzero(table >= d)) / 251
        assert dip_pvalue_from_table(d, table) == pytest.approx(expected)


def test_dip_test_wrapper():
    rng = np.random.default_rng(14)
    res = dip_test(rng.normal(size=80), 300, np.random.default_rng(1))
    assert isinstance(res, DipResult)
    assert res.null_replicates == 300
    assert 0 <= res.p_value <= 1
    bimodal = np.r_[rng.normal(size=50), rng.normal(12, 0.5, 50)]
    assert dip_test(bimodal, 300, np.random.default_rng(1)).p_value < 0.01


def test_dip_result_validation():
    with pytest.raises(ContractError):
        DipResult(0.3, 0.5, 100)
    with pytest.raises(ContractError):
        DipResult(0.1, 1.5, 100)
