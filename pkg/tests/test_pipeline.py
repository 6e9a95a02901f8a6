import numpy as np
import pytest

from clusterability.dataset import Dataset, StandardizationMode
from clusterability.errors import ContractError, DegenerateDataError, SizeError
from clusterability.hopkins import beta_cdf
from clusterability.pipeline import (
    METHODS,
    AssessmentConfig,
    MethodError,
    Verdict,
    assess,
    assess_all,
)
from clusterability.simgen import generate, scenario_catalog

CATALOG = {sc.row_id: sc for sc in scenario_catalog()}

# Small replicate counts keep these tests quick; statistical quality is
# covered by the acceptance suite.
FAST = AssessmentConfig(seed=11, dip_null_replicates=400, silverman_bootstrap=150)


def _strip_runtime(v: Verdict):
    return (v.method, v.statistic, v.p_value, v.clusterable, v.n, v.d)


def test_method_ids_are_canonical():
    assert METHODS == (
        "dip-dist",
        "silv-dist",
        "hopkins",
        "classic-dip",
        "classic-silv",
        "pca-dip",
        "pca-silv",
    )


def test_config_validation():
    with pytest.raises(ContractError):
        AssessmentConfig(alpha=0.0)
    with pytest.raises(ContractError):
        AssessmentConfig(hopkins_runs=0)
    with pytest.raises(ContractError):
        AssessmentConfig(hopkins_pseudo="nope")


def test_all_methods_on_separated_clusters():
    data = generate(CATALOG[16], 3)
    verdicts = assess_all(data, METHODS, FAST)
    assert len(verdicts) == 7
    assert all(v.clusterable for v in verdicts)
    assert all(v.p_value < 0.05 for v in verdicts)
    assert all(v.n == 150 and v.d == 2 for v in verdicts)


def test_single_cluster_not_clusterable():
    data = generate(CATALOG[1], 0)
    for v in assess_all(data, METHODS, FAST):
        assert not v.clusterable, v


def test_decision_rule_uniform():
    data = generate(CATALOG[11], 9)
    for v in assess_all(data, METHODS, FAST):
        assert v.clusterable == (v.p_value < FAST.alpha)
        assert v.runtime_seconds >= 0.0


def test_assess_deterministic_given_config():
    data = generate(CATALOG[12], 5)
    for method in METHODS:
        a = assess(data, method, FAST)
        b = assess(data, method, FAST)
        assert _strip_runtime(a) == _strip_runtime(b)


def test_method_results_independent_of_the_method_list():
    data = generate(CATALOG[12], 7)
    alone = assess_all(data, ["silv-dist"], FAST)[0]
    together = assess_all(data, METHODS, FAST)[1]
    assert _strip_runtime(alone) == _strip_runtime(together)


def test_hopkins_pvalue_is_beta_cdf_of_statistic():
    data = generate(CATALOG[11], 2)
    v = assess(data, "hopkins", FAST)
    m = max(1, int(FAST.hopkins_rate * data.n))
    assert v.p_value == pytest.approx(beta_cdf(v.statistic, m, m), abs=1e-12)
    assert v.hopkins_proportion is None


def test_hopkins_repeated_runs_in_verdict():
    data = generate(CATALOG[11], 2)
    cfg = AssessmentConfig(seed=1, hopkins_runs=25)
    v = assess(data, "hopkins", cfg)
    assert v.hopkins_proportion == 1.0
    assert v.clusterable


def test_coordinate_rescaling_preserves_decisions():
    data = generate(CATALOG[12], 8)
    for c in (0.5, 3.0):
        scaled = Dataset(c * data.values)
        for method in METHODS:
            v0 = assess(data, method, FAST)
            v1 = assess(scaled, method, FAST)
            assert v0.clusterable == v1.clusterable, method
            if method in ("dip-dist", "classic-dip", "pca-dip"):
                assert v0.p_value == v1.p_value, method


def test_row_permutation_preserves_sorted_series_verdicts():
    rng = np.random.default_rng(0)
    data = generate(CATALOG[12], 4)
    permuted = Dataset(data.values[rng.permutation(data.n)])
    for method in ("dip-dist", "silv-dist", "classic-dip", "classic-silv"):
        v0 = assess(data, method, FAST)
        v1 = assess(permuted, method, FAST)
        assert _strip_runtime(v0) == _strip_runtime(v1), method


def test_unknown_method_and_empty_list():
    data = generate(CATALOG[1], 0)
    with pytest.raises(ContractError):
        assess(data, "k-means", FAST)
    with pytest.raises(ContractError):
        assess_all(data, [], FAST)


def test_method_error_records_and_abort():
    rng = np.random.default_rng(1)
    small = Dataset(rng.normal(size=(5, 2)))
    with pytest.raises(SizeError, match="hopkins"):
        assess_all(small, ["hopkins"], FAST)
    results = assess_all(small, ["hopkins", "classic-dip"], FAST, continue_on_error=True)
    assert isinstance(results[0], MethodError)
    assert "n >= 10" in results[0].error
    assert isinstance(results[1], Verdict)


def test_standardization_flows_through():
    rng = np.random.default_rng(2)
    values = rng.normal(size=(40, 2)) * [1.0, 500.0]
    cfg_z = AssessmentConfig(
        seed=3,
        dip_null_replicates=400,
        silverman_bootstrap=150,
        standardization=StandardizationMode.ZSCORE,
    )
    v_raw = assess(Dataset(values), "pca-dip", FAST)
    v_std = assess(Dataset(values), "pca-dip", cfg_z)
    assert v_raw.statistic != v_std.statistic
    const_col = Dataset(np.column_stack([np.ones(20), rng.normal(size=20)]))
    with pytest.raises(DegenerateDataError):
        assess(const_col, "pca-dip", cfg_z)
