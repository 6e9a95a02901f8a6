"""Clusterability assessment: multimodality tests on one-dimensional
reductions of a dataset, plus the Hopkins spatial-randomness statistic.

Typical use:

    from clusterability import Dataset, AssessmentConfig, assess_all

    data = Dataset(values)                       # n x d array
    config = AssessmentConfig(seed=7)
    verdicts = assess_all(data, ["dip-dist", "hopkins"], config)
"""

__version__ = "0.1.0"

from .dataset import Dataset, StandardizationMode, load_matrix, serialize, standardize
from .dip import DipResult, dip_pvalue, dip_statistic, dip_test
from .errors import (
    ClusterabilityError,
    ContractError,
    DegenerateDataError,
    ParseError,
    ShapeError,
    SizeError,
)
from .experiment import ExperimentSpec, RejectionTable, RuntimeTable, run_experiment, run_runtime_bench
from .hopkins import HopkinsResult, beta_cdf, beta_quantile, hopkins_repeated, hopkins_statistic
from .kde import KdeSpec, count_modes, critical_bandwidth, kde_grid
from .pipeline import METHODS, AssessmentConfig, MethodError, Verdict, assess, assess_all
from .reduce import Series, classic_flatten, first_principal_component, pairwise_distances
from .silverman import SilvermanResult, hall_york_lambda, silverman_pvalue
from .simgen import ClusterSpec, Scenario, generate, generate_labeled, scenario_catalog

__all__ = [
    "__version__",
    "Dataset",
    "StandardizationMode",
    "load_matrix",
    "serialize",
    "standardize",
    "Series",
    "pairwise_distances",
    "first_principal_component",
    "classic_flatten",
    "DipResult",
    "dip_statistic",
    "dip_pvalue",
    "dip_test",
    "KdeSpec",
    "kde_grid",
    "count_modes",
    "critical_bandwidth",
    "SilvermanResult",
    "hall_york_lambda",
    "silverman_pvalue",
    "HopkinsResult",
    "beta_cdf",
    "beta_quantile",
    "hopkins_statistic",
    "hopkins_repeated",
    "METHODS",
    "AssessmentConfig",
    "Verdict",
    "MethodError",
    "assess",
    "assess_all",
    "ClusterSpec",
    "Scenario",
    "scenario_catalog",
    "generate",
    "generate_labeled",
    "ExperimentSpec",
    "RejectionTable",
    "RuntimeTable",
    "run_experiment",
    "run_runtime_bench",
    "ClusterabilityError",
    "ContractError",
    "DegenerateDataError",
    "ParseError",
    "ShapeError",
    "SizeError",
]
