"""The seven assessment methods, composed from reductions and tests.

``assess`` is the library's main entry point: it reduces a dataset (or
not, for Hopkins and the classic methods), runs the configured test, and
returns a Verdict with a uniform decision rule: clusterable iff
p_value < alpha, where smaller p-values always mean more evidence of
cluster structure. The Hopkins statistic is folded into that rule
through its exact Beta(m, m) null CDF.

Randomness is fully determined by the config seed. Each method draws
from a stream derived from (seed, method ordinal), so adding or removing
methods from an assess_all call never perturbs the others' results.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, StandardizationMode, standardize
from .dip import dip_pvalue_from_table, dip_statistic, null_dips_cached
from .errors import ClusterabilityError, ContractError
from .hopkins import PSEUDO_MODES, beta_cdf, hopkins_statistic
from .reduce import Series, classic_flatten, first_principal_component, pairwise_distances
from .silverman import silverman_pvalue

__all__ = ["METHODS", "AssessmentConfig", "Verdict", "MethodError", "assess", "assess_all"]

# Canonical method identifiers, in table order. The ordinal position is
# the method's seed spawn key, so it must never be reordered.
METHODS = (
    "dip-dist",
    "silv-dist",
    "hopkins",
    "classic-dip",
    "classic-silv",
    "pca-dip",
    "pca-silv",
)


@dataclass(frozen=True)
class AssessmentConfig:
    """Knobs shared by every method; defaults follow common practice.

    ``seed`` may be an int or a tuple of ints. ``dip_null_seed`` pins the
    stream behind the dip's Monte-Carlo null table; the experiment
    harness sets it per run (not per replicate) so the table is computed
    once and shared, which is also what makes the dip methods cheap
    after their warm-up.
    """

    alpha: float = 0.05
    dip_null_replicates: int = 2000
    silverman_bootstrap: int = 999
    silverman_calibrated: bool = True
    hopkins_rate: float = 0.10
    hopkins_runs: int = 1
    hopkins_pseudo: str = "range"
    seed: int | tuple = 0
    standardization: StandardizationMode = StandardizationMode.NONE
    bandwidth_tol: float = 1e-3
    kde_grid_points: int = 512
    kde_grid_pad: float = 3.0
    dip_null_seed: int | tuple | None = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ContractError(f"alpha must lie in (0, 1), got {self.alpha}")
        for name in ("dip_null_replicates", "silverman_bootstrap", "hopkins_runs"):
            if getattr(self, name) < 1:
                raise ContractError(f"{name} must be >= 1")
        if self.hopkins_pseudo not in PSEUDO_MODES:
            raise ContractError(
                f"hopkins_pseudo must be one of {PSEUDO_MODES}, got {self.hopkins_pseudo!r}"
            )
        for part in self.seed if isinstance(self.seed, tuple) else (self.seed,):
            if part < 0:
                raise ContractError(f"seeds must be nonnegative, got {self.seed!r}")


@dataclass(frozen=True)
class Verdict:
    """Outcome of one method on one dataset."""

    method: str
    statistic: float
    p_value: float
    clusterable: bool
    runtime_seconds: float
    n: int
    d: int
    # Fraction of repeated Hopkins runs that rejected; only set when
    # hopkins_runs > 1.
    hopkins_proportion: float | None = None


@dataclass(frozen=True)
class MethodError:
    """Record of a method that failed when continue_on_error is set."""

    method: str
    error: str
    kind: str


def _method_rng(config: AssessmentConfig, method: str) -> np.random.Generator:
    entropy = config.seed if isinstance(config.seed, tuple) else (config.seed,)
    ordinal = METHODS.index(method)
    ss = np.random.SeedSequence(entropy=list(entropy), spawn_key=(ordinal,))
    return np.random.Generator(np.random.PCG64(ss))


def _dip_table_seed(config: AssessmentConfig):
    seed = config.dip_null_seed if config.dip_null_seed is not None else config.seed
    return seed if isinstance(seed, tuple) else (seed,)


def _dip_method(series, config):
    d = dip_statistic(series)
    table = null_dips_cached(
        len(series), config.dip_null_replicates, _dip_table_seed(config)
    )
    return d, dip_pvalue_from_table(d, table)


def _silverman_method(series, config, rng):
    res = silverman_pvalue(
        series,
        config.silverman_bootstrap,
        rng,
        calibrated=config.silverman_calibrated,
        alpha=config.alpha,
        tol=config.bandwidth_tol,
        grid_points=config.kde_grid_points,
        grid_pad=config.kde_grid_pad,
    )
    return res.h_crit, res.p_value


def assess(data: Dataset, method: str, config: AssessmentConfig) -> Verdict:
    """Run one method on a dataset and return its Verdict.

    runtime_seconds covers the reduction and the test (monotonic clock);
    ingestion and standardization are excluded.
    """
    if method not in METHODS:
        raise ContractError(f"unknown method {method!r}; expected one of {METHODS}")
    prepared = standardize(data, config.standardization)
    rng = _method_rng(config, method)
    extra = None

    t0 = time.perf_counter()
    if method == "dip-dist":
        stat, p = _dip_method(pairwise_distances(prepared), config)
    elif method == "silv-dist":
        stat, p = _silverman_method(pairwise_distances(prepared), config, rng)
    elif method == "classic-dip":
        stat, p = _dip_method(classic_flatten(prepared), config)
    elif method == "classic-silv":
        stat, p = _silverman_method(classic_flatten(prepared), config, rng)
    elif method == "pca-dip":
        scores = first_principal_component(prepared)
        stat, p = _dip_method(Series(np.sort(scores.values), sorted=True), config)
    elif method == "pca-silv":
        stat, p = _silverman_method(first_principal_component(prepared), config, rng)
    else:  # hopkins
        stat, p, extra = _hopkins_method(prepared, config, rng)
    elapsed = time.perf_counter() - t0

    return Verdict(
        method=method,
        statistic=float(stat),
        p_value=float(p),
        clusterable=bool(p < config.alpha),
        runtime_seconds=elapsed,
        n=data.n,
        d=data.d,
        hopkins_proportion=extra,
    )


def _hopkins_method(data, config, rng):
    runs = config.hopkins_runs
    if runs == 1:
        res = hopkins_statistic(
            data,
            rate=config.hopkins_rate,
            rng=rng,
            alpha=config.alpha,
            pseudo=config.hopkins_pseudo,
        )
        return res.h, beta_cdf(res.h, res.m, res.m), None
    # Repeated mode (the convention for standing datasets): the verdict
    # carries the median statistic/p-value, so p < alpha iff at least
    # half the runs reject, and the rejection fraction rides along.
    stats, pvals = [], []
    for child in rng.spawn(runs):
        res = hopkins_statistic(
            data,
            rate=config.hopkins_rate,
            rng=child,
            alpha=config.alpha,
            pseudo=config.hopkins_pseudo,
        )
        stats.append(res.h)
        pvals.append(beta_cdf(res.h, res.m, res.m))
    proportion = float(np.mean(np.asarray(pvals) < config.alpha))
    return float(np.median(stats)), float(np.median(pvals)), proportion


def assess_all(
    data: Dataset,
    methods,
    config: AssessmentConfig,
    continue_on_error: bool = False,
) -> list:
    """One Verdict per method, in input order.

    On a method failure, either aborts with context (default) or, with
    ``continue_on_error``, substitutes a MethodError record and moves on.
    """
    methods = list(methods)
    if not methods:
        raise ContractError("method list must be nonempty")
    results = []
    for method in methods:
        try:
            results.append(assess(data, method, config))
        except ClusterabilityError as exc:
            if not continue_on_error:
                raise type(exc)(f"{method}: {exc}") from exc
            results.append(
                MethodError(method=method, error=str(exc), kind=type(exc).__name__)
            )
    return results
