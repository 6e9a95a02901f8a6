"""Replicated rejection-rate experiments and runtime benchmarks.

run_experiment regenerates each scenario ``replicates`` times with seeds
derived from (base seed, row, replicate) and tallies, per (row, method),
how often the method declares the data clusterable at level alpha. The
derivation makes results a pure function of the spec, independent of
worker count or scheduling. Statistical degeneracies (a method that
cannot run on a particular draw) count as not-clusterable and are
reported; any other failure aborts the run.
"""

from __future__ import annotations

import concurrent.futures
import platform
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .errors import ContractError, DegenerateDataError
from .pipeline import METHODS, AssessmentConfig, assess
from .simgen import RNG_ALGORITHM, generate, scenario_catalog

__all__ = ["ExperimentSpec", "RejectionTable", "RuntimeTable", "run_experiment", "run_runtime_bench"]


@dataclass(frozen=True)
class ExperimentSpec:
    """What to run: which scenario rows, methods, and replication depth."""

    rows: tuple
    methods: tuple
    replicates: int = 200
    alpha: float = 0.05
    seed: int = 0
    workers: int = 1
    config: AssessmentConfig | None = None  # template for test knobs

    def __post_init__(self):
        if not self.rows:
            raise ContractError("experiment needs at least one scenario row")
        if not self.methods:
            raise ContractError("experiment needs at least one method")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise ContractError(f"unknown methods {bad}; expected among {METHODS}")
        known = {sc.row_id for sc in scenario_catalog()}
        missing = [r for r in self.rows if r not in known]
        if missing:
            raise ContractError(f"unknown scenario rows {missing}")
        if len(set(self.rows)) != len(self.rows) or len(set(self.methods)) != len(self.methods):
            raise ContractError("duplicate rows or methods in experiment spec")
        if self.replicates < 1:
            raise ContractError("replicates must be >= 1")
        if self.workers < 1:
            raise ContractError("workers must be >= 1")
        if self.seed < 0:
            raise ContractError("seed must be nonnegative")


@dataclass
class RejectionTable:
    """Clusterable counts per (row, method), plus failure bookkeeping."""

    rows: tuple
    methods: tuple
    replicates: int
    clusterable: dict = field(default_factory=dict)  # (row, method) -> int
    failures: dict = field(default_factory=dict)     # (row, method) -> int
    metadata: dict = field(default_factory=dict)

    def proportion(self, row: int, method: str) -> float:
        return self.clusterable[(row, method)] / self.replicates


@dataclass
class RuntimeTable:
    """Mean per-call seconds per (row, method)."""

    rows: tuple
    methods: tuple
    repeats: int
    mean_seconds: dict = field(default_factory=dict)
    hardware: str = ""
    metadata: dict = field(default_factory=dict)


def _base_config(spec: ExperimentSpec) -> AssessmentConfig:
    config = spec.config if spec.config is not None else AssessmentConfig()
    # The dip null table must not vary by replicate, or nothing is shared.
    return replace(config, alpha=spec.alpha, dip_null_seed=(spec.seed, 0xD1B))


def _replicate_outcomes(args):
    row, rep, spec_seed, methods, config = args
    scenario = _CATALOG[row]
    data = generate(scenario, np.random.SeedSequence(entropy=spec_seed, spawn_key=(row, rep)))
    config = replace(config, seed=(spec_seed, row, rep))
    out = []
    for method in methods:
        try:
            verdict = assess(data, method, config)
            out.append((method, bool(verdict.clusterable), False))
        except DegenerateDataError:
            out.append((method, False, True))
    return row, out


_CATALOG = {sc.row_id: sc for sc in scenario_catalog()}


def run_experiment(spec: ExperimentSpec) -> RejectionTable:
    """Tally rejection proportions for every (row, method) cell."""
    config = _base_config(spec)
    table = RejectionTable(
        rows=tuple(spec.rows),
        methods=tuple(spec.methods),
        replicates=spec.replicates,
        metadata={
            "seed": spec.seed,
            "alpha": spec.alpha,
            "replicates": spec.replicates,
            "version": __version__,
            "rng": RNG_ALGORITHM,
        },
    )
    for row in spec.rows:
        for method in spec.methods:
            table.clusterable[(row, method)] = 0
            table.failures[(row, method)] = 0

    tasks = [
        (row, rep, spec.seed, tuple(spec.methods), config)
        for row in spec.rows
        for rep in range(spec.replicates)
    ]
    if spec.workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=spec.workers) as pool:
            results = pool.map(_replicate_outcomes, tasks, chunksize=8)
            _accumulate(table, results)
    else:
        _accumulate(table, map(_replicate_outcomes, tasks))
    return table


def _accumulate(table, results):
    for row, outcomes in results:
        for method, clusterable, degenerate in outcomes:
            if clusterable:
                table.clusterable[(row, method)] += 1
            if degenerate:
                table.failures[(row, method)] += 1


def run_runtime_bench(
    rows,
    methods,
    repeats: int = 100,
    seed: int = 0,
    config: AssessmentConfig | None = None,
) -> RuntimeTable:
    """Mean assess() wall-clock per (row, method) over fresh datasets.

    Each cell gets one untimed warm-up call before its timed repeats, so
    one-off costs (JIT, the dip's shared null table) are excluded, as in
    steady-state use.
    """
    if repeats < 10:
        raise ContractError(f"repeats must be >= 10, got {repeats}")
    config = replace(
        config if config is not None else AssessmentConfig(),
        dip_null_seed=(seed, 0xD1B),
    )
    rows = tuple(rows)
    methods = tuple(methods)
    table = RuntimeTable(
        rows=rows,
        methods=methods,
        repeats=repeats,
        hardware=f"{platform.machine()} / {platform.processor() or 'unknown cpu'} / python {platform.python_version()}",
        metadata={"seed": seed, "version": __version__, "rng": RNG_ALGORITHM},
    )
    for row in rows:
        scenario = _CATALOG[row]
        datasets = [
            generate(scenario, np.random.SeedSequence(entropy=(seed, 0xBE), spawn_key=(row, i)))
            for i in range(repeats + 1)
        ]
        for method in methods:
            cfg = replace(config, seed=(seed, row, 0))
            assess(datasets[0], method, cfg)  # warm-up, untimed
            total = 0.0
            for i in range(1, repeats + 1):
                cfg_i = replace(config, seed=(seed, row, i))
                total += assess(datasets[i], method, cfg_i).runtime_seconds
            table.mean_seconds[(row, method)] = total / repeats
    return table
