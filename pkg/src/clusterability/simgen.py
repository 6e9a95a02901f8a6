"""Seed-deterministic generators for the 31 benchmark simulation scenarios.

Every scenario is a list of components drawn independently, in order:
Gaussian clusters (iid dimensions unless per-dimension means are given),
noncentral-t clusters, single far-away "outlier" observations whose mean
is itself drawn uniformly once per dataset, points placed uniformly on
circle boundaries, and vertical lines with Gaussian vertical spread.
Scalar distribution parameters follow the N(mu, sigma) convention:
the second parameter is a standard deviation, never a variance.

Generation is a pure function of (scenario, seed). The underlying
generator is numpy's PCG64; the algorithm identifier is recorded in
``RNG_ALGORITHM`` so the stream's provenance travels with exported
results.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset
from .errors import ContractError

__all__ = [
    "ClusterSpec",
    "Scenario",
    "scenario_catalog",
    "generate",
    "generate_labeled",
    "catalog_records",
    "RNG_ALGORITHM",
]

RNG_ALGORITHM = "numpy-pcg64"

_KINDS = ("gaussian", "noncentral-t", "outlier", "circle", "vline")


@dataclass(frozen=True)
class ClusterSpec:
    """One component of a scenario; fields are kind-specific."""

    kind: str
    size: int
    mean: tuple | float | None = None  # gaussian: scalar or per-dimension means
    sd: float | None = None            # gaussian/outlier/vline spread
    df: int | None = None              # noncentral-t degrees of freedom
    ncp: float | None = None           # noncentral-t noncentrality per dimension
    low: tuple | None = None           # outlier: uniform mean bounds per dimension
    high: tuple | None = None
    radius: float | None = None        # circle radius
    x: float | None = None             # vline fixed first coordinate

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ContractError(f"unknown component kind {self.kind!r}")
        if self.size < 1:
            raise ContractError(f"component size must be >= 1, got {self.size}")
        if self.kind in ("gaussian", "outlier", "vline") and not self.sd > 0:
            raise ContractError(f"{self.kind} needs sd > 0, got {self.sd}")
        if self.kind == "noncentral-t" and (self.df is None or self.df < 1):
            raise ContractError(f"noncentral-t needs df >= 1, got {self.df}")
        if self.kind == "circle" and not self.radius > 0:
            raise ContractError(f"circle needs radius > 0, got {self.radius}")
        if self.kind == "outlier":
            lo, hi = np.asarray(self.low), np.asarray(self.high)
            if np.any(lo >= hi):
                raise ContractError("outlier bounds need low < high per dimension")


@dataclass(frozen=True)
class Scenario:
    """One catalog row: a named, fixed-shape bundle of components."""

    row_id: int
    description: str
    dim: int
    components: tuple = field(repr=False)

    @property
    def expected_n(self) -> int:
        return sum(c.size for c in self.components)

    @property
    def expected_d(self) -> int:
        return self.dim


def standard_normal(rng: np.random.Generator, size=None):
    """Standard normal draws (first two moments 0 and 1)."""
    return rng.standard_normal(size)


def chi_square(df: int, rng: np.random.Generator, size=None):
    """Chi-square draws with df >= 1 degrees of freedom."""
    if df < 1:
        raise ContractError(f"df must be >= 1, got {df}")
    return rng.chisquare(df, size)


def uniform(a: float, b: float, rng: np.random.Generator, size=None):
    """Uniform draws on [a, b), a < b."""
    if not a < b:
        raise ContractError(f"need a < b, got a={a}, b={b}")
    return rng.uniform(a, b, size)


def _sample_component(spec: ClusterSpec, dim: int, rng: np.random.Generator) -> np.ndarray:
    if spec.kind == "gaussian":
        mean = np.broadcast_to(np.asarray(spec.mean, dtype=float), (dim,))
        return mean + spec.sd * standard_normal(rng, (spec.size, dim))
    if spec.kind == "noncentral-t":
        # Per-dimension (Z + ncp) / sqrt(chi2_df / df), independent dims.
        z = standard_normal(rng, (spec.size, dim))
        v = chi_square(spec.df, rng, (spec.size, dim))
        return (z + spec.ncp) / np.sqrt(v / spec.df)
    if spec.kind == "outlier":
        # The outlying mean is drawn once per dataset, then observed
        # with Gaussian noise.
        mean = rng.uniform(np.asarray(spec.low, float), np.asarray(spec.high, float))
        return mean + spec.sd * standard_normal(rng, (spec.size, dim))
    if spec.kind == "circle":
        theta = uniform(0.0, 2.0 * np.pi, rng, spec.size)
        return np.column_stack([spec.radius * np.cos(theta), spec.radius * np.sin(theta)])
    if spec.kind == "vline":
        y = spec.mean + spec.sd * standard_normal(rng, spec.size)
        return np.column_stack([np.full(spec.size, float(spec.x)), y])
    raise ContractError(f"unknown component kind {spec.kind!r}")


def generate_labeled(scenario: Scenario, seed) -> tuple[Dataset, np.ndarray]:
    """Dataset plus the generating component index of each observation."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    rng = np.random.Generator(np.random.PCG64(seed))
    blocks, labels = [], []
    for i, spec in enumerate(scenario.components):
        pts = _sample_component(spec, scenario.dim, rng)
        if pts.shape[1] != scenario.dim:
            raise ContractError(
                f"component {i} of row {scenario.row_id} yields dimension "
                f"{pts.shape[1]}, scenario declares {scenario.dim}"
            )
        blocks.append(pts)
        labels.append(np.full(spec.size, i))
    data = Dataset(np.vstack(blocks))
    return data, np.concatenate(labels)


def generate(scenario: Scenario, seed) -> Dataset:
    """Seed-deterministic dataset of exactly the declared shape."""
    return generate_labeled(scenario, seed)[0]


def _gauss(mean, sd, size):
    return ClusterSpec(kind="gaussian", size=size, mean=mean, sd=sd)


def _nct(df, ncp, size):
    return ClusterSpec(kind="noncentral-t", size=size, df=df, ncp=ncp)


def _outlier(low, high, sd=2.0):
    return ClusterSpec(kind="outlier", size=1, low=low, high=high, sd=sd)


def _circle(radius, size):
    return ClusterSpec(kind="circle", size=size, radius=radius)


def _vline(x, mean, sd, size):
    return ClusterSpec(kind="vline", size=size, x=x, mean=mean, sd=sd)


def scenario_catalog() -> list[Scenario]:
    """All 31 benchmark scenarios, in row order."""
    rows = [
        Scenario(1, "one Gaussian cluster, 2-D", 2, (_gauss(100, 2, 50),)),
        Scenario(2, "one Gaussian cluster, 3-D", 3, (_gauss(100, 2, 50),)),
        Scenario(3, "one Gaussian cluster, 10-D", 10, (_gauss(2, 2, 50),)),
        Scenario(4, "one Gaussian cluster, 50-D", 50, (_gauss(2, 2, 100),)),
        Scenario(
            5,
            "one 2-D cluster plus a single outlier",
            2,
            (_gauss(50, 2, 50), _outlier((60, 60), (65, 65))),
        ),
        Scenario(
            6,
            "one large 2-D cluster plus a single outlier",
            2,
            (_gauss(50, 2, 250), _outlier((60, 60), (65, 65))),
        ),
        Scenario(
            7,
            "one 2-D cluster plus three outliers",
            2,
            (
                _gauss(50, 2, 50),
                _outlier((40, 55), (45, 60)),
                _outlier((65, 65), (70, 70)),
                _outlier((65, 45), (70, 50)),
            ),
        ),
        Scenario(8, "one noncentral-t cluster, df=5", 2, (_nct(5, 100, 100),)),
        Scenario(9, "one noncentral-t cluster, df=10", 2, (_nct(10, 100, 100),)),
        Scenario(10, "one noncentral-t cluster, df=15", 2, (_nct(15, 100, 100),)),
        Scenario(
            11,
            "two separated 2-D clusters",
            2,
            (_gauss(30, 2, 50), _gauss(50, 2, 50)),
        ),
        Scenario(
            12,
            "three close 2-D clusters",
            2,
            (_gauss((30, 20), 2, 50), _gauss((40, 20), 2, 50), _gauss((35, 30), 2, 50)),
        ),
        Scenario(
            13,
            "three 2-D clusters plus wide Gaussian noise",
            2,
            (
                _gauss((30, 40), 2, 50),
                _gauss((70, 40), 2, 50),
                _gauss((50, 80), 2, 50),
                _gauss(50, 20, 80),
            ),
        ),
        Scenario(
            14,
            "three 2-D clusters with varied radii",
            2,
            (_gauss((30, 20), 1, 50), _gauss((40, 20), 3, 50), _gauss((35, 30), 5, 50)),
        ),
        Scenario(
            15,
            "three 2-D clusters with varied density",
            2,
            (_gauss((35, 40), 2, 100), _gauss((65, 40), 2, 66), _gauss((50, 60), 2, 33)),
        ),
        Scenario(
            16,
            "three separated 2-D clusters",
            2,
            (_gauss((35, 40), 2, 50), _gauss((65, 40), 2, 50), _gauss((50, 60), 2, 50)),
        ),
        Scenario(
            17,
            "three separated 3-D clusters",
            3,
            (_gauss(20, 2, 50), _gauss(40, 2, 50), _gauss(60, 2, 50)),
        ),
        Scenario(
            18,
            "two separated 10-D clusters",
            10,
            (_gauss(10, 2, 50), _gauss(20, 2, 50)),
        ),
        Scenario(
            19,
            "four separated 10-D clusters",
            10,
            (_gauss(10, 2, 50), _gauss(20, 2, 50), _gauss(60, 2, 50), _gauss(80, 2, 50)),
        ),
        Scenario(
            20,
            "two close 50-D clusters",
            50,
            (_gauss(5, 2, 100), _gauss(10, 2, 100)),
        ),
        Scenario(
            21,
            "two partially overlapping 50-D clusters",
            50,
            (_gauss(3, 2, 100), _gauss(6, 2, 100)),
        ),
        Scenario(
            22,
            "two noncentral-t clusters, df=5",
            2,
            (_nct(5, 50, 100), _nct(5, 150, 100)),
        ),
        Scenario(
            23,
            "two noncentral-t clusters, df=10",
            2,
            (_nct(10, 50, 100), _nct(10, 150, 100)),
        ),
        Scenario(
            24,
            "two noncentral-t clusters, df=15",
            2,
            (_nct(15, 50, 100), _nct(15, 150, 100)),
        ),
        Scenario(25, "single unit circle", 2, (_circle(1, 50),)),
        Scenario(26, "two concentric circles", 2, (_circle(1, 50), _circle(2, 50))),
        Scenario(
            27,
            "three concentric circles",
            2,
            (_circle(1, 50), _circle(2, 50), _circle(3, 50)),
        ),
        Scenario(
            28,
            "five concentric circles",
            2,
            tuple(_circle(r, 50) for r in (1, 2, 3, 4, 5)),
        ),
        Scenario(29, "single vertical line", 2, (_vline(50, 50, 25, 100),)),
        Scenario(
            30,
            "two parallel vertical lines",
            2,
            (_vline(30, 50, 25, 100), _vline(55, 50, 25, 100)),
        ),
        Scenario(
            31,
            "circle and line",
            2,
            (_circle(3, 100), _vline(5, 0, 2, 100)),
        ),
    ]
    return rows


def catalog_records() -> list[dict]:
    """Catalog as plain records, one per row, for export/rendering."""
    records = []
    for sc in scenario_catalog():
        records.append(
            {
                "row": sc.row_id,
                "description": sc.description,
                "dim": sc.dim,
                "n": sc.expected_n,
                "components": [
                    {k: v for k, v in vars(c).items() if v is not None}
                    for c in sc.components
                ],
                "rng": RNG_ALGORITHM,
            }
        )
    return records
