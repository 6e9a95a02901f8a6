"""One-dimensional reductions of a dataset.

Each multimodality test in this library runs on a Series produced here:
the sorted pairwise Euclidean distances, the first-principal-component
scores, or the "classic" flattening (all matrix entries pooled into one
sorted vector - the reduction a single-vector test interface implicitly
applies to multivariate input).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist

from .dataset import Dataset
from .errors import ContractError, DegenerateDataError

__all__ = ["Series", "pairwise_distances", "first_principal_component", "classic_flatten"]


@dataclass(frozen=True)
class Series:
    """An ordered 1-D sample of finite reals, with a sortedness flag."""

    values: np.ndarray = field(repr=False)
    sorted: bool = False

    def __post_init__(self):
        arr = np.ascontiguousarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ContractError(f"Series must be 1-D, got ndim={arr.ndim}")
        if arr.size < 1:
            raise ContractError("Series must be nonempty")
        if not np.all(np.isfinite(arr)):
            raise ContractError("Series values must be finite")
        if self.sorted and arr.size > 1 and np.any(arr[1:] < arr[:-1]):
            raise ContractError("sorted flag set on non-sorted values")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self):
        return self.values.size


def pairwise_distances(data: Dataset) -> Series:
    """The n(n-1)/2 pairwise Euclidean distances, sorted nondecreasing."""
    d = pdist(data.values, metric="euclidean")
    d.sort()
    return Series(d, sorted=True)


def first_principal_component(data: Dataset) -> Series:
    """Scores of the first principal component of the column-centered data.

    Computed from the singular value decomposition of the centered
    matrix. Scores have mean zero and their sample variance equals the
    leading eigenvalue of the sample covariance. The overall sign is
    fixed by orienting the lexicographically smallest observation to a
    nonpositive score. Raises DegenerateDataError when every column is
    constant.
    """
    centered = data.values - data.values.mean(axis=0)
    _, svals, vt = np.linalg.svd(centered, full_matrices=False)
    if svals[0] <= 0.0:
        raise DegenerateDataError("all columns constant; no principal direction")
    scores = centered @ vt[0]
    anchor = np.lexsort(data.values.T[::-1])[0]
    if scores[anchor] > 0:
        scores = -scores
    return Series(scores, sorted=False)


def classic_flatten(data: Dataset) -> Series:
    """Every matrix entry as a single sorted sequence of length n*d.

    Because the output is sorted, row-major versus column-major
    traversal of the matrix is unobservable.
    """
    flat = np.sort(data.values.ravel())
    return Series(flat, sorted=True)
