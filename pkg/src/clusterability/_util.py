"""Small shared helpers."""

from __future__ import annotations

import numpy as np


def as_1d(sample) -> np.ndarray:
    """Accept a Series or array-like; return a contiguous float64 vector."""
    values = getattr(sample, "values", sample)
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim != 1:
        arr = arr.ravel()
    return arr
