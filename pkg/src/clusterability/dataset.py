"""Numeric dataset container, delimited-text ingestion, and standardization.

A dataset is an n x d matrix of finite reals: one observation per row, one
feature per column. Ingestion accepts comma- or tab-delimited UTF-8 text
with an optional single header line. Sample statistics use the n-1
denominator throughout.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDataError, ParseError, ShapeError, SizeError


class StandardizationMode(enum.Enum):
    """Optional column scaling applied before analysis."""

    NONE = "none"
    CENTER = "center"
    ZSCORE = "center-and-unit-variance"


@dataclass(frozen=True)
class Dataset:
    """Immutable n x d matrix of finite observations.

    Invariants: every entry finite, n >= 2, d >= 1. The wrapped array is
    set read-only so instances can be shared across threads.
    """

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise ShapeError(f"expected a 2-D matrix, got ndim={arr.ndim}")
        if arr.shape[0] < 2:
            raise SizeError(f"need at least 2 observations, got {arr.shape[0]}")
        if arr.shape[1] < 1:
            raise ShapeError("need at least 1 feature column")
        if not np.all(np.isfinite(arr)):
            bad = np.argwhere(~np.isfinite(arr))[0]
            raise ParseError(
                f"non-finite value at row {bad[0] + 1}, column {bad[1] + 1}",
                row=int(bad[0] + 1),
                col=int(bad[1] + 1),
            )
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


def _detect_delimiter(line: str) -> str:
    # Auto-detection is deliberately limited to tab and comma; other
    # separators require an explicit argument.
    if "\t" in line:
        return "\t"
    return ","


def load_matrix(source, has_header: bool = False, delimiter: str | None = None) -> Dataset:
    """Parse delimited numeric text into a Dataset.

    ``source`` may be a string, bytes, or a file-like object. Rows are
    observations, columns are features. A single-column file needs no
    delimiter at all.

    Raises ParseError on non-numeric cells (with 1-based row/column
    location), ShapeError on ragged rows, SizeError when fewer than two
    data rows are present.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    elif isinstance(source, io.IOBase) or hasattr(source, "read"):
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    else:
        raise TypeError(f"unsupported source type {type(source)!r}")

    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if has_header and lines:
        lines = lines[1:]
    if len(lines) < 2:
        raise SizeError(f"need at least 2 data rows, got {len(lines)}")

    if delimiter is None:
        delimiter = _detect_delimiter(lines[0])

    rows = []
    width = None
    for i, line in enumerate(lines, start=1):
        cells = [c.strip() for c in line.split(delimiter)]
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ShapeError(
                f"row {i} has {len(cells)} columns, expected {width}"
            )
        parsed = []
        for j, cell in enumerate(cells, start=1):
            try:
                parsed.append(float(cell))
            except ValueError:
                raise ParseError(
                    f"could not parse {cell!r} at row {i}, column {j}",
                    row=i,
                    col=j,
                ) from None
        rows.append(parsed)

    return Dataset(np.array(rows, dtype=np.float64))


def serialize(data: Dataset, delimiter: str = ",", header: list[str] | None = None) -> str:
    """Write a dataset back to delimited text at full float precision.

    load_matrix(serialize(d)) reproduces d exactly.
    """
    out = []
    if header is not None:
        out.append(delimiter.join(header))
    for row in data.values:
        out.append(delimiter.join(repr(float(v)) for v in row))
    return "\n".join(out) + "\n"


def standardize(data: Dataset, mode: StandardizationMode) -> Dataset:
    """Return a copy of the dataset with columns optionally centered/scaled.

    CENTER subtracts each column mean; ZSCORE additionally divides by the
    sample standard deviation (n-1 denominator). Raises
    DegenerateDataError for a constant column under ZSCORE.
    """
    if mode is StandardizationMode.NONE:
        return data
    values = data.values - data.values.mean(axis=0)
    if mode is StandardizationMode.ZSCORE:
        sd = data.values.std(axis=0, ddof=1)
        dead = np.flatnonzero(sd == 0.0)
        if dead.size:
            raise DegenerateDataError(
                f"column {dead[0] + 1} is constant; cannot scale to unit variance"
            )
        values = values / sd
    return Dataset(values)
