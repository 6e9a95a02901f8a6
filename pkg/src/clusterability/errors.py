"""Exception hierarchy shared across the library.

The CLI maps these onto exit codes: ingestion problems (parse/shape/size)
exit with 2, statistical degeneracies with 3, usage errors with 1.
"""


class ClusterabilityError(Exception):
    """Base class for all library errors."""


class ParseError(ClusterabilityError):
    """A cell of a delimited file could not be parsed as a number."""

    def __init__(self, message, row=None, col=None):
        super().__init__(message)
        self.row = row
        self.col = col


class ShapeError(ClusterabilityError):
    """Rows of a delimited file have inconsistent lengths."""


class SizeError(ClusterabilityError):
    """Dataset too small for the requested operation."""


class DegenerateDataError(ClusterabilityError):
    """Data lacks the variation a statistical procedure requires.

    Examples: a constant column under z-scoring, an all-equal sample
    handed to the critical-bandwidth search, all-identical points in the
    Hopkins statistic.
    """


class ContractError(ClusterabilityError):
    """A documented precondition of an operation was violated."""
