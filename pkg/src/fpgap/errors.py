"""Exception hierarchy shared across the package.

Every validation error names the offending entry (edge, node, or line) in
its message so callers can report it without re-parsing input.
"""


class FpgapError(Exception):
    """Base class for all package errors."""


class GraphValidationError(FpgapError):
    """Base class for graph construction errors."""


class DuplicateEdgeError(GraphValidationError):
    pass


class SelfLoopError(GraphValidationError):
    pass


class NonPositiveWeightError(GraphValidationError):
    pass


class IndexOutOfRangeError(GraphValidationError):
    pass


class IsolatePresentError(FpgapError):
    """A per-node quantity was requested on a graph that still has isolates."""


class EmptyGraphError(FpgapError):
    """Dropping isolates left no nodes."""


class AttributeLengthMismatchError(FpgapError):
    pass


class LengthMismatchError(FpgapError):
    pass


class SizeLimitExceededError(FpgapError):
    """Brute-force oracle input exceeds its safety bound."""


class RetryLimitExceededError(FpgapError):
    """Rewiring could not produce a connected simple graph within the retry budget."""


class ConsistencyViolationError(FpgapError):
    """A gap sign disagreed with its associated correlation sign (should never happen)."""


class ParseError(FpgapError):
    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        super().__init__(message if line_number is None else f"line {line_number}: {message}")


class MissingColumnError(FpgapError):
    pass


class UnknownNodeInMetadataError(FpgapError):
    pass
