"""Exception hierarchy shared by every module."""

from typing import Any, Optional


class HeffterError(Exception):
    """Base class for all library errors."""


class StructuralError(HeffterError):
    """The grid is not n x n, or holds a value that is not a nonzero integer."""


class ParameterError(HeffterError):
    """Construction parameters violate a parity or range precondition."""


class OccupancyError(HeffterError):
    """Cells that must be empty for an overlay are already filled."""


class PreconditionError(HeffterError):
    """An input array does not satisfy the operation's precondition."""


class ConsistencyError(HeffterError):
    """A current assignment does not describe a regular bipartite graph."""


class InternalConsistencyError(HeffterError):
    """A routed construction produced an array that fails verification."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class UnknownClassError(HeffterError):
    """(n, k) is admissible but no construction is known for it."""

    def __init__(self, message: str, status: Any = None):
        super().__init__(message)
        self.status = status


class DocumentParseError(HeffterError):
    """A serialized array could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column
