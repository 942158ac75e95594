"""
Error types raised by the MMDS toolkit.
The CLI maps every MmdsError to exit code 2, the HTTP API to a 4xx response.
"""
from typing import Optional


class MmdsError(Exception):
    """Base class for all toolkit errors"""


class ParseError(MmdsError, ValueError):
    """Malformed input text; carries the 1-based line number when known"""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        self.reason = message
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class GraphError(MmdsError, ValueError):
    """Graph construction violates a structural invariant"""


class VertexOutOfRange(MmdsError, IndexError):
    def __init__(self, vertex: int, n: int):
        self.vertex = vertex
        self.n = n
        super().__init__(f"vertex {vertex} out of range 1..{n}")


class BudgetExceeded(MmdsError):
    """A solver refused to run because the search space is over its configured budget"""

    def __init__(self, what: str, needed: int, limit: int):
        self.what = what
        self.needed = needed
        self.limit = limit
        super().__init__(f"{what} {needed} exceeds budget {limit}")


class InvalidDecomposition(MmdsError):
    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(f"invalid decomposition: {verdict}")


class InvalidCover(MmdsError, ValueError):
    """Vertex-cover split inputs are inconsistent with the graph"""


class ReductionError(MmdsError, ValueError):
    """Source instance or witness does not satisfy a generator precondition"""


class UsageError(MmdsError, ValueError):
    """Options that the selected solver cannot honor"""
