"""Exception types shared across the package.

Every error the service and CLI need to distinguish gets its own class so
they can be mapped to HTTP error kinds and exit codes without string
matching.
"""


class CsrPathError(Exception):
    """Base class for all csrpath errors."""


class UsageError(CsrPathError, ValueError):
    """A parameter value or combination of parameters is invalid."""


class VertexRangeError(CsrPathError, IndexError):
    """A vertex id fell outside [0, vertex_count)."""

    def __init__(self, vertex: int, vertex_count: int):
        self.vertex = int(vertex)
        self.vertex_count = int(vertex_count)
        super().__init__(
            f"vertex {self.vertex} out of range for graph with "
            f"{self.vertex_count} vertices"
        )


class GraphParseError(CsrPathError, ValueError):
    """A graph or cost file could not be parsed or failed validation."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphTooLargeError(CsrPathError, ValueError):
    """The graph exceeds the size limit of an exhaustive operation."""


class StackCapacityError(CsrPathError):
    """Push onto a full vertex stack."""


class StackUnderflowError(CsrPathError):
    """Pop from an empty vertex stack."""


class UnreachableVertexError(CsrPathError):
    """Path recovery was asked for a destination with no finite cost."""


class InconsistentCostsError(CsrPathError):
    """The backward walk found no qualifying predecessor; the cost array
    was not produced by a shortest-path run on this graph."""


class BrokenPathError(CsrPathError):
    """A claimed path contains a consecutive pair with no connecting edge."""

    def __init__(self, u: int, v: int):
        self.u = int(u)
        self.v = int(v)
        super().__init__(f"no edge {self.u} -> {self.v} in graph")


class IterationLimitError(CsrPathError, RuntimeError):
    """The relaxation loop ran longer than the vertex count allows; this
    indicates corrupted state, never a property of valid input."""


class MemoryBudgetError(CsrPathError):
    """A requested result matrix exceeds the configured memory budget."""
