"""CSR graph arrays, the saturating cost domain, and validity checking.

A graph is three flat arrays: ``vertex_array[v]`` is the index of vertex
v's first out-edge, ``edge_array[i]`` is the destination of edge i, and
``weight_array[i]`` its weight. Vertex v's edges end where vertex v+1's
begin (``edge_count`` for the last vertex).

Costs and weights are unsigned 64-bit. The maximum representable value,
``INF``, is reserved: it means "unreached" in cost arrays and is the
ceiling of saturating addition, so a sum can never wrap around below its
operands.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable

import numpy as np

from .errors import UsageError, VertexRangeError

if TYPE_CHECKING:
    from .paths import ReverseIndex

#: Unreached sentinel and saturation ceiling: max uint64.
INF = 2**64 - 1

COST_DTYPE = np.uint64    # cost / updating-cost / weight entries
OFFSET_DTYPE = np.uint64  # vertex_array entries (edge indices)
EDGE_DTYPE = np.uint32    # edge_array entries (vertex ids)
MASK_DTYPE = np.uint8     # frontier flags, 0 or 1


def saturating_add(a: int, b: int) -> int:
    """Add two costs, clamping at INF instead of wrapping.

    The result is always >= max(a, b), which is what makes relaxation
    candidates safe: a candidate can never dip below the cost of the
    vertex being relaxed.
    """
    s = int(a) + int(b)
    return s if s < INF else INF


def _as_unsigned(values, dtype, name: str) -> np.ndarray:
    """Coerce a sequence to an unsigned array, rejecting unrepresentable
    values instead of silently wrapping them."""
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise UsageError(f"{name} must be one-dimensional")
    if arr.dtype == dtype:
        return arr
    if arr.dtype.kind not in "ui":
        # Lists mixing plain ints with values past int64 get a lossy float
        # or object dtype from numpy; rebuild exactly from the originals.
        source = values.tolist() if isinstance(values, np.ndarray) else values
        try:
            arr = np.array([int(x) for x in source], dtype=object)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"{name} holds non-integer values") from exc
    if arr.size:
        lo, hi = arr.min(), arr.max()
        if int(lo) < 0:
            raise UsageError(f"{name} holds negative value {int(lo)}")
        if int(hi) > int(np.iinfo(dtype).max):
            raise UsageError(
                f"{name} holds value {int(hi)} exceeding {dtype.__name__} range"
            )
    return arr.astype(dtype)


@dataclass(eq=False)
class CsrGraph:
    """Immutable forward-star graph over flat arrays.

    Counts may be passed explicitly to describe inconsistent candidate
    data; ``validate_graph`` reports the mismatch rather than the
    constructor rejecting it. Arrays are marked read-only: once built, a
    graph is safe to share across workers.
    """

    vertex_count: int
    edge_count: int
    vertex_array: np.ndarray = field(repr=False)
    edge_array: np.ndarray = field(repr=False)
    weight_array: np.ndarray = field(repr=False)
    _reverse_index: "ReverseIndex | None" = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        self.vertex_count = int(self.vertex_count)
        self.edge_count = int(self.edge_count)
        if self.vertex_count < 0 or self.edge_count < 0:
            raise UsageError("vertex_count and edge_count must be nonnegative")
        self.vertex_array = _as_unsigned(self.vertex_array, OFFSET_DTYPE, "vertex_array")
        self.edge_array = _as_unsigned(self.edge_array, EDGE_DTYPE, "edge_array")
        self.weight_array = _as_unsigned(self.weight_array, COST_DTYPE, "weight_array")
        for arr in (self.vertex_array, self.edge_array, self.weight_array):
            arr.setflags(write=False)

    @classmethod
    def from_arrays(cls, vertex_array, edge_array, weight_array,
                    vertex_count: int | None = None,
                    edge_count: int | None = None) -> "CsrGraph":
        """Build a graph, deriving counts from array lengths by default."""
        if vertex_count is None:
            vertex_count = len(vertex_array)
        if edge_count is None:
            edge_count = len(edge_array)
        return cls(vertex_count, edge_count, vertex_array, edge_array, weight_array)

    @classmethod
    def from_edges(cls, vertex_count: int,
                   edges: Iterable[tuple[int, int, int]]) -> "CsrGraph":
        """Build a graph from (source, destination, weight) triples.

        Edge order within a vertex follows the input order; duplicate
        edges and self-loops are kept as given.
        """
        vertex_count = int(vertex_count)
        if vertex_count < 0:
            raise UsageError("vertex_count must be nonnegative")
        per_vertex: list[list[tuple[int, int]]] = [[] for _ in range(vertex_count)]
        for u, v, w in edges:
            u, v, w = int(u), int(v), int(w)
            if not 0 <= u < vertex_count:
                raise VertexRangeError(u, vertex_count)
            per_vertex[u].append((v, w))
        offsets = np.zeros(vertex_count, dtype=OFFSET_DTYPE)
        dests: list[int] = []
        weights: list[int] = []
        for u in range(vertex_count):
            offsets[u] = len(dests)
            for v, w in per_vertex[u]:
                dests.append(v)
                weights.append(w)
        return cls(vertex_count, len(dests), offsets, dests, weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CsrGraph):
            return NotImplemented
        return (self.vertex_count == other.vertex_count
                and self.edge_count == other.edge_count
                and np.array_equal(self.vertex_array, other.vertex_array)
                and np.array_equal(self.edge_array, other.edge_array)
                and np.array_equal(self.weight_array, other.weight_array))


@dataclass
class Violation:
    """One failed graph invariant: which rule, where, and the bad value."""

    invariant: str
    index: int | None
    value: int | None
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def messages(self) -> list[str]:
        return [v.message for v in self.violations]


def validate_graph(g: CsrGraph) -> ValidationReport:
    """Check every graph invariant, enumerating all violations.

    Accepts arbitrary candidate data; a violation is a result, not an
    error. A graph that passes here can be traversed without any index
    ever leaving its array.
    """
    out: list[Violation] = []

    def bad(invariant, index, value, message):
        out.append(Violation(invariant, index, value, message))

    if len(g.vertex_array) != g.vertex_count:
        bad("array_lengths", None, len(g.vertex_array),
            f"vertex_array length {len(g.vertex_array)} != vertex_count {g.vertex_count}")
    if len(g.edge_array) != g.edge_count:
        bad("array_lengths", None, len(g.edge_array),
            f"edge_array length {len(g.edge_array)} != edge_count {g.edge_count}")
    if len(g.weight_array) != g.edge_count:
        bad("array_lengths", None, len(g.weight_array),
            f"weight_array length {len(g.weight_array)} != edge_count {g.edge_count}")

    va, ea, wa = g.vertex_array, g.edge_array, g.weight_array
    if len(va) > 1:
        for i in np.flatnonzero(va[:-1] > va[1:]):
            bad("vertex_array_nondecreasing", int(i), int(va[i]),
                f"vertex_array not nondecreasing at index {int(i)}: "
                f"{int(va[i])} > {int(va[i + 1])}")
    for i in np.flatnonzero(va > np.uint64(g.edge_count)):
        bad("vertex_array_entry_bounds", int(i), int(va[i]),
            f"vertex_array entry {int(va[i])} at index {int(i)} exceeds "
            f"edge_count {g.edge_count}")
    if g.vertex_count <= np.iinfo(EDGE_DTYPE).max:
        dest_bound = EDGE_DTYPE(g.vertex_count)
        for i in np.flatnonzero(ea >= dest_bound):
            bad("edge_destination_range", int(i), int(ea[i]),
                f"edge destination out of range at index {int(i)}: "
                f"{int(ea[i])} >= vertex_count {g.vertex_count}")
    for i in np.flatnonzero(wa == COST_DTYPE(INF)):
        bad("weight_below_inf", int(i), int(wa[i]),
            f"weight at index {int(i)} equals the reserved INF sentinel")
    return ValidationReport(out)


def out_edge_range(g: CsrGraph, v: int) -> tuple[int, int]:
    """Half-open [begin, end) range of vertex v's edges.

    The last vertex's range is closed off by edge_count; every other
    vertex's by its successor's first edge.
    """
    v = int(v)
    if not 0 <= v < g.vertex_count:
        raise VertexRangeError(v, g.vertex_count)
    begin = int(g.vertex_array[v])
    if v < g.vertex_count - 1:
        end = int(g.vertex_array[v + 1])
    else:
        end = g.edge_count
    return begin, end


@dataclass
class SsspState:
    """Per-run mutable state: frontier mask, settled costs, and the
    tentative-cost double buffer, each of length vertex_count."""

    mask: np.ndarray
    cost: np.ndarray
    updating_cost: np.ndarray

    def copy(self) -> "SsspState":
        return SsspState(self.mask.copy(), self.cost.copy(),
                         self.updating_cost.copy())
