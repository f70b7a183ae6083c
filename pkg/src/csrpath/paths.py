"""Shortest-path reconstruction from a completed cost array.

The engine stores only costs, never the paths themselves. Given the cost
array of a finished run, an actual path is recovered by walking backward
from the destination: a predecessor u of the current vertex qualifies
when ``cost[u] + weight(u, current) == cost[current]``. Visited vertices
are pushed on a LIFO stack, so popping it at the source yields the path
in source-to-destination order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (BrokenPathError, InconsistentCostsError,
                     StackCapacityError, StackUnderflowError,
                     UnreachableVertexError, UsageError, VertexRangeError)
from .graph import (COST_DTYPE, INF, CsrGraph, out_edge_range,
                    saturating_add)


class VertexStack:
    """Fixed-capacity LIFO stack of vertex ids."""

    def __init__(self, capacity: int):
        capacity = int(capacity)
        if capacity < 0:
            raise UsageError("stack capacity must be nonnegative")
        self.capacity = capacity
        self._items = np.empty(capacity, dtype=np.int64)
        self._depth = 0

    @property
    def depth(self) -> int:
        return self._depth

    def __len__(self) -> int:
        return self._depth

    def is_empty(self) -> bool:
        return self._depth == 0

    def push(self, v: int) -> None:
        if self._depth >= self.capacity:
            raise StackCapacityError(
                f"stack full at capacity {self.capacity}")
        self._items[self._depth] = int(v)
        self._depth += 1

    def pop(self) -> int:
        if self._depth == 0:
            raise StackUnderflowError("pop from empty stack")
        self._depth -= 1
        return int(self._items[self._depth])


@dataclass
class ReverseIndex:
    """Transposed adjacency: for each vertex, its incoming edges.

    Entry d's predecessors live at ``sources[offsets[d]:offsets[d+1]]``
    with matching ``weights``, sorted by predecessor id. One pair per
    forward edge.
    """

    offsets: np.ndarray  # int64, length vertex_count + 1
    sources: np.ndarray  # int64, length edge_count
    weights: np.ndarray  # uint64, length edge_count

    def predecessors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = int(self.offsets[v]), int(self.offsets[v + 1])
        return self.sources[lo:hi], self.weights[lo:hi]


def build_reverse_index(g: CsrGraph) -> ReverseIndex:
    """Build (and cache on the graph) the incoming-edge index.

    One O(V + E log E) pass; the graph is immutable so the result is
    shared by every later path query.
    """
    if g._reverse_index is not None:
        return g._reverse_index
    degrees = np.diff(np.concatenate(
        (g.vertex_array.astype(np.int64), [g.edge_count])))
    src_of_edge = np.repeat(np.arange(g.vertex_count, dtype=np.int64), degrees)
    dest = g.edge_array.astype(np.int64)
    order = np.lexsort((g.weight_array, src_of_edge, dest))
    counts = np.bincount(dest, minlength=g.vertex_count)
    offsets = np.zeros(g.vertex_count + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    index = ReverseIndex(offsets=offsets,
                         sources=src_of_edge[order],
                         weights=g.weight_array[order].astype(COST_DTYPE))
    g._reverse_index = index
    return index


def _qualifying_predecessors(index: ReverseIndex, cost: np.ndarray, v: int):
    """Predecessors u with cost[u] + w == cost[v], strictly-cheaper ones
    first, each group in ascending id order, duplicates dropped."""
    cv = int(cost[v])
    preds, weights = index.predecessors(v)
    equal: list[int] = []
    last_strict = -1
    for k in range(len(preds)):
        u = int(preds[k])
        cu = int(cost[u])
        if saturating_add(cu, int(weights[k])) != cv:
            continue
        if cu < cv:
            if u != last_strict:
                last_strict = u
                yield u
        elif not equal or equal[-1] != u:
            equal.append(u)
    yield from equal


def recover_path(g: CsrGraph, cost, source: int, dest: int) -> list[int]:
    """Recover one shortest path from a completed run's cost array.

    Walks backward from the destination through qualifying predecessors,
    preferring strictly cheaper ones (smallest id first) and backtracking
    out of equal-cost dead ends, so zero-weight cycles cannot trap the
    walk. Each vertex is tried at most once, bounding the walk by
    vertex_count steps; running out of candidates means the cost array
    was not produced by a shortest-path run on this graph.
    """
    cost = np.asarray(cost, dtype=COST_DTYPE)
    if len(cost) != g.vertex_count:
        raise UsageError(
            f"cost array length {len(cost)} != vertex_count {g.vertex_count}")
    for v in (source, dest):
        if not 0 <= int(v) < g.vertex_count:
            raise VertexRangeError(v, g.vertex_count)
    source, dest = int(source), int(dest)
    if int(cost[dest]) == INF:
        raise UnreachableVertexError(
            f"vertex {dest} is unreached (cost INF) from {source}")
    if dest == source:
        return [source]

    index = build_reverse_index(g)
    stack = VertexStack(g.vertex_count)
    stack.push(dest)
    frames = [(dest, _qualifying_predecessors(index, cost, dest))]
    on_path = {dest}
    dead: set[int] = set()
    while frames:
        current, candidates = frames[-1]
        if current == source:
            break
        step = None
        for u in candidates:
            if u not in on_path and u not in dead:
                step = u
                break
        if step is None:
            dead.add(current)
            on_path.discard(current)
            stack.pop()
            frames.pop()
            continue
        stack.push(step)
        on_path.add(step)
        frames.append((step, _qualifying_predecessors(index, cost, step)))
    else:
        raise InconsistentCostsError(
            f"no predecessor chain from {dest} back to {source}; the cost "
            f"array is not a shortest-path result for this graph")

    path = []
    while not stack.is_empty():
        path.append(stack.pop())
    return path


def path_cost(g: CsrGraph, path) -> int:
    """Saturating weight of a path, taking the cheapest of parallel edges
    for each consecutive pair; a pair with no edge is an error."""
    vertices = [int(v) for v in path]
    if not vertices:
        raise UsageError("path must be nonempty")
    for v in vertices:
        if not 0 <= v < g.vertex_count:
            raise VertexRangeError(v, g.vertex_count)
    total = 0
    for u, v in zip(vertices, vertices[1:]):
        begin, end = out_edge_range(g, u)
        best = None
        for i in range(begin, end):
            if int(g.edge_array[i]) == v:
                w = int(g.weight_array[i])
                if best is None or w < best:
                    best = w
        if best is None:
            raise BrokenPathError(u, v)
        total = saturating_add(total, best)
    return total
