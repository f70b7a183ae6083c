"""Independent correctness oracles for the relaxation engine.

These deliberately share nothing with the engine's strategy: a classical
heap-based search with a settled set, exact (unbounded) integer sums
clamped to INF only at the end, and a tiny enumerating oracle to check
the checker. A defect would have to appear in two unrelated algorithms
and two arithmetic styles at once to slip through.
"""

from __future__ import annotations

import heapq

import numpy as np

from .errors import GraphTooLargeError, VertexRangeError
from .graph import COST_DTYPE, INF, CsrGraph, out_edge_range, saturating_add

#: exhaustive_shortest_paths refuses graphs beyond this many vertices.
EXHAUSTIVE_MAX_VERTICES = 10


def dijkstra_reference(g: CsrGraph, source: int) -> np.ndarray:
    """Textbook heap-based single-source shortest paths.

    Distances accumulate in exact Python integers (no wrapping is
    possible) and are clamped to the INF sentinel once, at the end, which
    is exactly the value a saturating engine must settle on.
    """
    source = int(source)
    if not 0 <= source < g.vertex_count:
        raise VertexRangeError(source, g.vertex_count)
    dist: list[int | None] = [None] * g.vertex_count
    dist[source] = 0
    heap = [(0, source)]
    edge_array, weight_array = g.edge_array, g.weight_array
    while heap:
        d, u = heapq.heappop(heap)
        if d != dist[u]:
            continue  # stale entry
        begin, end = out_edge_range(g, u)
        for i in range(begin, end):
            v = int(edge_array[i])
            nd = d + int(weight_array[i])
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    out = np.full(g.vertex_count, COST_DTYPE(INF), dtype=COST_DTYPE)
    for v, d in enumerate(dist):
        if d is not None and d < INF:
            out[v] = d
    return out


def exhaustive_shortest_paths(g: CsrGraph, source: int) -> np.ndarray:
    """Ground truth on tiny graphs: minimum over all simple paths.

    Depth-first enumeration from the source; parallel edges collapse to
    their cheapest representative first (a cheaper parallel edge always
    wins), and a branch is cut once it can no longer undercut a known
    cost, which changes nothing about the minima. Exact integer sums,
    clamped to INF at the end, as in dijkstra_reference.
    """
    if g.vertex_count > EXHAUSTIVE_MAX_VERTICES:
        raise GraphTooLargeError(
            f"exhaustive enumeration capped at {EXHAUSTIVE_MAX_VERTICES} "
            f"vertices, got {g.vertex_count}")
    source = int(source)
    if not 0 <= source < g.vertex_count:
        raise VertexRangeError(source, g.vertex_count)

    cheapest: list[dict[int, int]] = [{} for _ in range(g.vertex_count)]
    for u in range(g.vertex_count):
        begin, end = out_edge_range(g, u)
        for i in range(begin, end):
            v = int(g.edge_array[i])
            w = int(g.weight_array[i])
            if v not in cheapest[u] or w < cheapest[u][v]:
                cheapest[u][v] = w
    best: list[int | None] = [None] * g.vertex_count
    best[source] = 0

    def walk(u: int, acc: int, on_path: set[int]) -> None:
        for v, w in cheapest[u].items():
            if v in on_path:
                continue  # simple paths only
            nd = acc + w
            if best[v] is not None and nd >= best[v]:
                continue
            best[v] = nd
            on_path.add(v)
            walk(v, nd, on_path)
            on_path.remove(v)

    walk(source, 0, {source})
    out = np.full(g.vertex_count, COST_DTYPE(INF), dtype=COST_DTYPE)
    for v, d in enumerate(best):
        if d is not None and d < INF:
            out[v] = d
    return out


def fold_relax_oracle(pairs, base_cost: int, updating) -> list[int]:
    """Structurally recursive min-update fold over (destination, weight)
    pairs.

    An index-marching relaxation loop over an edge slice must equal this
    fold over the slice materialized as a list; the fold is the form the
    loop's behavior is actually defined by.
    """
    updating = [int(x) for x in updating]

    def fold(rest: list, acc: list[int]) -> list[int]:
        if not rest:
            return acc
        d, w = rest[0]
        out = list(acc)
        out[int(d)] = min(out[int(d)], saturating_add(int(base_cost), int(w)))
        return fold(rest[1:], out)

    return fold(list(pairs), updating)
