"""Deterministic random graph construction.

Uses splitmix64 in counter mode: draw c of a seeded stream is the
splitmix64 finalizer applied to ``seed + (c + 1) * GOLDEN``. Every draw
is a pure function of (seed, counter), so generation is reproducible
across runs and machines, and any block of edges can be produced
independently of the rest.
"""

from __future__ import annotations

import numpy as np

from .errors import UsageError
from .graph import COST_DTYPE, EDGE_DTYPE, INF, OFFSET_DTYPE, CsrGraph

_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_U64 = 2**64 - 1


def splitmix64(seed: int, counter: int) -> int:
    """Draw `counter` of the stream seeded by `seed`, as a 64-bit value."""
    z = (int(seed) + (int(counter) + 1) * _GOLDEN) & _U64
    z = ((z ^ (z >> 30)) * _MIX1) & _U64
    z = ((z ^ (z >> 27)) * _MIX2) & _U64
    return z ^ (z >> 31)


def _splitmix64_block(seed: int, first_counter: int, count: int) -> np.ndarray:
    """Vectorized splitmix64 draws for counters [first, first + count)."""
    counters = np.arange(first_counter + 1, first_counter + count + 1,
                         dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & _U64) + counters * np.uint64(_GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))


def generate_graph(vertex_count: int, edges_per_vertex: int, max_weight: int,
                   seed: int) -> CsrGraph:
    """Random graph with a fixed out-degree everywhere.

    Every vertex gets exactly ``edges_per_vertex`` out-edges; destinations
    are uniform over the vertices and weights uniform over
    [1, max_weight]. Self-loops and duplicate edges are not filtered (the
    relaxation algorithm is correct for multigraphs). Identical
    parameters and seed give a bit-identical graph: edge i draws its
    destination from counter 2i and its weight from counter 2i + 1.
    """
    vertex_count = int(vertex_count)
    edges_per_vertex = int(edges_per_vertex)
    max_weight = int(max_weight)
    if vertex_count < 1:
        raise UsageError("vertex_count must be >= 1")
    if vertex_count > int(np.iinfo(EDGE_DTYPE).max):
        raise UsageError(
            f"vertex_count must fit {EDGE_DTYPE.__name__} destinations")
    if edges_per_vertex < 0:
        raise UsageError("edges_per_vertex must be >= 0")
    if not 1 <= max_weight < INF:
        raise UsageError("max_weight must be in [1, INF)")
    seed = int(seed) & _U64

    edge_count = vertex_count * edges_per_vertex
    vertex_array = (np.arange(vertex_count, dtype=OFFSET_DTYPE)
                    * OFFSET_DTYPE(edges_per_vertex))
    if edge_count:
        draws = _splitmix64_block(seed, 0, 2 * edge_count)
        dests = (draws[0::2] % np.uint64(vertex_count)).astype(EDGE_DTYPE)
        weights = (draws[1::2] % np.uint64(max_weight)).astype(COST_DTYPE)
        weights += COST_DTYPE(1)
    else:
        dests = np.empty(0, dtype=EDGE_DTYPE)
        weights = np.empty(0, dtype=COST_DTYPE)
    return CsrGraph(vertex_count, edge_count, vertex_array, dests, weights)
