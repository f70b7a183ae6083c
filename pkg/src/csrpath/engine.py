"""Frontier-relaxation shortest path engine.

Each major iteration alternates two passes. The relaxation pass visits
every flagged (frontier) vertex, proposes ``cost[v] + weight`` to each
neighbor's tentative cost, and clears the flag; proposals go to the
tentative array only, so settled costs stay coherent within the pass.
The commit pass folds tentative costs into settled costs and re-flags
every vertex that improved.

All proposal merging is a min-fold, and min is commutative, associative,
and idempotent, so any vertex order -- ascending, permuted, or
partitioned across workers -- produces bit-identical state. The
sequential ascending order is the canonical schedule that every other
schedule is tested against.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import IterationLimitError, VertexRangeError
from .graph import (COST_DTYPE, INF, MASK_DTYPE, CsrGraph, SsspState,
                    out_edge_range, saturating_add)

# Relaxation temporaries are bounded to this many edges per batch so the
# transient memory of a whole-graph frontier stays modest at scale.
_MAX_BATCH_EDGES = 1 << 22

_INF = COST_DTYPE(INF)


@dataclass
class RunStats:
    """Counters for one shortest-path run."""

    iterations: int = 0
    relaxations: int = 0
    wall_ms: float = 0.0
    checks: int = 0  # invariant verifications performed (check mode only)


@dataclass
class SsspResult:
    costs: np.ndarray
    stats: RunStats = field(default_factory=RunStats)


def init_sssp(g: CsrGraph, source: int) -> SsspState:
    """Fresh run state: everything unreached except the flagged source."""
    source = int(source)
    if not 0 <= source < g.vertex_count:
        raise VertexRangeError(source, g.vertex_count)
    mask = np.zeros(g.vertex_count, dtype=MASK_DTYPE)
    cost = np.full(g.vertex_count, _INF, dtype=COST_DTYPE)
    mask[source] = 1
    cost[source] = 0
    return SsspState(mask=mask, cost=cost, updating_cost=cost.copy())


def relax_vertex(g: CsrGraph, state: SsspState, v: int) -> SsspState:
    """Relax one vertex: the scalar reference for every faster schedule.

    A flagged vertex proposes ``cost[v] + weight(v, d)`` to each
    neighbor d's tentative cost and is then unflagged; an unflagged
    vertex is untouched. Weights are indexed by edge index, never by the
    edge's destination. Settled costs are never written here.
    """
    begin, end = out_edge_range(g, v)  # also bounds-checks v
    if not state.mask[v]:
        return state
    cv = int(state.cost[v])
    edge_array, weight_array = g.edge_array, g.weight_array
    updating = state.updating_cost
    for i in range(begin, end):
        d = int(edge_array[i])
        candidate = saturating_add(cv, int(weight_array[i]))
        if candidate < int(updating[d]):
            updating[d] = candidate
    state.mask[v] = 0
    return state


def _relax_frontier(g: CsrGraph, cost: np.ndarray, updating: np.ndarray,
                    frontier: np.ndarray) -> int:
    """Vectorized relaxation of the given frontier vertices into
    ``updating``; returns the number of edges relaxed.

    Bit-identical to calling relax_vertex over the frontier: candidates
    are folded per destination with minimum, and saturation replaces any
    wrapped sum (detectable as candidate < source cost) with INF.
    ``frontier`` must be ascending (the last entry may be the last
    vertex, whose edge range is closed by edge_count).
    """
    if frontier.size == 0:
        return 0
    begins = g.vertex_array[frontier].astype(np.int64)
    last = frontier[-1]
    ends = np.empty(frontier.size, dtype=np.int64)
    ends[:-1] = g.vertex_array[frontier[:-1] + 1].astype(np.int64)
    ends[-1] = (g.vertex_array[last + 1].astype(np.int64)
                if last + 1 < g.vertex_count else g.edge_count)
    counts = ends - begins
    cum = np.cumsum(counts)
    total = int(cum[-1])
    if total == 0:
        return 0

    edge_array, weight_array = g.edge_array, g.weight_array
    lo = 0
    base = 0
    with np.errstate(over="ignore"):
        while lo < frontier.size:
            hi = int(np.searchsorted(cum, base + _MAX_BATCH_EDGES, side="left")) + 1
            hi = max(lo + 1, min(hi, frontier.size))
            batch = int(cum[hi - 1] - base)
            if batch:
                c = counts[lo:hi]
                # Edge index of every out-edge in the batch, in ascending
                # vertex order: a ragged gather via per-vertex shifts.
                shift = begins[lo:hi] - (cum[lo:hi] - c) + base
                eidx = np.arange(batch, dtype=np.int64)
                eidx += np.repeat(shift, c)
                src_cost = np.repeat(cost[frontier[lo:hi]], c)
                cand = src_cost + weight_array[eidx]
                cand[cand < src_cost] = _INF  # wrapped sums saturate
                np.minimum.at(updating, edge_array[eidx], cand)
            base = int(cum[hi - 1])
            lo = hi
    return total


def _worker_slices(n: int, workers: int) -> list[tuple[int, int]]:
    """Contiguous near-even partition of range(n) into `workers` slices."""
    bounds = np.linspace(0, n, workers + 1).astype(np.int64)
    return [(int(bounds[k]), int(bounds[k + 1])) for k in range(workers)
            if bounds[k] < bounds[k + 1]]


def _kernel1(g: CsrGraph, state: SsspState, workers: int = 1) -> int:
    frontier = np.flatnonzero(state.mask).astype(np.int64)
    if frontier.size == 0:
        return 0
    if workers <= 1:
        relaxed = _relax_frontier(g, state.cost, state.updating_cost, frontier)
    else:
        # Each worker owns a contiguous vertex-range slice of the frontier
        # and accumulates into a private shadow array; shadows merge into
        # the tentative costs by elementwise min, so the result is the
        # same whatever the thread timing.
        cuts = np.linspace(0, g.vertex_count, workers + 1).astype(np.int64)
        splits = np.searchsorted(frontier, cuts[1:-1])
        parts = [p for p in np.split(frontier, splits) if p.size]
        shadows = [np.full(g.vertex_count, _INF, dtype=COST_DTYPE)
                   for _ in parts]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            relaxed = sum(pool.map(
                lambda args: _relax_frontier(g, state.cost, args[0], args[1]),
                zip(shadows, parts)))
        for shadow in shadows:
            np.minimum(state.updating_cost, shadow, out=state.updating_cost)
    state.mask[frontier] = 0
    return relaxed


def kernel1_pass(g: CsrGraph, state: SsspState, *, workers: int = 1) -> SsspState:
    """One full relaxation pass over all vertices.

    Equivalent to relax_vertex on every vertex in any order; with
    workers > 1 the frontier is partitioned across threads and merged,
    still bit-identical to the sequential result.
    """
    _kernel1(g, state, workers)
    return state


def kernel1_pass_ordered(g: CsrGraph, state: SsspState, order) -> SsspState:
    """Relaxation pass applying relax_vertex in an explicit vertex order.

    Exists so schedule independence is directly testable; the result must
    match kernel1_pass bit for bit for any permutation of the vertices.
    """
    for v in order:
        relax_vertex(g, state, v)
    return state


def _commit_slice(state: SsspState, lo: int, hi: int) -> bool:
    cost = state.cost[lo:hi]
    updating = state.updating_cost[lo:hi]
    better = updating < cost
    changed = bool(better.any())
    if changed:
        cost[better] = updating[better]
        state.mask[lo:hi][better] = 1
    # Both branches land here: improved entries already agree, the rest
    # are reset to the settled cost.
    updating[:] = cost
    return changed


def kernel2_pass(g: CsrGraph, state: SsspState, *, workers: int = 1) -> bool:
    """Commit pass: fold tentative costs into settled costs.

    Where the tentative cost is lower it becomes the settled cost and the
    vertex is re-flagged for the next iteration; otherwise the tentative
    entry is reset to the settled cost. Returns True iff any flag was
    set. Afterwards the two cost arrays are elementwise equal.
    """
    if workers <= 1:
        return _commit_slice(state, 0, g.vertex_count)
    slices = _worker_slices(g.vertex_count, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda s: _commit_slice(state, *s), slices))
    return any(results)


def mask_nonempty(state: SsspState) -> bool:
    """True iff any frontier flag is set."""
    return bool(state.mask.any())


def run_sssp(g: CsrGraph, source: int, *, workers: int = 1,
             check: bool = False) -> SsspResult:
    """Single-source shortest path costs by iterated relax/commit passes.

    Returns the settled cost of a minimum-weight path to every vertex
    (INF when unreachable) plus run counters. With ``check=True`` every
    iteration verifies the loop invariants: tentative == settled after
    each commit, no settled cost ever increases, the source stays 0, and
    the commit flag agrees with frontier emptiness.

    Nonnegative weights bound shortest-path hop depth by vertex_count - 1,
    so more than vertex_count iterations means broken state and raises
    IterationLimitError.
    """
    t0 = time.perf_counter()
    state = init_sssp(g, source)
    stats = RunStats()
    prev_cost = state.cost.copy() if check else None
    while True:
        stats.relaxations += _kernel1(g, state, workers)
        changed = kernel2_pass(g, state, workers=workers)
        stats.iterations += 1
        if check:
            assert np.array_equal(state.updating_cost, state.cost), \
                "tentative costs must equal settled costs after a commit pass"
            assert not bool((state.cost > prev_cost).any()), \
                "no settled cost may increase across iterations"
            assert int(state.cost[source]) == 0, "source cost must stay 0"
            assert changed == mask_nonempty(state), \
                "commit flag must agree with frontier emptiness"
            prev_cost = state.cost.copy()
            stats.checks += 1
        if not changed:
            break
        if stats.iterations >= g.vertex_count:
            # A further pass would exceed the hop-depth bound.
            raise IterationLimitError(
                f"no fixed point after {stats.iterations} iterations on "
                f"{g.vertex_count} vertices")
    stats.wall_ms = (time.perf_counter() - t0) * 1000.0
    return SsspResult(costs=state.cost, stats=stats)
