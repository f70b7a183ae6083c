"""Multi-source driver: one shortest-path run per requested source.

Rows are fully independent, so they may be computed by concurrent
workers, each owning private run state and writing a disjoint row of the
result matrix.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .engine import RunStats, run_sssp
from .errors import MemoryBudgetError, UsageError, VertexRangeError
from .graph import COST_DTYPE, CsrGraph

#: Refuse result matrices beyond this many bytes unless the caller raises
#: the budget; full many-source runs on large graphs do not fit in RAM.
DEFAULT_MEMORY_BUDGET = 1 << 30


@dataclass
class ApspResult:
    """Row-major cost matrix, one row per source, plus per-row counters."""

    sources: list[int]
    costs: np.ndarray  # shape (len(sources), vertex_count)
    row_stats: list[RunStats]

    def total_stats(self) -> RunStats:
        agg = RunStats()
        for s in self.row_stats:
            agg.iterations += s.iterations
            agg.relaxations += s.relaxations
            agg.wall_ms += s.wall_ms
            agg.checks += s.checks
        return agg


def run_apsp(g: CsrGraph, sources, *, workers: int = 1, check: bool = False,
             memory_budget: int = DEFAULT_MEMORY_BUDGET) -> ApspResult:
    """Shortest-path costs from every source in ``sources``.

    All sources are validated before any row is computed. A result matrix
    larger than ``memory_budget`` bytes is refused up front; compute such
    runs in batches of sources and persist each batch instead.
    """
    sources = [int(s) for s in sources]
    if not sources:
        raise UsageError("sources must be nonempty")
    for s in sources:
        if not 0 <= s < g.vertex_count:
            raise VertexRangeError(s, g.vertex_count)
    needed = len(sources) * g.vertex_count * COST_DTYPE().itemsize
    if needed > memory_budget:
        raise MemoryBudgetError(
            f"result matrix of {len(sources)} x {g.vertex_count} costs needs "
            f"{needed} bytes, over the {memory_budget}-byte budget; run in "
            f"batches of sources (a few thousand at a time) and store each "
            f"batch before the next")

    costs = np.empty((len(sources), g.vertex_count), dtype=COST_DTYPE)
    row_stats: list[RunStats] = [RunStats() for _ in sources]

    def row(i: int) -> None:
        result = run_sssp(g, sources[i], check=check)
        costs[i, :] = result.costs
        row_stats[i] = result.stats

    if workers <= 1 or len(sources) == 1:
        for i in range(len(sources)):
            row(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(row, range(len(sources))))
    return ApspResult(sources=sources, costs=costs, row_stats=row_stats)
