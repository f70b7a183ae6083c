"""Timing harness for multi-source runs.

Configurations execute strictly sequentially so timings stay honest; each
measurement becomes one machine-readable record suitable for plotting
time against source count.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, dataclass

import numpy as np

from .apsp import run_apsp
from .errors import UsageError
from .graph import CsrGraph


@dataclass
class BenchRecord:
    command: str
    vertices: int
    edges: int
    sources: int
    workers: int
    iterations: int
    relaxations: int
    wall_ms: float
    checksum: str


def cost_checksum(costs) -> str:
    """Deterministic digest of a cost array or matrix: sha256 over the
    little-endian 64-bit encoding, so identical costs always hash alike."""
    arr = np.ascontiguousarray(np.asarray(costs, dtype=np.uint64))
    return hashlib.sha256(arr.astype("<u8", copy=False).tobytes()).hexdigest()


def bench(g: CsrGraph, source_counts, repetitions: int = 1, *,
          workers: int = 1, check: bool = False) -> list[BenchRecord]:
    """Time a multi-source run for each source count, repeated.

    Source count k means sources 0..k-1. Returns one record per
    (source count, repetition), in execution order.
    """
    source_counts = [int(k) for k in source_counts]
    repetitions = int(repetitions)
    if repetitions < 1:
        raise UsageError("repetitions must be >= 1")
    if not source_counts:
        raise UsageError("source_counts must be nonempty")
    for k in source_counts:
        if not 1 <= k <= g.vertex_count:
            raise UsageError(
                f"source count {k} not in [1, {g.vertex_count}]")
    # Round-robin over configurations so a transient load spike on the
    # machine cannot land on every repetition of one configuration.
    records = []
    for _ in range(repetitions):
        for k in source_counts:
            sources = list(range(k))
            t0 = time.perf_counter()
            result = run_apsp(g, sources, workers=workers, check=check)
            wall_ms = (time.perf_counter() - t0) * 1000.0
            total = result.total_stats()
            records.append(BenchRecord(
                command="bench",
                vertices=g.vertex_count,
                edges=g.edge_count,
                sources=k,
                workers=workers,
                iterations=total.iterations,
                relaxations=total.relaxations,
                wall_ms=wall_ms,
                checksum=cost_checksum(result.costs),
            ))
    return records


def records_to_jsonl(records) -> str:
    """One JSON object per line, in record order."""
    return "".join(json.dumps(asdict(r)) + "\n" for r in records)
