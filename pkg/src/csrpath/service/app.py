"""HTTP facade over the engine.

A graph is registered once (generated, loaded from a server-side file, or
uploaded inline) and then serves any number of shortest-path, recovery,
verification, and benchmark queries. The store and all computation live
in the server process; file paths in requests refer to the server's
filesystem, which is the local machine when the CLI embeds the app
in-process.
"""

from __future__ import annotations

import itertools
import resource
import threading
from dataclasses import asdict

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .. import io as graph_io
from ..apsp import run_apsp
from ..bench import bench as bench_graph
from ..bench import cost_checksum
from ..engine import RunStats, run_sssp
from ..errors import (BrokenPathError, CsrPathError, GraphParseError,
                      GraphTooLargeError, InconsistentCostsError,
                      IterationLimitError, MemoryBudgetError,
                      UnreachableVertexError, UsageError, VertexRangeError)
from ..graph import INF, CsrGraph, validate_graph
from ..generate import generate_graph
from ..oracle import dijkstra_reference
from ..paths import path_cost, recover_path
from . import models

#: Cap on mismatch detail entries in a verify response.
MAX_REPORTED_MISMATCHES = 20


class UnknownGraphError(CsrPathError):
    def __init__(self, graph_id: str):
        super().__init__(f"unknown graph id {graph_id!r}")


class GraphStore:
    """Registered graphs by id; safe for concurrent requests."""

    def __init__(self):
        self._graphs: dict[str, tuple[CsrGraph, str]] = {}
        self._lock = threading.Lock()
        self._ids = itertools.count(1)

    def register(self, g: CsrGraph, origin: str) -> str:
        with self._lock:
            graph_id = f"g{next(self._ids):04d}"
            self._graphs[graph_id] = (g, origin)
        return graph_id

    def get(self, graph_id: str) -> CsrGraph:
        with self._lock:
            entry = self._graphs.get(graph_id)
        if entry is None:
            raise UnknownGraphError(graph_id)
        return entry[0]

    def drop(self, graph_id: str) -> None:
        with self._lock:
            if self._graphs.pop(graph_id, None) is None:
                raise UnknownGraphError(graph_id)

    def items(self) -> list[tuple[str, CsrGraph, str]]:
        with self._lock:
            return [(gid, g, origin)
                    for gid, (g, origin) in self._graphs.items()]

    def origin(self, graph_id: str) -> str:
        with self._lock:
            entry = self._graphs.get(graph_id)
        if entry is None:
            raise UnknownGraphError(graph_id)
        return entry[1]


_ERROR_KINDS: list[tuple[type[Exception], str, int]] = [
    (UnknownGraphError, "unknown_graph", 404),
    (GraphParseError, "parse", 400),
    (GraphTooLargeError, "usage", 400),
    (UsageError, "usage", 400),
    (VertexRangeError, "range", 400),
    (UnreachableVertexError, "unreachable", 400),
    (InconsistentCostsError, "inconsistent_costs", 409),
    (BrokenPathError, "broken_path", 400),
    (MemoryBudgetError, "memory_budget", 413),
    (IterationLimitError, "internal", 500),
    (FileNotFoundError, "io", 400),
    (IsADirectoryError, "io", 400),
    (PermissionError, "io", 400),
]


def _costs_to_json(row) -> list[int | None]:
    inf = np.uint64(INF)
    return [None if x == inf else int(x) for x in row]


def _stats_model(stats: RunStats, with_rss: bool = True) -> models.RunStatsModel:
    peak = (resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
            if with_rss else None)
    return models.RunStatsModel(iterations=stats.iterations,
                                relaxations=stats.relaxations,
                                wall_ms=stats.wall_ms,
                                peak_rss_kb=peak)


def _resolve_sources(sources, source_count, vertex_count: int) -> list[int]:
    """Explicit list wins; source_count k means vertices 0..k-1; the
    default is the single source 0."""
    if sources is not None and source_count is not None:
        raise UsageError("give either sources or source_count, not both")
    if sources is not None:
        if not sources:
            raise UsageError("sources must be nonempty")
        return [int(s) for s in sources]
    if source_count is not None:
        if source_count > vertex_count:
            raise UsageError(
                f"source_count {source_count} exceeds vertex count "
                f"{vertex_count}")
        return list(range(source_count))
    return [0]


def create_app(store: GraphStore | None = None) -> FastAPI:
    store = store if store is not None else GraphStore()
    app = FastAPI(title="csrpath", version="0.1.0",
                  description="Shortest-path engine over CSR graphs")
    app.state.store = store

    def error_handler(request: Request, exc: Exception) -> JSONResponse:
        for cls, kind, status in _ERROR_KINDS:
            if isinstance(exc, cls):
                return JSONResponse(
                    status_code=status,
                    content={"detail": {"kind": kind, "message": str(exc)}})
        raise exc

    for cls, _, _ in _ERROR_KINDS:
        app.add_exception_handler(cls, error_handler)

    def info(graph_id: str) -> models.GraphInfo:
        g = store.get(graph_id)
        return models.GraphInfo(graph_id=graph_id, vertices=g.vertex_count,
                                edges=g.edge_count,
                                origin=store.origin(graph_id))

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/graphs", response_model=list[models.GraphInfo])
    def list_graphs():
        return [models.GraphInfo(graph_id=gid, vertices=g.vertex_count,
                                 edges=g.edge_count, origin=origin)
                for gid, g, origin in store.items()]

    @app.post("/graphs/generate", response_model=models.GraphInfo)
    def generate(req: models.GenerateRequest):
        g = generate_graph(req.vertices, req.degree, req.max_weight, req.seed)
        gid = store.register(g, origin=f"generate(seed={req.seed})")
        return info(gid)

    @app.post("/graphs/load", response_model=models.GraphInfo)
    def load(req: models.LoadRequest):
        g = graph_io.load_graph(req.path, fmt=req.format)
        gid = store.register(g, origin=f"load({req.path})")
        return info(gid)

    @app.post("/graphs", response_model=models.GraphInfo)
    def upload(req: models.UploadRequest):
        g = CsrGraph.from_arrays(req.vertex_array, req.edge_array,
                                 req.weight_array,
                                 vertex_count=req.vertex_count,
                                 edge_count=req.edge_count)
        report = validate_graph(g)
        if not report.ok:
            raise UsageError("invalid graph: " + "; ".join(report.messages()))
        gid = store.register(g, origin="upload")
        return info(gid)

    @app.get("/graphs/{graph_id}", response_model=models.GraphInfo)
    def get_graph(graph_id: str):
        return info(graph_id)

    @app.delete("/graphs/{graph_id}")
    def delete_graph(graph_id: str):
        store.drop(graph_id)
        return {"deleted": graph_id}

    @app.post("/graphs/{graph_id}/save", response_model=models.SaveResponse)
    def save(graph_id: str, req: models.SaveRequest):
        g = store.get(graph_id)
        n = graph_io.save_graph(g, req.path, fmt=req.format)
        return models.SaveResponse(path=req.path, bytes_written=n)

    @app.get("/graphs/{graph_id}/export")
    def export(graph_id: str, format: str = "text"):
        import io as _stdio
        g = store.get(graph_id)
        buf = _stdio.BytesIO()
        if format == "text":
            graph_io.write_graph_text(g, buf)
            return Response(content=buf.getvalue(), media_type="text/plain")
        if format == "bin":
            graph_io.write_graph_binary(g, buf)
            return Response(content=buf.getvalue(),
                            media_type="application/octet-stream")
        raise UsageError(f"unknown export format {format!r}")

    @app.post("/graphs/{graph_id}/sssp", response_model=models.SsspResponse,
              response_model_exclude_none=True)
    def sssp(graph_id: str, req: models.SsspRequest):
        g = store.get(graph_id)
        result = run_sssp(g, req.source, workers=req.workers, check=req.check)
        checksum = cost_checksum(result.costs)
        out_path = None
        costs = None
        if req.out:
            with open(req.out, "wb") as fh:
                graph_io.write_costs(result.costs, fh)
            out_path = req.out
        else:
            costs = _costs_to_json(result.costs)
        return models.SsspResponse(source=req.source, costs=costs,
                                   stats=_stats_model(result.stats),
                                   checksum=checksum, out=out_path)

    @app.post("/graphs/{graph_id}/apsp", response_model=models.ApspResponse,
              response_model_exclude_none=True)
    def apsp(graph_id: str, req: models.ApspRequest):
        g = store.get(graph_id)
        sources = _resolve_sources(req.sources, req.source_count,
                                   g.vertex_count)
        budget = {} if req.memory_budget is None else {
            "memory_budget": req.memory_budget}
        result = run_apsp(g, sources, workers=req.workers, check=req.check,
                          **budget)
        checksum = cost_checksum(result.costs)
        out_path = None
        costs = None
        if req.out:
            with open(req.out, "wb") as fh:
                graph_io.write_costs(result.costs, fh)
            out_path = req.out
        else:
            costs = [_costs_to_json(row) for row in result.costs]
        return models.ApspResponse(sources=sources, costs=costs,
                                   stats=_stats_model(result.total_stats()),
                                   checksum=checksum, out=out_path)

    @app.post("/graphs/{graph_id}/path", response_model=models.PathResponse)
    def path(graph_id: str, req: models.PathRequest):
        g = store.get(graph_id)
        result = run_sssp(g, req.source)
        vertices = recover_path(g, result.costs, req.source, req.dest)
        return models.PathResponse(source=req.source, dest=req.dest,
                                   vertices=vertices,
                                   cost=path_cost(g, vertices))

    @app.post("/graphs/{graph_id}/verify", response_model=models.VerifyResponse)
    def verify(graph_id: str, req: models.VerifyRequest):
        g = store.get(graph_id)
        sources = _resolve_sources(req.sources, req.source_count,
                                   g.vertex_count)
        inf = np.uint64(INF)
        mismatches: list[models.Mismatch] = []
        checked = 0
        for s in sources:
            engine_costs = run_sssp(g, s, workers=req.workers).costs
            oracle_costs = dijkstra_reference(g, s)
            checked += 1
            diff = np.flatnonzero(engine_costs != oracle_costs)
            for v in diff[:MAX_REPORTED_MISMATCHES - len(mismatches)]:
                mismatches.append(models.Mismatch(
                    source=s, vertex=int(v),
                    engine_cost=(None if engine_costs[v] == inf
                                 else int(engine_costs[v])),
                    oracle_cost=(None if oracle_costs[v] == inf
                                 else int(oracle_costs[v]))))
            if len(mismatches) >= MAX_REPORTED_MISMATCHES:
                break
        return models.VerifyResponse(ok=not mismatches,
                                     sources_checked=checked,
                                     mismatches=mismatches)

    @app.post("/graphs/{graph_id}/bench", response_model=models.BenchResponse)
    def run_bench(graph_id: str, req: models.BenchRequest):
        g = store.get(graph_id)
        records = bench_graph(g, req.source_counts,
                                  repetitions=req.repetitions,
                                  workers=req.workers)
        return models.BenchResponse(
            records=[models.BenchRecordModel(**asdict(r)) for r in records])

    return app


app = create_app()
