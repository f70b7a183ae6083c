"""Command-line client for the shortest-path service.

Every subcommand is a thin wrapper over the HTTP API: by default the
service runs embedded in this process (so file paths in requests are
local paths), and ``--server URL`` points the same commands at a running
instance instead. ``csrpath serve`` starts such an instance.

Exit codes: 0 success, 2 usage error, 3 parse error, 4 verification
mismatch, 1 anything else.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_MISMATCH = 4

_KIND_EXIT_CODES = {
    "usage": EXIT_USAGE,
    "range": EXIT_USAGE,
    "parse": EXIT_PARSE,
    "io": EXIT_PARSE,
    "unknown_graph": EXIT_USAGE,
    "unreachable": EXIT_USAGE,
    "memory_budget": EXIT_USAGE,
}


class ServiceError(Exception):
    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)

    @property
    def exit_code(self) -> int:
        return _KIND_EXIT_CODES.get(self.kind, EXIT_ERROR)


class ServiceClient:
    """Minimal async JSON client; in-process unless a server URL is given."""

    def __init__(self, server: str | None = None, transport=None):
        base = server.rstrip("/") if server else "http://csrpath.local"
        if transport is None and server is None:
            from .service.app import create_app
            transport = httpx.ASGITransport(app=create_app())
        self._client = httpx.AsyncClient(transport=transport,
                                         base_url=base, timeout=None)

    async def __aenter__(self):
        return self

    async def __aexit__(self, *exc):
        await self._client.aclose()

    async def call(self, method: str, path: str, body: dict | None = None):
        response = await self._client.request(method, path, json=body)
        if response.status_code >= 400:
            try:
                detail = response.json().get("detail")
            except ValueError:
                detail = None
            if isinstance(detail, dict) and "kind" in detail:
                raise ServiceError(detail["kind"], detail.get("message", ""))
            raise ServiceError("internal",
                               f"HTTP {response.status_code}: {response.text}")
        return response

    async def call_json(self, method: str, path: str, body: dict | None = None):
        return (await self.call(method, path, body)).json()


def _parse_sources(args) -> dict:
    if args.sources is not None and args.source_count is not None:
        raise ServiceError("usage", "give --sources or --source-count, not both")
    if args.sources is not None:
        try:
            return {"sources": [int(t) for t in args.sources.split(",") if t]}
        except ValueError:
            raise ServiceError("usage",
                               f"bad --sources list {args.sources!r}") from None
    if args.source_count is not None:
        return {"source_count": args.source_count}
    return {"source_count": 1}


async def _register_graph(client: ServiceClient, args) -> dict:
    """Register the graph named by --graph, or generate one from the
    gen-style flags; returns the graph info."""
    if getattr(args, "graph", None):
        return await client.call_json(
            "POST", "/graphs/load",
            {"path": args.graph, "format": getattr(args, "format", "auto")})
    if getattr(args, "vertices", None) is None:
        raise ServiceError("usage", "need --graph FILE or --vertices N")
    return await client.call_json("POST", "/graphs/generate", {
        "vertices": args.vertices,
        "degree": args.degree,
        "max_weight": args.max_weight,
        "seed": args.seed,
    })


def _inf_text(costs: list) -> str:
    return " ".join("inf" if c is None else str(c) for c in costs)


async def cmd_gen(client: ServiceClient, args) -> int:
    graph = await client.call_json("POST", "/graphs/generate", {
        "vertices": args.vertices,
        "degree": args.degree,
        "max_weight": args.max_weight,
        "seed": args.seed,
    })
    gid = graph["graph_id"]
    if args.out:
        saved = await client.call_json("POST", f"/graphs/{gid}/save",
                                       {"path": args.out,
                                        "format": args.format})
        print(json.dumps({"vertices": graph["vertices"],
                          "edges": graph["edges"],
                          "path": saved["path"],
                          "bytes": saved["bytes_written"]}))
    else:
        exported = await client.call("GET",
                                     f"/graphs/{gid}/export?format=text")
        sys.stdout.write(exported.text)
    await client.call("DELETE", f"/graphs/{gid}")
    return EXIT_OK


async def cmd_sssp(client: ServiceClient, args) -> int:
    graph = await _register_graph(client, args)
    gid = graph["graph_id"]
    body = {"source": args.source, "workers": args.workers,
            "check": args.check}
    if args.out:
        body["out"] = args.out
    result = await client.call_json("POST", f"/graphs/{gid}/sssp", body)
    if args.out:
        print(json.dumps({"source": result["source"],
                          "stats": result["stats"],
                          "checksum": result["checksum"],
                          "out": result["out"]}))
    else:
        print(_inf_text(result["costs"]))
        print(json.dumps({"stats": result["stats"],
                          "checksum": result["checksum"]}), file=sys.stderr)
    await client.call("DELETE", f"/graphs/{gid}")
    return EXIT_OK


async def cmd_apsp(client: ServiceClient, args) -> int:
    graph = await _register_graph(client, args)
    gid = graph["graph_id"]
    body = {"workers": args.workers, **_parse_sources(args)}
    if args.out:
        body["out"] = args.out
    result = await client.call_json("POST", f"/graphs/{gid}/apsp", body)
    if args.out:
        print(json.dumps({"sources": result["sources"],
                          "stats": result["stats"],
                          "checksum": result["checksum"],
                          "out": result["out"]}))
    else:
        for row in result["costs"]:
            print(_inf_text(row))
        print(json.dumps({"stats": result["stats"],
                          "checksum": result["checksum"]}), file=sys.stderr)
    await client.call("DELETE", f"/graphs/{gid}")
    return EXIT_OK


async def cmd_path(client: ServiceClient, args) -> int:
    graph = await _register_graph(client, args)
    gid = graph["graph_id"]
    result = await client.call_json("POST", f"/graphs/{gid}/path",
                                    {"source": args.source,
                                     "dest": args.dest})
    print(" ".join(str(v) for v in result["vertices"]))
    print(f"cost {result['cost']}")
    await client.call("DELETE", f"/graphs/{gid}")
    return EXIT_OK


async def cmd_verify(client: ServiceClient, args) -> int:
    graph = await _register_graph(client, args)
    gid = graph["graph_id"]
    result = await client.call_json("POST", f"/graphs/{gid}/verify",
                                    {**_parse_sources(args),
                                     "workers": args.workers})
    await client.call("DELETE", f"/graphs/{gid}")
    if result["ok"]:
        print(f"ok: engine matches oracle on {result['sources_checked']} "
              f"source(s)")
        return EXIT_OK
    print(f"MISMATCH on {len(result['mismatches'])} entries "
          f"(checked {result['sources_checked']} source(s)):")
    for m in result["mismatches"]:
        print(f"  source {m['source']} vertex {m['vertex']}: "
              f"engine={m['engine_cost']} oracle={m['oracle_cost']}")
    return EXIT_MISMATCH


async def cmd_bench(client: ServiceClient, args) -> int:
    graph = await _register_graph(client, args)
    gid = graph["graph_id"]
    try:
        counts = [int(t) for t in args.source_counts.split(",") if t]
    except ValueError:
        raise ServiceError(
            "usage", f"bad --source-counts list {args.source_counts!r}"
        ) from None
    result = await client.call_json("POST", f"/graphs/{gid}/bench",
                                    {"source_counts": counts,
                                     "repetitions": args.repetitions,
                                     "workers": args.workers})
    lines = "".join(json.dumps(r) + "\n" for r in result["records"])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)
    await client.call("DELETE", f"/graphs/{gid}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def _add_graph_source_args(p: argparse.ArgumentParser, gen_defaults=False):
    p.add_argument("--graph", help="graph file to load (text or binary)")
    p.add_argument("--format", choices=["auto", "text", "bin"],
                   default="auto", help="graph file format")
    p.add_argument("--vertices", type=int,
                   help="generate: vertex count (alternative to --graph)")
    p.add_argument("--degree", type=int, default=10 if gen_defaults else 0,
                   help="generate: out-edges per vertex")
    p.add_argument("--max-weight", type=int, default=100, dest="max_weight",
                   help="generate: weights drawn uniformly from [1, MAX]")
    p.add_argument("--seed", type=int, default=0,
                   help="generate: 64-bit seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csrpath",
        description="Shortest-path engine over CSR graphs")
    parser.add_argument("--server",
                        help="URL of a running service; default is in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random graph")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--degree", type=int, default=10)
    p.add_argument("--max-weight", type=int, default=100, dest="max_weight")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write here instead of stdout")
    p.add_argument("--format", choices=["text", "bin"], default="text")

    p = sub.add_parser("sssp", help="single-source shortest path costs")
    _add_graph_source_args(p, gen_defaults=True)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--check", action="store_true",
                   help="verify loop invariants every iteration")
    p.add_argument("--out", help="write the cost row here")

    p = sub.add_parser("apsp", help="costs from several sources")
    _add_graph_source_args(p, gen_defaults=True)
    p.add_argument("--sources", help="comma-separated source ids")
    p.add_argument("--source-count", type=int, dest="source_count",
                   help="use sources 0..N-1 (default 1)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write the cost matrix here")

    p = sub.add_parser("path", help="recover one shortest path")
    _add_graph_source_args(p, gen_defaults=True)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--dest", type=int, required=True)

    p = sub.add_parser("verify", help="engine vs oracle comparison")
    _add_graph_source_args(p, gen_defaults=True)
    p.add_argument("--sources", help="comma-separated source ids")
    p.add_argument("--source-count", type=int, dest="source_count")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("bench", help="timing records per source count")
    _add_graph_source_args(p, gen_defaults=True)
    p.add_argument("--source-counts", default="1",
                   help="comma-separated source counts, e.g. 1,2,5,10,20")
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write JSONL records here")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


_COMMANDS = {
    "gen": cmd_gen,
    "sssp": cmd_sssp,
    "apsp": cmd_apsp,
    "path": cmd_path,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


async def _run(args) -> int:
    async with ServiceClient(server=args.server) as client:
        return await _COMMANDS[args.command](client, args)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args)
    try:
        return asyncio.run(_run(args))
    except ServiceError as exc:
        print(f"error ({exc.kind}): {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error (io): {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
