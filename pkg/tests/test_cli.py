"""CLI behavior: command output, file flow, and exit codes."""

import asyncio
import json

import httpx
import pytest

from csrpath import INF, generate_graph, load_graph, read_costs, save_graph
from csrpath.cli import (EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, EXIT_USAGE,
                         ServiceClient, cmd_verify, main)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_stdout_text(capsys):
    code, out, _ = run_cli(capsys, "gen", "--vertices", "2", "--degree", "0")
    assert code == EXIT_OK
    assert out == "csr 1\n2 0\n0 0\n"


def test_gen_to_file_and_reload(tmp_path, capsys):
    p = tmp_path / "g.bin"
    code, out, _ = run_cli(capsys, "gen", "--vertices", "30", "--degree", "3",
                           "--seed", "5", "--out", str(p), "--format", "bin")
    assert code == EXIT_OK
    info = json.loads(out)
    assert info["edges"] == 90
    assert load_graph(p) == generate_graph(30, 3, 100, 5)


def test_sssp_stdout(capsys, tmp_path):
    g = generate_graph(5, 0, 100, 1)  # no edges: all but source unreached
    p = tmp_path / "g.csr"
    save_graph(g, p)
    code, out, _ = run_cli(capsys, "sssp", "--graph", str(p), "--source", "2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "inf inf 0 inf inf"


def test_sssp_out_file_reports_stats(capsys, tmp_path):
    gp = tmp_path / "g.csr"
    save_graph(generate_graph(40, 3, 50, 9), gp)
    cp = tmp_path / "costs.txt"
    code, out, _ = run_cli(capsys, "sssp", "--graph", str(gp),
                           "--source", "0", "--out", str(cp), "--check")
    assert code == EXIT_OK
    stats = json.loads(out)["stats"]
    assert stats["iterations"] >= 1
    with open(cp, "rb") as fh:
        costs = read_costs(fh)
    assert costs.shape == (1, 40)
    assert int(costs[0, 0]) == 0


def test_apsp_matrix_stdout(capsys, tmp_path):
    gp = tmp_path / "t.csr"
    from helpers import triangle
    save_graph(triangle(), gp)
    code, out, _ = run_cli(capsys, "apsp", "--graph", str(gp),
                           "--sources", "0,1")
    assert code == EXIT_OK
    assert out.splitlines() == ["0 1 3", "inf 0 2"]


def test_path_output(capsys, tmp_path):
    gp = tmp_path / "t.csr"
    from helpers import triangle
    save_graph(triangle(), gp)
    code, out, _ = run_cli(capsys, "path", "--graph", str(gp),
                           "--source", "0", "--dest", "2")
    assert code == EXIT_OK
    assert out.splitlines() == ["0 1 2", "cost 3"]


def test_verify_ok_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "verify", "--vertices", "40",
                           "--degree", "3", "--seed", "4",
                           "--source-count", "3")
    assert code == EXIT_OK
    assert out.startswith("ok:")


def test_bench_writes_jsonl(tmp_path, capsys):
    out_file = tmp_path / "bench.jsonl"
    code, _, _ = run_cli(capsys, "bench", "--vertices", "50", "--degree", "3",
                         "--seed", "1", "--source-counts", "1,2",
                         "--repetitions", "2", "--out", str(out_file))
    assert code == EXIT_OK
    records = [json.loads(line) for line in out_file.read_text().splitlines()]
    assert len(records) == 4
    assert {r["sources"] for r in records} == {1, 2}
    for field in ("command", "vertices", "edges", "sources", "workers",
                  "iterations", "wall_ms", "checksum"):
        assert field in records[0]


def test_workers_flag_keeps_checksum_stable(tmp_path, capsys):
    gp = tmp_path / "g.csr"
    save_graph(generate_graph(200, 4, 60, 12), gp)
    checksums = set()
    for workers in ("1", "3", "8"):
        cp = tmp_path / f"c{workers}.txt"
        code, out, _ = run_cli(capsys, "sssp", "--graph", str(gp),
                               "--source", "0", "--workers", workers,
                               "--out", str(cp))
        assert code == EXIT_OK
        checksums.add(json.loads(out)["checksum"])
    assert len(checksums) == 1


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.csr"
    bad.write_bytes(b"csr 1\n2 1\n3 1\n1 5\n")
    code, _, err = run_cli(capsys, "sssp", "--graph", str(bad))
    assert code == EXIT_PARSE
    assert "parse" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run_cli(capsys, "sssp", "--graph", "/no/such/file")
    assert code == EXIT_PARSE


def test_usage_error_exit_code(capsys):
    # neither --graph nor --vertices
    code, _, err = run_cli(capsys, "sssp")
    assert code == EXIT_USAGE
    assert "usage" in err


def test_out_of_range_source_is_usage(capsys):
    code, _, _ = run_cli(capsys, "sssp", "--vertices", "3", "--degree", "1",
                         "--source", "9")
    assert code == EXIT_USAGE


def test_bad_sources_list_is_usage(capsys):
    code, _, _ = run_cli(capsys, "apsp", "--vertices", "3", "--degree", "1",
                         "--sources", "0,x")
    assert code == EXIT_USAGE


def test_argparse_usage_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen"])  # --vertices is required
    assert exc.value.code == 2


def test_server_flag_against_live_instance(tmp_path, capsys):
    import socket
    import threading
    import time

    import uvicorn

    from csrpath.service.app import create_app

    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()
    server = uvicorn.Server(uvicorn.Config(create_app(), host="127.0.0.1",
                                           port=port, log_level="error"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    try:
        deadline = time.time() + 10
        while not server.started:
            assert time.time() < deadline, "server did not start"
            time.sleep(0.02)
        url = f"http://127.0.0.1:{port}"
        code, out, _ = run_cli(capsys, "--server", url, "verify",
                               "--vertices", "30", "--degree", "3",
                               "--seed", "6", "--source-count", "2")
        assert code == EXIT_OK
        assert out.startswith("ok:")
        # file paths refer to the server's filesystem (here: the same box)
        gp = tmp_path / "remote.csr"
        save_graph(generate_graph(12, 2, 30, 3), gp)
        code, out, _ = run_cli(capsys, "--server", url, "path",
                               "--graph", str(gp), "--source", "0",
                               "--dest", "0")
        assert code == EXIT_OK
        assert out.splitlines() == ["0", "cost 0"]
    finally:
        server.should_exit = True
        thread.join(timeout=5)


def test_verify_mismatch_exit_code(capsys):
    # Stub transport standing in for a server whose engine disagrees with
    # its oracle; the CLI must exit 4.
    def handler(request: httpx.Request) -> httpx.Response:
        if request.url.path == "/graphs/load":
            return httpx.Response(200, json={"graph_id": "g1", "vertices": 2,
                                             "edges": 1, "origin": "load"})
        if request.url.path == "/graphs/g1/verify":
            return httpx.Response(200, json={
                "ok": False, "sources_checked": 1,
                "mismatches": [{"source": 0, "vertex": 1,
                                "engine_cost": 3, "oracle_cost": 5}]})
        return httpx.Response(200, json={"deleted": "g1"})

    async def run() -> int:
        import argparse
        args = argparse.Namespace(graph="g.csr", format="auto",
                                  vertices=None, degree=0, max_weight=100,
                                  seed=0, sources=None, source_count=1,
                                  workers=1)
        async with ServiceClient(transport=httpx.MockTransport(handler)) as c:
            return await cmd_verify(c, args)

    assert asyncio.run(run()) == EXIT_MISMATCH
    out = capsys.readouterr().out
    assert "MISMATCH" in out
    assert "engine=3 oracle=5" in out
