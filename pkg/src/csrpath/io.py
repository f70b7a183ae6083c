"""Graph and cost-matrix serialization.

Two graph encodings share one field order: vertex count, edge count,
vertex array, then one (destination, weight) record per edge.

Text (human-diffable fixtures)::

    csr 1
    <vertex_count> <edge_count>
    <vertex_array, space separated>
    <destination> <weight>        # edge_count lines

Binary (for million-edge runs, where text parsing dominates): magic
``CSRB``, version u32, vertex_count u64, edge_count u64, vertex_array as
u64[], edge_array as u32[], weight_array as u64[], all little-endian.

Cost matrices are text: one source row per line, space separated, with
the unreached sentinel rendered as ``inf``.
"""

from __future__ import annotations

import io as _stdio
from pathlib import Path
from typing import BinaryIO

import numpy as np

from .errors import GraphParseError
from .graph import COST_DTYPE, INF, CsrGraph, validate_graph

TEXT_MAGIC = "csr"
TEXT_VERSION = 1
BINARY_MAGIC = b"CSRB"
BINARY_VERSION = 1

_VERTEX_ARRAY_LINE = 3
_FIRST_EDGE_LINE = 4


def write_graph_text(g: CsrGraph, sink: BinaryIO) -> None:
    """Emit the text format, bit-exact for a given graph."""
    out = _stdio.StringIO()
    out.write(f"{TEXT_MAGIC} {TEXT_VERSION}\n")
    out.write(f"{g.vertex_count} {g.edge_count}\n")
    out.write(" ".join(str(int(x)) for x in g.vertex_array))
    out.write("\n")
    ea, wa = g.edge_array, g.weight_array
    for i in range(g.edge_count):
        out.write(f"{int(ea[i])} {int(wa[i])}\n")
    sink.write(out.getvalue().encode("ascii"))


def _parse_fields(line: str, lineno: int, expect: int, what: str) -> list[int]:
    fields = line.split()
    if len(fields) != expect:
        raise GraphParseError(
            f"expected {expect} {what} field(s), got {len(fields)}", lineno)
    values = []
    for tok in fields:
        try:
            v = int(tok)
        except ValueError:
            raise GraphParseError(f"bad integer {tok!r}", lineno) from None
        if v < 0:
            raise GraphParseError(f"negative value {v} in {what}", lineno)
        values.append(v)
    return values


def _validated(g: CsrGraph, line_of_index) -> CsrGraph:
    report = validate_graph(g)
    if not report.ok:
        first = report.violations[0]
        raise GraphParseError(first.message, line_of_index(first))
    return g


def read_graph_text(stream: BinaryIO) -> CsrGraph:
    """Parse the text format; the result is a validated graph or the read
    fails with the offending line and reason."""
    text = stream.read()
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise GraphParseError(f"not a text graph file: {exc}") from None
    lines = text.splitlines()

    def line(n: int) -> str:
        if n > len(lines):
            raise GraphParseError("unexpected end of file", n)
        return lines[n - 1]

    header = line(1).split()
    if len(header) != 2 or header[0] != TEXT_MAGIC:
        raise GraphParseError(f"bad header {line(1)!r}, expected "
                              f"'{TEXT_MAGIC} {TEXT_VERSION}'", 1)
    if header[1] != str(TEXT_VERSION):
        raise GraphParseError(f"unsupported version {header[1]!r}", 1)
    vertex_count, edge_count = _parse_fields(line(2), 2, 2, "count")
    # Guard before allocating: a bogus header must not drive allocation.
    if _VERTEX_ARRAY_LINE + edge_count - 1 > len(lines):
        raise GraphParseError("unexpected end of file", len(lines) + 1)
    vertex_array = _parse_fields(line(_VERTEX_ARRAY_LINE), _VERTEX_ARRAY_LINE,
                                 vertex_count, "vertex_array")
    dests = np.empty(edge_count, dtype=np.int64)
    weights = np.empty(edge_count, dtype=np.uint64)
    for i in range(edge_count):
        lineno = _FIRST_EDGE_LINE + i
        d, w = _parse_fields(line(lineno), lineno, 2, "edge")
        dests[i] = d
        weights[i] = w
    expected_lines = _VERTEX_ARRAY_LINE + edge_count
    if len(lines) > expected_lines and any(
            l.strip() for l in lines[expected_lines:]):
        raise GraphParseError("trailing content after last edge",
                              expected_lines + 1)

    try:
        g = CsrGraph(vertex_count, edge_count, vertex_array, dests, weights)
    except ValueError as exc:
        raise GraphParseError(str(exc)) from None

    def line_of_index(violation) -> int | None:
        if violation.index is None:
            return None
        if violation.invariant.startswith("vertex_array"):
            return _VERTEX_ARRAY_LINE
        return _FIRST_EDGE_LINE + violation.index

    return _validated(g, line_of_index)


def write_graph_binary(g: CsrGraph, sink: BinaryIO) -> None:
    """Emit the binary format; same field order as the text format."""
    sink.write(BINARY_MAGIC)
    sink.write(np.uint32(BINARY_VERSION).tobytes())
    header = np.array([g.vertex_count, g.edge_count], dtype="<u8")
    sink.write(header.tobytes())
    sink.write(g.vertex_array.astype("<u8", copy=False).tobytes())
    sink.write(g.edge_array.astype("<u4", copy=False).tobytes())
    sink.write(g.weight_array.astype("<u8", copy=False).tobytes())


def _read_exact(stream: BinaryIO, n: int, what: str) -> bytes:
    data = stream.read(n)
    if len(data) != n:
        raise GraphParseError(f"truncated binary graph: short read of {what}")
    return data


def read_graph_binary(stream: BinaryIO) -> CsrGraph:
    magic = _read_exact(stream, 4, "magic")
    if magic != BINARY_MAGIC:
        raise GraphParseError(f"bad magic {magic!r}, expected {BINARY_MAGIC!r}")
    version = int(np.frombuffer(_read_exact(stream, 4, "version"), "<u4")[0])
    if version != BINARY_VERSION:
        raise GraphParseError(f"unsupported binary version {version}")
    vertex_count, edge_count = (
        int(x) for x in np.frombuffer(_read_exact(stream, 16, "counts"), "<u8"))
    vertex_array = np.frombuffer(
        _read_exact(stream, 8 * vertex_count, "vertex_array"), "<u8")
    edge_array = np.frombuffer(
        _read_exact(stream, 4 * edge_count, "edge_array"), "<u4")
    weight_array = np.frombuffer(
        _read_exact(stream, 8 * edge_count, "weight_array"), "<u8")
    if stream.read(1):
        raise GraphParseError("trailing bytes after weight array")
    g = CsrGraph(vertex_count, edge_count, vertex_array, edge_array,
                 weight_array)
    return _validated(g, lambda violation: None)


def detect_format(path: str | Path) -> str:
    """Sniff 'text' or 'bin' from the file's leading magic bytes."""
    with open(path, "rb") as fh:
        head = fh.read(4)
    if head == BINARY_MAGIC:
        return "bin"
    if head[:3] == TEXT_MAGIC.encode("ascii"):
        return "text"
    raise GraphParseError(f"unrecognized graph file magic {head!r}")


def save_graph(g: CsrGraph, path: str | Path, fmt: str = "text") -> int:
    """Write a graph file; returns the byte count written."""
    path = Path(path)
    with open(path, "wb") as fh:
        if fmt == "text":
            write_graph_text(g, fh)
        elif fmt == "bin":
            write_graph_binary(g, fh)
        else:
            raise GraphParseError(f"unknown graph format {fmt!r}")
    return path.stat().st_size


def load_graph(path: str | Path, fmt: str = "auto") -> CsrGraph:
    """Read a graph file, sniffing the format by default."""
    if fmt == "auto":
        fmt = detect_format(path)
    with open(path, "rb") as fh:
        if fmt == "text":
            return read_graph_text(fh)
        if fmt == "bin":
            return read_graph_binary(fh)
    raise GraphParseError(f"unknown graph format {fmt!r}")


def write_costs(costs, sink: BinaryIO) -> None:
    """Cost matrix as text: one row per source, INF rendered as 'inf'."""
    rows = np.atleast_2d(np.asarray(costs, dtype=COST_DTYPE))
    out = _stdio.StringIO()
    inf = COST_DTYPE(INF)
    for row in rows:
        out.write(" ".join("inf" if x == inf else str(int(x)) for x in row))
        out.write("\n")
    sink.write(out.getvalue().encode("ascii"))


def read_costs(stream: BinaryIO) -> np.ndarray:
    """Parse a cost matrix; every row must have the same width."""
    text = stream.read()
    if isinstance(text, bytes):
        text = text.decode("ascii")
    rows: list[list[int]] = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        row = []
        for tok in line.split():
            if tok == "inf":
                row.append(INF)
                continue
            try:
                v = int(tok)
            except ValueError:
                raise GraphParseError(f"bad cost {tok!r}", lineno) from None
            if not 0 <= v <= INF:
                raise GraphParseError(f"cost {v} out of range", lineno)
            row.append(v)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise GraphParseError(
                f"row has {len(row)} entries, expected {width}", lineno)
        rows.append(row)
    if not rows:
        return np.empty((0, 0), dtype=COST_DTYPE)
    return np.array(rows, dtype=COST_DTYPE)
