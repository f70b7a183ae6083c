"""File formats: exact bytes, round-trips, and parse diagnostics."""

import io
import random

import numpy as np
import pytest

from csrpath import (INF, CsrGraph, GraphParseError, generate_graph,
                     load_graph, read_costs, read_graph_binary,
                     read_graph_text, save_graph, write_costs,
                     write_graph_binary, write_graph_text)
from csrpath.io import detect_format
from helpers import random_graph


def text_bytes(g) -> bytes:
    buf = io.BytesIO()
    write_graph_text(g, buf)
    return buf.getvalue()


class TestGraphText:
    def test_exact_bytes_two_vertex(self):
        g = CsrGraph.from_edges(2, [(0, 1, 5)])
        assert text_bytes(g) == b"csr 1\n2 1\n0 1\n1 5\n"

    def test_exact_bytes_single_vertex_no_edges(self):
        g = CsrGraph.from_edges(1, [])
        assert text_bytes(g) == b"csr 1\n1 0\n0\n"

    def test_round_trip_random_graphs(self):
        rng = random.Random(61)
        for _ in range(25):
            g = random_graph(rng, weights="mixed")
            assert read_graph_text(io.BytesIO(text_bytes(g))) == g

    def test_reads_back_the_example(self):
        g = read_graph_text(io.BytesIO(b"csr 1\n2 1\n0 1\n1 5\n"))
        assert g == CsrGraph.from_edges(2, [(0, 1, 5)])

    def test_unsupported_version(self):
        with pytest.raises(GraphParseError) as exc:
            read_graph_text(io.BytesIO(b"csr 2\n1 0\n0\n"))
        assert "version" in str(exc.value)
        assert exc.value.line == 1

    def test_descending_vertex_array_names_index(self):
        data = b"csr 1\n2 2\n3 1\n0 1\n1 1\n"
        with pytest.raises(GraphParseError) as exc:
            read_graph_text(io.BytesIO(data))
        assert "nondecreasing at index 0" in str(exc.value)
        assert exc.value.line == 3

    def test_edge_violation_names_edge_line(self):
        data = b"csr 1\n2 1\n0 1\n5 9\n"
        with pytest.raises(GraphParseError) as exc:
            read_graph_text(io.BytesIO(data))
        assert exc.value.line == 4

    def test_truncated_file(self):
        with pytest.raises(GraphParseError) as exc:
            read_graph_text(io.BytesIO(b"csr 1\n2 2\n0 1\n1 5\n"))
        assert "end of file" in str(exc.value)

    def test_wrong_field_count(self):
        with pytest.raises(GraphParseError) as exc:
            read_graph_text(io.BytesIO(b"csr 1\n2 1\n0\n1 5\n"))
        assert exc.value.line == 3

    def test_negative_value_rejected_with_line(self):
        with pytest.raises(GraphParseError) as exc:
            read_graph_text(io.BytesIO(b"csr 1\n2 1\n0 1\n-1 5\n"))
        assert exc.value.line == 4

    def test_non_integer_rejected(self):
        with pytest.raises(GraphParseError):
            read_graph_text(io.BytesIO(b"csr 1\n2 1\n0 x\n1 5\n"))

    def test_trailing_content_rejected(self):
        with pytest.raises(GraphParseError):
            read_graph_text(io.BytesIO(b"csr 1\n1 0\n0\njunk\n"))


class TestGraphBinary:
    def test_round_trip(self):
        rng = random.Random(62)
        for _ in range(15):
            g = random_graph(rng, weights="mixed")
            buf = io.BytesIO()
            write_graph_binary(g, buf)
            buf.seek(0)
            assert read_graph_binary(buf) == g

    def test_layout(self):
        g = CsrGraph.from_edges(2, [(0, 1, 5)])
        buf = io.BytesIO()
        write_graph_binary(g, buf)
        data = buf.getvalue()
        assert data[:4] == b"CSRB"
        assert int.from_bytes(data[4:8], "little") == 1    # version
        assert int.from_bytes(data[8:16], "little") == 2   # vertices
        assert int.from_bytes(data[16:24], "little") == 1  # edges
        # vertex_array u64 x2, edge_array u32 x1, weight_array u64 x1
        assert len(data) == 24 + 16 + 4 + 8

    def test_bad_magic(self):
        with pytest.raises(GraphParseError):
            read_graph_binary(io.BytesIO(b"XXXX" + b"\0" * 20))

    def test_truncated(self):
        g = CsrGraph.from_edges(2, [(0, 1, 5)])
        buf = io.BytesIO()
        write_graph_binary(g, buf)
        data = buf.getvalue()[:-3]
        with pytest.raises(GraphParseError) as exc:
            read_graph_binary(io.BytesIO(data))
        assert "truncated" in str(exc.value)

    def test_invalid_content_fails_validation(self):
        g = CsrGraph.from_arrays([0, 1], [1, 3], [5, 5])  # dest 3 of 2
        buf = io.BytesIO()
        write_graph_binary(g, buf)
        buf.seek(0)
        with pytest.raises(GraphParseError):
            read_graph_binary(buf)


class TestFilesAndDetection:
    def test_save_load_text(self, tmp_path):
        g = generate_graph(30, 3, 50, 4)
        p = tmp_path / "g.csr"
        n = save_graph(g, p, fmt="text")
        assert n == p.stat().st_size > 0
        assert detect_format(p) == "text"
        assert load_graph(p) == g

    def test_save_load_binary(self, tmp_path):
        g = generate_graph(30, 3, 50, 4)
        p = tmp_path / "g.bin"
        save_graph(g, p, fmt="bin")
        assert detect_format(p) == "bin"
        assert load_graph(p) == g
        assert load_graph(p, fmt="bin") == g

    def test_unknown_magic(self, tmp_path):
        p = tmp_path / "junk"
        p.write_bytes(b"whatever")
        with pytest.raises(GraphParseError):
            detect_format(p)


class TestCosts:
    def test_single_row(self):
        buf = io.BytesIO()
        write_costs([0, 1, 3], buf)
        assert buf.getvalue() == b"0 1 3\n"

    def test_inf_rendering(self):
        buf = io.BytesIO()
        write_costs([[0, INF]], buf)
        assert buf.getvalue() == b"0 inf\n"

    def test_round_trip_random_matrices(self):
        rng = random.Random(63)
        for _ in range(20):
            rows = rng.randint(1, 5)
            width = rng.randint(1, 8)
            matrix = np.array(
                [[rng.choice([0, 1, 17, INF, INF - 1, rng.randrange(INF)])
                  for _ in range(width)] for _ in range(rows)],
                dtype=np.uint64)
            buf = io.BytesIO()
            write_costs(matrix, buf)
            buf.seek(0)
            assert np.array_equal(read_costs(buf), matrix)

    def test_dimension_mismatch(self):
        with pytest.raises(GraphParseError) as exc:
            read_costs(io.BytesIO(b"0 1 3\n0 1\n"))
        assert exc.value.line == 2

    def test_bad_token(self):
        with pytest.raises(GraphParseError):
            read_costs(io.BytesIO(b"0 nan\n"))

    def test_empty_input(self):
        assert read_costs(io.BytesIO(b"")).shape == (0, 0)
