"""The oracles themselves: heap search, exhaustive enumeration, min-fold."""

import random

import numpy as np
import pytest

from csrpath import (INF, CsrGraph, GraphTooLargeError, VertexRangeError,
                     dijkstra_reference, exhaustive_shortest_paths,
                     fold_relax_oracle, init_sssp, out_edge_range,
                     relax_vertex)
from helpers import random_graph, triangle


class TestDijkstraReference:
    def test_triangle(self):
        assert dijkstra_reference(triangle(), 0).tolist() == [0, 1, 3]

    def test_single_vertex(self):
        g = CsrGraph.from_edges(1, [])
        assert dijkstra_reference(g, 0).tolist() == [0]

    def test_star_one_hop_paths(self):
        g = CsrGraph.from_edges(5, [(0, k, k) for k in range(1, 5)])
        assert dijkstra_reference(g, 0).tolist() == [0, 1, 2, 3, 4]

    def test_unreachable_is_inf(self):
        g = CsrGraph.from_edges(2, [])
        assert dijkstra_reference(g, 0).tolist() == [0, INF]

    def test_source_out_of_range(self):
        with pytest.raises(VertexRangeError):
            dijkstra_reference(triangle(), 3)

    def test_near_inf_weights_clamp_to_sentinel(self):
        # Two hops of INF-3 exceed the representable range; the exact sum
        # clamps to INF, indistinguishable from unreachable.
        g = CsrGraph.from_edges(3, [(0, 1, INF - 3), (1, 2, INF - 3)])
        assert dijkstra_reference(g, 0).tolist() == [0, INF - 3, INF]


class TestExhaustiveOracle:
    def test_triangle(self):
        assert exhaustive_shortest_paths(triangle(), 0).tolist() == [0, 1, 3]

    def test_matches_dijkstra_on_dense_ten_vertex_graphs(self):
        rng = random.Random(21)
        for _ in range(30):
            g = random_graph(rng, max_vertices=10, max_degree=10)
            for s in range(g.vertex_count):
                assert np.array_equal(exhaustive_shortest_paths(g, s),
                                      dijkstra_reference(g, s))

    def test_eleven_vertices_refused(self):
        g = CsrGraph.from_edges(11, [])
        with pytest.raises(GraphTooLargeError):
            exhaustive_shortest_paths(g, 0)

    def test_zero_weight_cycles(self):
        g = CsrGraph.from_edges(
            4, [(0, 1, 0), (1, 2, 0), (2, 0, 0), (2, 3, 7)])
        assert exhaustive_shortest_paths(g, 0).tolist() == [0, 0, 0, 7]
        assert dijkstra_reference(g, 0).tolist() == [0, 0, 0, 7]


class TestFoldRelaxOracle:
    def test_empty_fold_is_identity(self):
        u = [4, INF, 9]
        assert fold_relax_oracle([], 5, u) == u

    def test_single_step(self):
        assert fold_relax_oracle([(1, 5)], 0, [0, INF]) == [0, 5]

    def test_saturating_step(self):
        assert fold_relax_oracle([(1, INF - 1)], 3, [0, INF]) == [0, INF]

    def test_does_not_mutate_input(self):
        u = [7, 8]
        fold_relax_oracle([(0, 1)], 0, u)
        assert u == [7, 8]

    def test_matches_engine_edge_loop_on_random_vertices(self):
        rng = random.Random(22)
        checked = 0
        while checked < 60:
            g = random_graph(rng, weights="mixed")
            state = init_sssp(g, rng.randrange(g.vertex_count))
            v = rng.randrange(g.vertex_count)
            state.mask[v] = 1
            state.cost[v] = rng.randrange(120)
            begin, end = out_edge_range(g, v)
            pairs = [(int(g.edge_array[i]), int(g.weight_array[i]))
                     for i in range(begin, end)]
            expected = fold_relax_oracle(pairs, int(state.cost[v]),
                                         state.updating_cost)
            relax_vertex(g, state, v)
            assert state.updating_cost.tolist() == expected
            checked += 1
