"""Shared test helpers: seeded random graphs built independently of the
package's own generator."""

import random

from csrpath import INF, CsrGraph

# Weights one saturating-add away from the sentinel.
NEAR_INF = [INF - k for k in range(1, 11)]


def triangle() -> CsrGraph:
    """0->1 w1, 0->2 w4, 1->2 w2; costs from 0 are [0, 1, 3]."""
    return CsrGraph.from_edges(3, [(0, 1, 1), (0, 2, 4), (1, 2, 2)])


def random_graph(rng: random.Random, max_vertices: int = 60,
                 max_degree: int = 6, weights: str = "small") -> CsrGraph:
    """Arbitrary random multigraph (self-loops and duplicates allowed).

    weights: 'small' draws 0..100, 'near_inf' draws within 10 of INF,
    'mixed' draws both.
    """
    v = rng.randint(1, max_vertices)
    edges = []
    for u in range(v):
        for _ in range(rng.randint(0, max_degree)):
            if weights == "small":
                w = rng.randint(0, 100)
            elif weights == "near_inf":
                w = rng.choice(NEAR_INF)
            else:
                w = rng.choice(NEAR_INF) if rng.random() < 0.3 else rng.randint(0, 100)
            edges.append((u, rng.randrange(v), w))
    return CsrGraph.from_edges(v, edges)
