"""Shared graph builders for the test suite."""

from itertools import combinations

import numpy as np
import pytest

from egbter import Graph, Partition, build_graph, er_generate, rng_stream


def complete_graph(n: int) -> Graph:
    return build_graph(n, list(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """Center node 0 joined to ``leaves`` leaf nodes."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_cliques(count: int, size: int) -> Graph:
    edges = []
    for c in range(count):
        base = c * size
        edges.extend((base + i, base + j) for i, j in combinations(range(size), 2))
    return build_graph(count * size, edges)


def clique_partition(count: int, size: int) -> Partition:
    return Partition(np.repeat(np.arange(count), size))


def random_graph(n: int, p: float, seed: int) -> Graph:
    return er_generate(n, p, rng_stream(seed))


@pytest.fixture
def k4() -> Graph:
    return complete_graph(4)
