import itertools
import random

import pytest

from qpkit.graphs import Graph, from_edges


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance: release gate checks with stated budgets")


@pytest.fixture(scope="session")
def rng():
    return random.Random(0x5eed)


def random_graph(rnd, n, p=0.5):
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2)
             if rnd.random() < p]
    return from_edges(n, edges)


def edge_pairs(g: Graph):
    return [(u, v) for u in range(g.n) for v in range(u + 1, g.n)
            if g.has_edge(u, v)]
