import numpy as np
import pytest

from pwpnet.datasets import network_s
from pwpnet.network import Edge, Network, Node

ACCEPTANCE_RESULTS = []


def random_network(rng, n, p=0.5, low=0.0, high=1.0, self_loops=True, multi=False, node_low=None):
    """Random double-weighted network on nodes "0".."n-1"."""
    node_low = low if node_low is None else node_low
    nodes = [Node(str(i), float(rng.uniform(node_low, high))) for i in range(n)]
    edges = []
    for s in range(n):
        for t in range(n):
            if s == t and not self_loops:
                continue
            copies = 1 + (rng.integers(0, 2) if multi else 0)
            for c in range(copies):
                if rng.random() < p:
                    edges.append(Edge(f"{s}>{t}#{c}", str(s), str(t), float(rng.uniform(low, high))))
    return Network(tuple(nodes), tuple(edges))


@pytest.fixture
def S():
    return network_s()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
