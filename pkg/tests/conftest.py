import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from csp_placement.graph import Graph, random_connected_graph


def path(*nodes):
    return Graph.from_edges(zip(nodes, nodes[1:]), nodes)


def cycle(n):
    labels = [str(i) for i in range(1, n + 1)]
    return Graph.from_edges(zip(labels, labels[1:] + labels[:1]))


def complete(n):
    return Graph.from_edges(combinations([str(i) for i in range(n)], 2))


def wheel(n):
    """Hub "h" joined to a rim cycle of n - 1 nodes (n nodes in total)."""
    rim = [str(i) for i in range(1, n)]
    return Graph.from_edges(list(zip(rim, rim[1:] + rim[:1])) + [("h", v) for v in rim])


def star(k):
    return Graph.from_edges(("c", f"x{i}") for i in range(1, k + 1))


BOWTIE = Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d"), ("d", "e"), ("c", "e")])


def labeled_connected_graphs(n):
    """Every connected graph on nodes "0".."n-1" (labeled, not up to isomorphism)."""
    nodes = [str(i) for i in range(n)]
    pairs = list(combinations(nodes, 2))
    for bits in range(1 << len(pairs)):
        g = Graph(frozenset(nodes), frozenset(p for i, p in enumerate(pairs) if bits >> i & 1))
        if g.is_connected():
            yield g


def corpus_graph(index, lo=6, hi=9):
    """The index-th graph of the seeded random corpus: n in [lo, hi], up to 2n edges."""
    r = random.Random(index)
    n = r.randint(lo, hi)
    m = r.randint(n - 1, min(n * (n - 1) // 2, 2 * n))
    return random_connected_graph(n, m, index)


@st.composite
def connected_graphs(draw, min_nodes=1, max_nodes=8):
    n = draw(st.integers(min_nodes, max_nodes))
    m = draw(st.integers(n - 1, min(n * (n - 1) // 2, 2 * n)))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected_graph(n, m, seed)


# acceptance lines, printed once at the end of the run
_ACCEPTANCE: list = []


@pytest.fixture
def criterion():
    def report(label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" ({detail})" if detail else "")
        print(line)
        _ACCEPTANCE.append(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
