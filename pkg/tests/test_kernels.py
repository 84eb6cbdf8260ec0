"""The compiled kernels must agree with the pure-Python fallback bit for bit."""
import random

import pytest

from csp_placement import _accel
from csp_placement.graph import random_connected_graph

compiled = _accel.compiled_kernels
python = _accel.python_kernels

needs_compiled = pytest.mark.skipif(compiled is None, reason="extension not built")


def indexed(g):
    order = g.sorted_nodes()
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for u, v in g.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    return len(order), adj


def sample(count, lo=2, hi=8, seed=0):
    r = random.Random(seed)
    for i in range(count):
        n = r.randint(lo, hi)
        m = r.randint(n - 1, n * (n - 1) // 2)
        yield random_connected_graph(n, m, seed * 10_000 + i)


def test_backend_flag_consistent():
    assert _accel.BACKEND in ("cython", "python")
    assert (_accel.kernels is compiled) == (_accel.BACKEND == "cython")


@needs_compiled
@pytest.mark.parametrize("strict", [False, True])
def test_simple_paths_parity(strict):
    r = random.Random(1)
    for g in sample(150, seed=1):
        n, adj = indexed(g)
        mons = sorted(r.sample(range(n), r.randint(2, n)))
        assert compiled.simple_paths(n, adj, mons, strict, 100_000) == python.simple_paths(
            n, adj, mons, strict, 100_000
        )


@needs_compiled
def test_simple_paths_cap_parity():
    n, adj = indexed(random_connected_graph(8, 28, 0))
    assert compiled.simple_paths(n, adj, list(range(8)), False, 50) is None
    assert python.simple_paths(n, adj, list(range(8)), False, 50) is None


@needs_compiled
def test_pair_families_parity():
    for g in sample(100, seed=2):
        n, adj = indexed(g)
        assert compiled.pair_families(n, adj) == python.pair_families(n, adj)


@needs_compiled
@pytest.mark.parametrize("strict", [False, True])
def test_report_parity(strict):
    r = random.Random(3)
    for g in sample(150, seed=3):
        n, adj = indexed(g)
        mask = sum(1 << i for i in r.sample(range(n), r.randint(1, n)))
        assert compiled.monitor_set_report(n, adj, mask, strict) == python.monitor_set_report(
            n, adj, mask, strict
        )


@needs_compiled
def test_min_monitor_set_parity():
    for g in sample(60, hi=7, seed=4):
        n, adj = indexed(g)
        assert compiled.min_monitor_set(n, adj, False) == python.min_monitor_set(n, adj, False)


def test_path_masks_match_paths():
    # the DP's node sets are exactly the node sets of enumerated paths
    for g in sample(40, seed=5):
        n, adj = indexed(g)
        fams = python.pair_families(n, adj)
        for (s, t), masks in fams.items():
            paths = python.simple_paths(n, adj, [s, t], False, 100_000)
            want = {sum(1 << v for v in p) for p in paths}
            assert set(masks) == want
