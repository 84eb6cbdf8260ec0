import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, connected_graphs, cycle, path, star
from csp_placement.errors import CapExceeded, NotNonMonitor, SameNode, UnknownNode
from csp_placement.graph import Graph, random_connected_graph, sort_nodes
from csp_placement.oracle import (
    distinguishable,
    enumerate_monitor_paths,
    identifiable_fast,
    is_one_identifiable,
    min_monitors_bruteforce,
    path_signature,
)

nx = pytest.importorskip("networkx")


def node_lists(paths):
    return [list(p.nodes) for p in paths]


class TestEnumerate:
    def test_p3(self):
        assert node_lists(enumerate_monitor_paths(path("a", "b", "c"), {"a", "c"})) == [["a", "b", "c"]]

    def test_c4_opposite(self):
        got = node_lists(enumerate_monitor_paths(cycle(4), {"1", "3"}))
        assert got == [["1", "2", "3"], ["1", "4", "3"]]

    def test_triangle(self):
        got = node_lists(enumerate_monitor_paths(cycle(3), {"1", "2"}))
        assert sorted(got) == [["1", "2"], ["1", "3", "2"]]

    def test_monitor_interior_allowed_unless_strict(self):
        g = path("a", "b", "c")
        assert len(enumerate_monitor_paths(g, {"a", "b", "c"})) == 3
        assert len(enumerate_monitor_paths(g, {"a", "b", "c"}, strict=True)) == 2

    def test_cap(self):
        with pytest.raises(CapExceeded):
            enumerate_monitor_paths(complete(9), set(complete(9).nodes), cap=1000)

    def test_unknown_monitor(self):
        with pytest.raises(UnknownNode):
            enumerate_monitor_paths(cycle(4), {"1", "9"})

    @settings(max_examples=40)
    @given(connected_graphs(min_nodes=2, max_nodes=7), st.data())
    def test_matches_networkx(self, g, data):
        mons = data.draw(st.sets(st.sampled_from(g.sorted_nodes()), min_size=2))
        h = nx.Graph(list(g.edges))
        want = []
        for s, t in combinations(sort_nodes(mons), 2):
            want.extend(tuple(p) for p in nx.all_simple_paths(h, s, t))
        got = [p.nodes for p in enumerate_monitor_paths(g, mons)]
        assert sorted(got) == sorted(want)

    @given(connected_graphs(min_nodes=2, max_nodes=7), st.data())
    def test_canonical_orientation(self, g, data):
        mons = data.draw(st.sets(st.sampled_from(g.sorted_nodes()), min_size=2))
        paths = enumerate_monitor_paths(g, mons)
        for p in paths:
            assert p.nodes[0] in mons and p.nodes[-1] in mons and p.nodes[0] != p.nodes[-1]
            assert len(set(p.nodes)) == len(p.nodes)
            assert all(g.has_edge(u, v) for u, v in zip(p.nodes, p.nodes[1:]))
        # same list whatever order the monitors arrive in
        assert enumerate_monitor_paths(g, sorted(mons, reverse=True)) == paths


class TestSignature:
    def test_p3(self):
        assert path_signature(path("a", "b", "c"), {"a", "c"}) == {"b": frozenset({0})}

    def test_c4(self):
        assert path_signature(cycle(4), {"1", "3"}) == {"2": frozenset({0}), "4": frozenset({1})}

    def test_p4(self):
        sig = path_signature(path("a", "b", "c", "d"), {"a", "d"})
        assert sig == {"b": frozenset({0}), "c": frozenset({0})}


class TestDistinguishable:
    def test_adjacent_monitors_on_c4(self):
        assert not distinguishable(cycle(4), {"1", "2"}, "3", "4")

    def test_opposite_monitors_on_c4(self):
        assert distinguishable(cycle(4), {"1", "3"}, "2", "4")
        assert distinguishable(cycle(4), {"1", "3"}, "4", "2")

    def test_errors(self):
        g = path("a", "b", "c")
        with pytest.raises(SameNode):
            distinguishable(g, {"a", "c"}, "b", "b")
        with pytest.raises(NotNonMonitor):
            distinguishable(g, {"a", "c"}, "b", "a")


class TestVerdict:
    def test_c6_alternate(self):
        assert is_one_identifiable(cycle(6), {"1", "3", "5"}).verdict

    def test_p4_ends(self):
        rep = is_one_identifiable(path("a", "b", "c", "d"), {"a", "d"})
        assert not rep.verdict
        assert rep.confusable_pairs == [("b", "c")]
        assert rep.to_json() == {"identifiable": False, "uncovered": [], "confusable_pairs": [["b", "c"]]}

    def test_uncovered(self):
        rep = is_one_identifiable(star(3), {"x1", "x2"})
        assert rep.uncovered == ["x3"] and not rep.verdict

    @given(connected_graphs(max_nodes=8))
    def test_all_monitors_vacuous(self, g):
        assert is_one_identifiable(g, g.nodes).verdict

    @settings(max_examples=60)
    @given(connected_graphs(max_nodes=8), st.data())
    def test_fast_route_agrees(self, g, data):
        mons = data.draw(st.sets(st.sampled_from(g.sorted_nodes())))
        for strict in (False, True):
            assert identifiable_fast(g, mons, strict) == is_one_identifiable(g, mons, strict=strict).verdict


def _fan_at_least_two(h, u, mons):
    """Menger: u lies on a simple path between two distinct monitors iff two
    paths from u reach distinct monitors sharing only u."""
    targets = [m for m in mons if m in h]
    if len(targets) < 2 or u not in h:
        return False
    aux = h.copy()
    aux.add_edges_from((m, ("sink",)) for m in targets)
    return nx.node_connectivity(aux, u, ("sink",)) >= 2


def menger_verdict(g, mons):
    """Polynomial reference verdict, independent of path enumeration."""
    h = nx.Graph(list(g.edges))
    h.add_nodes_from(g.nodes)
    non = sorted(set(g.nodes) - set(mons))
    for u in non:
        if not _fan_at_least_two(h, u, mons):
            return False
    for u, w in combinations(non, 2):
        hu = h.copy()
        hu.remove_node(w)
        hw = h.copy()
        hw.remove_node(u)
        if not (_fan_at_least_two(hu, u, mons) or _fan_at_least_two(hw, w, mons)):
            return False
    return True


@settings(max_examples=150, deadline=None)
@given(connected_graphs(min_nodes=2, max_nodes=8), st.data())
def test_oracle_matches_menger_reference(g, data):
    mons = data.draw(st.sets(st.sampled_from(g.sorted_nodes()), min_size=0))
    assert is_one_identifiable(g, mons).verdict == menger_verdict(g, mons)


class TestMinimum:
    @pytest.mark.parametrize(
        "g,k",
        [(cycle(4), 2), (cycle(5), 3), (cycle(6), 3), (star(3), 3), (complete(4), 2), (path("a", "b"), 2)],
    )
    def test_counts(self, g, k):
        got, witness = min_monitors_bruteforce(g)
        assert got == k and len(witness) == k
        assert is_one_identifiable(g, witness).verdict

    def test_c4_witness_is_opposite_pair(self):
        assert set(min_monitors_bruteforce(cycle(4))[1]) == {"1", "3"}

    def test_star_witness_is_leaves(self):
        assert set(min_monitors_bruteforce(star(3))[1]) == {"x1", "x2", "x3"}

    def test_cap(self):
        with pytest.raises(CapExceeded):
            min_monitors_bruteforce(random_connected_graph(13, 14, 0))
        assert min_monitors_bruteforce(random_connected_graph(5, 6, 0), node_cap=5)[0] >= 2

    def test_witness_is_first_in_lex_order(self):
        g = random_connected_graph(6, 8, 11)
        k, witness = min_monitors_bruteforce(g)
        order = g.sorted_nodes()
        first = next(c for c in combinations(order, k) if is_one_identifiable(g, c).verdict)
        assert list(witness) == list(first)

    def test_relabeling_invariance(self):
        r = random.Random(0)
        for seed in range(20):
            g = random_connected_graph(7, 9, seed)
            perm = g.sorted_nodes()
            r.shuffle(perm)
            h = g.relabel(dict(zip(g.sorted_nodes(), perm)))
            assert min_monitors_bruteforce(g)[0] == min_monitors_bruteforce(h)[0]


@settings(max_examples=80)
@given(connected_graphs(max_nodes=8), st.data())
def test_monotone_under_monitor_addition(g, data):
    _, witness = min_monitors_bruteforce(g)
    extra = data.draw(st.sampled_from(g.sorted_nodes()))
    assert is_one_identifiable(g, set(witness) | {extra}).verdict


def test_empty_graph_vacuous():
    assert is_one_identifiable(Graph(), set()).verdict
