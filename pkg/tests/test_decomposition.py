from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import BOWTIE, complete, connected_graphs, cycle, path, star
from csp_placement.decomposition import (
    biconnected_components,
    block_cut_tree,
    cut_vertices,
    decompose,
    has_polygon,
    is_tandem,
    plc_decompose,
    plc_junctions,
    plc_neighbors,
    plc_tree_neighbors,
)
from csp_placement.errors import Disconnected
from csp_placement.graph import Graph, graph_union, remove_links

nx = pytest.importorskip("networkx")


def k_on(names):
    return Graph.from_edges(combinations(names, 2))


def k4_chain():
    """Three K4s in a row sharing cut vertices d and g."""
    return graph_union(graph_union(k_on("abcd"), k_on("defg")), k_on("ghij"))


def brute_cut_vertices(g):
    base = len(g.connected_components())
    return {v for v in g.nodes if len(g.without_nodes([v]).connected_components()) > base}


class TestCutVertices:
    def test_examples(self):
        assert cut_vertices(path("a", "b", "c")) == {"b"}
        assert cut_vertices(cycle(4)) == set()
        assert cut_vertices(BOWTIE) == {"c"}

    @given(connected_graphs(max_nodes=10))
    def test_removal_oracle(self, g):
        assert cut_vertices(g) == brute_cut_vertices(g)


class TestBlocks:
    def test_p3(self):
        blocks = biconnected_components(path("a", "b", "c"))
        assert [b.edges for b in blocks] == [{("a", "b")}, {("b", "c")}]
        assert all(b.is_bond for b in blocks)

    def test_triangle_with_pendant(self):
        g = Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
        blocks = biconnected_components(g)
        assert sorted(len(b.edges) for b in blocks) == [1, 3]

    def test_k4_chain(self):
        blocks = biconnected_components(k4_chain())
        assert len(blocks) == 3
        assert cut_vertices(k4_chain()) == {"d", "g"}

    @settings(max_examples=100)
    @given(connected_graphs(max_nodes=10))
    def test_matches_networkx(self, g):
        h = nx.Graph(list(g.edges))
        want = sorted(sorted(tuple(sorted(e)) for e in comp) for comp in nx.biconnected_component_edges(h))
        got = sorted(sorted(tuple(sorted(e)) for e in b.edges) for b in biconnected_components(g))
        assert got == want

    @given(connected_graphs(max_nodes=10))
    def test_partition_and_membership(self, g):
        blocks = biconnected_components(g)
        assert sum(len(b.edges) for b in blocks) == len(g.edges)
        count = {}
        for b in blocks:
            for v in b.nodes:
                count[v] = count.get(v, 0) + 1
        assert {v for v, c in count.items() if c >= 2} == cut_vertices(g)
        for b in blocks:
            assert b.cut_vertices == {v for v in b.nodes if count[v] >= 2}


class TestBlockCutTree:
    def test_p3(self):
        t = block_cut_tree(path("a", "b", "c"))
        assert t.adj == {("B", 0): [("C", "b")], ("B", 1): [("C", "b")], ("C", "b"): [("B", 0), ("B", 1)]}
        assert t.is_path()

    def test_single_block(self):
        t = block_cut_tree(complete(4))
        assert list(t.adj) == [("B", 0)] and t.is_path()

    def test_star(self):
        t = block_cut_tree(star(3))
        assert len(t.adj[("C", "c")]) == 3 and not t.is_path()
        assert len(t.leaf_blocks()) == 3

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            block_cut_tree(graph_union(path("a", "b"), path("c", "d")))

    @given(connected_graphs(min_nodes=2, max_nodes=10))
    def test_is_tree_and_leaves(self, g):
        t = block_cut_tree(g)
        h = nx.Graph()
        h.add_nodes_from(t.adj)
        h.add_edges_from((a, b) for a, nbrs in t.adj.items() for b in nbrs)
        assert nx.is_tree(h)
        for b in t.leaf_blocks():
            assert len(b.cut_vertices) <= 1


class TestPlc:
    def test_k4_one_plc(self):
        (b,) = biconnected_components(complete(4))
        (p,) = plc_decompose(b)
        assert p.edges == b.edges and not p.is_bond

    def test_c4_four_bonds(self):
        (b,) = biconnected_components(cycle(4))
        plcs = plc_decompose(b)
        assert len(plcs) == 4 and all(p.is_bond for p in plcs)
        assert has_polygon(b)

    def test_single_edge(self):
        (b,) = biconnected_components(path("a", "b"))
        (p,) = plc_decompose(b)
        assert p.is_bond

    def test_triangle_is_one_plc(self):
        # cycles shorter than four nodes are not polygons
        (b,) = biconnected_components(cycle(3))
        assert len(plc_decompose(b)) == 1 and not has_polygon(b)

    def test_agents(self):
        d = decompose(cycle(4))
        for p in d.plcs:
            assert p.agents == p.nodes
        d = decompose(graph_union(complete(4), path("0", "x")))
        (k4,) = [p for p in d.plcs if len(p.nodes) == 4]
        assert k4.agents == {"0"}
        assert decompose(complete(4)).plcs[0].agents == set()

    def test_json(self):
        doc = decompose(path("a", "b", "c")).to_json()
        assert doc["blocks"][0] == {"id": 0, "nodes": ["a", "b"], "edges": [["a", "b"]],
                                    "cut_vertices": ["b"], "is_bond": True}
        assert doc["plcs"][1]["block"] == 1 and doc["plcs"][1]["agents"] == ["b"]

    @given(connected_graphs(max_nodes=10))
    def test_invariants(self, g):
        d = decompose(g)
        for b in d.blocks:
            plcs = d.plcs_of(b.id)
            assert sum(len(p.edges) for p in plcs) == len(b.edges)
            assert set().union(*(p.edges for p in plcs)) == set(b.edges)
        for p in d.plcs:
            assert p.agents <= p.nodes
            if p.is_bond:
                assert len(p.nodes) == 2


class TestNeighbors:
    def test_c4(self):
        d = decompose(cycle(4))
        assert all(len(v) == 2 for v in plc_neighbors(d.plcs).values())
        assert plc_tree_neighbors(d.blocks[0], d.plcs) == plc_neighbors(d.plcs)

    def test_single_plc(self):
        d = decompose(complete(4))
        assert plc_neighbors(d.plcs) == {0: []}
        assert plc_tree_neighbors(d.blocks[0], d.plcs) == {0: []}

    def test_plc_between_two_polygons(self):
        # K4 on abcd, with the edges ab and cd each replaced by a 4-cycle
        g = remove_links(k_on("abcd"), [("a", "b"), ("c", "d")])
        g = graph_union(g, Graph.from_edges([("a", "p"), ("p", "q"), ("q", "b"),
                                             ("c", "r"), ("r", "s"), ("s", "d")]))
        d = decompose(g)
        (core,) = [p for p in d.plcs if not p.is_bond]
        assert len(plc_neighbors(d.plcs)[core.id]) >= 4
        assert len(plc_tree_neighbors(d.blocks[0], d.plcs)[core.id]) == 4

    def test_per_block_filter(self):
        d = decompose(BOWTIE)
        nb = plc_neighbors(d.plcs, block=0)
        assert set(nb) == {p.id for p in d.plcs_of(0)}

    def test_theta_graph_junction(self):
        # three two-node arcs between the hubs x and y (a theta graph)
        g = Graph.from_edges([("x", "a"), ("a", "d"), ("d", "y"), ("x", "b"), ("b", "c"), ("c", "y"),
                              ("x", "e"), ("e", "f"), ("f", "y")])
        d = decompose(g)
        tree = plc_tree_neighbors(d.blocks[0], d.plcs)
        shared = plc_neighbors(d.plcs)
        xa = next(p.id for p in d.plcs if p.nodes == {"a", "x"})
        assert len(shared[xa]) == 3 and len(tree[xa]) == 3
        (j,) = plc_junctions(d.blocks[0], d.plcs)
        assert j.nodes == {"x", "y"} and len(j.neighbors) == 6

    @given(connected_graphs(max_nodes=9))
    def test_tree_neighbors_symmetric_and_share_a_node(self, g):
        d = decompose(g)
        for b in d.blocks:
            plcs = {p.id: p for p in d.plcs_of(b.id)}
            tree = plc_tree_neighbors(b, d.plcs)
            shared = plc_neighbors(d.plcs, block=b.id)
            for k, nbrs in tree.items():
                assert set(nbrs) <= set(shared[k])
                for q in nbrs:
                    assert k in tree[q] and plcs[k].nodes & plcs[q].nodes


class TestTandem:
    def test_k4_bond_k4(self):
        g = graph_union(graph_union(k_on("abcd"), path("d", "e")), k_on("efgh"))
        inst = is_tandem(g, ["a", "h"])
        assert inst and len(inst.chain) == 3 and inst.betas == [1, 2, 1]

    def test_star_rejected(self):
        assert is_tandem(star(3), []).condition == "not_a_path"

    def test_c4_block_rejected(self):
        g = graph_union(cycle(4), path("4", "x"))
        assert is_tandem(g, ["1", "x"]).condition == "block_not_plc"

    def test_wrong_externals(self):
        g = graph_union(k_on("abcd"), k_on("defg"))
        assert is_tandem(g, ["a"]).condition == "externals"
        assert is_tandem(g, ["a", "d"]).condition == "externals"
        assert is_tandem(g, ["a", "b"]).condition == "externals"
        assert is_tandem(g, ["a", "g"])

    def test_single_block(self):
        inst = is_tandem(complete(4), ["0", "3"])
        assert inst and inst.betas == [0]
