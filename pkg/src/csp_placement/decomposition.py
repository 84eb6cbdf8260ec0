"""Blocks, cut vertices, polygon-less components (PLCs) and tandem chains.

A PLC is the unit the placement algorithms reason about.  Inside a block,
the triconnected components that are not cycles ("polygons") are glued
together along the virtual edges they share; each such group, restricted to
its real edges, is one PLC.  Every real edge of a polygon becomes its own
two-node "bond" PLC.  So a plain cycle is a ring of bond PLCs, and a block
without polygons is a single PLC.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import Disconnected
from .graph import Graph, Node, edge, edge_key, node_key, sort_edges, sort_nodes
from .triconnected import POLYGON, TriComponent, tree_edges, triconnected_components

# cycle components shorter than this are treated like any other component
MIN_POLYGON = 4


def _is_polygon(c: TriComponent) -> bool:
    return c.kind == POLYGON and len(c.nodes) >= MIN_POLYGON


@dataclass(frozen=True)
class Block:
    id: int
    nodes: frozenset
    edges: frozenset
    cut_vertices: frozenset = frozenset()

    @property
    def is_bond(self) -> bool:
        return len(self.nodes) == 2 and len(self.edges) == 1

    def as_graph(self) -> Graph:
        return Graph(self.nodes, self.edges)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "nodes": sort_nodes(self.nodes),
            "edges": [list(e) for e in sort_edges(self.edges)],
            "cut_vertices": sort_nodes(self.cut_vertices),
            "is_bond": self.is_bond,
        }


@dataclass(frozen=True)
class Plc:
    id: int
    parent_block: int
    nodes: frozenset
    edges: frozenset
    agents: frozenset = frozenset()

    @property
    def is_bond(self) -> bool:
        return len(self.nodes) == 2 and len(self.edges) == 1

    @property
    def non_agents(self) -> frozenset:
        return self.nodes - self.agents

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "block": self.parent_block,
            "nodes": sort_nodes(self.nodes),
            "edges": [list(e) for e in sort_edges(self.edges)],
            "agents": sort_nodes(self.agents),
            "is_bond": self.is_bond,
        }


def _block_key(nodes, edges):
    return ([node_key(v) for v in sort_nodes(nodes)], [edge_key(e) for e in sort_edges(edges)])


def _tarjan_blocks(g: Graph) -> list[set]:
    """Edge sets of the biconnected components (iterative Hopcroft-Tarjan)."""
    disc: dict = {}
    low: dict = {}
    blocks = []
    counter = 0
    for root in g.sorted_nodes():
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        edge_stack: list = []
        stack = [(root, None, iter(sort_nodes(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append(edge(v, w))
                    stack.append((w, v, iter(sort_nodes(g.adj[w]))))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(edge(v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent is None:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                comp = set()
                target = edge(parent, v)
                while True:
                    e = edge_stack.pop()
                    comp.add(e)
                    if e == target:
                        break
                blocks.append(comp)
    return blocks


def biconnected_components(g: Graph) -> list[Block]:
    """Blocks of *g* ordered by their sorted node lists.  Isolated nodes
    belong to no block."""
    raw = []
    for edges in _tarjan_blocks(g):
        nodes = {v for e in edges for v in e}
        raw.append((frozenset(nodes), frozenset(edges)))
    raw.sort(key=lambda b: _block_key(*b))
    count: dict = {}
    for nodes, _ in raw:
        for v in nodes:
            count[v] = count.get(v, 0) + 1
    cuts = {v for v, c in count.items() if c >= 2}
    return [Block(i, nodes, edges, frozenset(nodes & cuts)) for i, (nodes, edges) in enumerate(raw)]


def cut_vertices(g: Graph) -> frozenset:
    out: set = set()
    for b in biconnected_components(g):
        out |= b.cut_vertices
    return frozenset(out)


@dataclass
class BlockCutTree:
    """Bipartite tree; tree nodes are ``("B", block_id)`` and ``("C", v)``."""

    blocks: list
    cut_vertices: frozenset
    adj: dict = field(default_factory=dict)

    def is_path(self) -> bool:
        if len(self.adj) <= 1:
            return True
        return all(len(n) <= 2 for n in self.adj.values())

    def leaf_blocks(self) -> list:
        return [b for b in self.blocks if len(self.adj[("B", b.id)]) <= 1]

    def block_neighbors(self, block_id: int) -> list[int]:
        """Ids of blocks sharing a cut vertex with the given block."""
        out: set = set()
        for cv in self.adj[("B", block_id)]:
            out.update(bid for _, bid in self.adj[cv])
        out.discard(block_id)
        return sorted(out)


def block_cut_tree(g: Graph, blocks: list[Block] | None = None) -> BlockCutTree:
    if not g.is_connected():
        raise Disconnected("block-cut tree needs a connected graph")
    blocks = biconnected_components(g) if blocks is None else blocks
    cuts = frozenset().union(*(b.cut_vertices for b in blocks)) if blocks else frozenset()
    adj: dict = {("B", b.id): [] for b in blocks}
    for v in sort_nodes(cuts):
        adj[("C", v)] = []
    for b in blocks:
        for v in sort_nodes(b.cut_vertices):
            adj[("B", b.id)].append(("C", v))
            adj[("C", v)].append(("B", b.id))
    return BlockCutTree(blocks, cuts, adj)


def plc_decompose(block: Block, start_id: int = 0) -> list[Plc]:
    """PLCs of one block, ids starting at *start_id*, agents left empty."""
    if block.is_bond:
        return [Plc(start_id, block.id, block.nodes, block.edges)]
    comps = triconnected_components(block)
    parent = list(range(len(comps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _ in tree_edges(comps):
        if not _is_polygon(comps[i]) and not _is_polygon(comps[j]):
            parent[find(i)] = find(j)
    groups: dict = {}
    parts = []
    for i, c in enumerate(comps):
        if _is_polygon(c):
            parts.extend(frozenset([e]) for e in c.real_edges)
        else:
            groups.setdefault(find(i), set()).update(c.real_edges)
    parts.extend(frozenset(es) for es in groups.values() if es)
    parts.sort(key=lambda es: _block_key({v for e in es for v in e}, es))
    return [
        Plc(start_id + k, block.id, frozenset(v for e in es for v in e), es)
        for k, es in enumerate(parts)
    ]


def has_polygon(block: Block) -> bool:
    if block.is_bond:
        return False
    return any(_is_polygon(c) for c in triconnected_components(block))


def plc_agents(plcs: list[Plc], g: Graph) -> list[Plc]:
    """Agents: nodes shared with another PLC, plus cut vertices of *g*."""
    count: dict = {}
    for p in plcs:
        for v in p.nodes:
            count[v] = count.get(v, 0) + 1
    cuts = cut_vertices(g)
    return [
        Plc(p.id, p.parent_block, p.nodes, p.edges,
            frozenset(v for v in p.nodes if count[v] >= 2 or v in cuts))
        for p in plcs
    ]


def plc_neighbors(plcs: Iterable[Plc], block: int | None = None) -> dict[int, list[int]]:
    """PLC id -> ids of PLCs sharing at least one node; optionally only
    among PLCs of one block."""
    plcs = [p for p in plcs if block is None or p.parent_block == block]
    by_node: dict = {}
    for p in plcs:
        for v in p.nodes:
            by_node.setdefault(v, []).append(p.id)
    out = {}
    for p in plcs:
        nb = set()
        for v in p.nodes:
            nb.update(by_node[v])
        nb.discard(p.id)
        out[p.id] = sorted(nb)
    return out


def _cycle_incidence(comp: TriComponent) -> dict:
    """node -> the two cycle elements at it; ("r", edge) or ("v", id)."""
    at: dict = {}
    for u, v in comp.real_edges:
        for x in (u, v):
            at.setdefault(x, []).append(("r", (u, v)))
    for u, v, vid in comp.virtual_edges:
        for x in (u, v):
            at.setdefault(x, []).append(("v", vid))
    return at


@dataclass(frozen=True)
class Junction:
    """Edgeless group of non-polygon pieces, e.g. the two branch nodes of a
    theta graph; *neighbors* are PLC ids along the triconnected tree."""

    nodes: frozenset
    neighbors: tuple

    @property
    def edges(self) -> frozenset:
        return frozenset()


def plc_tree_neighbors(block: Block, plcs: Iterable[Plc]) -> dict[int, list[int]]:
    """Adjacency of the PLCs of one block along the triconnected tree.

    A polygon's bond PLC neighbours the elements next to it on the cycle;
    across a virtual edge the walk continues at the same node until it
    meets a real edge or a non-empty PLC group.  Unlike :func:`plc_neighbors`,
    PLCs that merely share a junction node with another polygon do not
    count.
    """
    return _tree_adjacency(block, plcs)[0]


def plc_junctions(block: Block, plcs: Iterable[Plc]) -> list[Junction]:
    """Junctions of one block, ordered by node list."""
    return _tree_adjacency(block, plcs)[1]


def _tree_adjacency(block: Block, plcs: Iterable[Plc]):
    plcs = [p for p in plcs if p.parent_block == block.id]
    out: dict = {p.id: set() for p in plcs}
    if block.is_bond or len(plcs) <= 1:
        return {k: sorted(v) for k, v in out.items()}, []
    comps = triconnected_components(block)
    edge_plc = {e: p.id for p in plcs for e in p.edges}
    parent = list(range(len(comps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = tree_edges(comps)
    for i, j, _ in tree:
        if not _is_polygon(comps[i]) and not _is_polygon(comps[j]):
            parent[find(i)] = find(j)
    group_plc: dict = {}
    for i, c in enumerate(comps):
        if not _is_polygon(c):
            for e in c.real_edges:
                group_plc[find(i)] = edge_plc[e]
    across: dict = {}
    for i, j, vid in tree:
        across[(i, vid)] = j
        across[(j, vid)] = i
    incidence = {i: _cycle_incidence(c) for i, c in enumerate(comps) if _is_polygon(c)}

    def touch(c: int, vid: int, u: Node, seen: frozenset) -> set:
        # PLCs met at node u when entering component c through virtual edge vid
        if c in seen:
            return set()
        seen = seen | {c}
        if _is_polygon(comps[c]):
            (elem,) = [el for el in incidence[c][u] if el != ("v", vid)]
            if elem[0] == "r":
                return {edge_plc[elem[1]]}
            return touch(across[(c, elem[1])], elem[1], u, seen)
        gid = group_plc.get(find(c))
        if gid is not None:
            return {gid}
        found: set = set()
        for a, b, y in comps[c].virtual_edges:
            if y != vid and u in (a, b):
                found |= touch(across[(c, y)], y, u, seen)
        return found

    for i, c in enumerate(comps):
        if _is_polygon(c):
            for e in c.real_edges:
                me = edge_plc[e]
                for u in e:
                    (elem,) = [el for el in incidence[i][u] if el != ("r", e)]
                    if elem[0] == "r":
                        out[me].add(edge_plc[elem[1]])
                    else:
                        out[me] |= touch(across[(i, elem[1])], elem[1], u, frozenset({i}))
        else:
            me = group_plc.get(find(i))
            if me is None:
                continue
            for a, b, y in c.virtual_edges:
                j = across[(i, y)]
                if find(j) == find(i):
                    continue
                for u in (a, b):
                    out[me] |= touch(j, y, u, frozenset({i}))
    for k in list(out):
        out[k].discard(k)
        for q in out[k]:
            out[q].add(k)
    empty: dict = {}
    for i, c in enumerate(comps):
        if not _is_polygon(c) and find(i) not in group_plc:
            empty.setdefault(find(i), []).append(i)
    junctions = []
    for members in empty.values():
        nodes: set = set()
        seen: set = set()
        for i in members:
            for a, b, y in comps[i].virtual_edges:
                nodes.update((a, b))
                j = across[(i, y)]
                if find(j) == find(members[0]):
                    continue
                for u in (a, b):
                    seen |= touch(j, y, u, frozenset(members))
        junctions.append(Junction(frozenset(nodes), tuple(sorted(seen))))
    junctions.sort(key=lambda jn: [node_key(v) for v in sort_nodes(jn.nodes)])
    return {k: sorted(v) for k, v in out.items()}, junctions


@dataclass
class Decomposition:
    graph: Graph
    blocks: list
    plcs: list

    @property
    def cut_vertices(self) -> frozenset:
        return frozenset().union(*(b.cut_vertices for b in self.blocks)) if self.blocks else frozenset()

    def plcs_of(self, block_id: int) -> list[Plc]:
        return [p for p in self.plcs if p.parent_block == block_id]

    def to_json(self) -> dict:
        return {
            "blocks": [b.to_json() for b in self.blocks],
            "plcs": [p.to_json() for p in self.plcs],
        }


def decompose(g: Graph) -> Decomposition:
    blocks = biconnected_components(g)
    plcs: list = []
    for b in blocks:
        plcs.extend(plc_decompose(b, start_id=len(plcs)))
    return Decomposition(g, blocks, plc_agents(plcs, g))


@dataclass
class TandemInstance:
    graph: Graph
    chain: list          # Blocks in order, starting at externals[0]'s block
    betas: list          # neighbouring-block count per chain entry
    externals: list      # attach points, one per missing neighbour

    def __bool__(self):
        return True


@dataclass
class TandemRejection:
    condition: str
    detail: str = ""

    def __bool__(self):
        return False


def is_tandem(g: Graph, externals: list) -> TandemInstance | TandemRejection:
    """Check that *g* is a chain of PLC blocks whose free ends carry the
    given external attach points.

    Every block needs ``2 - beta`` distinct non-cut-vertex attach points,
    where beta is its number of neighbouring blocks.
    """
    if not g.nodes or not g.is_connected():
        return TandemRejection("not_connected", "graph must be connected and non-empty")
    blocks = biconnected_components(g)
    if not blocks:
        return TandemRejection("no_blocks", "graph has no edges")
    tree = block_cut_tree(g, blocks)
    if not tree.is_path():
        return TandemRejection("not_a_path", "block-cut tree is not a path")
    for b in blocks:
        if len(plc_decompose(b)) != 1:
            return TandemRejection("block_not_plc", f"block {b.id} contains a polygon")
    cuts = tree.cut_vertices
    for v in externals:
        if v not in g.nodes:
            return TandemRejection("externals", f"unknown attach point {v}")
        if v in cuts:
            return TandemRejection("externals", f"attach point {v} is a cut vertex")
    if len(set(externals)) != len(externals):
        return TandemRejection("externals", "attach points must be distinct")
    # walk the chain from a leaf block
    by_id = {b.id: b for b in blocks}
    if len(blocks) == 1:
        order = [blocks[0]]
    else:
        leaves = tree.leaf_blocks()
        start = leaves[0]
        if externals and externals[0] not in start.nodes:
            start = leaves[-1]
        order = [start]
        prev = None
        while True:
            nxt = [bid for bid in tree.block_neighbors(order[-1].id) if bid != prev]
            if not nxt:
                break
            prev = order[-1].id
            order.append(by_id[nxt[0]])
    betas = [len(tree.block_neighbors(b.id)) for b in order]
    want = sum(2 - beta for beta in betas)
    if len(externals) != want:
        return TandemRejection("externals", f"expected {want} attach points, got {len(externals)}")
    for b, beta in zip(order, betas):
        have = sum(1 for v in externals if v in b.nodes)
        if have != 2 - beta:
            return TandemRejection(
                "externals", f"block {b.id} needs {2 - beta} attach points, has {have}"
            )
    return TandemInstance(g, order, betas, list(externals))
