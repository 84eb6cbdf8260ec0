"""Triconnected components of a biconnected graph by repeated splitting.

The block is split at separation pairs until every piece is a bond (two
nodes, parallel edges), a cycle, or a simple 3-connected graph; adjacent
bonds and adjacent cycles are then merged, which yields the canonical
decomposition.  Quadratic in the number of node pairs per split, which is
fine for the graph sizes this package targets.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NotBiconnected
from .graph import edge, node_key, sort_edges, sort_nodes

POLYGON = "polygon"
BOND = "bond"
TRICONNECTED = "triconnected"


@dataclass(frozen=True)
class TriComponent:
    kind: str
    nodes: frozenset
    real_edges: frozenset
    # (u, v, id) triples; each id is shared with exactly one other component
    virtual_edges: tuple

    @property
    def edge_count(self) -> int:
        return len(self.real_edges) + len(self.virtual_edges)


# internal edge record: (u, v, eid); eid < 0 marks a virtual edge
_Rec = tuple


def _nodes_of(edges) -> set:
    out = set()
    for u, v, _ in edges:
        out.add(u)
        out.add(v)
    return out


def _is_cycle(edges) -> bool:
    deg: dict = {}
    adj: dict = {}
    for u, v, _ in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    if any(d != 2 for d in deg.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(deg)


def _separation_classes(edges, a, b) -> list:
    """Edge classes w.r.t. {a, b}: each a-b edge alone, plus one class per
    connected piece of the graph with a and b deleted."""
    classes = []
    rest = []
    for rec in edges:
        u, v, _ = rec
        if {u, v} == {a, b}:
            classes.append([rec])
        else:
            rest.append(rec)
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in rest:
        if u not in (a, b) and v not in (a, b):
            parent[find(u)] = find(v)
    groups: dict = {}
    for rec in rest:
        u, v, _ = rec
        inner = u if u not in (a, b) else v
        groups.setdefault(find(inner), []).append(rec)
    classes.extend(groups.values())
    return classes


def _find_split(edges):
    nodes = sort_nodes(_nodes_of(edges))
    for a, b in combinations(nodes, 2):
        classes = _separation_classes(edges, a, b)
        r = len(classes)
        if r >= 3 or (r == 2 and all(len(c) >= 2 for c in classes)):
            return a, b, classes
    return None


class _Splitter:
    def __init__(self):
        self.next_virtual = -1
        self.pieces: list = []

    def new_virtual(self):
        vid = self.next_virtual
        self.next_virtual -= 1
        return vid

    def run(self, edges):
        work = [edges]
        while work:
            comp = work.pop()
            if len(_nodes_of(comp)) == 2:
                self.pieces.append((BOND, comp))
                continue
            if _is_cycle(comp):
                self.pieces.append((POLYGON, comp))
                continue
            split = _find_split(comp)
            if split is None:
                self.pieces.append((TRICONNECTED, comp))
                continue
            a, b, classes = split
            if len(classes) == 2:
                vid = self.new_virtual()
                for cls in classes:
                    work.append(cls + [(a, b, vid)])
                continue
            bond = []
            for cls in classes:
                if len(cls) == 1:
                    bond.extend(cls)
                else:
                    vid = self.new_virtual()
                    bond.append((a, b, vid))
                    work.append(cls + [(a, b, vid)])
            self.pieces.append((BOND, bond))


def _merge_same_kind(pieces):
    """Merge bond-bond and polygon-polygon pieces that share a virtual edge."""
    owner: dict = {}
    for i, (_, comp) in enumerate(pieces):
        for _, _, eid in comp:
            if eid < 0:
                owner.setdefault(eid, []).append(i)
    parent = list(range(len(pieces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    internal = set()
    for eid, (i, j) in owner.items():
        if pieces[i][0] == pieces[j][0] and pieces[i][0] in (BOND, POLYGON):
            parent[find(i)] = find(j)
            internal.add(eid)
    merged: dict = {}
    for i, (kind, comp) in enumerate(pieces):
        root = find(i)
        entry = merged.setdefault(root, (kind, []))
        entry[1].extend(rec for rec in comp if rec[2] not in internal)
    return list(merged.values())


def _renumber(pieces, real_index):
    """Turn records into TriComponents with virtual ids 0, 1, ... in a
    deterministic order."""
    def piece_key(p):
        kind, comp = p
        reals = sort_edges(real_index[eid] for _, _, eid in comp if eid >= 0)
        nodes = sort_nodes(_nodes_of(comp))
        return ([node_key(v) for v in nodes], [tuple(map(node_key, e)) for e in reals], kind)

    pieces = sorted(pieces, key=piece_key)
    vmap: dict = {}
    out = []
    for kind, comp in pieces:
        virt = []
        for u, v, eid in comp:
            if eid < 0:
                if eid not in vmap:
                    vmap[eid] = len(vmap)
                a, b = edge(u, v)
                virt.append((a, b, vmap[eid]))
        out.append(
            TriComponent(
                kind=kind,
                nodes=frozenset(_nodes_of(comp)),
                real_edges=frozenset(real_index[eid] for _, _, eid in comp if eid >= 0),
                virtual_edges=tuple(sorted(virt, key=lambda t: t[2])),
            )
        )
    return out


def _check_biconnected(nodes, edges):
    from .graph import Graph

    g = Graph(frozenset(nodes), frozenset(edges))
    if len(nodes) < 3 or not g.is_connected():
        raise NotBiconnected("need a connected block with at least 3 nodes")
    for v in nodes:
        if not g.without_nodes([v]).is_connected():
            raise NotBiconnected(f"{v} is a cut vertex")


def triconnected_components(block) -> list[TriComponent]:
    """Canonical triconnected components of *block* (anything with
    ``nodes``/``edges``).  A single-edge block is returned as one bond."""
    edges = sort_edges(edge(*e) for e in block.edges)
    nodes = frozenset(block.nodes)
    if len(edges) == 1 and len(nodes) == 2:
        return [TriComponent(BOND, nodes, frozenset(edges), ())]
    _check_biconnected(nodes, edges)
    real_index = dict(enumerate(edges))
    splitter = _Splitter()
    splitter.run([(u, v, i) for i, (u, v) in real_index.items()])
    return _renumber(_merge_same_kind(splitter.pieces), real_index)


def tree_edges(comps: list[TriComponent]) -> list[tuple[int, int, int]]:
    """(i, j, virtual id) for each pair of components sharing a virtual edge."""
    owner: dict = {}
    for i, c in enumerate(comps):
        for _, _, vid in c.virtual_edges:
            owner.setdefault(vid, []).append(i)
    return [(i, j, vid) for vid, (i, j) in sorted(owner.items())]
