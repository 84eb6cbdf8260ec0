"""Simple undirected graphs and the set operators the placement algorithms use.

Graphs are immutable.  Every operator returns a new :class:`Graph`; node
identifiers are opaque string tokens ordered by :func:`node_key`, so any
"pick one of these" step downstream is reproducible.
"""
from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Protocol

from .errors import (
    DuplicateEdge,
    InfeasibleEdgeCount,
    MalformedLine,
    NotASubgraph,
    SelfLoop,
    UnknownEdge,
    UnknownEndpoint,
    UnknownNode,
)

Node = str
Edge = tuple[str, str]

_TOKEN = re.compile(r"^[\w.\-]+$")


def node_key(v: Node):
    """Sort key: purely numeric tokens first, in numeric order, then the rest."""
    if v.isdigit():
        return (0, int(v), v)
    return (1, 0, v)


def sort_nodes(nodes: Iterable[Node]) -> list[Node]:
    return sorted(nodes, key=node_key)


def edge(u: Node, v: Node) -> Edge:
    """Canonical orientation of the unordered pair {u, v}."""
    if node_key(v) < node_key(u):
        return (v, u)
    return (u, v)


def edge_key(e: Edge):
    return (node_key(e[0]), node_key(e[1]))


def sort_edges(edges: Iterable[Edge]) -> list[Edge]:
    return sorted(edges, key=edge_key)


class HasNodesEdges(Protocol):
    nodes: frozenset
    edges: frozenset


@dataclass(frozen=True)
class Graph:
    nodes: frozenset = frozenset()
    edges: frozenset = frozenset()

    def __post_init__(self):
        nodes = frozenset(str(v) for v in self.nodes)
        edges = set()
        for u, v in self.edges:
            u, v = str(u), str(v)
            if u == v:
                raise SelfLoop(f"self-loop at {u!r}")
            if u not in nodes or v not in nodes:
                raise UnknownEndpoint(f"edge ({u}, {v}) has an endpoint outside the node set")
            edges.add(edge(u, v))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], nodes: Iterable = ()) -> "Graph":
        edges = [(str(u), str(v)) for u, v in edges]
        all_nodes = {str(v) for v in nodes}
        for u, v in edges:
            all_nodes.update((u, v))
        return cls(frozenset(all_nodes), frozenset(edges))

    @cached_property
    def adj(self) -> dict[Node, frozenset]:
        nbrs: dict[Node, set] = {v: set() for v in self.nodes}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def neighbors(self, v: Node) -> frozenset:
        try:
            return self.adj[v]
        except KeyError:
            raise UnknownNode(v) from None

    def degree(self, v: Node) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: Node, v: Node) -> bool:
        return edge(u, v) in self.edges

    def sorted_nodes(self) -> list[Node]:
        return sort_nodes(self.nodes)

    def sorted_edges(self) -> list[Edge]:
        return sort_edges(self.edges)

    def __len__(self):
        return len(self.nodes)

    def connected_components(self) -> list[frozenset]:
        """Node sets of the connected components, ordered by smallest member."""
        seen: set = set()
        comps = []
        for s in self.sorted_nodes():
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self.adj[v]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def induced(self, nodes: Iterable[Node]) -> "Graph":
        keep = frozenset(nodes)
        return Graph(keep, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def without_nodes(self, drop: Iterable[Node]) -> "Graph":
        return self.induced(self.nodes - frozenset(drop))

    def relabel(self, mapping: dict) -> "Graph":
        return Graph(
            frozenset(mapping[v] for v in self.nodes),
            frozenset((mapping[u], mapping[v]) for u, v in self.edges),
        )


@dataclass(frozen=True)
class SubgraphRef:
    """A node/edge subset of some parent graph."""

    nodes: frozenset = frozenset()
    edges: frozenset = frozenset()


@dataclass(frozen=True)
class MonitorSet:
    monitors: frozenset = field(default_factory=frozenset)

    def __iter__(self):
        return iter(sort_nodes(self.monitors))

    def __len__(self):
        return len(self.monitors)

    def __contains__(self, v):
        return v in self.monitors

    def non_monitors(self, g: Graph) -> frozenset:
        return g.nodes - self.monitors


def fan_size(g: Graph, source: Node, targets: Iterable[Node], limit: int = 2) -> int:
    """Number of paths from *source* to distinct *targets* that share only
    *source* (at most *limit*; unit-capacity augmenting paths)."""
    targets = frozenset(targets) - {source}
    sink = ("sink",)
    # residual capacities on the node-split graph: (x, 0) = in, (x, 1) = out
    cap: dict = {}

    def arc(a, b):
        cap[(a, b)] = cap.get((a, b), 0) + 1
        cap.setdefault((b, a), 0)

    for x in g.nodes:
        if x != source:
            arc((x, 0), (x, 1))
    for u, v in g.edges:
        for a, b in ((u, v), (v, u)):
            if b != source:
                arc((a, 1), (b, 0))
    for t in targets:
        arc((t, 1), sink)
    out: dict = {}
    for a, b in cap:
        out.setdefault(a, []).append(b)
    flow = 0
    start = (source, 1)
    while flow < limit:
        prev = {start: None}
        queue = deque([start])
        while queue and sink not in prev:
            a = queue.popleft()
            for b in out.get(a, ()):
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            break
        b = sink
        while prev[b] is not None:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    return flow


def _canon_edges(l: Iterable[tuple]) -> set:
    out = set()
    for u, v in l:
        if u == v:
            raise SelfLoop(f"self-loop at {u!r}")
        out.add(edge(str(u), str(v)))
    return out


def parse_edge_list(text: str) -> Graph:
    """Parse ``<node> <node>`` lines; ``#`` lines and blank lines are skipped.

    A line holding a single token declares a node without edges, which is
    the only way to write isolated nodes (the one-node graph, for example).
    """
    nodes: set = set()
    edges: set = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) > 2 or not all(_TOKEN.match(t) for t in toks):
            raise MalformedLine(lineno, raw)
        if len(toks) == 1:
            nodes.add(toks[0])
            continue
        u, v = toks
        if u == v:
            raise SelfLoop(f"line {lineno}: self-loop at {u!r}")
        e = edge(u, v)
        if e in edges:
            raise DuplicateEdge(f"line {lineno}: duplicate edge {u} {v}")
        edges.add(e)
        nodes.update(e)
    return Graph(frozenset(nodes), frozenset(edges))


def to_edge_list(g: Graph) -> str:
    lines = [f"{u} {v}" for u, v in g.sorted_edges()]
    touched = {v for e in g.edges for v in e}
    lines += [v for v in g.sorted_nodes() if v not in touched]
    return "".join(line + "\n" for line in lines)


def remove_links(g: Graph, links: Iterable[tuple]) -> Graph:
    drop = _canon_edges(links)
    missing = drop - g.edges
    if missing:
        raise UnknownEdge(f"not in graph: {sort_edges(missing)}")
    return Graph(g.nodes, g.edges - drop)


def add_links(g: Graph, links: Iterable[tuple]) -> Graph:
    new = _canon_edges(links)
    for u, v in new:
        if u not in g.nodes or v not in g.nodes:
            raise UnknownEndpoint(f"edge ({u}, {v}) has an endpoint outside the node set")
    return Graph(g.nodes, g.edges | new)


def graph_union(g: Graph, h: Graph) -> Graph:
    return Graph(g.nodes | h.nodes, g.edges | h.edges)


def subtract_subgraphs(g: Graph, parts: Iterable[HasNodesEdges]) -> Graph:
    """Remove every part's edges, then every part node left with degree 0.

    Nodes that belong to no part survive even when isolated, and a part node
    that still has an edge outside the parts survives as an attachment point.
    """
    part_nodes: set = set()
    part_edges: set = set()
    for p in parts:
        pe = {edge(*e) for e in p.edges}
        if not pe <= g.edges or not set(p.nodes) <= g.nodes:
            raise NotASubgraph("part is not contained in the graph")
        part_edges |= pe
        part_nodes |= set(p.nodes)
    rest = g.edges - part_edges
    touched = {v for e in rest for v in e}
    nodes = frozenset(v for v in g.nodes if v not in part_nodes or v in touched)
    return Graph(nodes, rest)


def fresh_ids(g: Graph, count: int, prefix: str = "m") -> list[Node]:
    out: list = []
    i = 1
    while len(out) < count:
        cand = f"{prefix}{i}"
        if cand not in g.nodes:
            out.append(cand)
        i += 1
    return out


def attach_external_monitors(g: Graph, attach: list) -> tuple[Graph, MonitorSet]:
    """Hang one new degree-1 monitor off each attach point (in order)."""
    for v in attach:
        if v not in g.nodes:
            raise UnknownNode(v)
    ids = fresh_ids(g, len(attach))
    h = Graph(g.nodes | frozenset(ids), g.edges | frozenset(edge(m, v) for m, v in zip(ids, attach)))
    return h, MonitorSet(frozenset(ids))


def random_connected_graph(n: int, m: int, seed: int) -> Graph:
    """Connected simple graph on nodes ``0..n-1`` with exactly *m* edges."""
    if n < 1 or m < n - 1 or m > n * (n - 1) // 2:
        raise InfeasibleEdgeCount(f"no connected simple graph with n={n}, m={m}")
    rng = random.Random(seed)
    labels = [str(i) for i in range(n)]
    order = labels[:]
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        edges.add(edge(order[i], order[rng.randrange(i)]))
    rest = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)
            if (labels[i], labels[j]) not in edges]
    edges.update(rng.sample(rest, m - (n - 1)))
    return Graph(frozenset(labels), frozenset(edges))


def _dot_id(v: Node) -> str:
    return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph, monitors: Iterable[Node] = ()) -> str:
    mons = frozenset(monitors)
    unknown = mons - g.nodes
    if unknown:
        raise UnknownNode(sort_nodes(unknown)[0])
    lines = ["graph G {"]
    for v in g.sorted_nodes():
        if v in mons:
            lines.append(f"  {_dot_id(v)} [monitor=true, shape=doublecircle, style=filled, fillcolor=lightblue];")
        else:
            lines.append(f"  {_dot_id(v)};")
    for u, v in g.sorted_edges():
        lines.append(f"  {_dot_id(u)} -- {_dot_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
