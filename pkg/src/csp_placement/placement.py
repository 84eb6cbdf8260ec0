"""Minimum monitor placement for 1-identifiability under CSP probing.

Three placement routines, each returning a :class:`PlacementResult`:

``monitors_in_polygonless``
    Recursive placement on graphs whose blocks contain no polygon (chains
    of PLC blocks, as left behind once identifiable parts are removed).
``monitors_in_biconnected``
    2-connected graphs, dispatching on the PLC structure.
``omp_csp``
    Any connected graph: a per-block pass, a pass over cut vertices, and
    the 2-connected routine when there are no cut vertices at all.

Every "pick one at random" step draws from a sorted candidate list with a
seeded :class:`random.Random`, so a (graph, seed) pair always produces the
same monitors and the same trace.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from .decomposition import (
    Block,
    Decomposition,
    Plc,
    biconnected_components,
    block_cut_tree,
    decompose,
    has_polygon,
    plc_junctions,
    plc_tree_neighbors,
)
from .errors import Disconnected, NoEligibleNode, NotTwoConnected, PolygonPresent
from .graph import Graph, MonitorSet, Node, fan_size, node_key, sort_nodes, subtract_subgraphs

POLYGONLESS = "polygonless"
BICONNECTED = "biconnected"
OMP_CSP = "omp_csp"


@dataclass
class TraceRecord:
    rule: str
    candidates: list = field(default_factory=list)
    chosen: Node | None = None
    removed: dict = field(default_factory=dict)
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "rule": self.rule,
            "candidates": list(self.candidates),
            "chosen": self.chosen,
            "removed": {k: [list(c) for c in v] for k, v in self.removed.items()},
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class PlacementResult:
    monitors: MonitorSet
    seed: int | None
    trace: list
    algorithm: str

    @property
    def count(self) -> int:
        return len(self.monitors)

    def to_json(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "seed": self.seed,
            "monitors": list(self.monitors),
            "count": self.count,
            "trace": [r.to_json() for r in self.trace],
        }


def replay(trace: Iterable[TraceRecord]) -> MonitorSet:
    """Monitor set implied by a trace: every record that chose a node."""
    return MonitorSet(frozenset(r.chosen for r in trace if r.chosen is not None))


def _as_rng(rng) -> tuple[random.Random, int | None]:
    if isinstance(rng, random.Random):
        return rng, None
    return random.Random(rng), rng


def _pick(rng: random.Random, candidates: Iterable[Node]) -> Node:
    return rng.choice(sort_nodes(candidates))


def _names(parts) -> list:
    return sorted((sort_nodes(p.nodes) for p in parts), key=lambda ns: [node_key(v) for v in ns])


class _Run:
    """Mutable state shared by one top-level placement call."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.trace: list = []
        self.monitors: set = set()

    def place(self, rule, candidates, chosen, removed=None, note=""):
        self.monitors.add(chosen)
        self.trace.append(TraceRecord(rule, sort_nodes(candidates), chosen, removed or {}, note))

    def record(self, rule, removed=None, candidates=(), note=""):
        self.trace.append(TraceRecord(rule, sort_nodes(candidates), None, removed or {}, note))


# -- polygon-less networks ---------------------------------------------------


def _check_polygonless(g: Graph):
    for b in biconnected_components(g):
        if has_polygon(b):
            raise PolygonPresent(f"block {sort_nodes(b.nodes)} contains a polygon")


def _first_block(blocks):
    return min(blocks, key=lambda b: node_key(sort_nodes(b.nodes)[0]))


def _polygonless(run: _Run, g: Graph, s: frozenset):
    # nodes left joining the remainder to already processed blocks
    carried: frozenset = frozenset()
    while g.edges:
        pending = []
        joins: set = set()
        for comp in g.connected_components():
            gi = g.induced(comp)
            if not gi.edges:
                continue
            blocks = biconnected_components(gi)
            if len(blocks) == 1:
                run.place("polygonless/single-block", gi.nodes, _pick(run.rng, gi.nodes),
                          {"blocks": _names(blocks)})
                continue
            tree = block_cut_tree(gi, blocks)
            by_id = {b.id: b for b in blocks}
            b1 = _first_block([b for b in blocks if len(b.cut_vertices) <= 1])
            b2 = _first_block([by_id[i] for i in tree.block_neighbors(b1.id)])
            shared = b1.nodes & b2.nodes
            others = [by_id[i] for i in tree.block_neighbors(b2.id) if i != b1.id]
            far = [b for b in others if not (b.nodes & shared)]
            b3 = _first_block(far or others) if others else None
            if b2.is_bond:
                (common,) = shared
                run.place("polygonless/bond-common-node", [common], common,
                          {"blocks": _names([b1, b2])})
                parts = [b1, b2]
            else:
                # prefer nodes that join b2 to nothing outside it
                free = b2.nodes - s
                cands = (free - carried - tree.cut_vertices) or (free - carried) or free
                if not cands:
                    raise NoEligibleNode(f"every node of block {sort_nodes(b2.nodes)} is excluded")
                parts = [b1, b2] + ([b3] if b3 is not None else [])
                run.place("polygonless/non-bond-block", cands, _pick(run.rng, cands),
                          {"blocks": _names(parts)})
            rest = subtract_subgraphs(gi, parts)
            joins |= rest.nodes & frozenset().union(*(p.nodes for p in parts))
            pending.append(rest)
        # components are independent; recurse on all remainders together
        nodes: frozenset = frozenset()
        edges: frozenset = frozenset()
        for h in pending:
            nodes |= h.nodes
            edges |= h.edges
        g = Graph(nodes, edges)
        carried = (carried | joins) & g.nodes


def monitors_in_polygonless(g: Graph, s: Iterable[Node] = (), rng=0, check: bool = True) -> PlacementResult:
    """Place monitors on a graph whose blocks are all PLCs.

    Within each connected component a leaf block (at most one cut vertex)
    starts the chain; if its neighbour is a bond, their shared node becomes
    a monitor, otherwise a node of the neighbour outside *s* does.  The
    handled blocks are subtracted and the rest is processed recursively.
    A component made of one block gets one monitor anywhere.
    """
    rng, seed = _as_rng(rng)
    if check:
        _check_polygonless(g)
    run = _Run(rng)
    _polygonless(run, g, frozenset(s))
    return PlacementResult(MonitorSet(frozenset(run.monitors)), seed, run.trace, POLYGONLESS)


# -- 2-connected networks ----------------------------------------------------


def _is_two_connected(g: Graph) -> bool:
    if len(g.nodes) < 3 or not g.is_connected():
        return False
    return len(biconnected_components(g)) == 1


def _non_agent_or_fallback(run: _Run, plc: Plc, rule: str) -> tuple[Node, str]:
    if plc.non_agents:
        return _pick(run.rng, plc.non_agents), ""
    return _pick(run.rng, plc.nodes), "no non-agent node; picked an agent"


def _biconnected(run: _Run, g: Graph, d: Decomposition):
    plcs = d.plcs
    by_id = {p.id: p for p in plcs}
    nbrs = plc_tree_neighbors(d.blocks[0], plcs)
    agents = frozenset().union(*(p.agents for p in plcs))

    if len(plcs) == 1:
        first = _pick(run.rng, g.nodes)
        second = _pick(run.rng, g.nodes - {first})
        run.place("biconnected/plc", g.nodes, first)
        run.place("biconnected/plc", g.nodes - {first}, second)
        return

    rich = [p for p in plcs if len(nbrs[p.id]) >= 4]
    hubs = [j for j in plc_junctions(d.blocks[0], plcs) if len(j.neighbors) >= 4]
    if rich or hubs:
        around = {q for p in rich for q in nbrs[p.id]} | {q for j in hubs for q in j.neighbors}
        around -= {p.id for p in rich}
        parts = rich + hubs + [by_id[q] for q in sorted(around)]
        run.record("biconnected/rich-plc", {"A": _names(rich + hubs),
                                             "C": _names(by_id[q] for q in sorted(around))})
        _polygonless(run, subtract_subgraphs(g, parts), agents)
        return

    if all(not p.is_bond for p in plcs):
        holders = [p for p in plcs if p.non_agents] or plcs
        lam = holders[run.rng.randrange(len(holders))]
        v, note = _non_agent_or_fallback(run, lam, "biconnected/no-bond")
        around = [by_id[q] for q in nbrs[lam.id]]
        run.place("biconnected/no-bond", lam.non_agents or lam.nodes, v,
                  {"plc": _names([lam]), "E": _names(around)}, note)
        _polygonless(run, subtract_subgraphs(g, [lam] + around), agents)
        return

    bonds = [p for p in plcs if p.is_bond]
    bond = bonds[run.rng.randrange(len(bonds))]
    v1, v2 = sort_nodes(bond.nodes)
    picks = []
    for v in (v1, v2):
        side = [by_id[q] for q in nbrs[bond.id] if v in by_id[q].nodes]
        lam = side[0]
        if lam.is_bond:
            picks.append((v, lam, ""))
        else:
            w, note = _non_agent_or_fallback(run, lam, "biconnected/bond")
            picks.append((w, lam, note))

    trials = []
    for i, (w, lam, note) in enumerate(picks, 1):
        sub = _Run(run.rng)
        holding = [p for p in plcs if w in p.nodes]
        gamma = list(holding)
        if w not in agents:
            extra = {q for p in holding for q in nbrs[p.id]} - {p.id for p in holding}
            gamma += [by_id[q] for q in sorted(extra)]
        sub.place(f"biconnected/bond-trial-{i}", [w], w,
                  {"bond": _names([bond]), "gamma": _names(gamma)}, note)
        _polygonless(sub, subtract_subgraphs(g, gamma), agents)
        trials.append(sub)
    best = 0 if len(trials[0].monitors) <= len(trials[1].monitors) else 1
    run.record("biconnected/bond-compare", candidates=[picks[0][0], picks[1][0]],
               note=f"trial counts {len(trials[0].monitors)}, {len(trials[1].monitors)}; kept trial {best + 1}")
    run.trace.extend(trials[best].trace)
    run.monitors |= trials[best].monitors


def monitors_in_biconnected(g: Graph, rng=0) -> PlacementResult:
    """Place monitors on a 2-connected graph.

    A graph that is one PLC takes two arbitrary monitors.  Otherwise PLCs
    with four or more neighbouring PLCs (and those neighbours) are known to
    be identifiable and removed before the polygon-less routine runs.  With
    a single polygon, one first monitor is placed, at a non-agent node when
    all PLCs are non-bonds, or by trying both sides of a random bond PLC and
    keeping the cheaper outcome.
    """
    rng, seed = _as_rng(rng)
    if not _is_two_connected(g):
        raise NotTwoConnected("graph must be connected, cut-vertex free and have 3+ nodes")
    run = _Run(rng)
    _biconnected(run, g, decompose(g))
    return PlacementResult(MonitorSet(frozenset(run.monitors)), seed, run.trace, BICONNECTED)


# -- general connected networks ----------------------------------------------


def _block_phase(run: _Run, d: Decomposition, block: Block, cuts: frozenset):
    plcs = d.plcs_of(block.id)
    if len(plcs) == 1 and len(block.cut_vertices) == 1:
        cands = block.nodes - cuts
        run.place("omp/leaf-plc-block", cands, _pick(run.rng, cands), {"block": _names([block])})
        return
    by_id = {p.id: p for p in plcs}
    nbrs = plc_tree_neighbors(block, plcs)
    a_set = [p for p in plcs if len(p.agents) >= 3 or len(nbrs[p.id]) >= 4]
    hubs = [j for j in plc_junctions(block, plcs) if len(j.neighbors) >= 4]
    c_ids = {q for p in a_set for q in nbrs[p.id]} | {q for j in hubs for q in j.neighbors}
    c_set = [by_id[q] for q in sorted(c_ids)]
    e_set = [p for p in plcs if len(p.agents) == 2 and p.agents & cuts]
    run.record("omp/block-identified", {"block": _names([block]), "A": _names(a_set + hubs),
                                        "C": _names(c_set), "E": _names(e_set)})
    rest = subtract_subgraphs(block.as_graph(), a_set + hubs + c_set + e_set)
    agents = frozenset().union(*(p.agents for p in plcs))
    _polygonless(run, rest, agents)


def _has_rich_cut_vertex(g: Graph, block: Block, monitors) -> bool:
    """Some cut vertex of *block* reaches two distinct monitors by paths
    that share only that vertex and stay outside the block."""
    for v in sort_nodes(block.cut_vertices):
        outside = g.without_nodes(block.nodes - {v})
        if fan_size(outside, v, monitors) >= 2:
            return True
    return False


def omp_csp(g: Graph, rng=0) -> PlacementResult:
    """Minimum monitor set making every single node failure identifiable.

    Graphs with at most two nodes take every node as a monitor.
    """
    rng, seed = _as_rng(rng)
    if not g.nodes or not g.is_connected():
        raise Disconnected("omp_csp needs a connected, non-empty graph")
    run = _Run(rng)
    if len(g.nodes) <= 2:
        for v in g.sorted_nodes():
            run.place("omp/tiny-graph", g.nodes, v)
        return PlacementResult(MonitorSet(frozenset(run.monitors)), seed, run.trace, OMP_CSP)
    d = decompose(g)
    cuts = d.cut_vertices
    if not cuts:
        _biconnected(run, g, d)
        return PlacementResult(MonitorSet(frozenset(run.monitors)), seed, run.trace, OMP_CSP)

    for block in d.blocks:
        _block_phase(run, d, block, cuts)

    tree = block_cut_tree(g, d.blocks)
    f_set = [b for b in d.blocks if b.nodes & run.monitors]
    i_set = [b for b in d.blocks
             if len(b.cut_vertices) == 2 and _has_rich_cut_vertex(g, b, run.monitors)]
    j_set = [b for b in d.blocks if len(b.cut_vertices) >= 3]
    k_ids = {n for b in j_set for n in tree.block_neighbors(b.id)}
    k_set = [b for b in d.blocks if b.id in k_ids]
    run.record("omp/global-identified", {"F": _names(f_set), "I": _names(i_set),
                                         "J": _names(j_set), "K": _names(k_set)})
    parts = {b.id: b for b in f_set + i_set + j_set + k_set}
    rest = subtract_subgraphs(g, parts.values())
    _polygonless(run, rest, cuts)
    return PlacementResult(MonitorSet(frozenset(run.monitors)), seed, run.trace, OMP_CSP)
