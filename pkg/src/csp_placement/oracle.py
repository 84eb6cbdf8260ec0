"""Exact identifiability semantics under controllable simple-path probing.

A measurement path is any simple path whose two ends are distinct monitors.
A monitor set is 1-identifiable when every non-monitor lies on at least one
measurement path and no two non-monitors lie on exactly the same paths.
Monitors are assumed never to fail, so only non-monitors are checked.

Everything here is exponential by design and guarded by explicit caps; it
exists to verify placements on small graphs, not to scale.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from ._accel import kernels
from .errors import CapExceeded, NotNonMonitor, SameNode, UnknownNode
from .graph import Graph, MonitorSet, Node, node_key, sort_nodes

DEFAULT_NODE_CAP = 12
DEFAULT_PATH_CAP = 100_000


@dataclass(frozen=True)
class MeasurementPath:
    nodes: tuple

    @property
    def endpoints(self) -> tuple:
        return (self.nodes[0], self.nodes[-1])

    def __contains__(self, v):
        return v in self.nodes

    def __str__(self):
        return "-".join(self.nodes)


@dataclass
class IdentifiabilityReport:
    verdict: bool
    uncovered: list
    confusable_pairs: list
    signature: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "identifiable": self.verdict,
            "uncovered": list(self.uncovered),
            "confusable_pairs": [list(p) for p in self.confusable_pairs],
        }


def _monitor_nodes(g: Graph, monitors) -> frozenset:
    if isinstance(monitors, MonitorSet):
        monitors = monitors.monitors
    mons = frozenset(monitors)
    for v in sort_nodes(mons):
        if v not in g.nodes:
            raise UnknownNode(v)
    return mons


def _indexed(g: Graph):
    order = g.sorted_nodes()
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for u, v in g.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    return order, index, adj


def _path_kernel(n):
    # uint64 masks in the compiled kernel
    if n <= 64:
        return kernels
    from . import _kernels_py

    return _kernels_py


def enumerate_monitor_paths(
    g: Graph, monitors, cap: int = DEFAULT_PATH_CAP, strict: bool = False
) -> list[MeasurementPath]:
    """Every simple path between each unordered pair of distinct monitors.

    Paths start at the smaller endpoint.  Monitor pairs come in sorted order
    and, within a pair, paths in depth-first order over sorted neighbours.
    With ``strict`` a path may not pass through a third monitor.
    """
    mons = _monitor_nodes(g, monitors)
    order, index, adj = _indexed(g)
    raw = _path_kernel(len(order)).simple_paths(
        len(order), adj, sorted(index[m] for m in mons), strict, cap
    )
    if raw is None:
        raise CapExceeded(f"more than {cap} measurement paths")
    return [MeasurementPath(tuple(order[i] for i in p)) for p in raw]


def path_signature(
    g: Graph, monitors, cap: int = DEFAULT_PATH_CAP, strict: bool = False
) -> dict[Node, frozenset]:
    """Map each non-monitor to the ids (enumeration positions) of its paths."""
    mons = _monitor_nodes(g, monitors)
    paths = enumerate_monitor_paths(g, mons, cap, strict)
    sig: dict = {v: set() for v in g.nodes - mons}
    for pid, p in enumerate(paths):
        for v in p.nodes:
            if v in sig:
                sig[v].add(pid)
    return {v: frozenset(sig[v]) for v in sort_nodes(sig)}


def distinguishable(
    g: Graph, monitors, u: Node, w: Node, cap: int = DEFAULT_PATH_CAP, strict: bool = False
) -> bool:
    mons = _monitor_nodes(g, monitors)
    if u == w:
        raise SameNode(u)
    for v in (u, w):
        if v not in g.nodes or v in mons:
            raise NotNonMonitor(v)
    sig = path_signature(g, mons, cap, strict)
    return sig[u] != sig[w]


def is_one_identifiable(
    g: Graph, monitors, cap: int = DEFAULT_PATH_CAP, strict: bool = False
) -> IdentifiabilityReport:
    sig = path_signature(g, monitors, cap, strict)
    uncovered = [v for v, s in sig.items() if not s]
    groups: dict = {}
    for v, s in sig.items():
        if s:
            groups.setdefault(s, []).append(v)
    confusable = []
    for members in groups.values():
        confusable.extend(combinations(members, 2))
    confusable.sort(key=lambda p: (node_key(p[0]), node_key(p[1])))
    return IdentifiabilityReport(
        verdict=not uncovered and not confusable,
        uncovered=uncovered,
        confusable_pairs=confusable,
        signature=sig,
    )


def identifiable_fast(g: Graph, monitors, strict: bool = False) -> bool:
    """Verdict of :func:`is_one_identifiable` without listing paths.

    Works on the distinct node sets of measurement paths, built by dynamic
    programming over (visited set, endpoint) states.  Limited to 24 nodes.
    """
    mons = _monitor_nodes(g, monitors)
    order, index, adj = _indexed(g)
    n = len(order)
    if n > 24:
        raise CapExceeded(f"{n} nodes exceeds the 24-node reach table")
    mask = 0
    for m in mons:
        mask |= 1 << index[m]
    covered, rows = kernels.monitor_set_report(n, adj, mask, strict)
    nonmon = ((1 << n) - 1) & ~mask
    if covered & nonmon != nonmon:
        return False
    return all(rows[v] == nonmon & ~(1 << v) for v in range(n) if nonmon >> v & 1)


def min_monitors_bruteforce(
    g: Graph, node_cap: int = DEFAULT_NODE_CAP, strict: bool = False
) -> tuple[int, MonitorSet]:
    """Smallest 1-identifiable monitor set by exhaustive search.

    Subsets are tried by size, then in lexicographic order of the sorted
    node list, so the witness is the first feasible subset in that order.
    """
    n = len(g.nodes)
    if n > node_cap:
        raise CapExceeded(f"{n} nodes exceeds the oracle cap of {node_cap}")
    if n > 24:
        raise CapExceeded(f"{n} nodes exceeds the 24-node reach table")
    order, _, adj = _indexed(g)
    k, mask = kernels.min_monitor_set(n, adj, strict)
    return k, MonitorSet(frozenset(order[i] for i in range(n) if mask >> i & 1))
