"""Pure-Python kernels.  Mirrors ``_kernels.pyx`` function for function.

Nodes are integer indices ``0..n-1``; node sets and adjacency rows are
bitmasks (Python ints here, ``uint64`` in the compiled version).
"""
from itertools import combinations


def simple_paths(n, adj, monitors, strict, cap):
    """All simple paths between each pair ``s < t`` of *monitors*.

    Returns a list of index lists, pairs in ascending order and paths in
    DFS order (neighbours visited by ascending index), or ``None`` once the
    count would exceed *cap*.
    """
    mon_mask = 0
    for m in monitors:
        mon_mask |= 1 << m
    mons = sorted(monitors)
    out = []
    for i, s in enumerate(mons):
        for t in mons[i + 1:]:
            blocked = (mon_mask & ~((1 << s) | (1 << t))) if strict else 0
            path = [s]
            visited = (1 << s) | blocked
            # stack of neighbour masks still to try at each depth
            stack = [adj[s] & ~visited]
            while stack:
                cand = stack[-1]
                if not cand:
                    stack.pop()
                    v = path.pop()
                    visited &= ~(1 << v)
                    continue
                low = cand & -cand
                stack[-1] = cand ^ low
                u = low.bit_length() - 1
                if u == t:
                    out.append(path + [t])
                    if len(out) > cap:
                        return None
                    continue
                path.append(u)
                visited |= low
                stack.append(adj[u] & ~visited)
    return out


def _reach_table(n, adj, s):
    """reach[mask] = bitmask of nodes v such that some simple path from s
    visits exactly the nodes of mask and ends at v."""
    size = 1 << n
    reach = [0] * size
    reach[1 << s] = 1 << s
    for mask in range(1 << s, size):
        ends = reach[mask]
        if not ends:
            continue
        while ends:
            low = ends & -ends
            ends ^= low
            v = low.bit_length() - 1
            nxt = adj[v] & ~mask
            while nxt:
                lb = nxt & -nxt
                nxt ^= lb
                reach[mask | lb] |= lb
    return reach


def pair_families(n, adj, sources=None):
    """Node sets of simple s-t paths for every pair ``s < t``.

    Returns a dict ``(s, t) -> sorted list of masks``; with *sources* only
    pairs whose smaller end is listed are computed.
    """
    fams = {}
    for s in (range(n) if sources is None else sources):
        reach = _reach_table(n, adj, s)
        per_t = {t: [] for t in range(s + 1, n)}
        for mask, ends in enumerate(reach):
            if not ends:
                continue
            e = ends >> (s + 1)
            t = s + 1
            while e:
                if e & 1:
                    per_t[t].append(mask)
                e >>= 1
                t += 1
        for t, masks in per_t.items():
            fams[(s, t)] = masks
    return fams


def _verdict(n, path_masks, mon_mask):
    nonmon = ((1 << n) - 1) & ~mon_mask
    covered = 0
    dist = [0] * n
    for p in path_masks:
        covered |= p
        inside = p & nonmon
        outside = nonmon & ~p
        while inside:
            low = inside & -inside
            inside ^= low
            dist[low.bit_length() - 1] |= outside
    # symmetric closure
    full = list(dist)
    for v in range(n):
        d = dist[v]
        while d:
            low = d & -d
            d ^= low
            full[low.bit_length() - 1] |= 1 << v
    return covered, full


def check_monitor_set(n, fams, mon_mask, strict):
    """True iff *mon_mask* is 1-identifiable given precomputed *fams*."""
    mons = [i for i in range(n) if mon_mask >> i & 1]
    masks = []
    for i, s in enumerate(mons):
        for t in mons[i + 1:]:
            if strict:
                ends = (1 << s) | (1 << t)
                masks.extend(p for p in fams[(s, t)] if p & mon_mask == ends)
            else:
                masks.extend(fams[(s, t)])
    nonmon = ((1 << n) - 1) & ~mon_mask
    covered, full = _verdict(n, masks, mon_mask)
    if covered & nonmon != nonmon:
        return False
    for v in range(n):
        if nonmon >> v & 1 and full[v] != nonmon & ~(1 << v):
            return False
    return True


def monitor_set_report(n, adj, mon_mask, strict):
    """(covered_mask, distinguished rows) for one monitor set."""
    mons = [i for i in range(n) if mon_mask >> i & 1]
    fams = pair_families(n, adj, mons)
    masks = []
    for i, s in enumerate(mons):
        for t in mons[i + 1:]:
            ends = (1 << s) | (1 << t)
            masks.extend(p for p in fams[(s, t)] if not strict or p & mon_mask == ends)
    return _verdict(n, masks, mon_mask)


def min_monitor_set(n, adj, strict):
    """Smallest 1-identifiable monitor set as ``(k, witness_mask)``.

    Subsets are scanned by size, then lexicographically by index tuple.
    """
    fams = pair_families(n, adj)
    for k in range(0, n + 1):
        for combo in combinations(range(n), k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            if check_monitor_set(n, fams, mask, strict):
                return k, mask
    raise AssertionError("the full node set is always identifiable")
