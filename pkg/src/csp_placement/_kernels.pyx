# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for simple-path enumeration and identifiability checks.

Same contracts as ``_kernels_py``; node sets are ``uint64`` masks, so every
function here requires ``n <= 64`` (and ``n <= 24`` where a reach table of
``2**n`` entries is built).
"""
from itertools import combinations

from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport uint64_t

ctypedef uint64_t u64


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _ctz(u64 x) nogil:
    return __builtin_ctzll(x)


def simple_paths(int n, adj, monitors, bint strict, long long cap):
    cdef u64 a[64]
    cdef u64 stack[65]
    cdef int path[65]
    cdef int depth, u, i, j, s, t
    cdef u64 visited, cand, low, mon_mask = 0, blocked
    cdef long long count = 0
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 nodes")
    for i in range(n):
        a[i] = <u64>adj[i]
    mons = sorted(monitors)
    for m in mons:
        mon_mask |= (<u64>1) << <int>m
    out = []
    for i in range(len(mons)):
        s = mons[i]
        for j in range(i + 1, len(mons)):
            t = mons[j]
            blocked = (mon_mask & ~(((<u64>1) << s) | ((<u64>1) << t))) if strict else 0
            depth = 0
            path[0] = s
            visited = ((<u64>1) << s) | blocked
            stack[0] = a[s] & ~visited
            while depth >= 0:
                cand = stack[depth]
                if cand == 0:
                    visited &= ~((<u64>1) << path[depth])
                    depth -= 1
                    continue
                low = cand & (~cand + 1)
                stack[depth] = cand ^ low
                u = _ctz(low)
                if u == t:
                    count += 1
                    if count > cap:
                        return None
                    out.append([path[k] for k in range(depth + 1)] + [t])
                    continue
                depth += 1
                path[depth] = u
                visited |= low
                stack[depth] = a[u] & ~visited
    return out


cdef u64* _reach_table(int n, u64* a, int s) except NULL:
    cdef size_t size = (<size_t>1) << n
    cdef u64* reach = <u64*>calloc(size, sizeof(u64))
    cdef size_t mask
    cdef u64 ends, low, nxt, lb
    cdef int v
    if reach == NULL:
        raise MemoryError()
    reach[(<size_t>1) << s] = (<u64>1) << s
    with nogil:
        for mask in range((<size_t>1) << s, size):
            ends = reach[mask]
            while ends:
                low = ends & (~ends + 1)
                ends ^= low
                v = _ctz(low)
                nxt = a[v] & ~(<u64>mask)
                while nxt:
                    lb = nxt & (~nxt + 1)
                    nxt ^= lb
                    reach[mask | <size_t>lb] |= lb
    return reach


def pair_families(int n, adj, sources=None):
    cdef u64 a[64]
    cdef u64* reach
    cdef size_t mask, size
    cdef u64 e
    cdef int s, t, i
    if n > 24:
        raise ValueError("reach table limited to 24 nodes")
    for i in range(n):
        a[i] = <u64>adj[i]
    size = (<size_t>1) << n
    fams = {}
    for s in (range(n) if sources is None else sources):
        reach = _reach_table(n, a, s)
        try:
            per_t = [[] for _ in range(n)]
            for mask in range(size):
                e = reach[mask] >> (s + 1)
                t = s + 1
                while e:
                    if e & 1:
                        per_t[t].append(mask)
                    e >>= 1
                    t += 1
        finally:
            free(reach)
        for t in range(s + 1, n):
            fams[(s, t)] = per_t[t]
    return fams


cdef class _Families:
    """Flattened pair families for repeated subset checks."""
    cdef int n
    cdef u64* masks
    cdef long long* start   # start[s*n+t] .. start[s*n+t+1]
    cdef long long total

    def __cinit__(self, int n, dict fams):
        cdef long long pos = 0
        cdef int s, t, k
        self.n = n
        self.total = sum(len(v) for v in fams.values())
        self.masks = <u64*>malloc(max(self.total, 1) * sizeof(u64))
        self.start = <long long*>malloc((n * n + 1) * sizeof(long long))
        if self.masks == NULL or self.start == NULL:
            raise MemoryError()
        for k in range(n * n):
            s = k // n
            t = k % n
            self.start[k] = pos
            if s < t:
                for m in fams[(s, t)]:
                    self.masks[pos] = <u64>m
                    pos += 1
        self.start[n * n] = pos

    def __dealloc__(self):
        free(self.masks)
        free(self.start)

    cdef bint check(self, u64 mon_mask, bint strict) nogil:
        cdef int n = self.n
        cdef u64 full = ((<u64>1) << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
        cdef u64 nonmon = full & ~mon_mask
        cdef u64 covered = 0, p, inside, outside, low, ends, d
        cdef u64 dist[64]
        cdef int s, t, v, w
        cdef long long k, lo, hi
        for v in range(n):
            dist[v] = 0
        for s in range(n):
            if not (mon_mask >> s) & 1:
                continue
            for t in range(s + 1, n):
                if not (mon_mask >> t) & 1:
                    continue
                ends = ((<u64>1) << s) | ((<u64>1) << t)
                lo = self.start[s * n + t]
                hi = self.start[s * n + t + 1]
                for k in range(lo, hi):
                    p = self.masks[k]
                    if strict and (p & mon_mask) != ends:
                        continue
                    covered |= p
                    inside = p & nonmon
                    outside = nonmon & ~p
                    while inside:
                        low = inside & (~inside + 1)
                        inside ^= low
                        dist[_ctz(low)] |= outside
        if (covered & nonmon) != nonmon:
            return False
        for v in range(n):
            d = dist[v]
            while d:
                low = d & (~d + 1)
                d ^= low
                w = _ctz(low)
                dist[w] |= (<u64>1) << v
        for v in range(n):
            if (nonmon >> v) & 1 and dist[v] != (nonmon & ~((<u64>1) << v)):
                return False
        return True


def check_monitor_set(int n, fams, mon_mask, bint strict):
    cdef _Families f = _Families(n, fams)
    return f.check(<u64>mon_mask, strict)


def _verdict(int n, path_masks, mon_mask):
    cdef u64 full_mask = ((<u64>1) << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
    cdef u64 nonmon = full_mask & ~(<u64>mon_mask)
    cdef u64 covered = 0, p, inside, outside, low, d
    cdef u64 dist[64]
    cdef u64 full[64]
    cdef int v
    for v in range(n):
        dist[v] = 0
    for pm in path_masks:
        p = <u64>pm
        covered |= p
        inside = p & nonmon
        outside = nonmon & ~p
        while inside:
            low = inside & (~inside + 1)
            inside ^= low
            dist[_ctz(low)] |= outside
    for v in range(n):
        full[v] = dist[v]
    for v in range(n):
        d = dist[v]
        while d:
            low = d & (~d + 1)
            d ^= low
            full[_ctz(low)] |= (<u64>1) << v
    return covered, [full[v] for v in range(n)]


def monitor_set_report(int n, adj, mon_mask, bint strict):
    mons = [i for i in range(n) if (mon_mask >> i) & 1]
    fams = pair_families(n, adj, mons)
    masks = []
    for i, s in enumerate(mons):
        for t in mons[i + 1:]:
            ends = (1 << s) | (1 << t)
            masks.extend(p for p in fams[(s, t)] if not strict or p & mon_mask == ends)
    return _verdict(n, masks, mon_mask)


def min_monitor_set(int n, adj, bint strict):
    cdef _Families f = _Families(n, pair_families(n, adj))
    cdef u64 mask
    for k in range(0, n + 1):
        for combo in combinations(range(n), k):
            mask = 0
            for i in combo:
                mask |= (<u64>1) << <int>i
            if f.check(mask, strict):
                return k, mask
    raise AssertionError("the full node set is always identifiable")
