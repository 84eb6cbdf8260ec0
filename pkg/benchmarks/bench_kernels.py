"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--graphs N]
"""
import argparse
import sys
import time

from csp_placement import _kernels_py
from csp_placement._accel import compiled_kernels
from csp_placement.graph import random_connected_graph
from csp_placement.oracle import _indexed


def workload(count):
    out = []
    for seed in range(count):
        n = 7 + seed % 3
        g = random_connected_graph(n, min(2 * n, n * (n - 1) // 2), seed)
        _, _, adj = _indexed(g)
        out.append((n, adj))
    return out


def cases(mod, graphs):
    def paths():
        for n, adj in graphs:
            mod.simple_paths(n, adj, list(range(n)), False, 10**7)

    def report():
        for n, adj in graphs:
            mod.monitor_set_report(n, adj, 0b101, False)

    def minimum():
        for n, adj in graphs:
            mod.min_monitor_set(n, adj, False)

    return {"simple_paths": paths, "monitor_set_report": report, "min_monitor_set": minimum}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--graphs", type=int, default=30)
    args = ap.parse_args(argv)
    if compiled_kernels is None:
        print("compiled kernels are not built; run pip install -e . --no-build-isolation")
        return 1
    graphs = workload(args.graphs)
    py, cy = cases(_kernels_py, graphs), cases(compiled_kernels, graphs)
    print(f"{'kernel':<20}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name in py:
        tp, tc = best_of(py[name], args.repeat), best_of(cy[name], args.repeat)
        print(f"{name:<20}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
