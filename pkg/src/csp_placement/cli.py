"""Command-line front end: place, verify, decompose, oracle-min, gen.

Every output document echoes the seed, the oracle node cap and the path
mode, so a result can be reproduced from the document alone.  Output is a
pure function of the command line and the input bytes.

Exit codes: 0 success (or identifiable), 1 verified but not identifiable,
2 input error, 3 precondition violated, 4 oracle cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .decomposition import decompose
from .errors import CapExceeded, CspPlacementError, GraphError
from .graph import Graph, parse_edge_list, random_connected_graph, sort_nodes, to_dot, to_edge_list
from .oracle import DEFAULT_NODE_CAP, is_one_identifiable, min_monitors_bruteforce
from .placement import omp_csp

EXIT_OK = 0
EXIT_NOT_IDENTIFIABLE = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_CAP = 4


class InputError(Exception):
    pass


def _read_graph(path: str | None) -> Graph:
    if path is None:
        raise InputError("--input is required")
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_edge_list(text)


def _echo(args) -> dict:
    return {"seed": args.seed, "cap": args.cap, "strict_paths": args.strict_paths}


def _header(args) -> str:
    return f"seed={args.seed} cap={args.cap} strict_paths={str(args.strict_paths).lower()}"


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _dot(g: Graph, monitors, args) -> str:
    return f"// {_header(args)}\n" + to_dot(g, monitors)


def _check_cap(g: Graph, cap: int):
    if len(g.nodes) > cap:
        raise CapExceeded(f"{len(g.nodes)} nodes exceeds the oracle cap of {cap}")


def cmd_place(args) -> tuple[int, str]:
    g = _read_graph(args.input)
    result = omp_csp(g, args.seed)
    mons = list(result.monitors)
    if args.format == "dot":
        return EXIT_OK, _dot(g, mons, args)
    if args.format == "text":
        return EXIT_OK, (f"# {_header(args)}\nalgorithm {result.algorithm}\n"
                         f"count {result.count}\nmonitors {' '.join(mons)}\n")
    doc = _echo(args)
    doc.update(result.to_json())
    return EXIT_OK, _dump(doc)


def cmd_verify(args) -> tuple[int, str]:
    g = _read_graph(args.input)
    if args.monitors is None:
        raise InputError("--monitors is required")
    mons = [t for t in (s.strip() for s in args.monitors.split(",")) if t]
    _check_cap(g, args.cap)
    report = is_one_identifiable(g, mons, strict=args.strict_paths)
    code = EXIT_OK if report.verdict else EXIT_NOT_IDENTIFIABLE
    if args.format == "dot":
        return code, _dot(g, mons, args)
    if args.format == "text":
        lines = [f"# {_header(args)}", f"monitors {' '.join(sort_nodes(set(mons)))}",
                 f"identifiable {str(report.verdict).lower()}"]
        lines += [f"uncovered {v}" for v in report.uncovered]
        lines += [f"confusable {u} {w}" for u, w in report.confusable_pairs]
        return code, "\n".join(lines) + "\n"
    doc = _echo(args)
    doc["monitors"] = sort_nodes(set(mons))
    doc.update(report.to_json())
    return code, _dump(doc)


def cmd_decompose(args) -> tuple[int, str]:
    g = _read_graph(args.input)
    d = decompose(g)
    if args.format == "dot":
        return EXIT_OK, _dot(g, (), args)
    if args.format == "text":
        lines = [f"# {_header(args)}", f"cut_vertices {' '.join(sort_nodes(d.cut_vertices))}"]
        for b in d.blocks:
            lines.append(f"block {b.id} nodes {' '.join(sort_nodes(b.nodes))}")
        for p in d.plcs:
            kind = "bond" if p.is_bond else "plc"
            lines.append(f"{kind} {p.id} block {p.parent_block} nodes {' '.join(sort_nodes(p.nodes))}"
                         f" agents {' '.join(sort_nodes(p.agents))}".rstrip())
        return EXIT_OK, "\n".join(lines) + "\n"
    doc = _echo(args)
    doc.update(d.to_json())
    return EXIT_OK, _dump(doc)


def cmd_oracle_min(args) -> tuple[int, str]:
    g = _read_graph(args.input)
    k, witness = min_monitors_bruteforce(g, node_cap=args.cap, strict=args.strict_paths)
    mons = list(witness)
    if args.format == "dot":
        return EXIT_OK, _dot(g, mons, args)
    if args.format == "text":
        return EXIT_OK, f"# {_header(args)}\nk {k}\nwitness {' '.join(mons)}\n"
    doc = _echo(args)
    doc.update({"k": k, "witness": mons})
    return EXIT_OK, _dump(doc)


def cmd_gen(args) -> tuple[int, str]:
    if args.nodes is None or args.edges is None:
        raise InputError("--nodes and --edges are required")
    g = random_connected_graph(args.nodes, args.edges, args.seed)
    if args.format == "json":
        doc = _echo(args)
        doc.update({"nodes": g.sorted_nodes(), "edges": [list(e) for e in g.sorted_edges()]})
        return EXIT_OK, _dump(doc)
    if args.format == "dot":
        return EXIT_OK, _dot(g, (), args)
    head = f"# {_header(args)} nodes={args.nodes} edges={args.edges}\n"
    return EXIT_OK, head + to_edge_list(g)


COMMANDS = {
    "place": cmd_place,
    "verify": cmd_verify,
    "decompose": cmd_decompose,
    "oracle-min": cmd_oracle_min,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="edge-list file ('-' for stdin)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=DEFAULT_NODE_CAP, help="oracle node cap")
    common.add_argument("--format", choices=("json", "dot", "text"),
                        help="output format (default: json; gen defaults to an edge list)")
    common.add_argument("--strict-paths", action="store_true",
                        help="measurement paths may not pass through a third monitor")
    parser = argparse.ArgumentParser(prog="csp-placement",
                                     description="Monitor placement for single-failure localization.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("place", parents=[common], help="place a minimum monitor set")
    p = sub.add_parser("verify", parents=[common], help="check a monitor set with the exact oracle")
    p.add_argument("--monitors", help="comma-separated node tokens")
    sub.add_parser("decompose", parents=[common], help="blocks, cut vertices and PLCs")
    sub.add_parser("oracle-min", parents=[common], help="brute-force minimum monitor set")
    p = sub.add_parser("gen", parents=[common], help="seeded random connected graph")
    p.add_argument("--nodes", type=int)
    p.add_argument("--edges", type=int)
    return parser


def run(argv=None) -> tuple[int, str, str]:
    """Run one command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_INPUT), "", ""
    if args.format is None and args.command != "gen":
        args.format = "json"
    try:
        code, out = COMMANDS[args.command](args)
    except (InputError, GraphError) as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    except CapExceeded as exc:
        return EXIT_CAP, "", f"error: {exc}\n"
    except CspPlacementError as exc:
        return EXIT_PRECONDITION, "", f"error: {type(exc).__name__}: {exc}\n"
    return code, out, ""


def main(argv=None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
