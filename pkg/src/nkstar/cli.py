"""Command-line entry point.

Exit status: 0 on success, 2 when a verification fails, 1 on a usage error.
Data goes to standard output (or ``--out``); logs go to standard error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from typing import IO, Iterator, Sequence

from nkstar.oracle.bounds import bounds_table, theorem_bound, write_bounds_csv
from nkstar.oracle.search import MemoryBudgetError, directed_diameter, undirected_diameter
from nkstar.oracle.verify import verify_all_pairs, verify_sampled, write_verify_csv
from nkstar.orientation import out_neighbors
from nkstar.permutation import format_perm, parse_perm
from nkstar.router import RoutingError, route
from nkstar.star_graph import GraphParams, all_labels, check_label, edge_list, undirected_diameter_formula

log = logging.getLogger("nkstar")

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(message)


@contextlib.contextmanager
def _output(path: str | None) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _label(text: str) -> tuple[int, ...]:
    return parse_perm(text.replace(",", "-"))


def _params(args, orientable: bool) -> GraphParams:
    params = GraphParams(args.n, args.k)
    if orientable:
        params.require_orientable()
    return params


def cmd_build(args) -> int:
    params = _params(args, orientable=False)
    with _output(args.out) as fh:
        for u, v, kind in edge_list(params):
            fh.write(f"{format_perm(u)} {format_perm(v)} {kind}\n")
    return EXIT_OK


def cmd_orient(args) -> int:
    params = _params(args, orientable=True)
    with _output(args.out) as fh:
        for u in all_labels(params):
            # Tuple order on labels is rank order.
            for a in sorted(out_neighbors(u, params), key=lambda a: a.dst):
                fh.write(f"{format_perm(a.src)} {format_perm(a.dst)} {a.kind}\n")
    return EXIT_OK


def cmd_route(args) -> int:
    params = _params(args, orientable=True)
    s = check_label(_label(args.src), params)
    t = check_label(_label(args.dst), params)
    try:
        trace = route(s, t, params)
    except RoutingError as exc:
        log.error("%s", exc)
        return EXIT_FAILED
    for m in range(trace.m_L + 1):
        print(format_perm(trace.node(m)))
    log.info("routed in %d moves (bound %d)", trace.m_L, theorem_bound(params.n, params.k))
    if args.trace:
        with _output(args.trace) as fh:
            json.dump(trace.to_json(), fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    params = _params(args, orientable=True)
    if args.all_pairs:
        row = verify_all_pairs(params, args.max_moves, args.workers)
    else:
        if args.samples < 1:
            raise UsageError("--samples must be positive")
        row = verify_sampled(params, args.samples, args.seed, args.max_moves, args.workers)
    with _output(args.out) as fh:
        write_verify_csv([row], fh)
    log.info("checked %d pairs: max routed %d, bound %d", row.pairs_checked, row.max_routed, row.bound)
    return EXIT_OK if row.ok else EXIT_FAILED


def cmd_diameter(args) -> int:
    params = _params(args, orientable=args.directed)
    if args.directed:
        d, (u, v) = directed_diameter(params)
        limit = theorem_bound(params.n, params.k)
        ok = undirected_diameter_formula(params) <= d <= limit
    else:
        d, (u, v) = undirected_diameter(params)
        limit = undirected_diameter_formula(params)
        ok = d == limit
    shown = "inf" if d == float("inf") else str(int(d))
    print(f"{shown} {format_perm(u)} {format_perm(v)}")
    if not ok:
        log.error("diameter %s inconsistent with expected %d", shown, limit)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_bounds(args) -> int:
    if args.n_max < 5:
        raise UsageError("--n-max must be at least 5")
    rows = bounds_table(args.n_max)
    with _output(args.out) as fh:
        write_bounds_csv(rows, fh)
    bad = [(r.n, r.k) for r in rows if r.thm_bound >= r.cheng_lipman]
    if bad:
        log.error("bound not below the prior bound at %s", bad[:10])
        return EXIT_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nkstar", description="Orientation and routing on (n,k)-star graphs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        return p

    p = graph_cmd("build", "undirected edge list")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = graph_cmd("orient", "oriented arc list")
    p.add_argument("--out")
    p.set_defaults(func=cmd_orient)

    p = graph_cmd("route", "route one pair and print the path")
    p.add_argument("--src", required=True, help="source label, e.g. 7-2-3-4-5")
    p.add_argument("--dst", required=True, help="target label")
    p.add_argument("--trace", help="write the trace as JSON to this file")
    p.set_defaults(func=cmd_route)

    p = graph_cmd("verify", "check routed lengths against the bound and BFS")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--all-pairs", action="store_true")
    mode.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0, help="PCG64 seed for --samples")
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-moves", type=int, help="router hop cap (default: the proven bound)")
    p.set_defaults(func=cmd_verify)

    p = graph_cmd("diameter", "BFS diameter")
    p.add_argument("--directed", action="store_true")
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("bounds", help="bound comparison table as CSV")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"nkstar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (UsageError, ValueError, MemoryBudgetError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
