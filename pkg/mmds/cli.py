"""
Command line entry point.

    python -m mmds solve --algo brute -k 1 samples/p3.gr
    python -m mmds minimize samples/c4.gr
    python -m mmds verify -k 1 --solution s.txt samples/c4.gr
    python -m mmds interval-greedy samples/intervals.txt
    python -m mmds generate mcc samples/k2_n2.cgr --clique 1,4 --emit-td h.td --emit-witness h.sol
    python -m mmds check-td samples/p3.gr p3.td --path-only
    python -m mmds bench
    python -m mmds serve

Decided runs exit 0 whatever the verdict; bad input, missing files and
budget refusals exit 2 with an "error:" line on stderr.
"""
import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .config import settings
from .exceptions import MmdsError
from .formats import (
    parse_graph,
    parse_intervals,
    parse_solution,
    read_text,
    serialize_graph,
    serialize_solution,
    write_text,
)
from .models import Instance
from .services.checker import is_feasible, max_membership
from .services.decomposition import parse_td, serialize_td
from .services.interval import greedy_dominating, interval_graph
from .services.runner import (
    ALGORITHMS,
    GENERATORS,
    check_decomposition,
    decomposition_for,
    generate,
    minimize,
    parse_assignment,
    parse_clique,
    solve_instance,
)

logger = logging.getLogger(__name__)


def _cmd_solve(args) -> int:
    g = parse_graph(read_text(args.graph))
    td = parse_td(read_text(args.td)) if args.td else None
    result = solve_instance(Instance(g, args.k), args.algo, td=td, jobs=args.jobs, source=args.graph)
    if result is None:
        print("INFEASIBLE")
    else:
        print("FEASIBLE")
        sys.stdout.write(serialize_solution(result))
    return 0


def _cmd_minimize(args) -> int:
    g = parse_graph(read_text(args.graph))
    k_star, witness = minimize(g, jobs=args.jobs)
    print(f"k* {k_star}")
    sys.stdout.write(serialize_solution(witness))
    return 0


def _cmd_verify(args) -> int:
    g = parse_graph(read_text(args.graph))
    s = parse_solution(read_text(args.solution), g.n)
    print(is_feasible(Instance(g, args.k), s))
    return 0


def _cmd_interval_greedy(args) -> int:
    iv = parse_intervals(read_text(args.intervals))
    chosen = greedy_dominating(iv)
    print(f"max-membership {max_membership(interval_graph(iv), chosen)}")
    for ident in iv.ids_of(chosen):
        print(ident)
    return 0


def _cmd_generate(args) -> int:
    clique = parse_clique(args.clique) if args.clique else None
    assignment = parse_assignment(args.assignment) if args.assignment else None
    out = generate(args.kind, read_text(args.input), k=args.k, clique=clique, assignment=assignment)
    g = out.instance.graph
    instance_text = f"c {out.source_ref}\nc k {out.instance.k}\n" + serialize_graph(g)
    if args.out:
        write_text(args.out, instance_text)
    else:
        sys.stdout.write(instance_text)
    if args.emit_td:
        write_text(args.emit_td, serialize_td(decomposition_for(out), g.n))
    if args.emit_witness:
        if out.witness is None:
            raise MmdsError("--emit-witness needs --clique or --assignment")
        write_text(args.emit_witness, serialize_solution(out.witness))
    if args.labels:
        write_text(args.labels, out.labels_text())
    print(f"generated {g.n} vertices, {g.m} edges, k {out.instance.k}", file=sys.stderr)
    return 0


def _cmd_check_td(args) -> int:
    g = parse_graph(read_text(args.graph))
    td = parse_td(read_text(args.td))
    print(check_decomposition(g, td, path_only=args.path_only, source=args.td))
    return 0


def _cmd_bench(args) -> int:
    from .bench import BenchPlan, run_bench

    plan = BenchPlan.quick() if args.quick else BenchPlan()
    table = run_bench(seed=args.seed, jobs=args.jobs, plan=plan)
    print(table.to_string(index=False))
    return 0 if bool(table["passed"].all()) else 1


def _cmd_serve(args) -> int:
    from .main import serve

    serve(host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmds",
        description="Minimum membership dominating set solvers, checkers and instance generators.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="Decide feasibility for a membership bound k.")
    p.add_argument("graph", help="Graph file (.gr).")
    p.add_argument("--algo", choices=ALGORITHMS, default="brute")
    p.add_argument("-k", type=int, required=True, help="Membership bound.")
    p.add_argument("--td", help="Tree decomposition (.td) for --algo twdp.")
    p.add_argument("--jobs", type=int, default=settings.DEFAULT_JOBS)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("minimize", help="Least k with a feasible solution (exhaustive).")
    p.add_argument("graph")
    p.add_argument("--jobs", type=int, default=settings.DEFAULT_JOBS)
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("verify", help="Check a solution file against k.")
    p.add_argument("graph")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--solution", required=True, help="One vertex id per line.")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("interval-greedy", help="Greedy dominating set of an interval family.")
    p.add_argument("intervals", help="File of 'i <id> <left> <right>' lines.")
    p.set_defaults(func=_cmd_interval_greedy)

    p = sub.add_parser("generate", help="Build an MMDS instance from a source instance.")
    p.add_argument("kind", choices=GENERATORS)
    p.add_argument("input", help="DIMACS CNF for pp1in3sat/sat3, colored graph for mcc/mis-split.")
    p.add_argument("-k", type=int, help="Membership bound for sat3 (default 2) and mis-split.")
    p.add_argument("--clique", help="Comma separated vertex per color class (mcc, mis-split).")
    p.add_argument("--assignment", help="0/1 string, x_1 first (pp1in3sat, sat3).")
    p.add_argument("-o", "--out", help="Write the instance here instead of stdout.")
    p.add_argument("--emit-td", help="Write a decomposition of the output.")
    p.add_argument("--emit-witness", help="Write the witness built from --clique/--assignment.")
    p.add_argument("--labels", help="Write 'vertex<TAB>role' lines.")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("check-td", help="Validate a tree or path decomposition.")
    p.add_argument("graph")
    p.add_argument("td")
    p.add_argument("--path-only", action="store_true")
    p.set_defaults(func=_cmd_check_td)

    p = sub.add_parser("bench", help="Run the acceptance sweeps.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="Small instance counts and sizes.")
    p.add_argument("--jobs", type=int, default=settings.DEFAULT_JOBS)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("serve", help="Start the HTTP API.")
    p.add_argument("--host", default=settings.API_HOST)
    p.add_argument("--port", type=int, default=settings.API_PORT)
    p.set_defaults(func=_cmd_serve)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (MmdsError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
