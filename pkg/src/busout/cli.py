"""Command-line front door.

Verbs: ``check``, ``solve``, ``min-spots``, ``gen``, ``count``, ``serve``.
Documents go to stdout as JSON; diagnostics go to stderr.  Exit codes:

* 0 - solvable / success
* 1 - unsolvable
* 2 - inconclusive (budget exhausted)
* 3 - ineligible instance
* 4 - malformed input or usage error
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .fileformat import (
    ParseError,
    count_document,
    eligibility_document,
    load_instance,
    min_spots_document,
    render_instance,
    solve_document,
)
from .generators import (
    ThreePartitionInstance,
    fuzz_instance,
    gen_reduction_121,
    gen_reduction_ind,
    gen_reduction_s21,
)
from .model import ClassParams, check_eligibility
from .solver import (
    BudgetExceededError,
    IneligibleError,
    SolveBudget,
    Verdict,
    enumerate_reachable,
    min_spots,
    solve,
)
from .tractable import (
    IndependentInstance,
    decide_auto,
    decide_independent,
    decide_monochrome,
    decide_reserved,
)

EXIT_SOLVABLE = 0
EXIT_UNSOLVABLE = 1
EXIT_INCONCLUSIVE = 2
EXIT_INELIGIBLE = 3
EXIT_BAD_INPUT = 4

_VERDICT_EXIT = {
    Verdict.SOLVABLE: EXIT_SOLVABLE,
    Verdict.UNSOLVABLE: EXIT_UNSOLVABLE,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _budget(args: argparse.Namespace) -> Optional[SolveBudget]:
    if args.max_states is None and args.timeout is None:
        return None
    return SolveBudget(max_states=args.max_states, time_limit=args.timeout)


def _cmd_check(args: argparse.Namespace) -> int:
    report = check_eligibility(load_instance(args.file))
    _emit(eligibility_document(report))
    return EXIT_SOLVABLE if report.ok else EXIT_INELIGIBLE


def _cmd_solve(args: argparse.Namespace) -> int:
    cfg = load_instance(args.file)
    budget = _budget(args)
    if args.klass == "auto":
        _, result = decide_auto(cfg, budget)
    elif args.klass == "mono":
        result = decide_monochrome(cfg)
    elif args.klass == "reserved":
        result = decide_reserved(IndependentInstance(cfg))
    elif args.klass == "independent":
        result = decide_independent(IndependentInstance(cfg))
    else:
        result = solve(cfg, budget)
    _emit(solve_document(result))
    return _VERDICT_EXIT[result.verdict]


def _cmd_min_spots(args: argparse.Namespace) -> int:
    cfg = load_instance(args.file)
    try:
        result = min_spots(cfg.graph, cfg.queue, _budget(args))
    except BudgetExceededError as exc:
        _emit({"s0": None, "perS": [[s, v.value] for s, v in exc.partial]})
        return EXIT_INCONCLUSIVE
    _emit(min_spots_document(result))
    return EXIT_SOLVABLE


def _cmd_count(args: argparse.Namespace) -> int:
    result = enumerate_reachable(load_instance(args.file), args.cap)
    _emit(count_document(result))
    return EXIT_SOLVABLE


def _parse_items(text: str) -> ThreePartitionInstance:
    try:
        elements = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ParseError(f"--items must be comma-separated integers, got {text!r}")
    try:
        return ThreePartitionInstance.of(elements)
    except ValueError as exc:
        raise ParseError(str(exc))


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "3part":
        inst = _parse_items(args.items)
        try:
            if args.variant == "121":
                cfg = gen_reduction_121(inst)
            elif args.variant == "s21":
                cfg = gen_reduction_s21(inst, args.spots)
            else:
                cfg = gen_reduction_ind(inst, args.spots)
        except ValueError as exc:
            raise ParseError(str(exc))
    else:
        try:
            capacities = frozenset(int(x) for x in args.capacities.split(",") if x.strip())
            params = ClassParams(args.spots, args.colors, capacities)
        except ValueError as exc:
            raise ParseError(str(exc))
        cfg = fuzz_instance(params, args.seed, args.shape, max_buses=args.buses)
    text = render_instance(cfg)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as handle:
            handle.write(text)
    return EXIT_SOLVABLE


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import run_service

    run_service(
        host=args.host,
        port=args.port,
        budget=SolveBudget(
            max_states=args.budget_states, time_limit=args.budget_seconds
        ),
        session_cap=args.session_cap,
        ui_dir=args.ui_dir,
    )
    return EXIT_SOLVABLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="busout",
        description="Check, solve, generate, and explore bus-dispatch puzzles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_budget_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--max-states", type=int, default=None,
                       help="abort the search after this many states (inconclusive)")
        p.add_argument("--timeout", type=float, default=None,
                       help="abort the search after this many seconds (inconclusive)")

    p = sub.add_parser("check", help="validate eligibility of an instance file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("solve", help="decide solvability and print a plan")
    p.add_argument("file")
    add_budget_flags(p)
    p.add_argument("--class", dest="klass", default="auto",
                   choices=["auto", "mono", "reserved", "independent", "general"],
                   help="which decider to use (default: route automatically)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("min-spots", help="find the least spot count that solves")
    p.add_argument("file")
    add_budget_flags(p)
    p.set_defaults(func=_cmd_min_spots)

    p = sub.add_parser("count", help="count reachable states")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=1_000_000)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("gen", help="generate an instance file")
    gen_sub = p.add_subparsers(dest="kind", required=True)

    g = gen_sub.add_parser("3part", help="encode an equal-sum partition question")
    g.add_argument("--items", required=True, help="comma-separated positive integers")
    g.add_argument("--variant", default="121", choices=["121", "s21", "ind"])
    g.add_argument("--spots", type=int, default=1)
    g.add_argument("--out", default="-")
    g.set_defaults(func=_cmd_gen)

    g = gen_sub.add_parser("fuzz", help="random eligible instance")
    g.add_argument("--spots", type=int, required=True)
    g.add_argument("--colors", type=int, required=True)
    g.add_argument("--capacities", required=True, help="e.g. 4,6,10")
    g.add_argument("--shape", default="any",
                   choices=["paths", "dag", "edgeless", "any"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--buses", type=int, default=10, help="max bus count")
    g.add_argument("--out", default="-")
    g.set_defaults(func=_cmd_gen)

    p = sub.add_parser("serve", help="run the local exploration service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8646)
    p.add_argument("--budget-states", type=int, default=200_000,
                   help="per-request solver budget for annotations")
    p.add_argument("--budget-seconds", type=float, default=5.0)
    p.add_argument("--session-cap", type=int, default=64,
                   help="sessions kept in memory before LRU eviction")
    p.add_argument("--ui-dir", default=None,
                   help="also serve a static explorer UI from this directory")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except IneligibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(eligibility_document(exc.report))
        return EXIT_INELIGIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
