"""Command line front end.

Three subcommands: check (model diagnostics), extend (natural extension of
one gamble), optimal (run a decision criterion, or all of them). Exit
codes are part of the contract: 0 success (including incoherent-but-
warned), 2 unreadable or malformed problem file, 3 sure loss, 4 misused
flags. Reports go to stdout and are deterministic; timing goes to stderr.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from .criteria import (
    PrefilterError,
    admissible_result,
    meu_optimal,
    run_pipeline,
)
from .model import ModelError
from .prevision import SureLossError, natural_extension_lower, natural_extension_upper
from .problem_io import ProblemError, parse_gamble_arg, parse_problem
from .report import (
    Report,
    build_diagnostics,
    render_check_text,
    render_extend_text,
    render_optimal_json,
    render_optimal_text,
)


class FlagError(Exception):
    """Structurally valid flags used in an unsupported combination."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; the contract reserves 2 for file
    # parse errors, so flag misuse exits 4 instead
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(4, f"{self.prog}: error: {message}\n")


_CRITERION_NAMES = (
    "admissible",
    "meu",
    "maximin",
    "maximax",
    "maximality",
    "intervaldominance",
    "eadmissibility",
    "all",
)

_TAGS = {
    "maximin": "maximin",
    "maximax": "maximax",
    "maximality": "maximal",
    "intervaldominance": "interval",
    "eadmissibility": "eadmissible",
}

_ALL_ORDER = ("maximin", "maximax", "maximal", "interval", "eadmissible")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="credal",
        description="Decision making under lower previsions, in exact arithmetic.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser(
        "check", help="diagnose a problem file: sure loss and coherence"
    )
    check.add_argument("file", help="problem file (JSON)")
    check.set_defaults(func=cmd_check)

    extend = commands.add_parser(
        "extend", help="natural extension of a gamble under the file's model"
    )
    extend.add_argument("file", help="problem file (JSON)")
    extend.add_argument(
        "--gamble",
        required=True,
        help="JSON map of state to number, e.g. '{\"H\": 3, \"T\": 2}'",
    )
    extend.add_argument(
        "--side",
        choices=("lower", "upper", "both"),
        default="both",
        help="which expectation bound to compute (default: both)",
    )
    extend.set_defaults(func=cmd_extend)

    optimal = commands.add_parser(
        "optimal", help="optimal decision set under a criterion"
    )
    optimal.add_argument("file", help="problem file (JSON)")
    optimal.add_argument(
        "--criterion", required=True, choices=_CRITERION_NAMES, help="criterion to run"
    )
    optimal.add_argument(
        "--mu",
        help="JSON mass function for --criterion meu, e.g. '{\"H\": \"0.5\", \"T\": \"0.5\"}'",
    )
    optimal.add_argument(
        "--prefilter",
        action="store_true",
        help="run interval-dominance elimination first (maximality, eadmissibility)",
    )
    optimal.add_argument(
        "--witness", action="store_true", help="include per-decision certificates"
    )
    optimal.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    optimal.set_defaults(func=cmd_optimal)
    return parser


def cmd_check(args: argparse.Namespace) -> int:
    pf = parse_problem(args.file)
    diag = build_diagnostics(pf.model)
    print(render_check_text(pf, diag), end="")
    return 3 if diag.sure_loss else 0


def cmd_extend(args: argparse.Namespace) -> int:
    pf = parse_problem(args.file)
    try:
        gamble = parse_gamble_arg(pf.space, args.gamble, what="--gamble")
    except ProblemError as exc:
        raise FlagError(str(exc)) from None
    model = pf.model
    sides = {}
    if args.side in ("lower", "both"):
        sides["lower"] = natural_extension_lower(model, gamble)
    if args.side in ("upper", "both"):
        sides["upper"] = natural_extension_upper(model, gamble)
    print(render_extend_text(gamble, sides), end="")
    return 0


def cmd_optimal(args: argparse.Namespace) -> int:
    pf = parse_problem(args.file)
    if args.criterion == "meu":
        if args.mu is None:
            raise FlagError("--criterion meu requires --mu")
    elif args.mu is not None:
        raise FlagError("--mu is only valid with --criterion meu")
    if args.prefilter and args.criterion not in ("maximality", "eadmissibility"):
        raise FlagError("--prefilter requires --criterion maximality or eadmissibility")

    diag = build_diagnostics(pf.model)
    started = time.perf_counter()
    if diag.sure_loss:
        report = Report(diag)
    else:
        problem, model = pf.problem, pf.model
        if args.criterion == "all":
            results = [admissible_result(problem)]
            results.extend(run_pipeline(problem, model, tag) for tag in _ALL_ORDER)
        elif args.criterion == "admissible":
            results = [admissible_result(problem)]
        elif args.criterion == "meu":
            try:
                mass = parse_gamble_arg(pf.space, args.mu, what="--mu")
                results = [meu_optimal(problem, mass.values)]
            except (ProblemError, ModelError) as exc:
                raise FlagError(str(exc)) from None
        else:
            results = [
                run_pipeline(
                    problem, model, _TAGS[args.criterion], prefilter=args.prefilter
                )
            ]
        report = Report(diag, tuple(results))
    elapsed = time.perf_counter() - started
    print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)

    if args.format == "json":
        print(render_optimal_json(pf.space, report, args.witness), end="")
    else:
        print(
            render_optimal_text(pf.space, report, args.witness, show_work=True),
            end="",
        )
    return 3 if diag.sure_loss else 0


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SureLossError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (FlagError, PrefilterError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(run())
