"""
Command-line surface of the engine.

    qfs height|ppt|chain [--input FILE | --preset NAME] [--json] [--max-height N]
                         [--sigma-budget N] [--gb-budget N] [--dump-levels K] [--output FILE]
    qfs witt-selftest --p P --n N [--trials T] [--seed S] [--json]
    qfs presets

Exit codes: 0 success, 1 input error, 2 internal bug, 3 inconclusive.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from core.config import settings
from core.exceptions import EXIT_INPUT, EXIT_OK, ConfigError, handle_exception

from apps.jobs.commands import (
    cmd_chain_dump,
    cmd_height,
    cmd_ppt,
    cmd_presets,
    cmd_witt_selftest,
    format_report,
    load_job,
)
from apps.jobs.schemas import OutputMode, Report

logger = logging.getLogger(__name__)

PROG = "qfs"


def _add_job_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", metavar="FILE", help="job file (JSON); '-' reads stdin")
    source.add_argument("--preset", metavar="NAME", help="built-in job, see `qfs presets`")
    parser.add_argument("--max-height", type=int, metavar="N", help="largest chain level for the height")
    parser.add_argument("--sigma-budget", type=int, metavar="N", help="iterations for the stable-ideal descent")
    parser.add_argument("--gb-budget", type=int, metavar="N", help="reduction steps per Groebner basis")


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="structured report instead of text")
    parser.add_argument("--output", metavar="FILE", help="write the report to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Quasi-F-split heights and perfectoid pure thresholds of complete intersections",
    )
    parser.add_argument("--version", action="version", version=f"{PROG} {settings.app_version}")
    sub = parser.add_subparsers(dest="command", required=True)

    height = sub.add_parser("height", help="quasi-F-split height via Fedder-type chains")
    _add_job_arguments(height)
    _add_output_arguments(height)

    ppt = sub.add_parser("ppt", help="height, FF-infinity decision and perfectoid pure threshold")
    _add_job_arguments(ppt)
    _add_output_arguments(ppt)

    chain = sub.add_parser("chain", help="dump the I-chain, J-descent and I'-chain")
    _add_job_arguments(chain)
    _add_output_arguments(chain)
    chain.add_argument("--dump-levels", "--levels", dest="dump_levels", type=int, metavar="K", help="levels to dump")

    witt = sub.add_parser("witt-selftest", help="randomized property suite for the Witt-vector kernel")
    witt.add_argument("--p", type=int, required=True, help="the prime")
    witt.add_argument("--n", type=int, required=True, help="Witt vector length")
    witt.add_argument("--trials", type=int, help=f"trials per property (default {settings.witt_trials})")
    witt.add_argument("--seed", type=int, default=0, help="random seed")
    _add_output_arguments(witt)

    sub.add_parser("presets", help="list built-in jobs")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Optional[int]]:
    values = {
        "max_height": args.max_height,
        "sigma_budget": args.sigma_budget,
        "gb_budget": args.gb_budget,
    }
    for name, value in values.items():
        if value is not None and value < 1:
            raise ConfigError(f"--{name.replace('_', '-')} must be >= 1")
    return values


def _run_height(args: argparse.Namespace) -> Report:
    return cmd_height(load_job(args.input, args.preset), _overrides(args))


def _run_ppt(args: argparse.Namespace) -> Report:
    return cmd_ppt(load_job(args.input, args.preset), _overrides(args))


def _run_chain(args: argparse.Namespace) -> Report:
    if args.dump_levels is not None and args.dump_levels < 0:
        raise ConfigError("--dump-levels must be >= 0")
    return cmd_chain_dump(load_job(args.input, args.preset), args.dump_levels, _overrides(args))


def _run_witt(args: argparse.Namespace) -> Report:
    if args.trials is not None and args.trials < 1:
        raise ConfigError("--trials must be >= 1")
    return cmd_witt_selftest(args.p, args.n, args.trials, args.seed)


COMMANDS: Dict[str, Callable[[argparse.Namespace], Report]] = {
    "height": _run_height,
    "ppt": _run_ppt,
    "chain": _run_chain,
    "witt-selftest": _run_witt,
}


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        try:
            Path(output).write_text(text + "\n", encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot write {output}: {exc.strerror}")
        logger.info(f"report written to {output}")
    else:
        sys.stdout.write(text + "\n")


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run one command and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; those are input errors here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT

    if args.command == "presets":
        for name, description in cmd_presets().items():
            sys.stdout.write(f"{name:24} {description}\n")
        return EXIT_OK

    try:
        report = COMMANDS[args.command](args)
        mode = OutputMode.JSON if args.json or (report.config and report.config.output == OutputMode.JSON) else OutputMode.TEXT
        _emit(format_report(report, mode), args.output)
        return report.exit_code
    except Exception as exc:
        return handle_exception(exc, args.command)
