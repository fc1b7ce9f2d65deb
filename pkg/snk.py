"""Command line front end: ``snk <task> <problem-file>...`` and ``snk verify <certificate>...``."""
import argparse
import os
import sys
from typing import List, Optional, Sequence

from certificate import load_certificate, verify, write_certificate
from config.app_config import setup_logging
from config.engine_config import EngineConfig
from errors import CertificateError, InputError
from problem_file import TASKS
from services.engine_service import EngineService, TaskOutcome
from services.report_service import ReportService
from utils import (
    ProgressTracker,
    display_error_message,
    display_success_message,
    display_warning_message,
    format_elapsed,
)

RUN_ANY = "run"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="snk",
        description="Exact Gröbner-basis toolkit for regulous functions and seminormalization.",
    )
    parser.add_argument("--version", action="version",
                        version=f"{EngineConfig.ENGINE_NAME} {EngineConfig.ENGINE_VERSION}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="<task>")

    for task in [RUN_ANY] + list(TASKS):
        help_text = "run each file's own task" if task == RUN_ANY else f"{task} problem files"
        sub = commands.add_parser(task, help=help_text)
        sub.add_argument("files", nargs="+", help="problem files")
        sub.add_argument("--out", help="certificate file (a directory when several files are given)")
        sub.add_argument("--budget", type=int, help="S-pair budget per Gröbner run (also SNK_BUDGET)")
        sub.add_argument("--jobs", type=int, help="worker processes for independent files")
        sub.add_argument("--order", choices=EngineConfig.get_order_names(),
                         help="default monomial order for files without an 'order' key")
        sub.add_argument("--summary", help="write a batch summary (.csv or .xlsx)")
        _add_verbosity(sub)

    check = commands.add_parser("verify", help="re-check certificates by division")
    check.add_argument("certificates", nargs="+")
    _add_verbosity(check)
    return parser


def _add_verbosity(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("-v", "--verbose", action="store_true")
    group.add_argument("-q", "--quiet", action="store_true")


def certificate_path(out: Optional[str], problem_path: str, batch: bool) -> Optional[str]:
    if out is None:
        return None
    if not batch:
        return out
    stem = os.path.splitext(os.path.basename(problem_path))[0]
    return os.path.join(out, f"{stem}.cert.json")


def report_outcome(outcome: TaskOutcome) -> None:
    label = f"{outcome.path}: {outcome.task}"
    if outcome.status == "error":
        display_error_message(label, outcome.message)
        return
    timing = f"{format_elapsed(outcome.elapsed)}, {outcome.counters.get('spairs', 0)} S-pairs"
    if outcome.status == "undecided":
        display_warning_message(f"{label} -> Undecided ({timing})", outcome.message)
    else:
        display_success_message(f"{label} -> {outcome.verdict} ({timing})", outcome.message or None)


def batch_exit_code(outcomes: Sequence[TaskOutcome]) -> int:
    codes = {o.exit_code for o in outcomes}
    if 1 in codes:
        return 1
    if 2 in codes:
        return 2
    return 0


def run_tasks(args: argparse.Namespace) -> int:
    service = EngineService({"budget": args.budget, "jobs": args.jobs, "order": args.order})
    task = None if args.command == RUN_ANY else args.command
    batch = len(args.files) > 1
    if batch and args.out:
        os.makedirs(args.out, exist_ok=True)

    progress = ProgressTracker(len(args.files), description=args.command)
    outcomes: List[TaskOutcome] = []
    for outcome in service.run_batch(args.files, task):
        progress.update(outcome.path)
        path = certificate_path(args.out, outcome.path, batch)
        if path and outcome.certificate is not None:
            try:
                write_certificate(path, outcome.certificate)
            except OSError as e:
                outcome.status, outcome.message = "error", f"cannot write {path}: {e.strerror}"
        report_outcome(outcome)
        outcomes.append(outcome)
    progress.complete()

    if args.summary:
        reports = ReportService()
        try:
            reports.write(reports.summarize(outcomes), args.summary)
        except (InputError, OSError) as e:
            display_error_message(f"summary not written: {e}")
            return 1
    return batch_exit_code(outcomes)


def run_verify(args: argparse.Namespace) -> int:
    status = 0
    for path in args.certificates:
        try:
            report = verify(load_certificate(path))
        except CertificateError as e:
            display_error_message(f"{path}: malformed certificate", str(e))
            status = 1
            continue
        if report.ok:
            display_success_message(f"{path}: verified ({report.derived_verdict})")
        else:
            display_error_message(f"{path}: verification failed", "\n".join(report.failures))
            status = 1
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(verbose=args.verbose, quiet=args.quiet)
    if args.command == "verify":
        return run_verify(args)
    return run_tasks(args)


if __name__ == "__main__":
    sys.exit(main())
