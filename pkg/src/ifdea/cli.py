"""Command-line front end.

    ifdea evaluate [--model crisp|fif] [--policy FILE] DATASET
    ifdea impute   [--model crisp|fif] --policy FILE DATASET
    ifdea stats    DATASET

Exit status: 0 success, 1 usage error, 2 some DMU solve failed,
3 invalid data (message carries row/column coordinates).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from .dataio import DataError, RunConfig, parse_dataset, parse_policy, write_dataset, write_report
from .ifn import TIFNError, format_real
from .imputation import dataset_stats, normalize_columns, prepare_dataset
from .models import FAILED, evaluate_all

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVE_FAILED = 2
EXIT_DATA = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ifdea", description="BCC efficiency of DMUs with crisp or intuitionistic fuzzy data.")
    sub = parser.add_subparsers(dest="command", metavar="{evaluate,impute,stats}")

    def common(p, with_model=True):
        p.add_argument("dataset", nargs="?", help="dataset CSV")
        p.add_argument("--output", help="write to this file instead of stdout")
        if with_model:
            p.add_argument("--model", choices=("crisp", "fif"), default="crisp")
            p.add_argument("--policy", help="policy document with imputation bounds and model options")

    ev = sub.add_parser("evaluate", help="score every DMU")
    common(ev)
    ev.add_argument("--epsilon", type=float)
    ev.add_argument("--tolerance", type=float)
    ev.add_argument("--format", choices=("csv", "jsonl"))
    ev.add_argument("--raw-objective", action="store_true", help="add the unrounded LP objective E*")
    ev.add_argument("--normalize-columns", action="store_true",
                    help="divide each column by its maximum first (perturbs scores at order epsilon)")

    im = sub.add_parser("impute", help="emit the dataset completed for the chosen model")
    common(im)

    st = sub.add_parser("stats", help="per-variable min/median/max of observed cells")
    common(st, with_model=False)
    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _config(args) -> RunConfig:
    return parse_policy(_read(args.policy)) if getattr(args, "policy", None) else RunConfig()


def _prepare(args, config: RunConfig):
    raw = parse_dataset(_read(args.dataset))
    if raw.missing_cells() and not args.policy:
        cells = ", ".join(f"{v}@{d}" for v, d in raw.missing_cells())
        raise UsageError(f"dataset has missing cells ({cells}); pass --policy with their bounds")
    return prepare_dataset(raw, config.policy, args.model)


def _evaluate(args) -> int:
    config = _config(args)
    overrides = {}
    if args.epsilon is not None:
        overrides["epsilon"] = args.epsilon
    if args.tolerance is not None:
        overrides["tolerance"] = args.tolerance
    if args.format is not None:
        overrides["report_format"] = args.format
    if args.raw_objective:
        overrides["raw_objective"] = True
    config = replace(config, **overrides)
    if not config.epsilon > 0 or not config.tolerance > 0:
        raise UsageError("--epsilon and --tolerance must be positive")

    dataset = _prepare(args, config)
    if args.normalize_columns:
        dataset = normalize_columns(dataset)
    results = evaluate_all(dataset, args.model, config.epsilon, config.tolerance)
    _emit(write_report(results, config.report_format, config.raw_objective), args.output)
    failed = [r for r in results if r.classification == FAILED]
    for r in failed:
        print(f"ifdea: DMU {r.dmu_id} ({r.name}) failed: {r.error}", file=sys.stderr)
    return EXIT_SOLVE_FAILED if failed else EXIT_OK


def _impute(args) -> int:
    if not args.policy:
        raise UsageError("impute requires --policy")
    dataset = _prepare(args, _config(args))
    _emit(write_dataset(dataset), args.output)
    return EXIT_OK


def _stats(args) -> int:
    dataset = parse_dataset(_read(args.dataset))
    lines = ["variable,min,median,max"]
    for name, st in dataset_stats(dataset).items():
        lines.append(",".join([name, format_real(st.minimum), format_real(st.median), format_real(st.maximum)]))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if not args.dataset:
            raise UsageError(f"{args.command} requires a dataset path")
        handler = {"evaluate": _evaluate, "impute": _impute, "stats": _stats}[args.command]
        return handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ifdea: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, TIFNError) as exc:
        print(f"ifdea: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
