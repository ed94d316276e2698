"""Command line entry point: ``tsreduce run | score | validate``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .dataset import load_ucr
from .errors import ContractError, TsReduceError
from .harness import (
    ExperimentSpec,
    result_from_json,
    result_to_json,
    results_table,
    results_to_csv,
    run_experiment,
    score_methods,
    score_table_to_csv,
)
from .harness.experiment import METHODS, STANDARD_RATIOS, TASKS

EXIT_OK, EXIT_CONTRACT, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONTRACT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tsreduce", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run one experiment")
    run.add_argument("--train", required=True)
    run.add_argument("--test", required=True)
    run.add_argument("--name", help="dataset name (default: derived from --train)")
    run.add_argument("--method", required=True, choices=METHODS)
    run.add_argument("--task", required=True, choices=TASKS)
    size = run.add_mutually_exclusive_group()
    size.add_argument("--ratio", type=int, choices=STANDARD_RATIOS)
    size.add_argument("--nbp", type=int)
    run.add_argument("--runs", type=int, default=5)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--pop-size", type=int, default=16)
    run.add_argument("--generations", type=int, default=100)
    run.add_argument("--normalize", action="store_true", help="z-normalize every series first")
    run.add_argument("--quality-metric", default="purity", choices=("purity", "rand"))
    run.add_argument("--out", help="output file (default: stdout)")
    run.add_argument("--format", choices=("csv", "json"), default="json")
    run.add_argument("--include-timing", action="store_true",
                     help="add wall-clock times to JSON output (makes it non-reproducible)")

    score = sub.add_parser("score", help="score JSON results found in a directory")
    score.add_argument("--in", dest="indir", required=True)
    score.add_argument("--out")

    validate = sub.add_parser("validate", help="check that a file parses as UCR format")
    validate.add_argument("--train", required=True)
    return parser


def _write(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args) -> int:
    spec = ExperimentSpec(
        method=args.method,
        task=args.task,
        train_path=args.train,
        test_path=args.test,
        dataset=args.name,
        ratio=args.ratio if args.nbp is None else None,
        nbp=args.nbp,
        runs=args.runs,
        seed=args.seed,
        normalize=args.normalize,
        quality_metric=args.quality_metric,
        popSize=args.pop_size,
        nGen=args.generations,
    )
    if spec.ratio is None and spec.nbp is None:
        spec.ratio = 4
    result = run_experiment(spec)
    if args.format == "csv":
        _write(results_to_csv(result), args.out)
    else:
        _write(result_to_json(result, args.include_timing), args.out)
    return EXIT_OK


def _cmd_score(args) -> int:
    indir = Path(args.indir)
    if not indir.is_dir():
        raise FileNotFoundError(f"not a directory: {indir}")
    results = [result_from_json(p.read_text()) for p in sorted(indir.glob("*.json"))]
    if not results:
        raise ContractError(f"no JSON results in {indir}")
    try:
        table = score_methods(results_table(results))
    except ValueError as exc:
        raise ContractError(str(exc)) from exc
    _write(score_table_to_csv(table), args.out)
    return EXIT_OK


def _cmd_validate(args) -> int:
    ds = load_ucr(args.train)
    print(f"{ds.name}: {len(ds)} series, length {ds.n}, {len(ds.classes)} classes")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"run": _cmd_run, "score": _cmd_score, "validate": _cmd_validate}[args.command]
    try:
        return handler(args)
    except (TsReduceError, ValueError, KeyError) as exc:
        print(f"tsreduce: error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except OSError as exc:
        print(f"tsreduce: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
