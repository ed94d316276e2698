"""CSV and JSON serialization of experiment results and score tables."""

from __future__ import annotations

import csv
import io
import json

from .experiment import CE, CQ, ExperimentResult, RunResult, aggregate_runs
from .scoring import ScoreTable

CSV_COLUMNS = ["dataset", "method", "task", "ratio", "nbp", "metric", "mean", "std",
               "train_seconds_mean"]

TASK_COLUMNS = {CE: "CE", CQ: "CQ"}


def result_to_dict(result: ExperimentResult, include_timing: bool = False) -> dict:
    runs = []
    for r in result.runs:
        row = {
            "seed": r.seed,
            "timestamps": r.timestamps,
            "train_fitness": r.train_fitness,
            "test": dict(sorted(r.test.items())),
        }
        if r.alpha is not None:
            row["alpha"] = r.alpha
        if include_timing:
            row["train_seconds"] = r.train_seconds
        runs.append(row)
    out = {
        "dataset": result.dataset,
        "method": result.method,
        "task": result.task,
        "ratio": result.ratio,
        "nbp": result.nbp,
        "runs": runs,
        "aggregate": result.aggregate,
    }
    if include_timing:
        out["train_seconds_mean"] = result.train_seconds_mean
    return out


def result_to_json(result: ExperimentResult, include_timing: bool = False) -> str:
    return json.dumps(result_to_dict(result, include_timing), indent=2, sort_keys=True) + "\n"


def result_from_dict(data: dict) -> ExperimentResult:
    runs = [
        RunResult(
            seed=r["seed"],
            timestamps=r["timestamps"],
            train_fitness=r["train_fitness"],
            test=dict(r["test"]),
            train_seconds=r.get("train_seconds", 0.0),
            alpha=r.get("alpha"),
        )
        for r in data["runs"]
    ]
    return ExperimentResult(
        dataset=data["dataset"],
        method=data["method"],
        task=data["task"],
        ratio=data["ratio"],
        nbp=data["nbp"],
        runs=runs,
        aggregate=data.get("aggregate") or aggregate_runs(runs),
    )


def result_from_json(text: str) -> ExperimentResult:
    return result_from_dict(json.loads(text))


def results_to_csv(results) -> str:
    """One row per dataset x method x ratio x reported metric."""
    if isinstance(results, ExperimentResult):
        results = [results]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for res in results:
        for metric, agg in sorted(res.aggregate.items()):
            writer.writerow([
                res.dataset, res.method, res.task,
                "" if res.ratio is None else res.ratio, res.nbp, metric,
                repr(agg["mean"]), repr(agg["std"]), repr(res.train_seconds_mean),
            ])
    return buf.getvalue()


def results_table(results) -> dict:
    """Collect ``{dataset: {CE|CQ: {method: mean}}}`` from a set of results."""
    table: dict = {}
    for res in results:
        for metric, agg in res.aggregate.items():
            task = TASK_COLUMNS[metric]
            cell = table.setdefault(res.dataset, {}).setdefault(task, {})
            if res.method in cell:
                raise ValueError(
                    f"duplicate {res.method} result for {res.dataset}/{task}; "
                    "keep one ratio per method when scoring"
                )
            cell[res.method] = agg["mean"]
    return table


def score_table_to_csv(table: ScoreTable) -> str:
    """Dataset rows with per-method task points and totals, plus a TOTAL row."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["dataset"]
    for m in table.methods:
        header += [f"{m}_{t}" for t in table.tasks] + [f"{m}_total"]
    writer.writerow(header)
    for ds in table.datasets:
        row = [ds]
        for m in table.methods:
            pts = [table.cells.get((ds, t), {}).get(m) for t in table.tasks]
            row += ["" if p is None else p for p in pts]
            row.append(sum(p for p in pts if p is not None))
        writer.writerow(row)
    total = ["TOTAL"]
    for m in table.methods:
        total += [""] * len(table.tasks) + [table.totals.get(m, 0)]
    writer.writerow(total)
    return buf.getvalue()
