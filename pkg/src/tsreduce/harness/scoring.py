"""Points-based comparison of methods across datasets and tasks."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

# task key -> True when larger values are better
TASK_DIRECTION = {"CE": False, "CQ": True, "classify": False, "cluster": True}


@dataclass
class ScoreTable:
    methods: list
    tasks: list
    cells: dict = field(default_factory=dict)  # (dataset, task) -> {method: points}
    totals: dict = field(default_factory=dict)

    @property
    def datasets(self) -> list:
        seen = []
        for ds, _ in self.cells:
            if ds not in seen:
                seen.append(ds)
        return seen


def rank_points(values: dict, higher_is_better: bool, top: int = 2) -> dict:
    """2/1/0 points by rank; tied methods share points and the next ranks are skipped."""
    out = {}
    for method, v in values.items():
        better = sum(1 for w in values.values() if (w > v if higher_is_better else w < v))
        out[method] = max(0, top - better)
    return out


def score_methods(results: dict) -> ScoreTable:
    """Score ``results[dataset][task][method] = metric``.

    Tasks "CE"/"classify" rank ascending and "CQ"/"cluster" descending. Cells
    with fewer than two methods are skipped with a warning; a method missing
    from a cell earns nothing there.
    """
    methods, tasks = [], []
    for per_task in results.values():
        for task, per_method in per_task.items():
            if task not in tasks:
                tasks.append(task)
            for m in per_method:
                if m not in methods:
                    methods.append(m)
    table = ScoreTable(methods=methods, tasks=tasks)
    totals = {m: 0 for m in methods}
    for dataset, per_task in results.items():
        for task, per_method in per_task.items():
            if task not in TASK_DIRECTION:
                raise ValueError(f"unknown task {task!r}")
            present = {m: v for m, v in per_method.items() if v is not None}
            if len(present) < 2:
                logger.warning("skipping %s/%s: fewer than two methods", dataset, task)
                continue
            missing = [m for m in methods if m not in present]
            if missing:
                logger.warning("%s/%s: no result for %s", dataset, task, ", ".join(missing))
            points = rank_points(present, TASK_DIRECTION[task])
            table.cells[(dataset, task)] = points
            for m, p in points.items():
                totals[m] += p
    table.totals = totals
    return table
