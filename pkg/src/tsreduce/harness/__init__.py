"""Experiment driver: optimization on train, validation on test, scoring."""

from .emit import (
    result_from_json,
    result_to_json,
    results_table,
    results_to_csv,
    score_table_to_csv,
)
from .experiment import (
    CE,
    CQ,
    ExperimentResult,
    ExperimentSpec,
    RunResult,
    nbp_from_ratio,
    run_experiment,
    run_sax_baseline,
)
from .scoring import ScoreTable, rank_points, score_methods

__all__ = [
    "CE",
    "CQ",
    "ExperimentResult",
    "ExperimentSpec",
    "RunResult",
    "ScoreTable",
    "nbp_from_ratio",
    "rank_points",
    "result_from_json",
    "result_to_json",
    "results_table",
    "results_to_csv",
    "run_experiment",
    "run_sax_baseline",
    "score_methods",
    "score_table_to_csv",
]
