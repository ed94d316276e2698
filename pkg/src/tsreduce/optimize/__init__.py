"""Nature-inspired optimizers over timestamp chromosomes."""

from .config import Candidate, OptimizationResult, OptimizerConfig
from .de import de_run
from .encoding import decode_repair, random_chromosome
from .evaluation import FitnessCache
from .ga import ga_run
from .nsga2 import (
    NSGA2Result,
    ParetoArchive,
    crowding_distance,
    dominates,
    nondominated_sort,
    nsga2_run,
    select_final,
)
from .pso import inertia, pso_run

SINGLE_OBJECTIVE = {"ga": ga_run, "de": de_run, "pso": pso_run}
OPTIMIZERS = {**SINGLE_OBJECTIVE, "nsga2": nsga2_run}

__all__ = [
    "Candidate",
    "FitnessCache",
    "NSGA2Result",
    "OPTIMIZERS",
    "OptimizationResult",
    "OptimizerConfig",
    "ParetoArchive",
    "SINGLE_OBJECTIVE",
    "crowding_distance",
    "de_run",
    "decode_repair",
    "dominates",
    "ga_run",
    "inertia",
    "nondominated_sort",
    "nsga2_run",
    "pso_run",
    "random_chromosome",
    "select_final",
]
