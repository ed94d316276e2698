from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from ..errors import ContractError
from ..representation import TimestampChromosome


@dataclass(frozen=True)
class OptimizerConfig:
    """Control parameters; defaults follow the standard GA/DE/PSO settings."""

    nbp: int
    popSize: int = 16
    nGen: int = 100
    sRate: float = 0.5
    mRate: float = 0.2
    F: float = 0.9
    Cr: float = 0.5
    aL: float = 2.0
    aG: float = 2.0
    seed: Optional[int] = None

    def validate(self, n: int) -> "OptimizerConfig":
        if self.popSize < 1:
            raise ContractError(f"popSize must be positive, got {self.popSize}")
        if self.nGen < 0:
            raise ContractError(f"nGen must be non-negative, got {self.nGen}")
        if not 2 <= self.nbp <= n:
            raise ContractError(f"nbp must be in [2, {n}], got {self.nbp}")
        if not 0 < self.sRate <= 1:
            raise ContractError(f"sRate must be in (0, 1], got {self.sRate}")
        if not 0 <= self.mRate <= 1:
            raise ContractError(f"mRate must be in [0, 1], got {self.mRate}")
        if not 0 <= self.Cr <= 1:
            raise ContractError(f"Cr must be in [0, 1], got {self.Cr}")
        return self

    def with_seed(self, seed: int) -> "OptimizerConfig":
        return replace(self, seed=seed)


@dataclass(eq=False)
class Candidate:
    """One individual: continuous genotype, its decoded chromosome, and fitness."""

    position: np.ndarray
    chromosome: TimestampChromosome
    fitness: object = None


@dataclass(eq=False)
class OptimizationResult:
    best: Candidate
    history: list = field(default_factory=list)
    evaluations: int = 0
