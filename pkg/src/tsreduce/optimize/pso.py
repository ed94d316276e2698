"""Global-best particle swarm with linearly decreasing inertia."""

from __future__ import annotations

import numpy as np

from ..errors import InvariantError
from .config import Candidate, OptimizationResult, OptimizerConfig
from .encoding import decode_repair, random_chromosome
from .evaluation import FitnessCache

VELOCITY_FRACTION = 0.2


def inertia(generation: int, nGen: int) -> float:
    """Inertia weight falling from 1 at generation 0 to 0 at the last generation."""
    if nGen == 0:
        return 1.0
    return (nGen - generation) / nGen


def pso_run(fitness, cfg: OptimizerConfig, n: int, rng=None) -> OptimizationResult:
    """Minimize ``fitness`` with PSO over continuous positions decoded each step.

    The new velocity is applied to the position in the same step. Velocities
    start in and are capped to a fifth of the search range per coordinate;
    positions are clipped to [1, n].
    """
    cfg.validate(n)
    rng = np.random.default_rng(cfg.seed) if rng is None else rng
    evaluate = fitness if isinstance(fitness, FitnessCache) else FitnessCache(fitness, n)
    nbp, size = cfg.nbp, cfg.popSize
    vmax = VELOCITY_FRACTION * max(n - 1, 1)

    pos = np.array([random_chromosome(n, nbp, rng).indices for _ in range(size)], dtype=float)
    vel = rng.uniform(-vmax, vmax, size=(size, nbp))
    fit = np.array(evaluate.evaluate([decode_repair(p, n) for p in pos]), dtype=float)
    local_pos, local_fit = pos.copy(), fit.copy()
    g = int(np.argmin(fit))
    global_pos, global_fit = pos[g].copy(), float(fit[g])
    history = [global_fit]

    for gen in range(cfg.nGen):
        w = inertia(gen, cfg.nGen)
        rG = rng.random((size, nbp))
        rL = rng.random((size, nbp))
        vel = w * vel + rG * cfg.aG * (global_pos - pos) + rL * cfg.aL * (local_pos - pos)
        vel = np.clip(vel, -vmax, vmax)
        pos = np.clip(pos + vel, 1, n)
        fit = np.array(evaluate.evaluate([decode_repair(p, n) for p in pos]), dtype=float)
        improved = fit < local_fit
        local_pos[improved] = pos[improved]
        local_fit[improved] = fit[improved]
        g = int(np.argmin(fit))
        if fit[g] < global_fit:
            global_pos, global_fit = pos[g].copy(), float(fit[g])
        history.append(global_fit)
        if history[-1] > history[-2]:
            raise InvariantError("PSO global best worsened")

    return OptimizationResult(
        best=Candidate(global_pos, decode_repair(global_pos, n), global_fit),
        history=history,
        evaluations=evaluate.calls,
    )
