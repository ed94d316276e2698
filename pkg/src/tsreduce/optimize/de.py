"""Differential evolution, rand/1/bin, on a continuous genotype."""

from __future__ import annotations

import numpy as np

from ..errors import ContractError, InvariantError
from .config import Candidate, OptimizationResult, OptimizerConfig
from .encoding import decode_repair, random_chromosome
from .evaluation import FitnessCache


def binomial_trial(target, donor, rand, forced: int, Cr: float) -> np.ndarray:
    """Take the donor gene where ``rand < Cr`` or at the forced index."""
    mask = np.asarray(rand) < Cr
    mask[forced] = True
    return np.where(mask, donor, target)


def de_run(fitness, cfg: OptimizerConfig, n: int, rng=None, init=None) -> OptimizationResult:
    """Minimize ``fitness`` with DE/rand/1/bin and greedy one-to-one selection.

    Per target vector, in population order, the generator is asked for three
    distinct other members, the forced crossover index, and ``nbp`` uniforms.
    Trials are clipped to [1, n] and kept sorted. ``init`` overrides the random
    initial positions.
    """
    cfg.validate(n)
    if cfg.popSize < 4:
        raise ContractError("DE needs popSize >= 4 to draw three distinct partners")
    rng = np.random.default_rng(cfg.seed) if rng is None else rng
    evaluate = fitness if isinstance(fitness, FitnessCache) else FitnessCache(fitness, n)
    nbp, size = cfg.nbp, cfg.popSize

    if init is None:
        pos = np.array([random_chromosome(n, nbp, rng).indices for _ in range(size)], dtype=float)
    else:
        pos = np.array(init, dtype=float).reshape(size, nbp)
    fit = np.array(evaluate.evaluate([decode_repair(p, n) for p in pos]), dtype=float)
    history = [float(fit.min())]

    for _ in range(cfg.nGen):
        trials = np.empty_like(pos)
        for i in range(size):
            others = [j for j in range(size) if j != i]
            r1, r2, r3 = (int(v) for v in rng.choice(others, size=3, replace=False))
            donor = pos[r1] + cfg.F * (pos[r2] - pos[r3])
            forced = int(rng.integers(nbp))
            trial = binomial_trial(pos[i], donor, rng.random(nbp), forced, cfg.Cr)
            trials[i] = np.sort(np.clip(trial, 1, n))
        trial_fit = np.array(evaluate.evaluate([decode_repair(t, n) for t in trials]), dtype=float)
        better = trial_fit <= fit
        pos[better] = trials[better]
        fit[better] = trial_fit[better]
        history.append(float(fit.min()))
        if history[-1] > history[-2]:
            raise InvariantError("DE best fitness increased")

    i = int(np.argmin(fit))
    return OptimizationResult(
        best=Candidate(pos[i].copy(), decode_repair(pos[i], n), float(fit[i])),
        history=history,
        evaluations=evaluate.calls,
    )
