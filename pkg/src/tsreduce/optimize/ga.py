"""Generational genetic algorithm on integer timestamp chromosomes."""

from __future__ import annotations

import numpy as np

from ..errors import InvariantError
from .config import Candidate, OptimizationResult, OptimizerConfig
from .encoding import decode_repair, random_chromosome
from .evaluation import FitnessCache


def rank_weights(size: int) -> np.ndarray:
    """Roulette weights proportional to reversed rank (best gets ``size``)."""
    w = np.arange(size, 0, -1, dtype=float)
    return w / w.sum()


def crossover(a: np.ndarray, b: np.ndarray, cut: int) -> np.ndarray:
    return np.concatenate([a[:cut], b[cut:]])


def mutate(genes: np.ndarray, mask: np.ndarray, resampled: np.ndarray) -> np.ndarray:
    return np.where(mask, resampled, genes)


def make_offspring(parents: list, count: int, cfg: OptimizerConfig, n: int, rng, pick) -> list:
    """Single-point crossover then per-gene resampling mutation, both followed by repair.

    ``pick`` draws one parent index; it is the only part that differs between the
    plain GA (rank roulette) and NSGA-II (binary tournament).
    """
    children = []
    nbp = cfg.nbp
    while len(children) < count:
        pa, pb = parents[pick()], parents[pick()]
        cut = int(rng.integers(1, nbp))
        for child in (crossover(pa, pb, cut), crossover(pb, pa, cut)):
            if len(children) == count:
                break
            child = np.array(decode_repair(child, n).indices, dtype=float)
            mask = rng.random(nbp) < cfg.mRate
            resampled = rng.integers(1, n + 1, size=nbp).astype(float)
            child = np.array(decode_repair(mutate(child, mask, resampled), n).indices, dtype=float)
            children.append(child)
    return children


def ga_run(fitness, cfg: OptimizerConfig, n: int, rng=None) -> OptimizationResult:
    """Minimize ``fitness`` over chromosomes with an elitist GA.

    Each generation keeps the single best individual, draws a mating pool of the
    top ``sRate * popSize`` ranks and fills the rest of the population with their
    offspring, picking parents by rank-weighted roulette.
    """
    cfg.validate(n)
    rng = np.random.default_rng(cfg.seed) if rng is None else rng
    evaluate = fitness if isinstance(fitness, FitnessCache) else FitnessCache(fitness, n)

    pop = [np.array(random_chromosome(n, cfg.nbp, rng).indices, dtype=float)
           for _ in range(cfg.popSize)]
    chroms = [decode_repair(p, n) for p in pop]
    fit = np.array(evaluate.evaluate(chroms), dtype=float)
    order = np.argsort(fit, kind="stable")
    history = [float(fit[order[0]])]

    pool_size = max(2, min(cfg.popSize, int(round(cfg.sRate * cfg.popSize))))
    weights = rank_weights(pool_size)
    for _ in range(cfg.nGen):
        pool = [pop[i] for i in order[:pool_size]]
        elite = pop[order[0]]
        elite_fit = fit[order[0]]
        children = make_offspring(
            pool, cfg.popSize - 1, cfg, n, rng,
            lambda: int(rng.choice(pool_size, p=weights)),
        )
        child_fit = evaluate.evaluate([decode_repair(c, n) for c in children])
        pop = [elite] + children
        fit = np.array([elite_fit] + list(child_fit), dtype=float)
        order = np.argsort(fit, kind="stable")
        history.append(float(fit[order[0]]))
        if history[-1] > history[-2]:
            raise InvariantError("GA best fitness increased despite elitism")

    best = pop[order[0]]
    return OptimizationResult(
        best=Candidate(best, decode_repair(best, n), float(fit[order[0]])),
        history=history,
        evaluations=evaluate.calls,
    )
