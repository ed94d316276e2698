"""NSGA-II for two minimized objectives, reusing the GA variation operators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ContractError, InvariantError
from .config import Candidate, OptimizerConfig
from .encoding import decode_repair, random_chromosome
from .evaluation import FitnessCache
from .ga import make_offspring


def dominates(a, b) -> bool:
    """True when ``a`` is no worse than ``b`` everywhere and strictly better somewhere."""
    a, b = np.asarray(a), np.asarray(b)
    return bool(np.all(a <= b) and np.any(a < b))


def _objectives(population) -> np.ndarray:
    objs = [c.fitness if isinstance(c, Candidate) else c for c in population]
    if not objs:
        raise ContractError("cannot sort an empty population")
    return np.asarray(objs, dtype=float).reshape(len(objs), -1)


def nondominated_sort(population) -> list[list[int]]:
    """Partition indices into successive non-dominated fronts (fast sort).

    ``population`` holds objective vectors or Candidates; each front lists
    indices in ascending order.
    """
    F = _objectives(population)
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    dom = le & lt  # dom[p, q]: p dominates q
    counts = dom.sum(axis=0)
    fronts = []
    current = np.flatnonzero(counts == 0)
    while current.size:
        fronts.append(current.tolist())
        counts = counts - dom[current].sum(axis=0)
        counts[current] = -1
        current = np.flatnonzero(counts == 0)
    return fronts


def crowding_distance(front) -> np.ndarray:
    """Density estimate per front member; boundary members are infinite."""
    F = _objectives(front)
    size, n_obj = F.shape
    dist = np.zeros(size)
    if size <= 2:
        dist[:] = np.inf
        return dist
    for k in range(n_obj):
        order = np.argsort(F[:, k], kind="stable")
        vals = F[order, k]
        dist[order[0]] = dist[order[-1]] = np.inf
        span = vals[-1] - vals[0]
        if span > 0:
            dist[order[1:-1]] += (vals[2:] - vals[:-2]) / span
    return dist


@dataclass(eq=False)
class ParetoArchive:
    members: list
    ranks: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))
    crowding: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        if not self.members:
            raise ContractError("a Pareto archive cannot be empty")

    @property
    def objectives(self) -> np.ndarray:
        return _objectives(self.members)


@dataclass(eq=False)
class NSGA2Result:
    archive: ParetoArchive
    selected: Candidate
    evaluations: int = 0
    history: list = field(default_factory=list)


def select_final(archive: ParetoArchive, tol: float = 1e-12) -> Candidate:
    """Pick the member with the smallest sum of min-max normalized objectives.

    Sums within ``tol`` count as tied; ties go to the lower first objective,
    then to the earlier member.
    """
    F = archive.objectives
    lo, hi = F.min(axis=0), F.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    score = ((F - lo) / span).sum(axis=1)
    best = 0
    for i in range(1, len(F)):
        if score[i] < score[best] - tol:
            best = i
        elif abs(score[i] - score[best]) <= tol and F[i, 0] < F[best, 0]:
            best = i
    return archive.members[best]


def _assert_front_consistent(F: np.ndarray, front: list[int]):
    for p in front:
        for q in front:
            if p != q and dominates(F[p], F[q]):
                raise InvariantError("a rank-1 member dominates another rank-1 member")


def _survivors(F: np.ndarray, size: int):
    """Indices of the next population, filled front by front."""
    fronts = nondominated_sort(F)
    chosen, ranks, crowd = [], np.empty(F.shape[0], dtype=int), np.empty(F.shape[0])
    for r, front in enumerate(fronts):
        cd = crowding_distance(F[front])
        ranks[front] = r
        crowd[front] = cd
        if len(chosen) + len(front) <= size:
            chosen.extend(front)
        elif len(chosen) < size:
            by_crowd = np.argsort(-cd, kind="stable")
            chosen.extend(front[i] for i in by_crowd[: size - len(chosen)])
    return chosen, ranks, crowd, fronts


def nsga2_run(fitness2, cfg: OptimizerConfig, n: int, rng=None) -> NSGA2Result:
    """Minimize a pair of objectives; returns the final rank-1 archive and one pick.

    Parents come from binary tournaments on (rank, -crowding); offspring use the
    GA crossover and mutation; parents and offspring are merged and truncated
    back to ``popSize`` by front, then by crowding distance.
    """
    cfg.validate(n)
    rng = np.random.default_rng(cfg.seed) if rng is None else rng
    evaluate = fitness2 if isinstance(fitness2, FitnessCache) else FitnessCache(fitness2, n)
    size = cfg.popSize

    pop = [np.array(random_chromosome(n, cfg.nbp, rng).indices, dtype=float) for _ in range(size)]
    F = np.array(evaluate.evaluate([decode_repair(p, n) for p in pop]), dtype=float)
    _, ranks, crowd, fronts = _survivors(F, size)
    _assert_front_consistent(F, fronts[0])
    history = [tuple(F.min(axis=0))]

    def tournament() -> int:
        a, b = (int(v) for v in rng.choice(size, size=2, replace=size < 2))
        if ranks[a] != ranks[b]:
            return a if ranks[a] < ranks[b] else b
        return a if crowd[a] >= crowd[b] else b

    for _ in range(cfg.nGen):
        children = make_offspring(pop, size, cfg, n, rng, tournament)
        child_F = np.array(evaluate.evaluate([decode_repair(c, n) for c in children]), dtype=float)
        merged = pop + children
        merged_F = np.vstack([F, child_F])
        chosen, _, _, merged_fronts = _survivors(merged_F, size)
        _assert_front_consistent(merged_F, merged_fronts[0])
        pop = [merged[i] for i in chosen]
        F = merged_F[chosen]
        _, ranks, crowd, fronts = _survivors(F, size)
        _assert_front_consistent(F, fronts[0])
        history.append(tuple(F.min(axis=0)))

    members, seen = [], set()
    for i in fronts[0]:
        c = decode_repair(pop[i], n)
        if c.indices in seen:
            continue
        seen.add(c.indices)
        members.append(Candidate(pop[i], c, tuple(float(v) for v in F[i])))
    archive = ParetoArchive(
        members,
        ranks=np.zeros(len(members), dtype=int),
        crowding=crowding_distance(members),
    )
    return NSGA2Result(archive, select_final(archive), evaluate.calls, history)
