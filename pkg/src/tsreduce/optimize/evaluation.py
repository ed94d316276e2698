"""Fitness evaluation shared by all optimizers.

Stochastic draws all happen before a batch is evaluated, so running the batch
on several threads cannot change results.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from ..errors import InvariantError
from ..representation import TimestampChromosome


def worker_count() -> int:
    raw = os.environ.get("TSREDUCE_THREADS", "1").strip() or "1"
    try:
        threads = int(raw)
    except ValueError:
        threads = 1
    if threads <= 0:
        threads = os.cpu_count() or 1
    return threads


class FitnessCache:
    """Memoizes a chromosome -> fitness function and checks every chromosome it sees."""

    def __init__(self, fitness: Callable[[TimestampChromosome], object], n: int, threads=None):
        self.fitness = fitness
        self.n = n
        self.threads = worker_count() if threads is None else threads
        self.calls = 0
        self._cache: dict = {}

    def _check(self, c: TimestampChromosome):
        idx = c.indices
        ok = (
            c.n == self.n
            and len(idx) >= 2
            and idx[0] >= 1
            and idx[-1] <= self.n
            and all(a < b for a, b in zip(idx, idx[1:]))
        )
        if not ok:
            raise InvariantError(f"invalid chromosome reached the fitness function: {c}")

    def __call__(self, c: TimestampChromosome):
        return self.evaluate([c])[0]

    def evaluate(self, chromosomes: Sequence[TimestampChromosome]) -> list:
        for c in chromosomes:
            self._check(c)
        todo = []
        for c in chromosomes:
            if c.indices not in self._cache and c.indices not in todo:
                todo.append(c.indices)
        if todo:
            pending = [TimestampChromosome(t, self.n) for t in todo]
            if self.threads > 1 and len(pending) > 1:
                with ThreadPoolExecutor(max_workers=self.threads) as pool:
                    values = list(pool.map(self.fitness, pending))
            else:
                values = [self.fitness(c) for c in pending]
            self.calls += len(pending)
            self._cache.update(zip(todo, values))
        return [self._cache[c.indices] for c in chromosomes]
