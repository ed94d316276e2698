"""Mapping between real-valued genotypes and valid timestamp chromosomes."""

from __future__ import annotations

import numpy as np

from ..errors import ContractError
from ..representation import TimestampChromosome


def round_half_up(x):
    return np.floor(np.asarray(x, dtype=float) + 0.5)


def decode_repair(position, n: int) -> TimestampChromosome:
    """Round, clamp to [1, n], sort, and push duplicates to the nearest free slot.

    A collision is moved to the closest unused integer, trying above before below
    at each distance. Already valid ascending integer input comes back unchanged.
    """
    position = np.asarray(position, dtype=float)
    nbp = position.shape[0]
    if nbp > n:
        raise ContractError(f"{nbp} timestamps cannot fit in a length-{n} series")
    values = np.clip(round_half_up(np.nan_to_num(position, nan=1.0)), 1, n).astype(int)
    values.sort()
    used = set()
    out = []
    for v in values.tolist():
        if v in used:
            for step in range(1, n):
                if v + step <= n and v + step not in used:
                    v += step
                    break
                if v - step >= 1 and v - step not in used:
                    v -= step
                    break
        used.add(v)
        out.append(v)
    return TimestampChromosome(tuple(sorted(out)), n)


def random_chromosome(n: int, nbp: int, rng: np.random.Generator) -> TimestampChromosome:
    """``nbp`` distinct timestamps drawn uniformly without replacement."""
    if nbp > n:
        raise ContractError(f"{nbp} timestamps cannot fit in a length-{n} series")
    return TimestampChromosome(tuple(np.sort(rng.choice(n, size=nbp, replace=False)) + 1), n)
