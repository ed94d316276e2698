"""Distance kernels on raw and reduced representations.

Every reduced-space distance here lower-bounds the Euclidean distance on the
raw series, which is what makes indexing on the reduced data safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContractError
from .representation import (
    SaxWord,
    TimestampChromosome,
    _values,
    gaussian_breakpoints,
)


def euclidean(s, t) -> float:
    a, b = _values(s), _values(t)
    if a.shape != b.shape:
        raise ContractError(f"length mismatch: {a.shape[0]} vs {b.shape[0]}")
    d = a - b
    return float(np.sqrt(np.dot(d, d)))


def reduced_distance(s, t, c: TimestampChromosome) -> float:
    """Euclidean distance restricted to the chromosome's timestamps."""
    a, b = _values(s), _values(t)
    if not a.shape[0] == b.shape[0] == c.n:
        raise ContractError(
            f"series lengths {a.shape[0]}, {b.shape[0]} and chromosome length {c.n} must agree"
        )
    idx = c.zero_based
    return euclidean(a[idx], b[idx])


def paa_distance(sp, tp, n: int, N: int) -> float:
    sp, tp = np.asarray(sp, dtype=float), np.asarray(tp, dtype=float)
    if sp.shape != (N,) or tp.shape != (N,):
        raise ContractError(f"PAA sequences must both have length {N}")
    return float(np.sqrt(n / N) * euclidean(sp, tp))


@dataclass(frozen=True, eq=False)
class MindistTable:
    alpha: int
    cells: np.ndarray


@lru_cache(maxsize=None)
def mindist_table(alpha: int) -> MindistTable:
    """Symbol-pair lookup table; adjacent or equal symbols cost nothing."""
    beta = gaussian_breakpoints(alpha)
    r = np.arange(alpha)[:, None]
    c = np.arange(alpha)[None, :]
    hi, lo = np.maximum(r, c), np.minimum(r, c)
    # symbol k spans [beta[k-1], beta[k]) with 0-based breakpoint array
    gap = beta[np.clip(hi - 1, 0, alpha - 2)] - beta[np.clip(lo, 0, alpha - 2)]
    cells = np.where(hi - lo <= 1, 0.0, gap)
    cells.setflags(write=False)
    return MindistTable(alpha, cells)


def mindist(a: SaxWord, b: SaxWord) -> float:
    if a.alpha != b.alpha or a.N != b.N or a.n != b.n:
        raise ContractError("SAX words must share alphabet size, word length and source length")
    cells = mindist_table(a.alpha).cells[np.array(a.symbols), np.array(b.symbols)]
    return float(np.sqrt(a.n / a.N) * np.sqrt(np.dot(cells, cells)))


def pairwise_euclidean(X: np.ndarray, Y: np.ndarray | None = None) -> np.ndarray:
    """All-pairs Euclidean distances between rows, by explicit differences.

    The expansion trick (|x|^2 + |y|^2 - 2xy) is avoided so that results are
    identical to :func:`euclidean` on each pair.
    """
    X = np.asarray(X, dtype=float)
    Y = X if Y is None else np.asarray(Y, dtype=float)
    diff = X[:, None, :] - Y[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def pairwise_mindist(A: np.ndarray, B: np.ndarray, alpha: int, n: int) -> np.ndarray:
    """MINDIST between every row of symbol matrices ``A`` and ``B``."""
    A, B = np.asarray(A), np.asarray(B)
    cells = mindist_table(alpha).cells[A[:, None, :], B[None, :, :]]
    N = A.shape[1]
    return np.sqrt(n / N) * np.sqrt(np.einsum("ijk,ijk->ij", cells, cells))
