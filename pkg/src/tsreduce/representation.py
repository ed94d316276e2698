"""Reduced representations: timestamp projection, PAA and SAX."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np
from scipy.stats import norm

from .dataset import LabeledDataset, TimeSeries, znormalize_values
from .errors import ContractError

MIN_ALPHABET = 3
MAX_ALPHABET = 10

ArrayLike = Union[Sequence[float], np.ndarray, TimeSeries]


def _values(s: ArrayLike) -> np.ndarray:
    if isinstance(s, TimeSeries):
        return s.values
    return np.asarray(s, dtype=float)


@dataclass(frozen=True)
class TimestampChromosome:
    """Strictly ascending 1-based timestamp positions shared by a whole dataset."""

    indices: tuple
    n: int

    def __post_init__(self):
        arr = np.asarray(self.indices)
        if arr.ndim != 1 or (arr.size and not np.all(arr == np.round(arr))):
            raise ContractError(f"timestamps must be a flat sequence of integers, got {self.indices!r}")
        idx = tuple(arr.astype(np.int64).tolist())
        if len(idx) < 2:
            raise ContractError(f"a chromosome needs at least 2 timestamps, got {len(idx)}")
        if len(idx) > self.n:
            raise ContractError(f"{len(idx)} timestamps cannot fit in a length-{self.n} series")
        if idx[0] < 1 or idx[-1] > self.n:
            raise ContractError(f"timestamps must lie in [1, {self.n}], got {idx}")
        if np.any(np.diff(idx) <= 0):
            raise ContractError(f"timestamps must be strictly ascending, got {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def nbp(self) -> int:
        return len(self.indices)

    @property
    def zero_based(self) -> np.ndarray:
        return np.array(self.indices, dtype=np.intp) - 1

    @classmethod
    def full(cls, n: int) -> "TimestampChromosome":
        return cls(tuple(range(1, n + 1)), n)


def project(s: TimeSeries, c: TimestampChromosome) -> TimeSeries:
    """Keep only the values at the chromosome's timestamps."""
    if s.n != c.n:
        raise ContractError(f"series length {s.n} does not match chromosome length {c.n}")
    return TimeSeries(s.values[c.zero_based], s.label)


def project_dataset(ds: LabeledDataset, c: TimestampChromosome) -> LabeledDataset:
    if ds.n != c.n:
        raise ContractError(f"dataset length {ds.n} does not match chromosome length {c.n}")
    return ds.with_values(ds.X[:, c.zero_based])


@lru_cache(maxsize=256)
def _paa_pieces(n: int, N: int):
    # Point i spans [i*N, (i+1)*N) and frame j spans [j*n, (j+1)*n) on a common
    # integer grid; cutting at both sets of edges gives pieces that each lie in
    # one point and one frame, with exact integer lengths.
    edges = np.union1d(np.arange(n + 1) * N, np.arange(N + 1) * n)
    starts = edges[:-1]
    lengths = np.diff(edges).astype(float)
    first = np.searchsorted(starts, np.arange(N) * n)
    for a in (starts, lengths, first):
        a.setflags(write=False)
    return starts // N, lengths, first


def paa_values(X: np.ndarray, N: int) -> np.ndarray:
    """PAA applied along the last axis of ``X``."""
    X = np.asarray(X, dtype=float)
    n = X.shape[-1]
    if not 1 <= N <= n:
        raise ContractError(f"segment count must be in [1, {n}], got {N}")
    if n % N == 0:
        return X.reshape(X.shape[:-1] + (N, n // N)).mean(axis=-1)
    point, lengths, first = _paa_pieces(n, N)
    return np.add.reduceat(X[..., point] * lengths, first, axis=-1) / n


def paa(s: ArrayLike, N: int) -> np.ndarray:
    """Piecewise aggregate approximation with ``N`` segments.

    When ``N`` does not divide the length, each point contributes to the frames it
    overlaps in proportion to the overlap.
    """
    return paa_values(_values(s), N)


def _check_alphabet(alpha: int):
    if not MIN_ALPHABET <= alpha <= MAX_ALPHABET:
        raise ContractError(
            f"alphabet size must be in [{MIN_ALPHABET}, {MAX_ALPHABET}], got {alpha}"
        )


@lru_cache(maxsize=None)
def _breakpoints(alpha: int) -> np.ndarray:
    beta = norm.ppf(np.arange(1, alpha) / alpha)
    beta.setflags(write=False)
    return beta


def gaussian_breakpoints(alpha: int) -> np.ndarray:
    """Cut points splitting the standard normal into ``alpha`` equiprobable bins."""
    _check_alphabet(alpha)
    return _breakpoints(alpha)


@dataclass(frozen=True)
class SaxWord:
    symbols: tuple
    alpha: int
    n: int

    def __post_init__(self):
        _check_alphabet(self.alpha)
        arr = np.asarray(self.symbols, dtype=np.int64).ravel()
        if not arr.size:
            raise ContractError("a SAX word needs at least one symbol")
        sym = tuple(arr.tolist())
        if arr.min() < 0 or arr.max() >= self.alpha:
            raise ContractError(f"symbols must lie in [0, {self.alpha - 1}]")
        object.__setattr__(self, "symbols", sym)

    @property
    def N(self) -> int:
        return len(self.symbols)

    def __str__(self):
        return "".join(chr(ord("a") + v) for v in self.symbols)

    @classmethod
    def from_string(cls, text: str, alpha: int, n: int) -> "SaxWord":
        return cls(tuple(ord(ch) - ord("a") for ch in text), alpha, n)


def discretize(values: np.ndarray, alpha: int) -> np.ndarray:
    # half-open bins [b_k, b_{k+1}): a value on a breakpoint goes to the upper bin
    return np.searchsorted(gaussian_breakpoints(alpha), values, side="right")


def sax_symbols(X: np.ndarray, N: int, alpha: int) -> np.ndarray:
    """Integer SAX symbols for every row of ``X``."""
    return discretize(paa_values(znormalize_values(X), N), alpha)


def sax(s: ArrayLike, N: int, alpha: int) -> SaxWord:
    values = _values(s)
    return SaxWord(tuple(sax_symbols(values, N, alpha)), alpha, values.shape[0])


def bin_centers(alpha: int) -> np.ndarray:
    """Representative value per symbol: breakpoint midpoints, outer bins at +/-0.5 past the edge."""
    beta = gaussian_breakpoints(alpha)
    inner = (beta[:-1] + beta[1:]) / 2
    return np.concatenate([[beta[0] - 0.5], inner, [beta[-1] + 0.5]])
