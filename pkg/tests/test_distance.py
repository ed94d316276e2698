import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import S1, S2, S3
from tsreduce.dataset import TimeSeries
from tsreduce.distance import (
    euclidean,
    mindist,
    mindist_table,
    paa_distance,
    pairwise_euclidean,
    pairwise_mindist,
    reduced_distance,
)
from tsreduce.dataset import znormalize_values
from tsreduce.errors import ContractError
from tsreduce.representation import (
    SaxWord,
    TimestampChromosome,
    gaussian_breakpoints,
    paa,
    sax,
    sax_symbols,
)


def _direct(s, t):
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(s, t)))


def test_euclidean_examples():
    assert euclidean([0, 0], [3, 4]) == 5
    assert euclidean(S1, S1) == 0
    # differences 2,-14,16,-4,8,-14,7,-1 give 782
    assert euclidean(S1, S2) == pytest.approx(math.sqrt(782), rel=1e-15)
    assert euclidean(S1, S2) == pytest.approx(_direct(S1, S2), rel=1e-15)


def test_euclidean_length_mismatch():
    with pytest.raises(ContractError):
        euclidean([1, 2], [1, 2, 3])


def test_reduced_distance_examples():
    full = TimestampChromosome.full(8)
    assert reduced_distance(S1, S2, full) == euclidean(S1, S2)
    assert reduced_distance(S1, S1, TimestampChromosome((2, 6), 8)) == 0
    assert reduced_distance(TimeSeries(S1), TimeSeries(S2), TimestampChromosome((1, 5), 8)) == \
        pytest.approx(math.sqrt(68))
    with pytest.raises(ContractError):
        reduced_distance(S1, S2, TimestampChromosome((1, 5), 9))


def test_paa_distance_examples():
    assert paa_distance([2, -0.5], [1, -3], 8, 2) == pytest.approx(2 * math.sqrt(7.25))
    assert paa_distance(paa(S1, 2), paa(S2, 2), 8, 2) == 0
    assert paa_distance(S1, S3, 8, 8) == pytest.approx(euclidean(S1, S3))
    with pytest.raises(ContractError):
        paa_distance([1, 2], [1, 2, 3], 8, 2)


def _interval_gap_cell(alpha, r, c):
    # independent form: distance between the two symbols' value intervals
    edges = np.concatenate([[-np.inf], gaussian_breakpoints(alpha), [np.inf]])
    lo, hi = sorted((r, c))
    gap = edges[hi] - edges[lo + 1]
    return max(0.0, gap) if np.isfinite(gap) else 0.0


@pytest.mark.parametrize("alpha", range(3, 11))
def test_mindist_table_matches_interval_gaps(alpha):
    table = mindist_table(alpha).cells
    for r, c in itertools.product(range(alpha), repeat=2):
        assert table[r, c] == pytest.approx(_interval_gap_cell(alpha, r, c), abs=1e-12)
    np.testing.assert_array_equal(table, table.T)
    assert np.all(np.diag(table) == 0)
    for r in range(alpha - 1):
        assert table[r, r + 1] == 0


def test_mindist_examples():
    w = SaxWord((0, 1, 2, 3), 4, 8)
    assert mindist(w, w) == 0
    assert mindist(SaxWord((0,) * 4, 4, 8), SaxWord((1,) * 4, 4, 8)) == 0
    single = mindist(SaxWord((0,), 4, 1), SaxWord((3,), 4, 1))
    assert single == pytest.approx(2 * 0.6744897501960817, abs=1e-12)
    assert single == pytest.approx(1.349, abs=5e-4)
    with pytest.raises(ContractError):
        mindist(SaxWord((0,), 4, 1), SaxWord((0,), 5, 1))


def test_pairwise_kernels_agree_with_scalar_versions(rng):
    X = rng.normal(size=(6, 10))
    Y = rng.normal(size=(4, 10))
    D = pairwise_euclidean(X, Y)
    for i, j in itertools.product(range(6), range(4)):
        assert D[i, j] == pytest.approx(euclidean(X[i], Y[j]), rel=1e-14)
    A, B = sax_symbols(X, 5, 6), sax_symbols(Y, 5, 6)
    M = pairwise_mindist(A, B, 6, 10)
    for i, j in itertools.product(range(6), range(4)):
        expected = mindist(SaxWord(tuple(A[i]), 6, 10), SaxWord(tuple(B[j]), 6, 10))
        assert M[i, j] == pytest.approx(expected, rel=1e-14)


pairs = st.integers(8, 64).flatmap(
    lambda n: st.tuples(
        arrays(float, n, elements=st.floats(-100, 100, allow_subnormal=False)),
        arrays(float, n, elements=st.floats(-100, 100, allow_subnormal=False)),
        st.sets(st.integers(1, n), min_size=2, max_size=n),
        st.integers(1, n),
        st.integers(3, 10),
    )
)


@given(pairs)
def test_lower_bound_chain(case):
    s, t, idx, N, alpha = case
    n = len(s)
    full = euclidean(s, t)
    c = TimestampChromosome(tuple(sorted(idx)), n)
    assert reduced_distance(s, t, c) <= full * (1 + 1e-9) + 1e-12
    assert paa_distance(paa(s, N), paa(t, N), n, N) <= full * (1 + 1e-9) + 1e-12
    zs, zt = znormalize_values(s), znormalize_values(t)
    md = mindist(sax(s, N, alpha), sax(t, N, alpha))
    pd = paa_distance(paa(zs, N), paa(zt, N), n, N)
    assert md <= pd * (1 + 1e-9) + 1e-12
    assert pd <= euclidean(zs, zt) * (1 + 1e-9) + 1e-12


@given(arrays(float, (3, 12), elements=st.floats(-1e3, 1e3, allow_subnormal=False)))
def test_metric_properties(X):
    a, b, c = X
    assert euclidean(a, b) == euclidean(b, a) >= 0
    assert euclidean(a, c) <= euclidean(a, b) + euclidean(b, c) + 1e-9
    wa, wb = sax(a, 4, 5), sax(b, 4, 5)
    assert mindist(wa, wb) == mindist(wb, wa) >= 0
