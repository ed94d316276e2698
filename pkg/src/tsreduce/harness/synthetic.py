"""Synthetic datasets with known ground truth for end-to-end checks."""

from __future__ import annotations

import numpy as np

from ..dataset import DatasetPair, LabeledDataset
from ..errors import ContractError

# Two opposite-sign pairs, each inside one 16-point segment, so segment means
# carry no class information at a 1:16 ratio. Background noise is loud and the
# planted points are quiet, so a selection that keeps background points pays
# for it in 1NN error.
PLANTED_TIMESTAMPS = (5, 12, 37, 44)
PLANTED_SIGNS = (1.0, -1.0, 1.0, -1.0)


def planted_signal(
    m: int,
    n: int = 64,
    timestamps=PLANTED_TIMESTAMPS,
    signs=PLANTED_SIGNS,
    amplitude: float = 1.0,
    noise: float = 5.0,
    planted_noise: float | None = 0.5,
    rng=None,
    name: str = "planted",
) -> LabeledDataset:
    """Two balanced classes that differ only at ``timestamps`` (1-based).

    Class 1 gets ``+amplitude * sign`` added at each planted timestamp and class 0
    gets the negative. Every value carries Gaussian noise with std ``noise``,
    except the planted ones, which use ``planted_noise`` when given.
    """
    if not all(1 <= t <= n for t in timestamps):
        raise ContractError(f"planted timestamps must lie in [1, {n}]")
    rng = np.random.default_rng(rng)
    labels = np.arange(m) % 2
    X = rng.normal(0.0, noise, size=(m, n))
    idx = np.asarray(timestamps) - 1
    class_sign = np.where(labels == 1, 1.0, -1.0)[:, None]
    if planted_noise is not None:
        X[:, idx] *= planted_noise / noise
    X[:, idx] += amplitude * class_sign * np.asarray(signs)[None, :]
    return LabeledDataset(name, X, labels)


def planted_signal_pair(
    m_train: int = 40, m_test: int = 40, n: int = 64, seed: int = 0, **kwargs
) -> DatasetPair:
    rng = np.random.default_rng(seed)
    train = planted_signal(m_train, n, rng=rng, **kwargs)
    test = planted_signal(m_test, n, rng=rng, **kwargs)
    return DatasetPair(train, test)


def conflicting_objectives(m: int = 48, n: int = 16, rng=None, name: str = "conflict") -> LabeledDataset:
    """Two classes whose 1NN-friendly and k-means-friendly timestamps differ.

    Timestamps 2 and 3 hold an XOR layout: four tight blobs, class given by the
    sign product, so 1NN is exact while a 2-means split is half pure. Timestamps
    9 and 10 hold two broad, shifted Gaussians: k-means recovers the classes
    well but 1NN makes mistakes in the overlap. Everything else is noise.
    """
    rng = np.random.default_rng(rng)
    labels = np.arange(m) % 2
    X = rng.normal(0.0, 1.0, size=(m, n))
    quad = rng.permutation(np.arange(m) // 2 % 2)
    sx = np.where(quad == 1, 1.0, -1.0)
    sy = np.where(labels == 1, sx, -sx)
    X[:, 1] = 4.0 * sx + rng.normal(0, 0.3, m)
    X[:, 2] = 4.0 * sy + rng.normal(0, 0.3, m)
    shift = np.where(labels == 1, 1.0, -1.0)
    X[:, 8] = 1.3 * shift + rng.normal(0, 0.8, m)
    X[:, 9] = 1.3 * shift + rng.normal(0, 0.8, m)
    return LabeledDataset(name, X, labels)
