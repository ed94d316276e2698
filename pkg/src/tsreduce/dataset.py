"""Time series containers and UCR text-format ingestion."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from .errors import ContractError, EmptyDatasetError, FormatError

logger = logging.getLogger(__name__)

_SPLIT = re.compile(r"[,\s]+")


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """An ordered sequence of finite observations with an optional class label."""

    values: np.ndarray
    label: Optional[int] = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise ContractError("time series values must be one-dimensional")
        if values.shape[0] < 2:
            raise ContractError(f"time series needs at least 2 values, got {values.shape[0]}")
        if not np.all(np.isfinite(values)):
            raise ContractError("time series values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __len__(self):
        return self.n


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """A uniform-length collection of labeled series stored as a matrix.

    ``X`` has one row per series; ``labels`` holds the integer class of each row.
    """

    name: str
    X: np.ndarray
    labels: np.ndarray
    label_names: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        X = np.array(self.X, dtype=float)
        labels = np.array(self.labels)
        if X.ndim != 2 or X.shape[0] == 0:
            raise EmptyDatasetError("dataset must contain at least one series")
        if X.shape[1] < 2:
            raise ContractError(f"series length must be at least 2, got {X.shape[1]}")
        if not np.all(np.isfinite(X)):
            raise ContractError("dataset values must be finite")
        if labels.shape != (X.shape[0],):
            raise ContractError("every series must carry exactly one label")
        labels = labels.astype(np.int64)
        X.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_series(cls, name: str, series: Sequence[TimeSeries]) -> "LabeledDataset":
        if not series:
            raise EmptyDatasetError("dataset must contain at least one series")
        lengths = {s.n for s in series}
        if len(lengths) != 1:
            raise ContractError(f"series lengths differ: {sorted(lengths)}")
        if any(s.label is None for s in series):
            raise ContractError("every series in a labeled dataset needs a label")
        return cls(name, np.vstack([s.values for s in series]), np.array([s.label for s in series]))

    @property
    def n(self) -> int:
        return self.X.shape[1]

    @property
    def classes(self) -> frozenset:
        return frozenset(int(c) for c in np.unique(self.labels))

    @property
    def series(self) -> list[TimeSeries]:
        return [TimeSeries(row, int(lab)) for row, lab in zip(self.X, self.labels)]

    def __len__(self):
        return self.X.shape[0]

    def __iter__(self) -> Iterator[TimeSeries]:
        return iter(self.series)

    def __getitem__(self, i: int) -> TimeSeries:
        return TimeSeries(self.X[i], int(self.labels[i]))

    def with_values(self, X: np.ndarray, name: Optional[str] = None) -> "LabeledDataset":
        """Same labels, new value matrix (used for projections and normalization)."""
        return LabeledDataset(name or self.name, X, self.labels, self.label_names)

    def require_classes(self, minimum: int = 2):
        if len(self.classes) < minimum:
            raise ContractError(
                f"dataset {self.name!r} has {len(self.classes)} class(es); need at least {minimum}"
            )


@dataclass(frozen=True)
class DatasetPair:
    train: LabeledDataset
    test: LabeledDataset

    def __post_init__(self):
        if self.train.n != self.test.n:
            raise ContractError(
                f"train length {self.train.n} differs from test length {self.test.n}"
            )
        unseen = self.test.classes - self.train.classes
        if unseen:
            logger.warning("test labels %s are absent from the training set", sorted(unseen))

    @property
    def n(self) -> int:
        return self.train.n


def _parse_label(token: str):
    try:
        value = float(token)
    except ValueError:
        return None
    if np.isfinite(value) and value == int(value):
        return int(value)
    return None


def parse_ucr(text: str, name: str = "dataset", label_map: Optional[dict] = None) -> LabeledDataset:
    """Parse UCR text: one series per line, label first, comma or whitespace separated.

    Numeric integral labels are kept as integers. Any other label text is mapped
    to a dense id; pass the same ``label_map`` dict when parsing a train/test pair
    so both files agree on the ids.
    """
    rows = []
    raw_labels = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        fields = [f for f in _SPLIT.split(stripped) if f]
        if width is None:
            width = len(fields)
            if width < 3:
                raise FormatError(
                    f"expected a label and at least 2 values, found {width} field(s)", line=lineno
                )
        elif len(fields) != width:
            raise FormatError(
                f"ragged row: expected {width} fields, found {len(fields)}", line=lineno
            )
        values = []
        for col, token in enumerate(fields[1:], start=2):
            try:
                values.append(float(token))
            except ValueError:
                raise FormatError(f"non-numeric value {token!r}", line=lineno, column=col) from None
        if not all(np.isfinite(values)):
            raise FormatError("non-finite value", line=lineno)
        rows.append(values)
        raw_labels.append(fields[0])
    if not rows:
        raise EmptyDatasetError(f"no series found in {name!r}")

    parsed = [_parse_label(tok) for tok in raw_labels]
    label_names: dict[int, str] = {}
    if all(p is not None for p in parsed):
        labels = parsed
    else:
        # any non-integral label switches the whole file to dense ids
        mapping = label_map if label_map is not None else {}
        for tok in sorted(set(raw_labels)):
            if tok not in mapping:
                mapping[tok] = len(mapping)
        labels = [mapping[tok] for tok in raw_labels]
        label_names = {v: k for k, v in mapping.items()}
    return LabeledDataset(name, np.array(rows), np.array(labels), label_names)


def serialize_ucr(ds: LabeledDataset) -> str:
    """Canonical UCR text: comma separated, label first, 17 significant digits."""
    lines = []
    for row, label in zip(ds.X, ds.labels):
        lines.append(",".join([str(int(label))] + [format(v, ".17g") for v in row]))
    return "\n".join(lines) + "\n"


def load_ucr(path, name: Optional[str] = None, label_map: Optional[dict] = None) -> LabeledDataset:
    path = Path(path)
    return parse_ucr(path.read_text(), name or path.stem, label_map)


def load_pair(train_path, test_path, name: Optional[str] = None) -> DatasetPair:
    label_map: dict = {}
    train_path = Path(train_path)
    if name is None:
        name = re.sub(r"_(TRAIN|train)$", "", train_path.stem)
    train = load_ucr(train_path, name, label_map)
    test = load_ucr(test_path, name, label_map)
    return DatasetPair(train, test)


def znormalize_values(values: np.ndarray) -> np.ndarray:
    """Row-wise z-normalization with population std; constant rows become zeros."""
    values = np.asarray(values, dtype=float)
    mean = values.mean(axis=-1, keepdims=True)
    std = values.std(axis=-1, keepdims=True)
    # std can underflow to 0 for subnormal spreads; treat those as constant too
    constant = (np.ptp(values, axis=-1, keepdims=True) == 0) | (std == 0)
    safe = np.where(constant, 1.0, std)
    return np.where(constant, 0.0, (values - mean) / safe)


def znormalize(s: TimeSeries) -> TimeSeries:
    """Shift to mean 0 and scale to population standard deviation 1.

    A constant input has no scale to remove and maps to the all-zeros series.
    """
    return TimeSeries(znormalize_values(s.values), s.label)


def znormalize_dataset(ds: LabeledDataset) -> LabeledDataset:
    return ds.with_values(znormalize_values(ds.X))
