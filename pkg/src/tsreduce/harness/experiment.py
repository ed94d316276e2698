"""Train-stage optimization, test-stage validation, and multi-run aggregation."""

from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from ..dataset import DatasetPair, LabeledDataset, load_pair, znormalize_dataset
from ..distance import euclidean, pairwise_euclidean, pairwise_mindist
from ..errors import ContractError, InvariantError
from ..mining import (
    clustering_quality,
    kmeans,
    loocv_error_from_distances,
    nn1_predict_from_distances,
)
from ..optimize import OPTIMIZERS, OptimizerConfig, select_final
from ..optimize.encoding import round_half_up
from ..representation import (
    MAX_ALPHABET,
    MIN_ALPHABET,
    TimestampChromosome,
    bin_centers,
    paa_values,
    sax_symbols,
)

logger = logging.getLogger(__name__)

METHODS = ("ga", "de", "pso", "nsga2", "paa", "sax")
TASKS = ("classify", "cluster", "multi")
STANDARD_RATIOS = (4, 8, 12, 16)

CE = "classification_error"
CQ = "clustering_quality"


def nbp_from_ratio(n: int, ratio: int) -> int:
    """Reduced length for a 1:ratio compression, never below 2."""
    if ratio < 1:
        raise ContractError(f"compression ratio must be at least 1, got {ratio}")
    return max(2, int(round_half_up(n / ratio)))


@dataclass
class ExperimentSpec:
    method: str
    task: str
    train_path: Optional[str] = None
    test_path: Optional[str] = None
    dataset: Optional[str] = None
    ratio: Optional[int] = 4
    nbp: Optional[int] = None
    runs: int = 5
    seed: int = 0
    normalize: bool = False
    quality_metric: str = "purity"
    popSize: int = 16
    nGen: int = 100

    def validate(self) -> "ExperimentSpec":
        if self.method not in METHODS:
            raise ContractError(f"unknown method {self.method!r}; choose from {METHODS}")
        if self.task not in TASKS:
            raise ContractError(f"unknown task {self.task!r}; choose from {TASKS}")
        if self.task == "multi" and self.method != "nsga2":
            raise ContractError("the multi task requires method 'nsga2'")
        if self.method == "nsga2" and self.task != "multi":
            raise ContractError("nsga2 only runs the multi task")
        if self.runs < 1:
            raise ContractError(f"runs must be positive, got {self.runs}")
        if self.nbp is None and self.ratio is None:
            raise ContractError("give either a compression ratio or an explicit nbp")
        if self.nbp is None and self.method in ("paa", "sax") and self.ratio != 4:
            logger.warning("baseline %s at ratio 1:%s is outside the standard 1:4 setting",
                           self.method, self.ratio)
        return self

    def resolve_nbp(self, n: int) -> int:
        nbp = self.nbp if self.nbp is not None else nbp_from_ratio(n, self.ratio)
        if not 2 <= nbp <= n:
            raise ContractError(f"nbp must be in [2, {n}], got {nbp}")
        return nbp


@dataclass
class RunResult:
    seed: int
    timestamps: Optional[list]
    train_fitness: object
    test: dict
    train_seconds: float = 0.0
    alpha: Optional[int] = None


@dataclass
class ExperimentResult:
    dataset: str
    method: str
    task: str
    ratio: Optional[int]
    nbp: int
    runs: list = field(default_factory=list)
    aggregate: dict = field(default_factory=dict)

    @property
    def train_seconds_mean(self) -> float:
        return float(np.mean([r.train_seconds for r in self.runs])) if self.runs else 0.0

    def metric_mean(self, metric: str) -> float:
        return self.aggregate[metric]["mean"]


def aggregate_runs(runs: list) -> dict:
    metrics = sorted({k for r in runs for k in r.test})
    out = {}
    for m in metrics:
        values = np.array([r.test[m] for r in runs], dtype=float)
        out[m] = {"mean": float(values.mean()), "std": float(values.std())}
    return out


# -- fitness functions -------------------------------------------------------

def classification_fitness(train: LabeledDataset):
    X, y = train.X, train.labels

    def fitness(c: TimestampChromosome) -> float:
        return loocv_error_from_distances(pairwise_euclidean(X[:, c.zero_based]), y)

    return fitness


def clustering_fitness(train: LabeledDataset, seed: int, metric: str = "purity"):
    """1 - quality, with a k-means seed fixed per run so fitness is a pure function."""
    X, y = train.X, train.labels
    k = min(len(train.classes), len(train))

    def fitness(c: TimestampChromosome) -> float:
        result = kmeans(X[:, c.zero_based], k, seed)
        return 1.0 - clustering_quality(result.assignments, y, metric)

    return fitness


def multi_fitness(train: LabeledDataset, seed: int, metric: str = "purity"):
    ce = classification_fitness(train)
    cq = clustering_fitness(train, seed, metric)
    return lambda c: (ce(c), cq(c))


# -- test stage --------------------------------------------------------------

def _holdout_from(train_X, train_y, test_X, test_y, scale: float = 1.0) -> float:
    predicted = nn1_predict_from_distances(scale * pairwise_euclidean(test_X, train_X), train_y)
    return int(np.count_nonzero(predicted != test_y)) / len(test_y)


def _kmeans_quality(X, labels, seed, metric) -> float:
    k = min(len(np.unique(labels)), X.shape[0])
    return clustering_quality(kmeans(X, k, seed).assignments, labels, metric)


def check_lower_bound(pair: DatasetPair, c: TimestampChromosome, seed: int, fraction=0.01):
    """Spot-check reduced <= Euclidean on a random sample of test/train pairs."""
    rng = np.random.default_rng([seed, 7919])
    total = len(pair.test) * len(pair.train)
    count = max(1, int(total * fraction))
    flat = rng.choice(total, size=min(count, total), replace=False)
    idx = c.zero_based
    for f in flat:
        s = pair.test.X[f // len(pair.train)]
        t = pair.train.X[f % len(pair.train)]
        reduced, full = euclidean(s[idx], t[idx]), euclidean(s, t)
        if reduced > full * (1 + 1e-9):
            raise InvariantError(f"reduced distance {reduced} exceeds Euclidean {full}")


def evaluate_test_stage(pair: DatasetPair, c: TimestampChromosome, task: str, seed: int, metric: str) -> dict:
    idx = c.zero_based
    check_lower_bound(pair, c, seed)
    out = {}
    if task in ("classify", "multi"):
        out[CE] = _holdout_from(pair.train.X[:, idx], pair.train.labels,
                                pair.test.X[:, idx], pair.test.labels)
    if task in ("cluster", "multi"):
        out[CQ] = _kmeans_quality(pair.test.X[:, idx], pair.test.labels, seed, metric)
    return out


# -- drivers -----------------------------------------------------------------

def _optimizer_run(spec: ExperimentSpec, pair: DatasetPair, nbp: int, seed: int) -> RunResult:
    n = pair.n
    cfg = OptimizerConfig(nbp=nbp, popSize=spec.popSize, nGen=spec.nGen, seed=seed)
    train = pair.train
    if spec.task == "classify":
        fitness = classification_fitness(train)
    elif spec.task == "cluster":
        fitness = clustering_fitness(train, seed, spec.quality_metric)
    else:
        fitness = multi_fitness(train, seed, spec.quality_metric)
    start = time.perf_counter()
    result = OPTIMIZERS[spec.method](fitness, cfg, n)
    elapsed = time.perf_counter() - start
    if spec.method == "nsga2":
        best = select_final(result.archive)
        train_fitness = [float(v) for v in best.fitness]
    else:
        best = result.best
        train_fitness = float(best.fitness)
        if result.history[-1] > result.history[0]:
            raise InvariantError("final best fitness is worse than the initial best")
    c = best.chromosome
    return RunResult(
        seed=seed,
        timestamps=list(c.indices),
        train_fitness=train_fitness,
        test=evaluate_test_stage(pair, c, spec.task, seed, spec.quality_metric),
        train_seconds=elapsed,
    )


def _paa_run(spec: ExperimentSpec, pair: DatasetPair, nbp: int, seed: int) -> RunResult:
    n = pair.n
    start = time.perf_counter()
    train_P = paa_values(pair.train.X, nbp)
    test_P = paa_values(pair.test.X, nbp)
    scale = np.sqrt(n / nbp)
    if spec.task == "classify":
        train_fitness = loocv_error_from_distances(scale * pairwise_euclidean(train_P),
                                                   pair.train.labels)
    else:
        train_fitness = 1.0 - _kmeans_quality(train_P, pair.train.labels, seed, spec.quality_metric)
    elapsed = time.perf_counter() - start
    test = {}
    if spec.task == "classify":
        test[CE] = _holdout_from(train_P, pair.train.labels, test_P, pair.test.labels, scale)
    else:
        test[CQ] = _kmeans_quality(test_P, pair.test.labels, seed, spec.quality_metric)
    return RunResult(seed, None, float(train_fitness), test, elapsed)


def sax_train_score(train: LabeledDataset, nbp: int, alpha: int, task: str, seed: int,
                    metric: str = "purity") -> float:
    """Train-stage score for one alphabet size; lower is better for both tasks."""
    words = sax_symbols(train.X, nbp, alpha)
    if task == "classify":
        return loocv_error_from_distances(pairwise_mindist(words, words, alpha, train.n),
                                          train.labels)
    return 1.0 - _kmeans_quality(bin_centers(alpha)[words], train.labels, seed, metric)


def choose_alphabet(scores: dict) -> int:
    """Alphabet with the lowest score; ties go to the smallest alphabet."""
    return min(scores, key=lambda a: (scores[a], a))


def _sax_run(spec: ExperimentSpec, pair: DatasetPair, nbp: int, seed: int) -> RunResult:
    n = pair.n
    start = time.perf_counter()
    scores = {a: sax_train_score(pair.train, nbp, a, spec.task, seed, spec.quality_metric)
              for a in range(MIN_ALPHABET, MAX_ALPHABET + 1)}
    alpha = choose_alphabet(scores)
    elapsed = time.perf_counter() - start
    test_words = sax_symbols(pair.test.X, nbp, alpha)
    test = {}
    if spec.task == "classify":
        train_words = sax_symbols(pair.train.X, nbp, alpha)
        predicted = nn1_predict_from_distances(
            pairwise_mindist(test_words, train_words, alpha, n), pair.train.labels
        )
        test[CE] = int(np.count_nonzero(predicted != pair.test.labels)) / len(pair.test)
    else:
        test[CQ] = _kmeans_quality(bin_centers(alpha)[test_words], pair.test.labels, seed,
                                   spec.quality_metric)
    return RunResult(seed, None, float(scores[alpha]), test, elapsed, alpha=alpha)


def _prepare(spec: ExperimentSpec, pair: Optional[DatasetPair]) -> DatasetPair:
    spec.validate()
    if pair is None:
        if not spec.train_path or not spec.test_path:
            raise ContractError("train and test paths are required")
        pair = load_pair(spec.train_path, spec.test_path, spec.dataset)
    if spec.task in ("classify", "multi"):
        pair.train.require_classes(2)
    if spec.normalize:
        pair = DatasetPair(znormalize_dataset(pair.train), znormalize_dataset(pair.test))
    return pair


def _run_all(spec: ExperimentSpec, pair: DatasetPair, runner) -> ExperimentResult:
    nbp = spec.resolve_nbp(pair.n)
    runs = [runner(spec, pair, nbp, spec.seed + r) for r in range(spec.runs)]
    return ExperimentResult(
        dataset=spec.dataset or pair.train.name,
        method=spec.method,
        task=spec.task,
        ratio=spec.ratio if spec.nbp is None else None,
        nbp=nbp,
        runs=runs,
        aggregate=aggregate_runs(runs),
    )


def run_sax_baseline(spec: ExperimentSpec, pair: Optional[DatasetPair] = None) -> ExperimentResult:
    """SAX with the alphabet size picked on the training set (sizes 3 to 10)."""
    if spec.method != "sax":
        raise ContractError("run_sax_baseline needs method 'sax'")
    return _run_all(spec, _prepare(spec, pair), _sax_run)


def run_experiment(spec: ExperimentSpec, pair: Optional[DatasetPair] = None) -> ExperimentResult:
    """Run ``spec.runs`` train/test repetitions with seeds ``seed, seed+1, ...``."""
    pair = _prepare(spec, pair)
    if spec.method == "sax":
        return _run_all(spec, pair, _sax_run)
    if spec.method == "paa":
        return _run_all(spec, pair, _paa_run)
    return _run_all(spec, pair, _optimizer_run)


def spec_dict(spec: ExperimentSpec) -> dict:
    return asdict(spec)
