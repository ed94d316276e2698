import logging

import numpy as np
import pytest

from planted_oracle import candidate_pool, zero_error_quadruples
from tsreduce.errors import ContractError
from tsreduce.harness import CE, CQ, ExperimentSpec, nbp_from_ratio, run_experiment, run_sax_baseline
from tsreduce.harness.experiment import aggregate_runs, choose_alphabet, RunResult
from tsreduce.harness.synthetic import PLANTED_TIMESTAMPS, planted_signal_pair


@pytest.mark.parametrize("n, ratio, nbp", [(32, 4, 8), (24, 16, 2), (8, 8, 2), (64, 16, 4), (30, 4, 8)])
def test_nbp_from_ratio(n, ratio, nbp):
    assert nbp_from_ratio(n, ratio) == nbp


def test_nbp_from_ratio_rejects_zero():
    with pytest.raises(ContractError):
        nbp_from_ratio(10, 0)


@pytest.mark.parametrize("method, task", [("de", "multi"), ("nsga2", "classify"), ("knn", "classify"),
                                          ("de", "regress")])
def test_spec_validation(method, task):
    with pytest.raises(ContractError):
        ExperimentSpec(method=method, task=task).validate()


def test_baseline_beyond_standard_ratio_warns(caplog):
    with caplog.at_level(logging.WARNING):
        ExperimentSpec(method="paa", task="classify", ratio=8).validate()
    assert "1:8" in caplog.text


@pytest.fixture(scope="module")
def planted():
    return planted_signal_pair(m_train=100, planted_noise=0.3, seed=0)


@pytest.fixture(scope="module")
def de_planted(planted):
    return run_experiment(ExperimentSpec(method="de", task="classify", ratio=16, runs=5), planted)


def test_planted_optimum_dominates_the_pool(planted):
    zero = zero_error_quadruples(planted.train, candidate_pool(planted.n))
    assert PLANTED_TIMESTAMPS in zero
    assert all(len(set(q) & set(PLANTED_TIMESTAMPS)) >= 3 for q in zero)


def test_de_recovers_planted_timestamps(de_planted):
    assert de_planted.nbp == 4
    assert de_planted.metric_mean(CE) == 0.0
    hits = sum(len(set(r.timestamps) & set(PLANTED_TIMESTAMPS)) >= 3 for r in de_planted.runs)
    assert hits >= 4
    assert [r.seed for r in de_planted.runs] == [0, 1, 2, 3, 4]
    for r in de_planted.runs:
        assert r.timestamps == sorted(r.timestamps)


def test_paa_is_strictly_worse(planted, de_planted):
    paa = run_experiment(ExperimentSpec(method="paa", task="classify", ratio=16, runs=1), planted)
    assert paa.metric_mean(CE) > de_planted.metric_mean(CE)


def test_single_run_aggregate_equals_the_run(planted):
    res = run_experiment(ExperimentSpec(method="ga", task="cluster", ratio=16, runs=1, nGen=5), planted)
    (run,) = res.runs
    assert res.aggregate[CQ] == {"mean": run.test[CQ], "std": 0.0}


def test_aggregate_mean_matches_arithmetic_mean():
    runs = [RunResult(i, None, 0.0, {CE: v}) for i, v in enumerate([0.1, 0.2, 0.4])]
    agg = aggregate_runs(runs)[CE]
    assert abs(agg["mean"] - 0.7 / 3) <= 1e-12
    assert agg["std"] == pytest.approx(np.std([0.1, 0.2, 0.4]))


def test_multi_reports_both_metrics(planted):
    res = run_experiment(ExperimentSpec(method="nsga2", task="multi", ratio=16, runs=2, nGen=5), planted)
    assert set(res.aggregate) == {CE, CQ}
    for r in res.runs:
        assert len(r.train_fitness) == 2


def test_explicit_nbp_overrides_ratio(planted):
    res = run_experiment(ExperimentSpec(method="pso", task="classify", nbp=3, runs=1, nGen=3), planted)
    assert res.nbp == 3 and res.ratio is None
    assert len(res.runs[0].timestamps) == 3


def test_choose_alphabet_rules():
    scores = {a: 0.4 - 0.3 * (a - 3) / 7 for a in range(3, 11)}
    assert choose_alphabet(scores) == 10
    assert choose_alphabet({3: 0.2, 4: 0.1, 5: 0.1, 6: 0.3}) == 4
    assert choose_alphabet(dict.fromkeys(range(3, 11), 0.0)) == 3


@pytest.mark.parametrize("task, metric", [("classify", CE), ("cluster", CQ)])
def test_sax_baseline_is_deterministic(planted, task, metric):
    spec = ExperimentSpec(method="sax", task=task, ratio=4, runs=1)
    a, b = run_sax_baseline(spec, planted), run_sax_baseline(spec, planted)
    assert a.runs[0].alpha == b.runs[0].alpha
    assert 3 <= a.runs[0].alpha <= 10
    assert a.aggregate == b.aggregate
    assert metric in a.aggregate


def test_sax_baseline_requires_sax():
    with pytest.raises(ContractError):
        run_sax_baseline(ExperimentSpec(method="paa", task="classify"))


def test_classify_needs_two_classes(planted):
    from tsreduce.dataset import DatasetPair, LabeledDataset

    one = LabeledDataset("one", planted.train.X[:4], np.zeros(4, dtype=int))
    with pytest.raises(ContractError):
        run_experiment(ExperimentSpec(method="paa", task="classify"), DatasetPair(one, one))


def test_normalize_flag_runs(planted):
    res = run_experiment(ExperimentSpec(method="paa", task="classify", runs=1, normalize=True), planted)
    assert 0.0 <= res.metric_mean(CE) <= 1.0
