import json
import shutil
import subprocess
import sys

import pytest

from tsreduce.cli import main
from tsreduce.dataset import serialize_ucr
from tsreduce.harness.synthetic import planted_signal_pair


@pytest.fixture()
def files(tmp_path):
    pair = planted_signal_pair(m_train=20, m_test=20, n=32, seed=3,
                               timestamps=(3, 10, 19, 28))
    train, test = tmp_path / "Toy_TRAIN.tsv", tmp_path / "Toy_TEST.tsv"
    train.write_text(serialize_ucr(pair.train))
    test.write_text(serialize_ucr(pair.test))
    return train, test


def _run(files, out, *extra):
    train, test = files
    return main(["run", "--train", str(train), "--test", str(test), "--out", str(out), *extra])


def test_run_writes_json(files, tmp_path):
    out = tmp_path / "de.json"
    assert _run(files, out, "--method", "de", "--task", "classify", "--ratio", "8",
                "--runs", "2", "--generations", "5") == 0
    data = json.loads(out.read_text())
    assert data["dataset"] == "Toy" and data["nbp"] == 4 and len(data["runs"]) == 2
    assert all(r["timestamps"] == sorted(r["timestamps"]) for r in data["runs"])


def test_run_writes_csv(files, tmp_path):
    out = tmp_path / "paa.csv"
    assert _run(files, out, "--method", "paa", "--task", "cluster", "--nbp", "4",
                "--runs", "1", "--format", "csv") == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("dataset,method,task,ratio,nbp")
    assert len(lines) == 2


def test_json_is_byte_identical(files, tmp_path):
    args = ("--method", "pso", "--task", "classify", "--ratio", "8", "--runs", "2",
            "--generations", "5", "--seed", "11")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert _run(files, a, *args) == 0
    assert _run(files, b, *args) == 0
    assert a.read_bytes() == b.read_bytes()


def test_score_directory(files, tmp_path):
    results = tmp_path / "results"
    results.mkdir()
    for method in ("paa", "sax"):
        assert _run(files, results / f"{method}.json", "--method", method, "--task", "classify",
                    "--runs", "1") == 0
    assert _run(files, results / "ga.json", "--method", "ga", "--task", "classify",
                "--runs", "1", "--generations", "5") == 0
    out = tmp_path / "score.csv"
    assert main(["score", "--in", str(results), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "dataset,ga_CE,ga_total,paa_CE,paa_total,sax_CE,sax_total"
    assert lines[1].startswith("Toy,") and lines[-1].startswith("TOTAL,")


def test_validate(files, capsys):
    assert main(["validate", "--train", str(files[0])]) == 0
    assert "20 series, length 32, 2 classes" in capsys.readouterr().out


def test_contract_errors_exit_1(files, tmp_path, capsys):
    bad = tmp_path / "bad.tsv"
    bad.write_text("1,0.5,0.2\n2,0.1\n")
    assert main(["validate", "--train", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err
    assert _run(files, tmp_path / "x.json", "--method", "de", "--task", "multi") == 1
    assert main(["run", "--method", "de"]) == 1
    assert _run(files, tmp_path / "x.json", "--method", "de", "--task", "classify",
                "--nbp", "99") == 1


def test_io_errors_exit_2(tmp_path):
    assert main(["validate", "--train", str(tmp_path / "missing.tsv")]) == 2
    assert main(["score", "--in", str(tmp_path / "nowhere")]) == 2


@pytest.mark.skipif(shutil.which("tsreduce") is None, reason="console script not installed")
def test_console_script(files):
    proc = subprocess.run(["tsreduce", "validate", "--train", str(files[0])],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run([sys.executable, "-m", "tsreduce", "run", "--method", "x"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
