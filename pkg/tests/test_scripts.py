import importlib.util

import numpy as np
import pytest

from astride import Dataset
from astride.ingest import write_ucr

from .conftest import ROOT


def _load(name):
    spec = importlib.util.spec_from_file_location(name, ROOT / "scripts" / f"{name}.py")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.fixture
def root(tmp_path, rng):
    for name in ("Toy", "Meat"):
        X = np.cumsum(rng.normal(size=(16, 48)), axis=1)
        labels = tuple(str(i % 2) for i in range(16))
        (tmp_path / name).mkdir()
        write_ucr(Dataset(X[:8], labels[:8]), tmp_path / name / f"{name}_TRAIN.tsv")
        write_ucr(Dataset(X[8:], labels[8:]), tmp_path / name / f"{name}_TEST.tsv")
    return tmp_path


def test_table3_example(root, capsys):
    assert _load("table3_example").main(["--root", str(root), "--index", "2"]) == 0
    out = capsys.readouterr().out
    assert "astride word:" in out and "replicated:" in out


def test_table3_example_missing_data(tmp_path, capsys):
    assert _load("table3_example").main(["--root", str(tmp_path)]) == 1


def test_classification_sweep(root, tmp_path, capsys):
    out = tmp_path / "cls"
    argv = ["--root", str(root), "--datasets", "Toy", "-w", "4", "8", "-A", "4", "-o", str(out)]
    assert _load("classification_sweep").main(argv) == 0
    assert (out / "report.csv").read_text().count("\n") == 9


def test_reconstruction_sweep(root, tmp_path, capsys):
    out = tmp_path / "rec"
    argv = ["--root", str(root), "--datasets", "Toy", "--tau", "0.25", "--no-dtw", "-o", str(out)]
    assert _load("reconstruction_sweep").main(argv) == 0
    assert (out / "plot_reconstruction.csv").exists()
