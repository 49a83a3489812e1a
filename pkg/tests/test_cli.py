import csv
import json

import numpy as np
import pytest

from astride import Dataset, FittedSymbolizer, fit_uniform
from astride.cli import main
from astride.corpus import read_json, read_packed
from astride.ingest import load_ucr, write_ucr


@pytest.fixture
def files(tmp_path, rng):
    base = np.repeat(np.array([[0.0] * 15 + [3.0] * 15, [3.0] * 10 + [0.0] * 20]), 6, axis=0)
    X = base + rng.normal(0, 0.1, size=base.shape)
    labels = tuple(str(i) for i in np.repeat([1, 2], 6))
    write_ucr(Dataset(X[0::2], labels[0::2]), tmp_path / "toy_TRAIN.tsv")
    write_ucr(Dataset(X[1::2], labels[1::2]), tmp_path / "toy_TEST.tsv")
    write_ucr(Dataset(rng.normal(size=(3, 20)), ("1", "1", "2")), tmp_path / "short.tsv")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fit_writes_model(files, capsys):
    code, out, _ = run(capsys, "fit", "--method", "astride", "--train", files / "toy_TRAIN.tsv",
                       "-w", 4, "-A", 4, "-o", files / "out")
    assert code == 0
    model = FittedSymbolizer.load(files / "out" / "model.json")
    assert model.method == "astride" and model.n == 30
    line = next(l for l in out.splitlines() if l.startswith("breakpoints:"))
    assert len(line.split()[1:]) == 3
    assert not list((files / "out").glob("*.partial"))


def test_fit_sax_is_uniform(files, capsys):
    code, _, _ = run(capsys, "fit", "--method", "sax", "--train", files / "toy_TRAIN.tsv",
                     "-w", 5, "-A", 4, "-o", files / "out")
    assert code == 0
    model = FittedSymbolizer.load(files / "out" / "model.json")
    assert model.segmentation == fit_uniform(30, 5)


def test_missing_train_is_usage_error(files, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fit", "--method", "astride", "-w", "4", "-A", "4"])
    assert exc.value.code == 2


def test_bad_method_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fit", "--method", "pca", "--train", "x", "-w", "4", "-A", "4"])
    assert exc.value.code == 2


def test_missing_file_is_data_error(files, capsys):
    code, _, err = run(capsys, "fit", "--method", "sax", "--train", files / "nope.tsv", "-w", 4, "-A", 4)
    assert code == 1 and "nope.tsv" in err


def test_transform_prints_words_and_writes_corpus(files, capsys):
    run(capsys, "fit", "--method", "astride", "--train", files / "toy_TRAIN.tsv", "-w", 3, "-A", 4,
        "-o", files / "m")
    code, out, _ = run(capsys, "transform", "--model", files / "m" / "model.json",
                       "--data", files / "toy_TEST.tsv", "-o", files / "t")
    assert code == 0
    words = out.split()
    assert len(words) == 6 and all(len(w) == 3 and w.isdigit() for w in words)
    with open(files / "t" / "corpus.csv") as fh:
        assert [r["word"] for r in csv.DictReader(fh)] == words
    S, A = read_packed(files / "t" / "corpus.bin")
    assert A == 4 and S.shape == (6, 3)
    code, _, _ = run(capsys, "transform", "--model", files / "m" / "model.json",
                     "--data", files / "toy_TEST.tsv", "-o", files / "j", "--format", "json")
    assert code == 0
    np.testing.assert_array_equal(read_json(files / "j" / "corpus.json")["symbols"], S)


def test_transform_length_mismatch(files, capsys):
    run(capsys, "fit", "--method", "fastride", "--train", files / "toy_TRAIN.tsv", "-w", 3, "-A", 4,
        "-o", files / "m")
    code, _, err = run(capsys, "transform", "--model", files / "m" / "model.json",
                       "--data", files / "short.tsv", "-o", files / "t")
    assert code == 1
    assert "n=30" in err and "n=20" in err


def test_reconstruct_outputs(files, capsys):
    run(capsys, "fit", "--method", "sax1d", "--train", files / "toy_TRAIN.tsv", "-w", 5, "-A", 9,
        "-o", files / "m")
    code, out, _ = run(capsys, "reconstruct", "--model", files / "m" / "model.json",
                       "--data", files / "toy_TEST.tsv", "-o", files / "r")
    assert code == 0 and "mean euclidean error" in out
    recon = np.loadtxt(files / "r" / "reconstruction.csv", delimiter=",")
    assert recon.shape == (6, 30)
    errs = np.loadtxt(files / "r" / "errors.csv", delimiter=",", skiprows=1)
    assert np.all(errs[:, 2] <= errs[:, 1] + 1e-9)


def test_classify_train_on_itself(files, capsys):
    code, out, _ = run(capsys, "classify", "--method", "astride", "--train", files / "toy_TRAIN.tsv",
                       "-w", 4, "-A", 4, "-o", files / "c")
    assert code == 0
    assert out.startswith("accuracy 1.000000")
    with open(files / "c" / "predictions.csv") as fh:
        assert len(list(csv.DictReader(fh))) == 6


def test_classify_train_test_mismatch(files, capsys):
    code, _, err = run(capsys, "classify", "--method", "sax", "--train", files / "toy_TRAIN.tsv",
                       "--test", files / "short.tsv", "-w", 4, "-A", 4, "-o", files / "c")
    assert code == 1 and "n=30" in err and "n=20" in err


def test_data_root_env(files, capsys, monkeypatch):
    monkeypatch.setenv("ASTRIDE_DATA", str(files))
    monkeypatch.chdir(files / "..")
    code, _, _ = run(capsys, "fit", "--method", "sax", "--train", "toy_TRAIN.tsv", "-w", 3, "-A", 4,
                     "-o", files / "e")
    assert code == 0


def test_bench_rows_per_cell(files, capsys):
    code, out, _ = run(capsys, "bench", "--train", files / "toy_TRAIN.tsv", "--test", files / "toy_TEST.tsv",
                       "--methods", "astride", "sax", "-w", 5, 10, "-A", 4, "-o", files / "b")
    assert code == 0 and out.startswith("4 cells, 0 failed")
    with open(files / "b" / "report.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 4
    assert {(r["method"], r["w"]) for r in rows} == {("astride", "5"), ("astride", "10"), ("sax", "5"), ("sax", "10")}
    assert (files / "b" / "plot_classification.csv").exists()


def test_bench_reconstruction_json(files, capsys):
    code, _, _ = run(capsys, "bench", "--train", files / "toy_TRAIN.tsv", "--methods", "sfa", "fastride",
                     "--tau", 0.3, 0.5, "-A", 4, "--format", "json", "-o", files / "b")
    assert code == 0
    doc = json.loads((files / "b" / "report.json").read_text())
    assert len(doc["rows"]) == 4 and "word_length_rule" in doc
    assert all(r["task"] == "reconstruction" for r in doc["rows"])


def test_bench_is_byte_stable(files, capsys):
    argv = ["bench", "--train", files / "toy_TRAIN.tsv", "--test", files / "toy_TEST.tsv",
            "-w", 4, "-A", 4, 9, "--task", "both", "--tau", 0.2]
    run(capsys, *argv, "-o", files / "x")
    run(capsys, *argv, "-o", files / "y")
    assert (files / "x" / "report.csv").read_bytes() == (files / "y" / "report.csv").read_bytes()


def test_written_training_file_reloads(files):
    assert load_ucr(files / "toy_TRAIN.tsv").N == 6
