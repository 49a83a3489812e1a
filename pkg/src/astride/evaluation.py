"""Benchmark harnesses: 1-NN classification, reconstruction error, memory cost."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import symbolizers as sym
from .distances import dtw, euclidean
from .exceptions import InvalidParameterError, ShapeError
from .ingest import Dataset, DatasetSplit
from .reconstruct import truncate_pair

MIN_RATIO_WORD_LENGTH = 9
WORD_LENGTH_RULE = (
    "w = max(9, floor(n * tau_t)); direct substitute for the ABBA tolerance loop, "
    "tau_e = w / n"
)


def knn_from_distances(D, train_labels: Sequence, k: int = 1) -> list:
    """Label each row of ``D`` (test x train) by majority over its k nearest columns.

    Distance ties go to the lower training index; vote ties go to the label
    met first in that order.
    """
    D = np.asarray(D, dtype=float)
    if D.ndim != 2 or D.shape[1] == 0:
        raise InvalidParameterError("k-NN needs a non-empty training set")
    if k < 1:
        raise InvalidParameterError(f"k={k} must be >= 1")
    if D.shape[1] != len(train_labels):
        raise ShapeError(f"{D.shape[1]} distance columns for {len(train_labels)} labels")
    k = min(k, D.shape[1])
    order = np.argsort(D, axis=1, kind="stable")[:, :k]
    preds = []
    for row in order:
        votes = [train_labels[j] for j in row]
        if k == 1:
            preds.append(votes[0])
            continue
        counts = Counter(votes)
        top = max(counts.values())
        preds.append(next(v for v in votes if counts[v] == top))
    return preds


def knn_classify(train, train_labels, test, dist: Callable, k: int = 1) -> list:
    """1-NN (or k-NN) over arbitrary items with a pairwise distance callable."""
    if len(train) == 0:
        raise InvalidParameterError("k-NN needs a non-empty training set")
    D = np.array([[dist(t, s) for s in train] for t in test], dtype=float).reshape(
        len(test), len(train)
    )
    return knn_from_distances(D, list(train_labels), k)


def accuracy(predicted, truth) -> float:
    predicted, truth = list(predicted), list(truth)
    if len(predicted) != len(truth):
        raise ShapeError(f"{len(predicted)} predictions for {len(truth)} labels")
    if not truth:
        return float("nan")
    return sum(p == t for p, t in zip(predicted, truth)) / len(truth)


def reconstruction_error(original, reconstructed, w: int, metric: str = "euclidean") -> np.ndarray:
    """Per-signal distance between truncated originals and reconstructions."""
    X = np.asarray(getattr(original, "signals", original), dtype=float)
    R = np.asarray(reconstructed, dtype=float)
    if X.ndim == 1:
        X, R = X[None, :], R.reshape(1, -1)
    if X.shape[0] != R.shape[0]:
        raise ShapeError(f"{X.shape[0]} originals but {R.shape[0]} reconstructions")
    fn = {"euclidean": euclidean, "dtw": dtw}.get(metric)
    if fn is None:
        raise InvalidParameterError(f"unknown reconstruction metric {metric!r}")
    out = np.empty(X.shape[0])
    for i, (x, r) in enumerate(zip(X, R)):
        xt, rt = truncate_pair(x, r, w)
        out[i] = fn(xt, rt)
    return out


def word_length_for_ratio(n: int, tau: float) -> int:
    if not 0 < tau <= 1:
        raise InvalidParameterError(f"target ratio tau={tau} must lie in (0, 1]")
    return max(MIN_RATIO_WORD_LENGTH, math.floor(n * tau))


def memory_bits(
    method: str,
    N: int,
    w: int,
    A: int,
    n_bits: int = 64,
    packed: bool = False,
) -> int:
    """Bits needed to store N symbolic sequences plus what is needed to decode them.

    By default a symbol costs log2(A) bits and the total is rounded to the
    nearest integer; ``packed=True`` charges ceil(log2 A) bits per symbol, the
    cost of the packed corpus layout. ``abba`` is a reference formula only.
    """
    for name, value in (("N", N), ("w", w), ("A", A), ("n_bits", n_bits)):
        if value < 1:
            raise InvalidParameterError(f"{name}={value} must be positive")
    per_symbol = math.ceil(math.log2(A)) if packed else math.log2(A)
    sequences = N * w * per_symbol
    dictionary = {
        "sax": n_bits * A,
        "sax1d": n_bits * A,
        "sfa": n_bits * A,
        "fastride": n_bits * A,
        "astride": n_bits * (A + w),
        "abba": 2 * n_bits * N * A,
    }
    if method not in dictionary:
        raise InvalidParameterError(f"no memory formula for method {method!r}")
    return int(round(sequences + dictionary[method]))


@dataclass
class BenchmarkConfig:
    methods: tuple = ("sax", "sax1d", "astride", "fastride")
    w_grid: tuple = (5, 10, 15, 20, 25)
    A_grid: tuple = (4, 9, 16, 25)
    tau_grid: tuple = ()
    task: str = "classification"
    distance: Optional[str] = None
    k: int = 1
    n_bits: int = 64
    seed: int = 0
    max_train: Optional[int] = None
    max_test: Optional[int] = None
    dtw_errors: bool = True
    timings: bool = False
    timing_repeats: int = 5
    n_jobs: int = 1

    def __post_init__(self):
        self.methods = tuple(self.methods)
        self.w_grid = tuple(int(w) for w in self.w_grid)
        self.A_grid = tuple(int(a) for a in self.A_grid)
        self.tau_grid = tuple(float(t) for t in self.tau_grid)
        if not self.methods or not self.A_grid:
            raise InvalidParameterError("method and A grids must be non-empty")
        for m in self.methods:
            if m not in sym.METHODS:
                raise InvalidParameterError(f"unknown method {m!r}")
        if self.task not in ("classification", "reconstruction", "both"):
            raise InvalidParameterError(f"unknown task {self.task!r}")
        if self.task in ("classification", "both") and not self.w_grid:
            raise InvalidParameterError("classification needs a non-empty w grid")
        if self.task in ("reconstruction", "both") and not self.tau_grid:
            raise InvalidParameterError("reconstruction needs a non-empty tau grid")
        for tau in self.tau_grid:
            if not 0 < tau <= 1:
                raise InvalidParameterError(f"tau={tau} must lie in (0, 1]")


COLUMNS = (
    "dataset",
    "task",
    "method",
    "w",
    "A",
    "tau",
    "tau_e",
    "distance",
    "accuracy",
    "err_euclidean_mean",
    "err_dtw_mean",
    "memory_bits",
    "t_symbolize_s",
    "t_classify_s",
    "error",
)
_KEY = ("task", "method", "w", "A", "tau")
_SCORES = ("accuracy", "err_euclidean_mean", "err_dtw_mean", "tau_e")


@dataclass
class BenchmarkReport:
    rows: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def aggregate(self) -> list:
        """Unweighted mean over datasets per (task, method, w, A, tau)."""
        groups = defaultdict(list)
        for row in self.rows:
            if not row.get("error"):
                groups[tuple(row.get(k) for k in _KEY)].append(row)
        out = []
        for key in sorted(groups, key=_group_order):
            members = groups[key]
            agg = dict(zip(_KEY, key))
            agg["n_datasets"] = len(members)
            for col in _SCORES:
                vals = [r[col] for r in members if r.get(col) is not None]
                agg[col] = math.fsum(vals) / len(vals) if vals else None
            out.append(agg)
        return out

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({c: _cell(row.get(c)) for c in COLUMNS})
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text

    def to_json(self, path=None) -> str:
        doc = {
            "config": self.config,
            "word_length_rule": WORD_LENGTH_RULE,
            "rows": self.rows,
            "aggregate": self.aggregate(),
        }
        text = json.dumps(doc, indent=1)
        if path is not None:
            Path(path).write_text(text)
        return text

    def plot_csv(self, task: str, path=None) -> str:
        """Aggregate curves: x = w (classification) or tau_e (reconstruction)."""
        if task == "classification":
            cols = ("method", "A", "w", "accuracy", "n_datasets")
        else:
            cols = ("method", "A", "tau", "tau_e", "err_euclidean_mean", "err_dtw_mean", "n_datasets")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("series",) + cols)
        for agg in self.aggregate():
            if agg["task"] == task:
                writer.writerow([f"{agg['method']}_A{agg['A']}"] + [_cell(agg[c]) for c in cols])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text


def _group_order(key):
    # numbers numerically, missing values last
    return tuple(
        (v is None, v if isinstance(v, (int, float)) else 0, "" if v is None else str(v)) for v in key
    )


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def _subsample(ds: Optional[Dataset], limit: Optional[int], rng) -> Optional[Dataset]:
    if ds is None or limit is None or ds.N <= limit:
        return ds
    return ds.subset(sorted(rng.choice(ds.N, size=limit, replace=False)))


def _timed(fn, repeats: int):
    times = []
    result = None
    for _ in range(max(1, repeats)):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return result, float(np.median(times))


def _classification_cell(config: BenchmarkConfig, split: DatasetSplit, method, w, A) -> dict:
    row = {"dataset": split.name, "task": "classification", "method": method, "w": w, "A": A}
    distance = config.distance or sym.default_distance(method)
    row["distance"] = distance
    train = split.train
    test = split.test if split.test is not None else split.train
    spec = sym.SymbolizerSpec(method, w, A)
    repeats = config.timing_repeats if config.timings else 1

    def symbolize():
        model = sym.fit(spec, train)
        return model, sym.transform(model, train), sym.transform(model, test)

    (model, S_train, S_test), t_sym = _timed(symbolize, repeats)

    def classify():
        D = sym.distance_matrix(model, S_test, S_train, distance)
        return knn_from_distances(D, train.labels, config.k)

    preds, t_cls = _timed(classify, repeats)
    row["accuracy"] = accuracy(preds, test.labels)
    row["memory_bits"] = memory_bits(method, train.N + test.N, w, A, config.n_bits)
    if config.timings:
        row["t_symbolize_s"] = t_sym
        row["t_classify_s"] = t_cls
    return row


def _reconstruction_cell(config: BenchmarkConfig, split: DatasetSplit, method, A, tau) -> dict:
    train = split.train
    target = split.test if split.test is not None else split.train
    w = word_length_for_ratio(train.n, tau)
    row = {
        "dataset": split.name,
        "task": "reconstruction",
        "method": method,
        "w": w,
        "A": A,
        "tau": tau,
        "tau_e": w / train.n,
    }
    spec = sym.SymbolizerSpec(method, w, A)
    repeats = config.timing_repeats if config.timings else 1

    def symbolize():
        model = sym.fit(spec, train)
        return model, sym.transform(model, target)

    (model, S), t_sym = _timed(symbolize, repeats)
    recon = sym.inverse_transform(model, S)
    row["err_euclidean_mean"] = float(np.mean(reconstruction_error(target, recon, w, "euclidean")))
    if config.dtw_errors:
        row["err_dtw_mean"] = float(np.mean(reconstruction_error(target, recon, w, "dtw")))
    row["memory_bits"] = memory_bits(method, target.N, w, A, config.n_bits)
    if config.timings:
        row["t_symbolize_s"] = t_sym
    return row


def _run_cell(args) -> dict:
    kind, config, split, params = args
    try:
        if kind == "classification":
            return _classification_cell(config, split, *params)
        return _reconstruction_cell(config, split, *params)
    except Exception as exc:  # recorded per cell, never fatal
        if kind == "classification":
            method, w, A = params
            row = {"w": w}
        else:
            method, A, tau = params
            row = {"tau": tau}
        row.update(dataset=split.name, task=kind, method=method, A=A)
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row


def _cells(config: BenchmarkConfig, splits):
    for split in splits:
        for method in config.methods:
            for A in config.A_grid:
                classifiable = config.distance is not None or sym.default_distance(method)
                if config.task in ("classification", "both") and classifiable:
                    for w in config.w_grid:
                        yield ("classification", config, split, (method, w, A))
                if config.task in ("reconstruction", "both"):
                    for tau in config.tau_grid:
                        yield ("reconstruction", config, split, (method, A, tau))


def _sort_key(row):
    return (
        row["dataset"],
        row["task"],
        sym.METHODS.index(row["method"]),
        row.get("A") or 0,
        row.get("w") or 0,
        row.get("tau") or 0.0,
    )


def run_benchmark(config: BenchmarkConfig, datasets: Sequence) -> BenchmarkReport:
    """Sweep the grid over every dataset: fit on train, evaluate on test.

    ``datasets`` holds :class:`DatasetSplit` objects (or bare training
    datasets, evaluated on themselves). Failing cells are reported, not raised.
    """
    rng = np.random.default_rng(config.seed)
    splits = []
    for i, item in enumerate(datasets):
        if isinstance(item, Dataset):
            item = DatasetSplit(item.name or f"dataset{i}", item, None)
        splits.append(
            DatasetSplit(
                item.name,
                _subsample(item.train, config.max_train, rng),
                _subsample(item.test, config.max_test, rng),
            )
        )
    cells = list(_cells(config, splits))
    if config.n_jobs > 1:
        with ProcessPoolExecutor(max_workers=config.n_jobs) as pool:
            rows = list(pool.map(_run_cell, cells))
    else:
        rows = [_run_cell(c) for c in cells]
    rows.sort(key=_sort_key)
    return BenchmarkReport(rows, asdict(config))
