"""Command-line front end.

Exit codes: 0 success, 1 data or computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import corpus
from . import symbolizers as sym
from .evaluation import BenchmarkConfig, accuracy, knn_from_distances, reconstruction_error, run_benchmark
from .exceptions import AstrideError
from .ingest import Dataset, DatasetSplit, data_root, load_split, load_ucr, znormalize

DATA_ENV = "ASTRIDE_DATA"


class DataError(Exception):
    pass


def _write(path: Path, content, binary: bool = False) -> None:
    # an interrupted run leaves only the .partial file behind
    partial = path.with_name(path.name + ".partial")
    if binary:
        partial.write_bytes(content)
    else:
        partial.write_text(content)
    os.replace(partial, path)


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    candidate = data_root() / path
    if not p.is_absolute() and candidate.exists():
        return candidate
    raise DataError(f"file not found: {path}")


def _load(path: str, normalize: bool) -> Dataset:
    ds = load_ucr(_resolve(path))
    return znormalize(ds) if normalize else ds


def _spec(args) -> sym.SymbolizerSpec:
    return sym.SymbolizerSpec(args.method, args.w, args.A, args.a_mean, args.a_slope)


def _check_n(model: sym.FittedSymbolizer, ds: Dataset) -> None:
    if ds.n != model.n:
        raise DataError(f"model was fitted on signals of length n={model.n}, data has n={ds.n}")


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_fit(args) -> int:
    train = _load(args.train, not args.no_normalize)
    model = sym.fit(_spec(args), train)
    out = _out_dir(args)
    _write(out / "model.json", json.dumps(model.to_dict(), indent=2))
    print(f"method={model.method} w={model.w} A={model.A} n={model.n} N={train.N}")
    if model.segmentation is not None:
        print("breakpoints:", " ".join(str(b) for b in model.segmentation.breakpoints))
        print("lengths:", " ".join(str(v) for v in model.segmentation.lengths))
    for i, q in enumerate(model.quantizers):
        bounds = " ".join(f"{b:.4f}" for b in q.boundaries)
        print(f"quantizer {i} boundaries: {bounds}")
    print(f"wrote {out / 'model.json'}")
    return 0


def cmd_transform(args) -> int:
    model = sym.FittedSymbolizer.load(_resolve(args.model))
    ds = _load(args.data, not args.no_normalize)
    _check_n(model, ds)
    S = sym.transform(model, ds)
    out = _out_dir(args)
    if args.format == "json":
        corpus.write_json(out / "corpus.json.partial", S, model.A, ds.labels, model.method)
        os.replace(out / "corpus.json.partial", out / "corpus.json")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "label", "word"])
        for i, row in enumerate(S):
            label = ds.labels[i] if ds.labels is not None else ""
            writer.writerow([i, label, sym.format_word(row, model.A)])
        _write(out / "corpus.csv", buf.getvalue())
    _write(out / "corpus.bin", corpus.pack_symbols(S, model.A), binary=True)
    for row in S:
        print(sym.format_word(row, model.A))
    return 0


def cmd_reconstruct(args) -> int:
    model = sym.FittedSymbolizer.load(_resolve(args.model))
    ds = _load(args.data, not args.no_normalize)
    _check_n(model, ds)
    recon = sym.inverse_transform(model, sym.transform(model, ds))
    err_e = reconstruction_error(ds, recon, model.w, "euclidean")
    err_d = reconstruction_error(ds, recon, model.w, "dtw")
    out = _out_dir(args)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in recon:
        writer.writerow([repr(float(v)) for v in row])
    _write(out / "reconstruction.csv", buf.getvalue())
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "err_euclidean", "err_dtw"])
    for i, (e, d) in enumerate(zip(err_e, err_d)):
        writer.writerow([i, repr(float(e)), repr(float(d))])
    _write(out / "errors.csv", buf.getvalue())
    print(f"mean euclidean error {err_e.mean():.4f}, mean dtw error {err_d.mean():.4f}")
    return 0


def cmd_classify(args) -> int:
    normalize = not args.no_normalize
    train = _load(args.train, normalize)
    test = _load(args.test, normalize) if args.test else train
    if train.labels is None or test.labels is None:
        raise DataError("classification needs labelled train and test files")
    if train.n != test.n:
        raise DataError(f"train has n={train.n} but test has n={test.n}")
    model = sym.fit(_spec(args), train)
    distance = args.distance or sym.default_distance(model.method)
    if distance is None:
        raise DataError(f"{model.method} has no default distance; pass --distance")
    D = sym.distance_matrix(model, sym.transform(model, test), sym.transform(model, train), distance)
    preds = knn_from_distances(D, train.labels, args.k)
    acc = accuracy(preds, test.labels)
    out = _out_dir(args)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "truth", "predicted"])
    for i, (t, p) in enumerate(zip(test.labels, preds)):
        writer.writerow([i, t, p])
    _write(out / "predictions.csv", buf.getvalue())
    print(f"accuracy {acc:.6f} ({model.method}, w={model.w}, A={model.A}, distance={distance})")
    return 0


def _bench_splits(args) -> list:
    splits = []
    for name in args.datasets or []:
        splits.append(load_split(name))
    if args.train:
        train = _load(args.train, True)
        test = _load(args.test, True) if args.test else None
        splits.append(DatasetSplit(train.name, train, test))
    if not splits:
        raise DataError("bench needs --datasets or --train")
    return splits


def cmd_bench(args) -> int:
    task = args.task
    if task is None:
        task = "reconstruction" if args.tau and not args.w else "classification"
    config = BenchmarkConfig(
        methods=tuple(args.methods),
        w_grid=tuple(args.w or ()),
        A_grid=tuple(args.A),
        tau_grid=tuple(args.tau or ()),
        task=task,
        distance=args.distance,
        k=args.k,
        seed=args.seed,
        max_train=args.max_train,
        max_test=args.max_test,
        dtw_errors=not args.no_dtw,
        timings=args.timings,
        n_jobs=args.jobs,
    )
    report = run_benchmark(config, _bench_splits(args))
    out = _out_dir(args)
    if args.format == "json":
        _write(out / "report.json", report.to_json())
    else:
        _write(out / "report.csv", report.to_csv())
    for kind in ("classification", "reconstruction"):
        if task in (kind, "both"):
            _write(out / f"plot_{kind}.csv", report.plot_csv(kind))
    failed = [r for r in report.rows if r.get("error")]
    print(f"{len(report.rows)} cells, {len(failed)} failed; wrote {out}")
    for row in failed:
        print(f"  {row['dataset']} {row['method']}: {row['error']}", file=sys.stderr)
    return 0


def _add_spec_args(p, grid: bool = False) -> None:
    if grid:
        p.add_argument("--methods", nargs="+", default=["sax", "sax1d", "astride", "fastride"],
                       choices=sym.METHODS)
        p.add_argument("-w", type=int, nargs="+", help="word length grid")
        p.add_argument("-A", type=int, nargs="+", default=[4, 9, 16, 25], help="alphabet size grid")
    else:
        p.add_argument("--method", required=True, choices=sym.METHODS)
        p.add_argument("-w", type=int, required=True, help="word length")
        p.add_argument("-A", type=int, required=True, help="alphabet size")
        p.add_argument("--a-mean", type=int, help="1d-SAX mean alphabet (default sqrt(A))")
        p.add_argument("--a-slope", type=int, help="1d-SAX slope alphabet (default sqrt(A))")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="astride",
        description="Adaptive time-series symbolization and benchmarks. "
        f"Relative data paths are also looked up under ${DATA_ENV}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", "-o", default="out", help="output directory")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--no-normalize", action="store_true",
                       help="skip per-signal z-normalization")

    p = sub.add_parser("fit", help="fit a symbolizer and write model.json")
    _add_spec_args(p)
    p.add_argument("--train", required=True)
    common(p)
    p.set_defaults(func=cmd_fit)

    for name, func, help_ in (
        ("transform", cmd_transform, "symbolize a dataset with a fitted model"),
        ("reconstruct", cmd_reconstruct, "reconstruct a dataset and report errors"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--model", required=True, help="model.json written by fit")
        p.add_argument("--data", "--test", dest="data", required=True)
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("classify", help="fit on train, 1-NN classify test")
    _add_spec_args(p)
    p.add_argument("--train", required=True)
    p.add_argument("--test")
    p.add_argument("--distance", choices=sym.DISTANCES)
    p.add_argument("-k", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bench", help="grid sweep over datasets")
    _add_spec_args(p, grid=True)
    p.add_argument("--datasets", nargs="+", help=f"UCR dataset names under ${DATA_ENV}")
    p.add_argument("--train")
    p.add_argument("--test")
    p.add_argument("--task", choices=("classification", "reconstruction", "both"))
    p.add_argument("--tau", type=float, nargs="+", help="target memory ratios")
    p.add_argument("--distance", choices=sym.DISTANCES)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--max-train", type=int)
    p.add_argument("--max-test", type=int)
    p.add_argument("--no-dtw", action="store_true", help="skip DTW reconstruction errors")
    p.add_argument("--timings", action="store_true",
                   help="record median-of-5 wall-clock timings (reports stop being byte-stable)")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AstrideError, DataError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
