"""1-NN accuracy against word length for each method and alphabet size.

Fits on each dataset's train split, classifies its test split, and writes
report.csv plus plot_classification.csv (mean accuracy over datasets).

    python scripts/classification_sweep.py --datasets ArrowHead GunPoint OSULeaf -o results/cls
"""

import argparse
import csv
import io
import sys
from pathlib import Path

from astride import BenchmarkConfig, load_split, run_benchmark


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--datasets", nargs="+", required=True)
    p.add_argument("--root", help="UCR root (default $ASTRIDE_DATA or data/UCR)")
    p.add_argument("--methods", nargs="+", default=["sax", "sax1d", "astride", "fastride"])
    p.add_argument("-w", type=int, nargs="+", default=[5, 10, 15, 20, 25])
    p.add_argument("-A", type=int, nargs="+", default=[4, 9, 16, 25])
    p.add_argument("--max-train", type=int)
    p.add_argument("--max-test", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default="results/classification")
    args = p.parse_args(argv)

    splits = [load_split(name, args.root) for name in args.datasets]
    config = BenchmarkConfig(
        methods=tuple(args.methods), w_grid=tuple(args.w), A_grid=tuple(args.A),
        max_train=args.max_train, max_test=args.max_test, n_jobs=args.jobs, seed=args.seed,
    )
    report = run_benchmark(config, splits)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    report.to_csv(out / "report.csv")
    report.plot_csv("classification", out / "plot_classification.csv")

    # compact table: one row per (method, A), one column per w
    table = {}
    for agg in report.aggregate():
        table.setdefault((agg["method"], agg["A"]), {})[agg["w"]] = agg["accuracy"]
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
    writer.writerow(["method", "A", *args.w])
    for (method, A), row in table.items():
        writer.writerow([method, A, *(f"{row[w]:.3f}" if w in row else "" for w in args.w)])
    print(buf.getvalue(), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
