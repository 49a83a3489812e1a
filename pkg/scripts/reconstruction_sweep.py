"""Mean reconstruction error against memory usage ratio.

For each target ratio tau the word length is max(9, floor(n * tau)); errors
are computed on the test split after truncating to a multiple of w.

    python scripts/reconstruction_sweep.py --datasets ArrowHead GunPoint -A 9 -o results/rec
"""

import argparse
import sys
from pathlib import Path

from astride import BenchmarkConfig, load_split, run_benchmark


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--datasets", nargs="+", required=True)
    p.add_argument("--root", help="UCR root (default $ASTRIDE_DATA or data/UCR)")
    p.add_argument("--methods", nargs="+", default=["sax", "sax1d", "sfa", "astride", "fastride"])
    p.add_argument("-A", type=int, nargs="+", default=[9])
    p.add_argument("--tau", type=float, nargs="+", default=[0.04, 0.06, 0.08, 0.1, 0.15, 0.2, 0.25])
    p.add_argument("--no-dtw", action="store_true")
    p.add_argument("--max-test", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--out", default="results/reconstruction")
    args = p.parse_args(argv)

    splits = [load_split(name, args.root) for name in args.datasets]
    config = BenchmarkConfig(
        methods=tuple(args.methods), w_grid=(), A_grid=tuple(args.A), tau_grid=tuple(args.tau),
        task="reconstruction", dtw_errors=not args.no_dtw, max_test=args.max_test, n_jobs=args.jobs,
    )
    report = run_benchmark(config, splits)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    report.to_csv(out / "report.csv")
    report.plot_csv("reconstruction", out / "plot_reconstruction.csv")
    print(f"{'method':<9} {'A':>3} {'tau':>6} {'tau_e':>7} {'euclid':>8} {'dtw':>8}")
    for agg in report.aggregate():
        dtw = "" if agg["err_dtw_mean"] is None else f"{agg['err_dtw_mean']:.3f}"
        print(f"{agg['method']:<9} {agg['A']:>3} {agg['tau']:>6.3f} {agg['tau_e']:>7.3f} "
              f"{agg['err_euclidean_mean']:>8.3f} {dtw:>8}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
