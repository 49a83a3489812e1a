"""Walk through the four-segment Meat example (w=4, A=4).

Prints the shared segmentation, each segment's mean and quantized mean for
the chosen signal, its ASTRIDE and SAX words, and the replicated word used by
D-GED. Needs the UCR Meat dataset under $ASTRIDE_DATA (or --root).

    python scripts/table3_example.py --index 0
"""

import argparse
import sys

from astride import SymbolizerSpec, fit, load_split, replicate, transform
from astride.quantization import segment_means
from astride.symbolizers import format_word


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--root", help="UCR root (default $ASTRIDE_DATA or data/UCR)")
    p.add_argument("--dataset", default="Meat")
    p.add_argument("--index", type=int, default=0, help="training signal to show")
    p.add_argument("-w", type=int, default=4)
    p.add_argument("-A", type=int, default=4)
    args = p.parse_args(argv)

    try:
        split = load_split(args.dataset, args.root)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    train = split.train
    astride = fit(SymbolizerSpec("astride", args.w, args.A), train)
    sax = fit(SymbolizerSpec("sax", args.w, args.A), train)
    seg = astride.segmentation
    word = transform(astride, train)[args.index]
    means = segment_means(train.signals[args.index], seg)
    reps = astride.quantizers[0].decode(word)

    print(f"{args.dataset}: N={train.N} n={train.n} signal #{args.index}")
    print(f"{'k':>2} {'start':>6} {'length':>7} {'norm':>5} {'mean':>8} {'quantized':>10} {'symbol':>7}")
    for k in range(seg.w):
        print(f"{k + 1:>2} {seg.starts[k]:>6} {seg.lengths[k]:>7} {seg.normalized_lengths[k]:>5} "
              f"{means[k]:>8.2f} {reps[k]:>10.2f} {word[k]:>7}")
    print("astride word:", format_word(word, args.A))
    print("sax word:    ", format_word(transform(sax, train)[args.index], args.A))
    print("replicated:  ", format_word(replicate(word, seg.normalized_lengths), args.A))
    return 0


if __name__ == "__main__":
    sys.exit(main())
