"""Extract a few small UCR datasets bundled in the ``aeon`` wheel.

Writes ``<out>/<Name>/<Name>_{TRAIN,TEST}.tsv`` in the UCR layout (label
first, tab separated). Only ``pip download`` is used; aeon is not installed.

    python scripts/fetch_ucr_subset.py --out data/UCR
    export ASTRIDE_DATA=data/UCR
"""

import argparse
import subprocess
import sys
import tempfile
import zipfile
from pathlib import Path

DEFAULT = ["ArrowHead", "GunPoint", "OSULeaf"]


def ts_to_tsv(text: str) -> str:
    rows = []
    in_data = False
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("@data"):
            in_data = True
            continue
        if not in_data or line.startswith("@"):
            continue
        values, label = line.rsplit(":", 1)
        rows.append("\t".join([label] + values.split(",")))
    return "\n".join(rows) + "\n"


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="data/UCR")
    parser.add_argument("--wheel", help="already-downloaded aeon wheel")
    parser.add_argument("names", nargs="*", default=DEFAULT)
    args = parser.parse_args(argv)

    with tempfile.TemporaryDirectory() as tmp:
        wheel = args.wheel
        if wheel is None:
            subprocess.run(
                [sys.executable, "-m", "pip", "download", "--no-deps", "-q", "-d", tmp, "aeon"],
                check=True,
            )
            wheel = next(Path(tmp).glob("aeon-*.whl"))
        with zipfile.ZipFile(wheel) as zf:
            members = set(zf.namelist())
            for name in args.names:
                folder = Path(args.out) / name
                folder.mkdir(parents=True, exist_ok=True)
                for split in ("TRAIN", "TEST"):
                    member = f"aeon/datasets/data/{name}/{name}_{split}.ts"
                    if member not in members:
                        print(f"skip {name} {split}: not in wheel")
                        continue
                    tsv = ts_to_tsv(zf.read(member).decode())
                    (folder / f"{name}_{split}.tsv").write_text(tsv)
                    print(f"wrote {folder / f'{name}_{split}.tsv'} ({tsv.count(chr(10))} rows)")


if __name__ == "__main__":
    main()
