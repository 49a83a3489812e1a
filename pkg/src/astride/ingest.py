"""Loading, validating and z-normalizing UCR-style datasets."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .exceptions import EmptyInputError, FormatError, ParseError, ShapeError


@dataclass(frozen=True)
class Dataset:
    """N equal-length univariate signals with optional class labels.

    ``signals`` is an ``(N, n)`` float array. Labels are opaque strings.
    """

    signals: np.ndarray
    labels: Optional[tuple] = None
    name: str = ""
    normalized: bool = field(default=False, compare=False)

    def __post_init__(self):
        signals = np.asarray(self.signals, dtype=float)
        if signals.ndim == 1:
            signals = signals[None, :]
        if signals.ndim != 2:
            raise ShapeError(f"signals must be 2-D (N, n), got shape {signals.shape}")
        signals.setflags(write=False)
        object.__setattr__(self, "signals", signals)
        if self.labels is not None:
            labels = tuple(str(label) for label in self.labels)
            if len(labels) != signals.shape[0]:
                raise ShapeError(
                    f"got {len(labels)} labels for {signals.shape[0]} signals"
                )
            object.__setattr__(self, "labels", labels)

    @property
    def N(self) -> int:
        return self.signals.shape[0]

    @property
    def n(self) -> int:
        return self.signals.shape[1]

    def __len__(self) -> int:
        return self.N

    def fingerprint(self) -> dict:
        """(N, n, content hash) used to spot train/test model mix-ups."""
        digest = hashlib.sha256(np.ascontiguousarray(self.signals).tobytes()).hexdigest()
        return {"N": self.N, "n": self.n, "sha256": digest[:16]}

    def subset(self, index: Sequence[int]) -> "Dataset":
        index = list(index)
        labels = None if self.labels is None else tuple(self.labels[i] for i in index)
        return Dataset(self.signals[index], labels, self.name, self.normalized)


def _split(line: str, sep: Optional[str]) -> list[str]:
    if sep is None:
        return line.split()
    return [tok.strip() for tok in line.split(sep)]


def load_ucr(path, name: Optional[str] = None) -> Dataset:
    """Read a UCR text file: one record per line, label first, then n values.

    The separator (tab or comma) is detected from the first record. Trailing
    whitespace and blank lines are ignored.
    """
    path = Path(path)
    lines = path.read_text().splitlines()
    records = [(i + 1, line.strip()) for i, line in enumerate(lines) if line.strip()]
    if not records:
        raise EmptyInputError(f"{path}: no records")

    first = records[0][1]
    sep = "\t" if "\t" in first else ("," if "," in first else None)

    labels = []
    rows = []
    n = None
    for lineno, line in records:
        tokens = _split(line, sep)
        if n is None:
            n = len(tokens) - 1
            if n < 1:
                raise FormatError(f"{path}:{lineno}: record has a label but no values")
        elif len(tokens) - 1 != n:
            raise FormatError(
                f"{path}:{lineno}: expected {n} values, got {len(tokens) - 1}"
            )
        values = []
        for col, tok in enumerate(tokens[1:], start=2):
            try:
                values.append(float(tok))
            except ValueError:
                raise ParseError(
                    f"{path}:{lineno}:{col}: cannot parse {tok!r} as a number"
                ) from None
        label = tokens[0]
        # UCR labels are often written as floats ("1.0000000e+00")
        try:
            as_float = float(label)
            if as_float.is_integer():
                label = str(int(as_float))
        except ValueError:
            pass
        labels.append(label)
        rows.append(values)

    return Dataset(np.array(rows), tuple(labels), name or path.stem)


def write_ucr(dataset: Dataset, path, sep: str = "\t", precision: int = 17) -> None:
    """Write ``dataset`` in the format read by :func:`load_ucr`."""
    labels = dataset.labels if dataset.labels is not None else ("0",) * dataset.N
    fmt = f"{{:.{precision}g}}"
    with open(path, "w") as fh:
        for label, row in zip(labels, dataset.signals):
            fh.write(sep.join([str(label)] + [fmt.format(v) for v in row]) + "\n")


def znormalize_signal(signal) -> np.ndarray:
    x = np.asarray(signal, dtype=float)
    std = x.std()
    if std == 0.0:
        return np.zeros_like(x)
    return (x - x.mean()) / std


def znormalize(dataset: Dataset) -> Dataset:
    """Center each signal and scale it to unit (population) variance.

    Constant signals become all zeros.
    """
    x = dataset.signals
    mean = x.mean(axis=1, keepdims=True)
    std = x.std(axis=1, keepdims=True)
    safe = np.where(std == 0.0, 1.0, std)
    out = np.where(std == 0.0, 0.0, (x - mean) / safe)
    return Dataset(out, dataset.labels, dataset.name, normalized=True)


def data_root() -> Path:
    """``$ASTRIDE_DATA`` if set, else ``data/UCR``."""
    return Path(os.environ.get("ASTRIDE_DATA", "data/UCR"))


def find_ucr(name: str, root=None) -> tuple[Path, Path]:
    """Locate ``<root>/<name>/<name>_TRAIN.tsv`` and the matching TEST file.

    ``root`` defaults to :func:`data_root`.
    """
    root = Path(root) if root else data_root()
    folder = root / name
    for ext in (".tsv", ".txt", ".csv"):
        train = folder / f"{name}_TRAIN{ext}"
        test = folder / f"{name}_TEST{ext}"
        if train.exists():
            return train, test
    raise FileNotFoundError(f"no {name}_TRAIN file under {folder}")


@dataclass(frozen=True)
class DatasetSplit:
    """A named train/test pair; ``test`` may be absent."""

    name: str
    train: Dataset
    test: Optional[Dataset] = None


def load_split(name: str, root=None, normalize: bool = True) -> DatasetSplit:
    """Load ``<name>_TRAIN`` and, if present, ``<name>_TEST`` from a UCR folder."""
    train_path, test_path = find_ucr(name, root)
    train = load_ucr(train_path, name)
    test = load_ucr(test_path, name) if test_path.exists() else None
    if test is not None and train.n != test.n:
        raise ShapeError(f"{name}: train n={train.n} but test n={test.n}")
    if normalize:
        train = znormalize(train)
        test = None if test is None else znormalize(test)
    return DatasetSplit(name, train, test)
