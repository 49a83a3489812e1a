"""Uniform and adaptive (change-in-mean) segmentation shared by a dataset.

The adaptive fit stacks all N signals into one N-dimensional signal and finds
the w - 1 change points minimising the total within-segment squared deviation
from the segment means, exactly, by dynamic programming.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidParameterError

MIN_SEGMENT_LENGTH = 2


def _as_signals(data) -> np.ndarray:
    x = getattr(data, "signals", data)
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[None, :]
    return x


@dataclass(frozen=True)
class SegmentationModel:
    n: int
    breakpoints: tuple

    def __post_init__(self):
        bkps = tuple(int(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bkps)
        edges = (0,) + bkps + (self.n,)
        if any(b <= a for a, b in zip(edges, edges[1:])):
            raise InvalidParameterError(
                f"breakpoints {bkps} are not strictly increasing inside (0, {self.n})"
            )

    @property
    def w(self) -> int:
        return len(self.breakpoints) + 1

    @property
    def edges(self) -> tuple:
        return (0,) + self.breakpoints + (self.n,)

    @property
    def starts(self) -> tuple:
        return self.edges[:-1]

    @property
    def lengths(self) -> tuple:
        e = self.edges
        return tuple(b - a for a, b in zip(e, e[1:]))

    @property
    def normalized_lengths(self) -> tuple:
        # round half up, floored at 1
        shortest = min(self.lengths)
        return tuple(max(1, math.floor(length / shortest + 0.5)) for length in self.lengths)

    def segments(self):
        e = self.edges
        return list(zip(e[:-1], e[1:]))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "w": self.w,
            "breakpoints": list(self.breakpoints),
            "lengths": list(self.lengths),
            "normalized_lengths": list(self.normalized_lengths),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SegmentationModel":
        return cls(int(d["n"]), tuple(d["breakpoints"]))


def fit_uniform(n: int, w: int) -> SegmentationModel:
    """Split ``n`` samples into ``w`` segments; breakpoint k is floor(k n / w)."""
    if w < 1 or w > n:
        raise InvalidParameterError(f"word length w={w} must satisfy 1 <= w <= n={n}")
    return SegmentationModel(n, tuple((k * n) // w for k in range(1, w)))


class _PrefixSums:
    """Per-signal prefix sums giving O(N) segment costs."""

    def __init__(self, signals: np.ndarray):
        n = signals.shape[1]
        self.n = n
        self.s1 = np.zeros((signals.shape[0], n + 1))
        np.cumsum(signals, axis=1, out=self.s1[:, 1:])
        self.s2 = np.zeros(n + 1)
        np.cumsum((signals**2).sum(axis=0), out=self.s2[1:])

    def cost(self, start: int, end: int) -> float:
        d = self.s1[:, end] - self.s1[:, start]
        c = (self.s2[end] - self.s2[start]) - float(d @ d) / (end - start)
        return max(c, 0.0)

    def cost_row(self, start: int) -> np.ndarray:
        """Costs of [start, e) for e = start + 1 ... n."""
        d = self.s1[:, start + 1 :] - self.s1[:, start : start + 1]
        width = np.arange(1, self.n - start + 1)
        c = (self.s2[start + 1 :] - self.s2[start]) - (d * d).sum(axis=0) / width
        return np.maximum(c, 0.0)


def segment_cost(data, start: int, end: int) -> float:
    """Squared deviation from each signal's segment mean, summed over signals and [start, end)."""
    x = _as_signals(data)
    n = x.shape[1]
    if not 0 <= start < end <= n:
        raise InvalidParameterError(f"invalid segment [{start}, {end}) for n={n}")
    return _PrefixSums(x).cost(start, end)


def segmentation_cost(data, model: SegmentationModel) -> float:
    """Objective value of ``model`` on ``data``: sum of its segment costs."""
    sums = _PrefixSums(_as_signals(data))
    return float(sum(sums.cost(a, b) for a, b in model.segments()))


def max_adaptive_segments(n: int, min_size: int = MIN_SEGMENT_LENGTH) -> int:
    return n // min_size


def fit_adaptive(data, w: int, min_size: int = MIN_SEGMENT_LENGTH) -> SegmentationModel:
    """Exact optimal w-segment change-in-mean segmentation shared by all signals.

    Runs in O(N w n^2). On ties the lexicographically smallest breakpoint
    tuple is returned.
    """
    x = _as_signals(data)
    n = x.shape[1]
    if w < 1 or w > max_adaptive_segments(n, min_size):
        raise InvalidParameterError(
            f"w={w} infeasible for n={n} with minimum segment length {min_size}"
        )
    if w == 1:
        return SegmentationModel(n, ())

    sums = _PrefixSums(x)
    # cost[s, e] for segment [s, e); inf where shorter than min_size
    cost = np.full((n + 1, n + 1), np.inf)
    for s in range(n - min_size + 1):
        row = sums.cost_row(s)
        cost[s, s + min_size :] = row[min_size - 1 :]

    # best[k][s]: optimal cost of covering [s, n) with k segments
    best = [None, cost[:, n].copy()]
    for k in range(2, w + 1):
        best.append((cost + best[k - 1][None, :]).min(axis=1))

    bkps = []
    s = 0
    for k in range(w, 1, -1):
        e = int(np.argmin(cost[s] + best[k - 1]))
        bkps.append(e)
        s = e
    return SegmentationModel(n, tuple(bkps))
