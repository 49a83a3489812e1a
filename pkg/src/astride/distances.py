"""Distances on raw signals (Euclidean, DTW) and on symbolic sequences
(MINDIST, general edit distance, D-GED)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidParameterError, ShapeError
from .quantization import gaussian_bins


def euclidean(s, t) -> float:
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    if s.shape != t.shape:
        raise ShapeError(f"euclidean needs equal lengths, got {s.shape} and {t.shape}")
    return float(np.sqrt(np.sum((s - t) ** 2)))


def dtw(s, t) -> float:
    """Unconstrained DTW with squared local cost; returns the root of the total.

    Each DP row is solved in closed form: with ``b_j`` the best predecessor
    from the previous row, ``x_j = c_j + min(b_j, x_{j-1})`` unrolls to a
    cumulative minimum over prefix sums of ``c``.
    """
    s = np.asarray(s, dtype=float).ravel()
    t = np.asarray(t, dtype=float).ravel()
    if s.size == 0 or t.size == 0:
        raise InvalidParameterError("dtw needs non-empty signals")
    prev = np.full(t.size + 1, np.inf)
    prev[0] = 0.0
    for si in s:
        c = (si - t) ** 2
        b = np.minimum(prev[:-1], prev[1:])
        p = np.cumsum(c)
        p_before = np.concatenate(([0.0], p[:-1]))
        row = p + np.minimum.accumulate(b - p_before)
        prev = np.concatenate(([np.inf], row))
    return float(np.sqrt(max(prev[-1], 0.0)))


def build_lookup_table(A: int) -> np.ndarray:
    """MINDIST cell values from the Gaussian SAX breakpoints.

    Zero for equal or adjacent symbols, otherwise the gap between the
    breakpoints separating the two bins.
    """
    beta = np.asarray(gaussian_bins(A).boundaries)
    table = np.zeros((A, A))
    for i in range(A):
        for j in range(A):
            if abs(i - j) > 1:
                table[i, j] = beta[max(i, j) - 1] - beta[min(i, j)]
    return table


def mindist(s_hat, t_hat, table: np.ndarray, n: int) -> float:
    s_hat = np.asarray(s_hat, dtype=int)
    t_hat = np.asarray(t_hat, dtype=int)
    if s_hat.shape != t_hat.shape:
        raise ShapeError(
            f"MINDIST requires equal-length sequences, got {s_hat.size} and {t_hat.size}"
        )
    w = s_hat.size
    if n < w:
        raise InvalidParameterError(f"original length n={n} is shorter than w={w}")
    cells = table[s_hat, t_hat]
    return float(np.sqrt(n / w) * np.sqrt(np.sum(cells**2)))


def mindist_matrix(S, T, table: np.ndarray, n: int) -> np.ndarray:
    """MINDIST between every row of ``S`` and every row of ``T``."""
    S = np.asarray(S, dtype=int)
    T = np.asarray(T, dtype=int)
    if S.shape[1] != T.shape[1]:
        raise ShapeError("MINDIST requires equal-length sequences")
    w = S.shape[1]
    out = np.empty((S.shape[0], T.shape[0]))
    for i, s in enumerate(S):
        cells = table[s[None, :], T]
        out[i] = np.sqrt(n / w) * np.sqrt(np.sum(cells**2, axis=1))
    return out


@dataclass(frozen=True)
class CostModel:
    """Substitution matrix plus a uniform insertion/deletion cost."""

    substitution: np.ndarray
    indel: float

    def __post_init__(self):
        sub = np.asarray(self.substitution, dtype=float)
        if sub.ndim != 2 or sub.shape[0] != sub.shape[1]:
            raise InvalidParameterError(f"substitution must be square, got {sub.shape}")
        if np.any(sub < 0) or self.indel < 0:
            raise InvalidParameterError("edit costs must be non-negative")
        sub.setflags(write=False)
        object.__setattr__(self, "substitution", sub)
        object.__setattr__(self, "indel", float(self.indel))

    @property
    def A(self) -> int:
        return self.substitution.shape[0]

    @classmethod
    def from_representatives(cls, representatives) -> "CostModel":
        """D-GED costs: |mu_a - mu_b| substitutions, indels at the largest substitution."""
        mu = np.asarray(representatives, dtype=float)
        sub = np.abs(mu[:, None] - mu[None, :])
        return cls(sub, float(sub.max()))

    @classmethod
    def unit(cls, A: int) -> "CostModel":
        """Simple (Levenshtein) edit distance over A symbols."""
        return cls(1.0 - np.eye(A), 1.0)


def _check_symbols(seq, A: int) -> list:
    seq = [int(v) for v in seq]
    for v in seq:
        if not 0 <= v < A:
            raise InvalidParameterError(f"symbol {v} outside cost matrix of size {A}")
    return seq


def general_edit_distance(s1, s2, costs: CostModel | None = None) -> float:
    """Minimum total cost of insertions, deletions and substitutions turning s1 into s2.

    ``costs=None`` gives the simple edit distance over arbitrary hashable
    symbols. Costs are accumulated along each path in order.
    """
    if costs is None:
        a, b = list(s1), list(s2)
        indel = 1.0

        def sub(x, y):
            return 0.0 if x == y else 1.0

    else:
        a = _check_symbols(s1, costs.A)
        b = _check_symbols(s2, costs.A)
        indel = costs.indel
        matrix = costs.substitution

        def sub(x, y):
            return float(matrix[x, y])

    prev = [0.0]
    for _ in b:
        prev.append(prev[-1] + indel)
    for x in a:
        row = [prev[0] + indel]
        for j, y in enumerate(b, start=1):
            row.append(min(prev[j - 1] + sub(x, y), prev[j] + indel, row[j - 1] + indel))
        prev = row
    return prev[-1]


def edit_distances_to_many(query, corpus, costs: CostModel) -> np.ndarray:
    """General edit distance from ``query`` to every row of an equal-length corpus.

    Vectorised over the corpus; within a DP row the insertion chain is
    resolved with a cumulative minimum, so results can differ from
    :func:`general_edit_distance` in the last few ulps.
    """
    q = np.asarray(_check_symbols(query, costs.A), dtype=int)
    C = np.asarray(corpus, dtype=int)
    if C.ndim != 2:
        raise ShapeError("corpus must be a 2-D array of symbol ids")
    if C.size and (C.min() < 0 or C.max() >= costs.A):
        raise InvalidParameterError("corpus symbol outside cost matrix")
    M, L = C.shape
    indel = costs.indel
    ramp = indel * np.arange(L + 1)
    prev = np.broadcast_to(ramp, (M, L + 1)).copy()
    for i, x in enumerate(q, start=1):
        diag = prev[:, :-1] + costs.substitution[x][C]
        up = prev[:, 1:] + indel
        c = np.empty((M, L + 1))
        c[:, 0] = i * indel
        c[:, 1:] = np.minimum(diag, up)
        prev = np.minimum.accumulate(c - ramp, axis=1) + ramp
    return prev[:, -1].copy()


def replicate(seq, normalized_lengths) -> np.ndarray:
    """Repeat symbol k of ``seq`` ``normalized_lengths[k]`` times."""
    seq = np.asarray(seq, dtype=int)
    reps = np.asarray(normalized_lengths, dtype=int)
    if seq.shape[-1] != reps.size:
        raise ShapeError(f"{seq.shape[-1]} symbols but {reps.size} segment lengths")
    if np.any(reps < 1):
        raise InvalidParameterError("normalized lengths must be >= 1")
    return np.repeat(seq, reps, axis=-1)


def d_ged(seq1, seq2, costs: CostModel, seg=None) -> float:
    """D-GED between two symbolic sequences from the same fitted model.

    With a segmentation, both sequences are first replicated by its
    normalized segment lengths; ``seg=None`` skips replication (uniform
    segmentation).
    """
    if seg is not None:
        seq1 = replicate(seq1, seg.normalized_lengths)
        seq2 = replicate(seq2, seg.normalized_lengths)
    return general_edit_distance(seq1, seq2, costs)


def d_ged_matrix(S, T, costs: CostModel, seg=None) -> np.ndarray:
    """D-GED between every row of ``S`` and every row of ``T``."""
    S = np.asarray(S, dtype=int)
    T = np.asarray(T, dtype=int)
    if seg is not None:
        S = replicate(S, seg.normalized_lengths)
        T = replicate(T, seg.normalized_lengths)
    out = np.empty((S.shape[0], T.shape[0]))
    for i, s in enumerate(S):
        out[i] = edit_distances_to_many(s, T, costs)
    return out


def euclidean_matrix(X, Y) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    # row by row rather than the Gram identity, which cancels badly near zero
    return np.stack([np.sqrt(((Y - x) ** 2).sum(axis=1)) for x in X]) if len(X) else np.zeros((0, len(Y)))


def dtw_matrix(X, Y) -> np.ndarray:
    return np.array([[dtw(x, y) for y in Y] for x in X])
