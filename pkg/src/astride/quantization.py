"""Scalar quantizers: empirical-quantile bins, Gaussian bins, and MCB."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .exceptions import InvalidParameterError, ShapeError

SAX1D_SLOPE_VARIANCE = 0.03


@dataclass(frozen=True)
class QuantizationModel:
    """A - 1 sorted cut points and one representative value per symbol."""

    boundaries: tuple
    representatives: tuple

    def __post_init__(self):
        b = tuple(float(v) for v in self.boundaries)
        r = tuple(float(v) for v in self.representatives)
        if len(r) != len(b) + 1:
            raise InvalidParameterError(
                f"{len(b)} boundaries need {len(b) + 1} representatives, got {len(r)}"
            )
        if any(hi < lo for lo, hi in zip(b, b[1:])):
            raise InvalidParameterError("boundaries must be sorted")
        object.__setattr__(self, "boundaries", b)
        object.__setattr__(self, "representatives", r)

    @property
    def A(self) -> int:
        return len(self.representatives)

    def assign(self, value: float) -> int:
        return int(np.searchsorted(self.boundaries, value, side="right"))

    def assign_many(self, values) -> np.ndarray:
        """Vectorised :meth:`assign`; values on a boundary go to the upper bin."""
        return np.searchsorted(np.asarray(self.boundaries), values, side="right")

    def decode(self, symbols) -> np.ndarray:
        return np.asarray(self.representatives)[np.asarray(symbols, dtype=int)]

    def to_dict(self) -> dict:
        return {
            "A": self.A,
            "boundaries": list(self.boundaries),
            "representatives": list(self.representatives),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "QuantizationModel":
        model = cls(tuple(d["boundaries"]), tuple(d["representatives"]))
        if "A" in d and int(d["A"]) != model.A:
            raise InvalidParameterError(f"A={d['A']} disagrees with {model.A} representatives")
        return model


def assign(value: float, model: QuantizationModel) -> int:
    return model.assign(value)


def _check_alphabet(A: int) -> None:
    if A < 2:
        raise InvalidParameterError(f"alphabet size A={A} must be >= 2")


def _empty_bin_value(boundaries: np.ndarray, a: int) -> float:
    lo = boundaries[a - 1] if a > 0 else None
    hi = boundaries[a] if a < len(boundaries) else None
    lo = hi if lo is None else lo
    hi = lo if hi is None else hi
    return 0.5 * (lo + hi)


def fit_quantile_bins(values, A: int) -> QuantizationModel:
    """Equiprobable bins cut at the empirical k/A quantiles of ``values``.

    Each representative is the mean of the training values in its bin; an
    empty bin (ties) falls back to its boundary midpoint.
    """
    _check_alphabet(A)
    # sorted so bin sums do not depend on input order
    values = np.sort(np.asarray(values, dtype=float).ravel())
    if values.size == 0:
        raise InvalidParameterError("cannot fit quantile bins on no values")
    boundaries = np.quantile(values, np.arange(1, A) / A, method="linear")
    symbols = np.searchsorted(boundaries, values, side="right")
    counts = np.bincount(symbols, minlength=A)
    sums = np.bincount(symbols, weights=values, minlength=A)
    reps = [
        sums[a] / counts[a] if counts[a] else _empty_bin_value(boundaries, a)
        for a in range(A)
    ]
    return QuantizationModel(tuple(boundaries), tuple(reps))


def _scaled_gaussian_bins(A: int, scale: float = 1.0) -> QuantizationModel:
    _check_alphabet(A)
    boundaries = scale * norm.ppf(np.arange(1, A) / A)
    reps = scale * norm.ppf((np.arange(A) + 0.5) / A)
    return QuantizationModel(tuple(boundaries), tuple(reps))


def gaussian_bins(A: int) -> QuantizationModel:
    """SAX breakpoints: equiprobable under a standard normal."""
    return _scaled_gaussian_bins(A)


def fit_mcb(coefficients, A: int) -> list[QuantizationModel]:
    """Multiple Coefficient Binning: quantile bins fitted column by column."""
    c = np.asarray(coefficients, dtype=float)
    if c.ndim != 2 or c.shape[0] < 1 or c.shape[1] < 1:
        raise InvalidParameterError(f"MCB needs a non-empty (N, w) matrix, got shape {c.shape}")
    return [fit_quantile_bins(c[:, j], A) for j in range(c.shape[1])]


def fit_1dsax_slope_bins(A_slope: int, segment_length: int) -> QuantizationModel:
    """Gaussian slope bins with variance 0.03 / segment_length."""
    if segment_length < 1:
        raise InvalidParameterError(f"segment_length={segment_length} must be >= 1")
    return _scaled_gaussian_bins(A_slope, np.sqrt(SAX1D_SLOPE_VARIANCE / segment_length))


def segment_means(signal, seg) -> np.ndarray:
    """Mean of ``signal`` over each segment of ``seg``."""
    x = np.asarray(signal, dtype=float)
    if x.shape[-1] != seg.n:
        raise ShapeError(f"signal length {x.shape[-1]} != segmentation n={seg.n}")
    sums = np.add.reduceat(x, list(seg.starts), axis=-1)
    return sums / np.asarray(seg.lengths)


def encode_sax1d(mean_symbol, slope_symbol, A_slope: int):
    """Combined 1d-SAX id: mean_symbol * A_slope + slope_symbol."""
    return np.asarray(mean_symbol) * A_slope + np.asarray(slope_symbol)


def decode_sax1d(symbol, A_slope: int):
    return np.divmod(np.asarray(symbol), A_slope)
