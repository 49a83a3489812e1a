"""Fit / transform / inverse-transform for SAX, 1d-SAX, SFA, ASTRIDE and FASTRIDE.

Every fitted model carries one dictionary of symbols shared by all signals
of the dataset it was fitted on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .distances import (
    CostModel,
    build_lookup_table,
    d_ged_matrix,
    dtw_matrix,
    euclidean_matrix,
    mindist_matrix,
)
from .exceptions import InvalidParameterError, ShapeError
from .quantization import (
    QuantizationModel,
    encode_sax1d,
    fit_1dsax_slope_bins,
    fit_mcb,
    fit_quantile_bins,
    gaussian_bins,
    segment_means,
)
from .reconstruct import reconstruct_piecewise, reconstruct_sax1d, reconstruct_sfa
from .segmentation import SegmentationModel, fit_adaptive, fit_uniform

METHODS = ("sax", "sax1d", "sfa", "astride", "fastride")
DISTANCES = ("dged", "mindist", "euclidean", "dtw")
FORMAT_VERSION = 1


@dataclass(frozen=True)
class SymbolizerSpec:
    method: str
    w: int
    A: int
    A_mean: Optional[int] = None
    A_slope: Optional[int] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidParameterError(f"unknown method {self.method!r}; choose from {METHODS}")
        if self.w < 1:
            raise InvalidParameterError(f"w={self.w} must be >= 1")
        if self.A < 2:
            raise InvalidParameterError(f"A={self.A} must be >= 2")
        if self.method == "sax1d":
            a_mean, a_slope = self.A_mean, self.A_slope
            if a_mean is None and a_slope is None:
                root = math.isqrt(self.A)
                if root * root != self.A:
                    raise InvalidParameterError(
                        f"1d-SAX with A={self.A} needs explicit A_mean and A_slope"
                    )
                a_mean = a_slope = root
            elif a_mean is None:
                a_mean = self.A // a_slope
            elif a_slope is None:
                a_slope = self.A // a_mean
            if a_mean < 2 or a_slope < 2 or a_mean * a_slope != self.A:
                raise InvalidParameterError(
                    f"1d-SAX needs A_mean, A_slope >= 2 with A_mean * A_slope = A "
                    f"(got {a_mean} * {a_slope} vs A={self.A})"
                )
            object.__setattr__(self, "A_mean", a_mean)
            object.__setattr__(self, "A_slope", a_slope)

    def to_dict(self) -> dict:
        d = {"method": self.method, "w": self.w, "A": self.A}
        if self.method == "sax1d":
            d.update(A_mean=self.A_mean, A_slope=self.A_slope)
        return d


@dataclass(frozen=True)
class FittedSymbolizer:
    spec: SymbolizerSpec
    n: int
    segmentation: Optional[SegmentationModel]
    quantizers: tuple
    provenance: dict = field(default_factory=dict, compare=False)

    @property
    def method(self) -> str:
        return self.spec.method

    @property
    def w(self) -> int:
        return self.spec.w

    @property
    def A(self) -> int:
        return self.spec.A

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "spec": self.spec.to_dict(),
            "n": self.n,
            "segmentation": None if self.segmentation is None else self.segmentation.to_dict(),
            "quantizers": [q.to_dict() for q in self.quantizers],
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FittedSymbolizer":
        seg = d.get("segmentation")
        return cls(
            SymbolizerSpec(**d["spec"]),
            int(d["n"]),
            None if seg is None else SegmentationModel.from_dict(seg),
            tuple(QuantizationModel.from_dict(q) for q in d["quantizers"]),
            d.get("provenance", {}),
        )

    def save(self, path) -> None:
        # repr round-trips floats exactly through JSON
        Path(path).write_text(json.dumps(self.to_dict(), indent=2))

    @classmethod
    def load(cls, path) -> "FittedSymbolizer":
        return cls.from_dict(json.loads(Path(path).read_text()))


def _signals(data) -> np.ndarray:
    x = np.asarray(getattr(data, "signals", data), dtype=float)
    return x[None, :] if x.ndim == 1 else x


def sfa_coefficients(signal, w: int) -> np.ndarray:
    """Lowest-frequency DFT coefficients, interleaved (Re c0, Im c0, Re c1, ...)
    and truncated to w values. Works row-wise on 2-D input."""
    x = np.asarray(signal, dtype=float)
    n = x.shape[-1]
    if w < 1 or w > n:
        raise InvalidParameterError(f"SFA word length w={w} must satisfy 1 <= w <= n={n}")
    spectrum = np.fft.rfft(x, axis=-1)[..., : (w + 1) // 2]
    inter = np.stack([spectrum.real, spectrum.imag], axis=-1)
    return inter.reshape(x.shape[:-1] + (-1,))[..., :w]


def slope_and_mean(signal, start: int, end: int) -> tuple[float, float]:
    """Segment mean and least-squares slope over timestamps start .. end - 1."""
    if end - start < 1:
        raise InvalidParameterError(f"empty segment [{start}, {end})")
    y = np.asarray(signal, dtype=float)[start:end]
    mean = float(y.mean())
    if y.size == 1:
        return mean, 0.0
    t = np.arange(y.size) - (y.size - 1) / 2.0
    return mean, float(t @ (y - mean) / (t @ t))


def _segment_slopes(x: np.ndarray, seg: SegmentationModel) -> np.ndarray:
    out = np.zeros((x.shape[0], seg.w))
    for k, (a, b) in enumerate(seg.segments()):
        L = b - a
        if L < 2:
            continue
        t = np.arange(L) - (L - 1) / 2.0
        y = x[:, a:b]
        out[:, k] = (y - y.mean(axis=1, keepdims=True)) @ t / (t @ t)
    return out


def features(model: FittedSymbolizer, data) -> np.ndarray:
    """Per-segment (or per-coefficient) real features before quantization."""
    x = _signals(data)
    if x.shape[1] != model.n:
        raise ShapeError(f"model fitted for n={model.n}, data has n={x.shape[1]}")
    if model.method == "sfa":
        return sfa_coefficients(x, model.w)
    return segment_means(x, model.segmentation)


def fit(spec: SymbolizerSpec, train) -> FittedSymbolizer:
    """Fit a symbolizer on a (z-normalized) training dataset."""
    x = _signals(train)
    N, n = x.shape
    if N < 1:
        raise InvalidParameterError("cannot fit on an empty dataset")
    if spec.w > n:
        raise InvalidParameterError(f"w={spec.w} exceeds signal length n={n}")
    provenance = train.fingerprint() if hasattr(train, "fingerprint") else {"N": N, "n": n}

    if spec.method == "sfa":
        coefs = sfa_coefficients(x, spec.w)
        return FittedSymbolizer(spec, n, None, tuple(fit_mcb(coefs, spec.A)), provenance)

    if spec.method == "astride":
        seg = fit_adaptive(x, spec.w)
    else:
        seg = fit_uniform(n, spec.w)

    if spec.method in ("astride", "fastride"):
        quant = (fit_quantile_bins(segment_means(x, seg), spec.A),)
    elif spec.method == "sax":
        quant = (gaussian_bins(spec.A),)
    else:
        quant = (gaussian_bins(spec.A_mean), fit_1dsax_slope_bins(spec.A_slope, n // spec.w))
    return FittedSymbolizer(spec, n, seg, quant, provenance)


def transform(model: FittedSymbolizer, data) -> np.ndarray:
    """Symbolic sequences as an (N, w) integer array."""
    feats = features(model, data)
    if model.method == "sfa":
        cols = [q.assign_many(feats[:, j]) for j, q in enumerate(model.quantizers)]
        return np.stack(cols, axis=1).astype(np.int64)
    mean_sym = model.quantizers[0].assign_many(feats)
    if model.method == "sax1d":
        slopes = _segment_slopes(_signals(data), model.segmentation)
        slope_sym = model.quantizers[1].assign_many(slopes)
        return encode_sax1d(mean_sym, slope_sym, model.spec.A_slope).astype(np.int64)
    return mean_sym.astype(np.int64)


def inverse_transform(model: FittedSymbolizer, symbols, force_zero_dc: bool = False) -> np.ndarray:
    """Reconstruct length-n signals from (N, w) symbols."""
    symbols = np.asarray(symbols, dtype=int)
    if model.method == "sfa":
        return reconstruct_sfa(symbols, model.quantizers, model.n, force_zero_dc)
    if model.method == "sax1d":
        return reconstruct_sax1d(symbols, model.segmentation, *model.quantizers)
    return reconstruct_piecewise(symbols, model.segmentation, model.quantizers[0])


def cost_model(model: FittedSymbolizer) -> CostModel:
    """D-GED costs from the model's per-symbol representative values."""
    if model.method in ("sfa", "sax1d"):
        raise InvalidParameterError(f"D-GED is not defined for {model.method}")
    return CostModel.from_representatives(model.quantizers[0].representatives)


def default_distance(method: str) -> Optional[str]:
    return {"astride": "dged", "fastride": "dged", "sax": "mindist", "sax1d": "euclidean"}.get(
        method
    )


def distance_matrix(model: FittedSymbolizer, S, T, distance: Optional[str] = None) -> np.ndarray:
    """Distances between every symbolic sequence of ``S`` and of ``T``.

    ``euclidean`` and ``dtw`` compare reconstructions. D-GED replicates by the
    normalized segment lengths for ASTRIDE only.
    """
    distance = distance or default_distance(model.method)
    if distance not in DISTANCES:
        raise InvalidParameterError(f"unknown distance {distance!r}; choose from {DISTANCES}")
    S = np.asarray(S, dtype=int)
    T = np.asarray(T, dtype=int)
    if distance == "dged":
        seg = model.segmentation if model.method == "astride" else None
        return d_ged_matrix(S, T, cost_model(model), seg)
    if distance == "mindist":
        if model.method != "sax":
            raise InvalidParameterError("MINDIST needs Gaussian SAX breakpoints (method sax)")
        return mindist_matrix(S, T, build_lookup_table(model.A), model.n)
    rs, rt = inverse_transform(model, S), inverse_transform(model, T)
    if distance == "euclidean":
        return euclidean_matrix(rs, rt)
    return dtw_matrix(rs, rt)


def format_word(symbols, A: int) -> str:
    """Digits for A <= 10 (e.g. "1230"), comma-separated integers otherwise."""
    symbols = [int(s) for s in symbols]
    if A <= 10:
        return "".join(str(s) for s in symbols)
    return ",".join(str(s) for s in symbols)


def parse_word(word: str, A: int) -> list[int]:
    if A <= 10 and "," not in word:
        return [int(c) for c in word]
    return [int(tok) for tok in word.split(",") if tok]
