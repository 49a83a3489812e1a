"""Inverse transforms from symbolic sequences back to real-valued signals."""

from __future__ import annotations

import numpy as np

from .exceptions import ShapeError
from .quantization import QuantizationModel, decode_sax1d


def _check_word(seq, w: int) -> np.ndarray:
    seq = np.asarray(seq, dtype=int)
    if seq.shape[-1] != w:
        raise ShapeError(f"sequence length {seq.shape[-1]} != word length {w}")
    return seq


def reconstruct_piecewise(seq, seg, quant: QuantizationModel) -> np.ndarray:
    """Piecewise-constant signal: segment k holds the representative of symbol k.

    Accepts a single sequence or an (N, w) array.
    """
    seq = _check_word(seq, seg.w)
    values = quant.decode(seq)
    return np.repeat(values, seg.lengths, axis=-1)


def reconstruct_sax1d(
    seq, seg, mean_quant: QuantizationModel, slope_quant: QuantizationModel
) -> np.ndarray:
    """Each segment becomes a line with the slope representative, centred on
    the segment midpoint at the mean representative."""
    seq = _check_word(seq, seg.w)
    mean_sym, slope_sym = decode_sax1d(seq, slope_quant.A)
    means = mean_quant.decode(mean_sym)
    slopes = slope_quant.decode(slope_sym)
    lengths = np.asarray(seg.lengths)
    # offset of each sample from its segment midpoint
    offsets = np.concatenate([np.arange(L) - (L - 1) / 2.0 for L in lengths])
    return np.repeat(means, lengths, axis=-1) + np.repeat(slopes, lengths, axis=-1) * offsets


def coefficients_to_spectrum(coefficients, n: int) -> np.ndarray:
    """Place interleaved (Re c0, Im c0, Re c1, ...) values into a half spectrum."""
    c = np.asarray(coefficients, dtype=float)
    spectrum = np.zeros(c.shape[:-1] + (n // 2 + 1,), dtype=complex)
    k = c.shape[-1]
    spectrum.real[..., : (k + 1) // 2] = c[..., 0::2]
    spectrum.imag[..., : k // 2] = c[..., 1::2]
    return spectrum


def reconstruct_sfa(seq, mcb, n: int, force_zero_dc: bool = False) -> np.ndarray:
    """Inverse DFT of the quantized low-frequency coefficients.

    Unretained frequencies are zero; the inverse transform divides by n.
    """
    seq = _check_word(seq, len(mcb))
    values = np.stack([mcb[j].decode(seq[..., j]) for j in range(len(mcb))], axis=-1)
    spectrum = coefficients_to_spectrum(values, n)
    if force_zero_dc:
        spectrum[..., 0] = 0.0
    return np.fft.irfft(spectrum, n=n, axis=-1)


def truncate_pair(original, recon, w: int):
    """Cut both signals to floor(n / w) * w samples."""
    original = np.asarray(original, dtype=float)
    recon = np.asarray(recon, dtype=float)
    if original.shape != recon.shape:
        raise ShapeError(f"shapes differ: {original.shape} vs {recon.shape}")
    n = original.shape[-1]
    keep = (n // w) * w
    return original[..., :keep], recon[..., :keep]
