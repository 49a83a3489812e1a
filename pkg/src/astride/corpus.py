"""Symbolic corpus storage: JSON and a packed binary layout.

The binary layout is a 16-byte header (magic ``ASYM``, then little-endian
uint32 N, w, A) followed by every symbol written as a ceil(log2 A)-bit
big-endian code, row-major, padded with zero bits to a whole byte.
"""

from __future__ import annotations

import json
import math
import struct
from pathlib import Path

import numpy as np

from .exceptions import FormatError, InvalidParameterError

MAGIC = b"ASYM"
_HEADER = struct.Struct("<4sIII")


def bits_per_symbol(A: int) -> int:
    if A < 2:
        raise InvalidParameterError(f"A={A} must be >= 2")
    return math.ceil(math.log2(A))


def pack_symbols(symbols, A: int) -> bytes:
    S = np.asarray(symbols, dtype=np.int64)
    if S.ndim != 2:
        raise InvalidParameterError("symbols must be an (N, w) array")
    if S.size and (S.min() < 0 or S.max() >= A):
        raise InvalidParameterError(f"symbol ids must lie in [0, {A})")
    b = bits_per_symbol(A)
    shifts = np.arange(b - 1, -1, -1)
    bits = ((S.reshape(-1, 1) >> shifts) & 1).astype(np.uint8).ravel()
    return _HEADER.pack(MAGIC, S.shape[0], S.shape[1], A) + np.packbits(bits).tobytes()


def unpack_symbols(blob: bytes) -> tuple[np.ndarray, int]:
    """Inverse of :func:`pack_symbols`; returns (symbols, A)."""
    if len(blob) < _HEADER.size:
        raise FormatError("truncated corpus header")
    magic, N, w, A = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    b = bits_per_symbol(A)
    payload = np.frombuffer(blob, dtype=np.uint8, offset=_HEADER.size)
    needed = N * w * b
    bits = np.unpackbits(payload)
    if bits.size < needed:
        raise FormatError(f"corpus payload holds {bits.size} bits, need {needed}")
    codes = bits[:needed].reshape(-1, b).astype(np.int64)
    values = codes @ (1 << np.arange(b - 1, -1, -1))
    return values.reshape(N, w), A


def write_packed(path, symbols, A: int) -> None:
    Path(path).write_bytes(pack_symbols(symbols, A))


def read_packed(path) -> tuple[np.ndarray, int]:
    return unpack_symbols(Path(path).read_bytes())


def write_json(path, symbols, A: int, labels=None, method: str = "") -> None:
    from .symbolizers import format_word

    S = np.asarray(symbols, dtype=int)
    doc = {
        "method": method,
        "A": A,
        "w": int(S.shape[1]) if S.ndim == 2 else 0,
        "symbols": S.tolist(),
        "words": [format_word(row, A) for row in S],
        "labels": None if labels is None else list(labels),
    }
    Path(path).write_text(json.dumps(doc, indent=1))


def read_json(path) -> dict:
    doc = json.loads(Path(path).read_text())
    doc["symbols"] = np.asarray(doc["symbols"], dtype=np.int64).reshape(-1, doc["w"])
    return doc
