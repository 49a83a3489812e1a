import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from astride.corpus import (
    bits_per_symbol,
    pack_symbols,
    read_json,
    read_packed,
    unpack_symbols,
    write_json,
    write_packed,
)
from astride.exceptions import FormatError, InvalidParameterError


@pytest.mark.parametrize("A, bits", [(2, 1), (3, 2), (4, 2), (9, 4), (16, 4), (17, 5), (256, 8)])
def test_bits_per_symbol(A, bits):
    assert bits_per_symbol(A) == bits


def test_round_trip_every_alphabet():
    rng = np.random.default_rng(0)
    for A in range(2, 257):
        S = rng.integers(0, A, size=(7, 5))
        S[0, 0], S[-1, -1] = 0, A - 1
        back, A2 = unpack_symbols(pack_symbols(S, A))
        assert A2 == A
        np.testing.assert_array_equal(back, S)


@given(st.integers(2, 256), st.integers(0, 6), st.integers(1, 6), st.data())
def test_round_trip_shapes(A, N, w, data):
    S = np.array(
        data.draw(st.lists(st.lists(st.integers(0, A - 1), min_size=w, max_size=w), min_size=N, max_size=N)),
        dtype=np.int64,
    ).reshape(N, w)
    blob = pack_symbols(S, A)
    assert len(blob) == 16 + -(-N * w * bits_per_symbol(A) // 8)
    back, _ = unpack_symbols(blob)
    np.testing.assert_array_equal(back, S)


def test_known_layout():
    blob = pack_symbols([[1, 2, 3, 0]], 4)
    assert blob[:4] == b"ASYM"
    assert blob[16:] == bytes([0b01101100])


def test_rejects_bad_input():
    with pytest.raises(InvalidParameterError):
        pack_symbols([[0, 4]], 4)
    with pytest.raises(InvalidParameterError):
        pack_symbols([0, 1], 4)
    with pytest.raises(FormatError):
        unpack_symbols(b"NOPE" + bytes(12))
    with pytest.raises(FormatError):
        unpack_symbols(b"AS")
    with pytest.raises(FormatError):
        unpack_symbols(pack_symbols([[3, 3, 3, 3, 3]], 16)[:-1])


def test_file_round_trips(tmp_path):
    S = np.array([[1, 2, 3, 0], [0, 0, 1, 1]])
    write_packed(tmp_path / "c.bin", S, 4)
    back, A = read_packed(tmp_path / "c.bin")
    np.testing.assert_array_equal(back, S)
    write_json(tmp_path / "c.json", S, 4, labels=["a", "b"], method="astride")
    doc = read_json(tmp_path / "c.json")
    np.testing.assert_array_equal(doc["symbols"], S)
    assert doc["words"] == ["1230", "0011"]
    assert doc["labels"] == ["a", "b"]
