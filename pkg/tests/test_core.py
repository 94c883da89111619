import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fastssc import (
    PolarCode,
    construct_code,
    encode,
    frozen_file_text,
    polar_transform,
    read_frozen_file,
    write_frozen_file,
)
from conftest import DATA_DIR
from oracles import dense_transform


def test_transform_matches_dense_generator(rng):
    for N in (1, 2, 4, 8, 16, 32, 64):
        bits = rng.integers(0, 2, size=(40, N)).astype(np.uint8)
        assert (polar_transform(bits) == dense_transform(bits)).all()


def test_transform_single_frame_shape(rng):
    bits = rng.integers(0, 2, size=16).astype(np.uint8)
    out = polar_transform(bits)
    assert out.shape == (16,)
    assert (out == dense_transform(bits)[0]).all()


@settings(max_examples=60)
@given(st.integers(0, 6), st.integers(0, 2**30))
def test_transform_is_an_involution(n, seed):
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(3, 1 << n)).astype(np.uint8)
    assert (polar_transform(polar_transform(bits)) == bits).all()


def test_transform_rejects_non_power_of_two():
    with pytest.raises(ValueError):
        polar_transform(np.zeros(6, dtype=np.uint8))


def test_encode_hand_worked_n4():
    # u = [0,0,1,1]: x0 = u0^u1^u2^u3 = 0, x1 = u1^u3 = 0^1... worked out
    # against the dense matrix: [0,1,0,1].
    code = PolarCode.from_frozen_mask(np.array([True, True, False, False]))
    x = encode(code, np.array([1, 1], dtype=np.uint8))
    assert x.tolist() == [0, 1, 0, 1]


def test_encode_zero_message_gives_zero_codeword():
    code = PolarCode.from_frozen_mask(np.array([True] * 7 + [False]))
    x = encode(code, np.zeros((3, 1), dtype=np.uint8))
    assert not x.any()


def test_encode_is_linear(rng):
    code = construct_code(64, 30, 2.0)
    a = rng.integers(0, 2, size=(10, 30)).astype(np.uint8)
    b = rng.integers(0, 2, size=(10, 30)).astype(np.uint8)
    assert (encode(code, a ^ b) == (encode(code, a) ^ encode(code, b))).all()


def test_code_validation():
    with pytest.raises(ValueError, match="power of 2"):
        construct_code(24, 12, 2.0)
    with pytest.raises(ValueError):
        construct_code(16, 0, 2.0)
    with pytest.raises(ValueError):
        construct_code(16, 17, 2.0)
    with pytest.raises(ValueError):
        PolarCode(N=8, K=3, frozen=np.ones(8, dtype=bool), construction=None)


def test_two_bit_code_freezes_the_weak_position():
    code = construct_code(2, 1, 0.0)
    assert code.frozen.tolist() == [True, False]


def test_bhattacharyya_hand_worked_n4():
    # z0 = exp(-0.5) at rate 1/2, 0 dB; one recursion step by hand puts the
    # two worst synthetic channels at indices 0 and 1.
    code = construct_code(4, 2, 0.0, method="bhattacharyya")
    assert code.frozen.tolist() == [True, True, False, False]


def test_construction_is_deterministic():
    a = construct_code(256, 128, 1.5)
    b = construct_code(256, 128, 1.5)
    assert (a.frozen == b.frozen).all()


def test_construction_nested_in_k():
    # The same reliability order serves every rate, so frozen sets nest.
    big = construct_code(128, 100, 2.0)
    small = construct_code(128, 40, 2.0)
    assert (big.frozen & ~small.frozen).sum() == 0


def test_golden_frozen_set_1024_512():
    golden = read_frozen_file(DATA_DIR / "frozen_1024_512_ga2.0.txt")
    built = construct_code(1024, 512, 2.0)
    assert (golden.frozen == built.frozen).all()


def test_info_positions_more_reliable_than_frozen():
    # In any sensible construction the all-ones upper index is informational
    # and index 0 is frozen, for rates away from the extremes.
    for method in ("ga", "bhattacharyya"):
        code = construct_code(64, 32, 2.0, method=method)
        assert code.frozen[0]
        assert not code.frozen[63]


def test_frozen_file_roundtrip(tmp_path, rng):
    code = construct_code(64, 20, 3.0)
    path = tmp_path / "code.txt"
    write_frozen_file(path, code)
    back = read_frozen_file(path)
    assert back.N == 64 and back.K == 20
    assert (back.frozen == code.frozen).all()
    assert frozen_file_text(code).splitlines()[0] == "64 20"


@pytest.mark.parametrize(
    "text",
    [
        "8 4\n0 1 2\n",          # count mismatch
        "8 4\n0 1 2 9\n",        # out of range
        "8 4\n0 1 2 2\n",        # duplicate
        "6 3\n0 1 2\n",          # N not a power of two
    ],
)
def test_frozen_file_rejects_malformed(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(ValueError):
        read_frozen_file(path)


def test_rate_and_index_properties():
    code = construct_code(32, 8, 2.0)
    assert code.n == 5
    assert code.rate == 0.25
    assert len(code.info_indices) == 8
    assert len(code.frozen_indices) == 24
    assert not (set(code.info_indices) & set(code.frozen_indices))
