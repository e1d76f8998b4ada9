import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from bdbounds.codes import (
    CapacityError,
    CodeFileError,
    GeneratorMatrix,
    LinearCode,
    RankDeficientError,
    WeightEnumerator,
    bpsk_modulate,
    builtin_extended_hamming_8_4,
    builtin_ldpc_128_64_weight_enum,
    enumerate_codewords,
    parse_code_text,
    load_code_file,
    weight_enumerator,
)


# ---------------------------------------------------------------------------
# enumeration and weight enumerators
# ---------------------------------------------------------------------------

def test_trivial_parity_code():
    code = LinearCode.from_generator([[1, 1]])
    assert code.codewords.tolist() == [[0, 0], [1, 1]]


def test_hamming84_has_16_codewords():
    code = builtin_extended_hamming_8_4()
    assert code.n == 8 and code.k == 4
    assert code.codewords.shape == (16, 8)
    assert not code.codewords[0].any()


def test_hamming84_weight_distribution():
    code = builtin_extended_hamming_8_4()
    assert code.weight_enum.as_list() == [1, 0, 0, 0, 14, 0, 0, 0, 1]
    assert code.weight_enum.d_min == 4


def test_hamming84_weights_divisible_by_4():
    code = builtin_extended_hamming_8_4()
    weights = code.codewords.sum(axis=1)
    assert (weights % 4 == 0).all()


def test_weight_histogram_matches_enumerator():
    code = builtin_extended_hamming_8_4()
    assert weight_enumerator(code).coeffs == code.weight_enum.coeffs


def test_repetition_code_enumerator():
    code = LinearCode.from_generator([[1, 1, 1]])
    assert code.weight_enum.coefficient(0) == 1
    assert code.weight_enum.coefficient(3) == 1
    assert code.weight_enum.d_min == 3


def test_gf2_closure_on_random_pairs():
    code = builtin_extended_hamming_8_4()
    cws = code.codewords
    as_set = {tuple(row) for row in cws.tolist()}
    rng = np.random.default_rng(3)
    idx = rng.integers(0, len(cws), size=(100, 2))
    for i, j in idx:
        assert tuple((cws[i] ^ cws[j]).tolist()) in as_set


def test_enumeration_order_is_binary_counter():
    g = GeneratorMatrix(np.eye(3, dtype=np.uint8))
    cws = enumerate_codewords(g)
    # identity generator: codeword m is the binary expansion of m, MSB first
    assert cws.tolist() == [
        [0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1],
        [1, 0, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]]


def test_enumeration_capacity_cap():
    bits = np.hstack([np.eye(25, dtype=np.uint8),
                      np.ones((25, 1), dtype=np.uint8)])
    g = GeneratorMatrix(bits)
    with pytest.raises(CapacityError):
        enumerate_codewords(g)


def test_rank_deficient_generator_rejected():
    with pytest.raises(RankDeficientError):
        GeneratorMatrix(np.array([[1, 0, 1], [1, 0, 1]], dtype=np.uint8))
    with pytest.raises(RankDeficientError):
        GeneratorMatrix(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]],
                                 dtype=np.uint8))


@given(k=st.integers(1, 5), data=st.data())
@settings(max_examples=40)
def test_random_codes_sum_to_2_pow_k(k, data):
    n = data.draw(st.integers(k, 10))
    bits = data.draw(arrays(np.uint8, (k, n), elements=st.integers(0, 1)))
    try:
        code = LinearCode.from_generator(bits)
    except RankDeficientError:
        assume(False)
    we = code.weight_enum
    assert we.total() == 2 ** k
    assert we.coefficient(0) == 1
    positive = we.positive_weights()
    assert positive and min(positive) == we.d_min


# ---------------------------------------------------------------------------
# weight enumerator validation
# ---------------------------------------------------------------------------

def test_enumerator_rejects_weight_below_dmin():
    with pytest.raises(ValueError):
        WeightEnumerator(n=8, d_min=4, coeffs={0: 1, 3: 2, 4: 13})


def test_enumerator_rejects_non_power_of_two_total():
    with pytest.raises(ValueError):
        WeightEnumerator(n=8, d_min=4, coeffs={0: 1, 4: 14})


def test_enumerator_rejects_missing_zero_weight():
    with pytest.raises(ValueError):
        WeightEnumerator(n=8, d_min=4, coeffs={4: 16})


def test_truncated_enumerator_skips_completeness_checks():
    we = WeightEnumerator(n=8, d_min=4, coeffs={4: 14}, truncated=True)
    assert we.coefficient(4) == 14
    with pytest.raises(ValueError):
        we.as_list()
    with pytest.raises(ValueError):
        we.k


# ---------------------------------------------------------------------------
# BPSK modulation
# ---------------------------------------------------------------------------

def test_bpsk_all_zero():
    assert bpsk_modulate([0, 0, 0, 0]).tolist() == [1.0, 1.0, 1.0, 1.0]


def test_bpsk_distance_identity_exhaustive():
    code = builtin_extended_hamming_8_4()
    x = bpsk_modulate(code.codewords)
    cws = code.codewords.astype(int)
    for i in range(len(cws)):
        for j in range(len(cws)):
            hamming = int((cws[i] ^ cws[j]).sum())
            euclid = float(np.linalg.norm(x[i] - x[j]))
            assert euclid == pytest.approx(2 * math.sqrt(hamming), abs=1e-12)


def test_bpsk_weight8_distance():
    d = np.linalg.norm(bpsk_modulate(np.zeros(8)) - bpsk_modulate(np.ones(8)))
    assert d == pytest.approx(2 * math.sqrt(8), abs=1e-12)


# ---------------------------------------------------------------------------
# builtins
# ---------------------------------------------------------------------------

def test_ldpc128_truncated_enumerator():
    we = builtin_ldpc_128_64_weight_enum()
    assert we.n == 128
    assert we.d_min == 14
    assert we.truncated
    assert we.coefficient(14) == 16
    assert we.coefficient(15) == 0
    assert we.coefficient(16) == 512
    assert we.coefficient(17) == 0
    assert we.coefficient(18) == 5344
    assert we.positive_weights() == [14, 16, 18]


# ---------------------------------------------------------------------------
# code file format
# ---------------------------------------------------------------------------

GENERATOR_FILE = """\
# the (8,4) extended Hamming code
code hamming84
n 8
k 4
10001101
01001011
00100111
00011110
"""

ENUMERATOR_FILE = """\
code ldpc128
n 128
k 64
dmin 14
A 14 16
A 16 512
A 18 5344
truncated
"""


def test_parse_generator_mode():
    parsed = parse_code_text(GENERATOR_FILE, source="mem")
    assert parsed.name == "hamming84"
    assert parsed.n == 8 and parsed.k == 4
    assert parsed.code is not None
    assert parsed.weight_enum.as_list() == [1, 0, 0, 0, 14, 0, 0, 0, 1]


def test_parse_enumerator_mode():
    parsed = parse_code_text(ENUMERATOR_FILE, source="mem")
    assert parsed.name == "ldpc128"
    assert parsed.code is None
    assert parsed.k == 64
    assert parsed.weight_enum.truncated
    assert parsed.weight_enum.coefficient(16) == 512


def test_parse_enumerator_derives_k_when_complete():
    text = """code tiny
n 3
dmin 3
A 0 1
A 3 1
"""
    parsed = parse_code_text(text, source="mem")
    assert parsed.k == 1
    assert not parsed.weight_enum.truncated


def test_parse_truncated_without_k_leaves_it_unknown():
    text = """code partial
n 16
dmin 4
A 4 12
truncated
"""
    parsed = parse_code_text(text, source="mem")
    assert parsed.k is None


@pytest.mark.parametrize("text,lineno", [
    ("n 8\nk 4\n", 1),                                  # missing code line
    ("code x\nn eight\n", 2),                           # non-integer n
    ("code x\nn 4\nk 2\n1111\n", 5),                    # too few rows
    ("code x\nn 4\nk 1\n21a1\n", 4),                    # bad row characters
    ("code x\nn 4\nk 1\n111\n", 4),                     # wrong row length
    ("code x\nn 8\ndmin 4\nA 6 2\nA 4 1\n", 5),         # descending weights
    ("code x\nn 8\nwat 4\n", 3),                        # unknown line
    ("code x\nn 4\nk 1\n1111\nextra\n", 5),             # trailing content
])
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(CodeFileError) as info:
        parse_code_text(text, source="mem")
    assert f"mem:{lineno}:" in str(info.value)


def test_parse_error_rank_deficient_matrix():
    text = "code x\nn 4\nk 2\n1100\n1100\n"
    with pytest.raises(CodeFileError):
        parse_code_text(text, source="mem")


def test_load_code_file_reports_path(tmp_path):
    path = tmp_path / "bad.code"
    path.write_text("code x\nn nope\n")
    with pytest.raises(CodeFileError) as info:
        load_code_file(path)
    assert str(path) in str(info.value)


def test_load_code_file_roundtrip(tmp_path):
    path = tmp_path / "hamming84.code"
    path.write_text(GENERATOR_FILE)
    parsed = load_code_file(path)
    builtin = builtin_extended_hamming_8_4()
    assert parsed.weight_enum.coeffs == builtin.weight_enum.coeffs
