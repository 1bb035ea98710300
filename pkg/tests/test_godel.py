import random

import pytest

from conftest import formula_corpus
from peanokit.godel import (
    CodecError, decode_formula, decode_sequence, encode_formula,
    encode_sequence, symbols_of, _prime,
)
from peanokit.syntax import Eq, Var, Zero, parse_formula


def test_smallest_formula_code_is_960():
    # symbols `= 0 0` -> codes 6, 1, 1 -> 2^6 * 3 * 5
    f = Eq(Zero(), Zero())
    assert symbols_of(f) == [6, 1, 1]
    assert encode_formula(f) == 960
    assert decode_formula(960) == f


def test_decode_rejects_non_codes():
    with pytest.raises(CodecError):
        decode_formula(7)  # exponent of prime 2 missing
    with pytest.raises(CodecError):
        decode_formula(10)  # prime 3 missing
    with pytest.raises(CodecError):
        decode_formula(1)
    with pytest.raises(CodecError):
        decode_formula(0)
    with pytest.raises(CodecError):
        # 2^6 * 3: symbol string `= 0` is an incomplete formula
        decode_formula(2 ** 6 * 3)


def test_roundtrip_and_no_collisions_on_corpus():
    corpus = list({f for f in formula_corpus(seed=99, count=1100)})
    codes = [encode_formula(f) for f in corpus]
    assert len(set(codes)) == len(corpus)
    for f, c in zip(corpus[:200], codes[:200]):
        assert decode_formula(c) == f


def test_code_exceeds_every_proper_prefix_code():
    f = parse_formula("(Ax2)((x2 + 0) = x2 -> ~S(x2) = 0)")
    symbols = symbols_of(f)
    full = encode_formula(f)
    for cut in range(1, len(symbols)):
        prefix_code = 1
        for i, s in enumerate(symbols[:cut]):
            prefix_code *= _prime(i) ** s
        assert full > prefix_code


def test_sequence_examples():
    assert encode_sequence([1]) == 2
    assert encode_sequence([2, 1]) == 12
    assert decode_sequence(2) == [1]
    assert decode_sequence(12) == [2, 1]


def test_sequence_gap_detection():
    with pytest.raises(CodecError):
        decode_sequence(10)  # 2 * 5, prime 3 missing
    with pytest.raises(CodecError):
        decode_sequence(1)
    with pytest.raises(CodecError):
        encode_sequence([])
    with pytest.raises(CodecError):
        encode_sequence([0])


def test_sequence_roundtrip_random():
    rng = random.Random(41)
    for _ in range(40):
        items = [rng.randint(1, 10 ** 4) for _ in range(rng.randint(1, 5))]
        assert decode_sequence(encode_sequence(items)) == items


def test_variable_symbols_distinct_by_index():
    assert symbols_of(Eq(Var(1), Var(2))) == [6, 9, 10]
    c1 = encode_formula(Eq(Var(1), Var(1)))
    c2 = encode_formula(Eq(Var(2), Var(2)))
    assert c1 != c2
    assert decode_formula(c1) == Eq(Var(1), Var(1))
