import random
from math import factorial

import pytest

from peanokit.beta import BetaPair, beta, encode_seq, moduli_coprime_check


def brute_force_least_n(values):
    """Independent oracle: scan n = 0, 1, 2, ... for the least simultaneous
    solution, with the moduli recomputed from scratch."""
    k = len(values)
    l = max([k] + list(values))
    d = factorial(l)
    moduli = [1 + (i + 1) * d for i in range(k)]
    n = 0
    while True:
        if all(n % m == v for m, v in zip(moduli, values)):
            return n, d
        n += 1


def test_beta_zero_dividend():
    for c in range(5):
        for i in range(5):
            assert beta(0, c, i) == 0


def test_beta_direct_examples():
    assert beta(7, 1, 0) == 1
    assert beta(100, 3, 2) == 0


def test_encode_single_entry():
    pair = encode_seq([5])
    assert pair == BetaPair(5, 120)
    assert beta(pair.n, pair.d, 0) == 5


def test_encode_pair_example():
    pair = encode_seq([2, 3])
    assert pair == BetaPair(16, 6)
    assert beta(16, 6, 0) == 2 and beta(16, 6, 1) == 3


def test_encode_matches_brute_force_least_solution():
    rng = random.Random(23)
    for _ in range(40):
        values = [rng.randint(0, 4) for _ in range(rng.randint(1, 3))]
        pair = encode_seq(values)
        n, d = brute_force_least_n(values)
        assert (pair.n, pair.d) == (n, d)


def test_defining_property_random_sequences():
    rng = random.Random(5)
    for _ in range(100):
        values = [rng.randint(0, 10) for _ in range(rng.randint(1, 6))]
        pair = encode_seq(values)
        assert [beta(pair.n, pair.d, i) for i in range(len(values))] == values


def test_encoding_does_not_extend_past_the_length():
    # beta(n, d, k) is unconstrained: [2, 3] continued by 4 is not matched.
    pair = encode_seq([2, 3])
    assert beta(pair.n, pair.d, 2) == 16
    assert beta(pair.n, pair.d, 2) != 4


def test_empty_sequence_rejected():
    with pytest.raises(ValueError):
        encode_seq([])


def test_coprime_example_and_vacuous():
    assert moduli_coprime_check(3, 2) is True
    assert moduli_coprime_check(5, 1) is True


def test_coprime_exhaustive_small():
    for l in range(9):
        for k in range(l + 1):
            assert moduli_coprime_check(l, k) is True


def test_coprime_can_fail_past_the_length_bound():
    # l = 2, k = 4: moduli 3, 5, 7, 9 share the factor 3.
    assert moduli_coprime_check(2, 4) is False
