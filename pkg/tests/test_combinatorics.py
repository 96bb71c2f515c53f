from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from mvkrawtchouk.combinatorics import (
    composition_index,
    count_compositions,
    enumerate_compositions,
    multinomial,
    neg_pochhammer,
    pochhammer,
    verify_lemma31,
)
from fractions import Fraction


def test_enumerate_small_cases():
    assert enumerate_compositions(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert enumerate_compositions(3, 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert len(enumerate_compositions(3, 2)) == 6
    assert enumerate_compositions(4, 0) == [(0, 0, 0, 0)]
    assert enumerate_compositions(1, 5) == [(5,)]


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("N", range(0, 11))
def test_enumeration_count_order_and_uniqueness(n, N):
    comps = enumerate_compositions(n, N)
    assert len(comps) == comb(N + n - 1, n - 1) == count_compositions(n, N)
    assert len(set(comps)) == len(comps)
    assert comps == sorted(comps, reverse=True)
    assert all(sum(c) == N and min(c) >= 0 for c in comps)
    assert comps[0] == (N,) + (0,) * (n - 1)
    assert comps[-1] == (0,) * (n - 1) + (N,)
    assert all(composition_index(c) == k for k, c in enumerate(comps))


def test_enumeration_is_stable_and_returns_fresh_lists():
    a = enumerate_compositions(3, 4)
    a.clear()
    assert enumerate_compositions(3, 4) == enumerate_compositions(3, 4) != []


def test_enumeration_rejects_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_compositions(0, 2)
    with pytest.raises(ValueError):
        enumerate_compositions(2, -1)


def test_multinomial_examples():
    assert multinomial(3, (1, 1, 1)) == 6
    assert multinomial(4, (4, 0, 0)) == 1
    assert multinomial(5, (2, 2, 1)) == factorial(5) // (2 * 2 * 1) == 30


def test_multinomial_degree_mismatch():
    with pytest.raises(ValueError):
        multinomial(3, (1, 1))


def test_multinomial_is_arbitrary_precision():
    big = multinomial(60, (20, 20, 20))
    assert big == factorial(60) // factorial(20) ** 3
    assert big > 2**64


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("N", range(0, 8))
def test_multinomial_theorem_at_ones(n, N):
    assert sum(multinomial(N, x) for x in enumerate_compositions(n, N)) == n**N


def test_pochhammer_examples():
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(-3, 2) == 6
    assert pochhammer(-3, 4) == 0
    assert pochhammer(Fraction(1, 2), 3) == Fraction(1, 2) * Fraction(3, 2) * Fraction(5, 2)


@given(st.integers(0, 12), st.integers(0, 15))
def test_negative_integer_pochhammer_vanishes_exactly_past_t(t, k):
    value = pochhammer(-t, k)
    assert (value == 0) == (k > t)
    assert neg_pochhammer(t, k) == value


def test_lemma31_examples():
    assert verify_lemma31(3, (1, 0), (2, 1), (1, 1))
    assert verify_lemma31(2, (0, 0), (1, 1), (1, 1))


def test_lemma31_example_sides():
    # N=3, p=(1,0), m=(2,1), z=(1,1): binom(2; 1,1) = 2 and 3 * (-2) / (-3) = 2
    assert multinomial(2, (1, 1)) == 2
    assert Fraction(multinomial(3, (2, 1)) * neg_pochhammer(2, 1) * neg_pochhammer(1, 0), neg_pochhammer(3, 1)) == 2


def test_lemma31_rejects_inadmissible_tuples():
    with pytest.raises(ValueError):
        verify_lemma31(2, (2, 1), (1, 1), (0, 0))  # |p| > N
    with pytest.raises(ValueError):
        verify_lemma31(2, (1, 0), (2, 0), (0, 1))  # m - z negative
    with pytest.raises(ValueError):
        verify_lemma31(2, (1, 0), (1, 1), (1, 1))  # z has the wrong degree


def _admissible(n, N):
    for size in range(N + 1):
        for p in enumerate_compositions(n, size):
            for m in enumerate_compositions(n, N):
                for z in enumerate_compositions(n, N - size):
                    if all(mi >= zi for mi, zi in zip(m, z)):
                        yield p, m, z


@pytest.mark.parametrize("n, N", [(1, 3), (2, 4), (3, 3)])
def test_lemma31_small_sweep(n, N):
    cases = list(_admissible(n, N))
    assert cases
    assert all(verify_lemma31(N, p, m, z) for p, m, z in cases)
