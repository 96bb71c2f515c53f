import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mvkrawtchouk.scalars import (
    COMPLEX,
    EXACT,
    GAUSSIAN,
    RATIONAL,
    EqualityPolicy,
    GaussianRational as G,
    ScalarParseError,
    conjugate,
    get_field,
    infer_field,
    is_zero,
    nth_root_of_unity_check,
)

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
gaussians = st.builds(G, fractions, fractions)


def test_conjugate_examples():
    assert conjugate(Fraction(3, 4)) == Fraction(3, 4)
    assert conjugate(G(0, 1)) == G(0, -1)
    assert conjugate(G(Fraction(1, 2), Fraction(1, 3))) == G(Fraction(1, 2), Fraction(-1, 3))
    assert conjugate(1 + 2j) == 1 - 2j


def test_is_zero_examples():
    tol = EqualityPolicy.tolerance(1e-9)
    assert is_zero(Fraction(0), EXACT)
    assert is_zero(1e-15 + 0j, tol)
    assert not is_zero(Fraction(1, 10**9), EXACT)
    assert not is_zero(1e-3, tol)
    assert is_zero(1e-3, tol, scale=1e7)


def test_exact_policy_rejects_floats():
    with pytest.raises(TypeError):
        is_zero(0.0, EXACT)
    with pytest.raises(TypeError):
        nth_root_of_unity_check(1 + 0j, 3, EXACT)


def test_policy_invariants():
    with pytest.raises(ValueError):
        EqualityPolicy("tolerance", 0.0)
    with pytest.raises(ValueError):
        EqualityPolicy("fuzzy", 1.0)
    assert EqualityPolicy.for_field(GAUSSIAN).exact
    assert not EqualityPolicy.for_field(COMPLEX).exact


def test_nth_root_of_unity_examples():
    assert nth_root_of_unity_check(Fraction(1), 5)
    assert nth_root_of_unity_check(Fraction(-1), 2)
    assert not nth_root_of_unity_check(G(0, 1), 3)
    assert nth_root_of_unity_check(G(0, 1), 4)
    assert not nth_root_of_unity_check(Fraction(-1), 3)
    tol = EqualityPolicy.tolerance()
    w = complex(math.cos(2 * math.pi / 7), math.sin(2 * math.pi / 7))
    assert nth_root_of_unity_check(w, 7, tol)
    assert not nth_root_of_unity_check(w, 6, tol)
    assert not nth_root_of_unity_check(1.001 + 0j, 1, tol)


def test_gaussian_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        G(1, 1) / G(0, 0)
    with pytest.raises(ZeroDivisionError):
        G(1, 1) / 0


@given(gaussians)
def test_conjugate_is_an_involution(s):
    assert conjugate(conjugate(s)) == s


@given(gaussians, gaussians)
def test_conjugate_distributes(a, b):
    assert conjugate(a + b) == conjugate(a) + conjugate(b)
    assert conjugate(a * b) == conjugate(a) * conjugate(b)


@given(gaussians, gaussians, gaussians)
def test_exact_arithmetic_is_associative_and_commutative(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(gaussians, gaussians)
def test_norm_is_exact_and_multiplicative(a, b):
    assert isinstance(a.norm(), Fraction)
    assert (a * b).norm() == a.norm() * b.norm()
    assert a.norm() == a.re**2 + a.im**2


@given(gaussians, gaussians)
def test_division_inverts_multiplication(a, b):
    if b:
        assert (a / b) * b == a


def test_mixed_operands():
    assert Fraction(1, 2) + G(0, 1) == G(Fraction(1, 2), 1)
    assert 2 * G(1, 1) == G(2, 2)
    assert 1 - G(0, 1) == G(1, -1)
    assert 1 / G(0, 1) == G(0, -1)
    assert G(3) == 3 and hash(G(3)) == hash(3)


@pytest.mark.parametrize(
    "text, value",
    [
        ("3", G(3)),
        ("-1/2", G(Fraction(-1, 2))),
        ("i", G(0, 1)),
        ("-i", G(0, -1)),
        ("2i", G(0, 2)),
        ("1/2+1/3i", G(Fraction(1, 2), Fraction(1, 3))),
        ("1-i", G(1, -1)),
        ("-3/4-5/6i", G(Fraction(-3, 4), Fraction(-5, 6))),
    ],
)
def test_gaussian_parse(text, value):
    assert GAUSSIAN.parse(text) == value


@given(gaussians)
def test_gaussian_format_parse_round_trip(s):
    assert GAUSSIAN.parse(GAUSSIAN.format(s)) == s


@given(fractions)
def test_rational_format_parse_round_trip(s):
    assert RATIONAL.parse(RATIONAL.format(s)) == s


@given(st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=1e12))
def test_complex_format_parse_round_trip(z):
    assert COMPLEX.parse(COMPLEX.format(z)) == z


def test_complex_parse_forms():
    assert COMPLEX.parse("1.5-2e-3i") == complex(1.5, -2e-3)
    assert COMPLEX.parse("3") == 3
    assert COMPLEX.parse("-i") == -1j
    assert COMPLEX.parse("1/2+1/4i") == complex(0.5, 0.25)
    assert COMPLEX.format(-0.0) == "0.0"
    assert COMPLEX.format(3 + 0j) == "3.0"


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1/2i/3", "1.5", "2x"])
def test_rational_parse_errors(bad):
    with pytest.raises(ScalarParseError):
        RATIONAL.parse(bad)


@pytest.mark.parametrize("bad", ["", "nan", "inf", "1+2j", "(1+2i)", "1..2"])
def test_complex_parse_errors(bad):
    with pytest.raises(ScalarParseError):
        COMPLEX.parse(bad)


def test_rational_rejects_imaginary():
    with pytest.raises(ScalarParseError):
        RATIONAL.parse("1+i")
    with pytest.raises(TypeError):
        RATIONAL.coerce(1j)


def test_field_lookup_and_inference():
    assert get_field("complex-float") is COMPLEX
    with pytest.raises(ValueError):
        get_field("reals")
    assert infer_field(["1", "1/2"]) is RATIONAL
    assert infer_field(["1", "i"]) is GAUSSIAN
    assert infer_field(["1", "0.5"]) is COMPLEX
    assert infer_field([1, 2.5]) is COMPLEX
