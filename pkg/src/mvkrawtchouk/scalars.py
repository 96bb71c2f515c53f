"""Scalar fields: exact rationals, exact Gaussian rationals, complex floats.

Every formula in the package is written against plain Python arithmetic
operators, so the same code runs over ``Fraction``, :class:`GaussianRational`
and ``complex``.  A :class:`Field` fixes which of the three is in use for one
computation and takes care of coercion, parsing and formatting.
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussianRational",
    "Field",
    "RATIONAL",
    "GAUSSIAN",
    "COMPLEX",
    "FIELDS",
    "get_field",
    "EqualityPolicy",
    "EXACT",
    "DEFAULT_TOLERANCE",
    "ScalarParseError",
    "conjugate",
    "magnitude",
    "is_zero",
    "nth_root_of_unity_check",
    "infer_field",
]

DEFAULT_TOLERANCE = 1e-9


class ScalarParseError(ValueError):
    """Raised for text that does not match the scalar grammar."""

    def __init__(self, text, reason="invalid scalar", column=None):
        self.text = text
        self.reason = reason
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{reason}{where}: {text!r}")


class GaussianRational:
    """Element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _lift(cls, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)):
            return cls(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re * other, self.im * other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational(self.re / other, self.im / other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        nrm = other.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * other.conjugate() / nrm

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (GaussianRational(1) / self) ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """Exact squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return math.sqrt(self.norm())

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return GAUSSIAN.format(self)


def _split_complex(text):
    """Split ``"a+bi"`` style text into (real text, imaginary text or None)."""
    if not text.endswith("i"):
        return text, None
    body = text[:-1]
    cut = 0
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            cut = k
            break
    real, imag = body[:cut], body[cut:]
    if imag in ("", "+"):
        imag = "1"
    elif imag == "-":
        imag = "-1"
    return real, imag


_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")


def _parse_fraction(text, original):
    if not _RATIONAL_RE.fullmatch(text):
        bad = next((k for k, ch in enumerate(text) if ch not in "+-/0123456789"), None)
        raise ScalarParseError(original, "invalid rational", bad)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ScalarParseError(original, "zero denominator") from None


class Field:
    """One of the three scalar modes.  Instances are singletons."""

    name = ""
    exact = True

    def coerce(self, value):
        raise NotImplementedError

    def parse(self, text):
        raise NotImplementedError

    def format(self, value):
        raise NotImplementedError

    def __repr__(self):
        return f"<Field {self.name}>"

    def __reduce__(self):
        return (get_field, (self.name,))


class _RationalField(Field):
    name = "exact-rational"

    def coerce(self, value):
        if isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(value, (int, Rational)):
            return Fraction(value)
        if isinstance(value, GaussianRational) and value.im == 0:
            return value.re
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot represent {value!r} as an exact rational")

    def parse(self, text):
        text = text.strip()
        if not text:
            raise ScalarParseError(text, "empty scalar")
        if text.endswith("i"):
            raise ScalarParseError(text, "imaginary part not allowed in exact-rational mode")
        return _parse_fraction(text, text)

    def format(self, value):
        return str(Fraction(value))


class _GaussianField(Field):
    name = "gaussian-rational"

    def coerce(self, value):
        if isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return GaussianRational(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot represent {value!r} as a Gaussian rational")

    def parse(self, text):
        text = text.strip()
        if not text:
            raise ScalarParseError(text, "empty scalar")
        real, imag = _split_complex(text)
        re_part = _parse_fraction(real, text) if real else Fraction(0)
        im_part = _parse_fraction(imag, text) if imag is not None else Fraction(0)
        return GaussianRational(re_part, im_part)

    def format(self, value):
        value = self.coerce(value)
        re_part, im_part = value.re, value.im
        if im_part == 0:
            return str(re_part)
        if im_part == 1:
            imag = "i"
        elif im_part == -1:
            imag = "-i"
        else:
            imag = f"{im_part}i"
        if re_part == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{re_part}{sign}{imag}"


class _ComplexField(Field):
    name = "complex-float"
    exact = False

    def coerce(self, value):
        if isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, float, complex, Rational, GaussianRational)):
            z = complex(value)
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError(f"non-finite scalar {value!r}")
            return z
        raise TypeError(f"cannot represent {value!r} as a complex float")

    def parse(self, text):
        text = text.strip()
        if not text:
            raise ScalarParseError(text, "empty scalar")
        if "/" in text:
            real, imag = _split_complex(text)
            re_part = _parse_fraction(real, text) if real else 0
            im_part = _parse_fraction(imag, text) if imag is not None else 0
            return complex(float(re_part), float(im_part))
        if any(ch in text for ch in "()jJ ") or text.lower().lstrip("+-").startswith(("n", "in")):
            raise ScalarParseError(text, "invalid floating scalar")
        src = text[:-1] + "j" if text.endswith("i") else text
        try:
            z = complex(src)
        except ValueError:
            raise ScalarParseError(text, "invalid floating scalar") from None
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ScalarParseError(text, "non-finite scalar")
        return z

    def format(self, value):
        z = complex(value)
        re_part = z.real + 0.0
        im_part = z.imag + 0.0
        if im_part == 0:
            return repr(re_part)
        sign = "-" if im_part < 0 else "+"
        return f"{re_part!r}{sign}{abs(im_part)!r}i"


RATIONAL = _RationalField()
GAUSSIAN = _GaussianField()
COMPLEX = _ComplexField()
FIELDS = {f.name: f for f in (RATIONAL, GAUSSIAN, COMPLEX)}


def get_field(name):
    """Look a field up by its CLI name, e.g. ``"gaussian-rational"``."""
    if isinstance(name, Field):
        return name
    try:
        return FIELDS[name]
    except KeyError:
        raise ValueError(f"unknown field mode {name!r}; choose from {sorted(FIELDS)}") from None


def infer_field(values):
    """Smallest field able to hold every value (strings use the text grammar)."""
    field = RATIONAL
    for v in values:
        if isinstance(v, str):
            text = v.strip()
            if any(ch in text for ch in ".eE"):
                return COMPLEX
            if text.endswith("i"):
                field = GAUSSIAN
        elif isinstance(v, (float, complex)):
            return COMPLEX
        elif isinstance(v, GaussianRational):
            field = GAUSSIAN
    return field


@dataclass(frozen=True)
class EqualityPolicy:
    """How scalar comparisons are decided.

    ``mode="exact"`` compares structurally and is only valid for exact fields.
    ``mode="tolerance"`` accepts ``|s| <= epsilon * scale``.
    """

    mode: str = "exact"
    epsilon: float = 0.0

    def __post_init__(self):
        if self.mode not in ("exact", "tolerance"):
            raise ValueError(f"unknown equality mode {self.mode!r}")
        if self.mode == "tolerance" and not self.epsilon > 0:
            raise ValueError("tolerance mode needs epsilon > 0")

    @classmethod
    def tolerance(cls, epsilon=DEFAULT_TOLERANCE):
        return cls("tolerance", float(epsilon))

    @classmethod
    def for_field(cls, field, epsilon=DEFAULT_TOLERANCE):
        """Exact policy for exact fields, tolerance policy otherwise."""
        return cls() if get_field(field).exact else cls.tolerance(epsilon)

    @property
    def exact(self):
        return self.mode == "exact"


EXACT = EqualityPolicy()


def conjugate(s):
    """Complex conjugate; the identity on rationals."""
    return s.conjugate()


def magnitude(s):
    """``|s|`` as a float, for reporting deviations."""
    if isinstance(s, GaussianRational):
        return math.sqrt(s.norm())
    return float(abs(s))


def is_zero(s, policy=EXACT, scale=1.0):
    if policy.exact:
        if isinstance(s, (float, complex)):
            raise TypeError("exact equality policy applied to a floating scalar")
        return s == 0
    return magnitude(s) <= policy.epsilon * scale


def nth_root_of_unity_check(z, N, policy=EXACT):
    """True iff ``z**N == 1`` under ``policy``."""
    if N < 1:
        raise ValueError("N must be positive")
    if policy.exact:
        if isinstance(z, (float, complex)):
            raise TypeError("exact equality policy applied to a floating scalar")
        return z**N == 1
    if abs(magnitude(z) - 1.0) > policy.epsilon:
        return False
    w = complex(z)
    # z**N through the polar form keeps the error linear in N
    zn = cmath.rect(abs(w) ** N, cmath.phase(w) * N)
    return abs(zn - 1) <= policy.epsilon
