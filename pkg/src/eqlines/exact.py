"""Exact rational scalars and dense univariate polynomials over Q.

Scalars are :class:`fractions.Fraction`, which already stores values in
lowest terms with a positive denominator. This module adds strict text
parsing and a small immutable polynomial type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")
_DECIMAL_RE = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\s*$")


class RationalParseError(ValueError):
    pass


def rational_from_string(text: str) -> Fraction:
    """Parse ``"p/q"`` or a finite decimal literal into an exact Fraction.

    Decimals never pass through binary floating point, so ``"0.2"`` is 1/5.
    """
    if not isinstance(text, str):
        raise RationalParseError(f"expected text, got {type(text).__name__}")
    m = _FRACTION_RE.match(text)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise RationalParseError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    if _DECIMAL_RE.match(text):
        return Fraction(text.strip())
    raise RationalParseError(f"not a fraction or decimal literal: {text!r}")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational text to Fraction; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return rational_from_string(value)
    raise TypeError(
        f"cannot use {type(value).__name__} as an exact rational; "
        "pass an int, Fraction or 'p/q' string"
    )


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial; ``coeffs[d]`` is the coefficient of u**d.

    The zero polynomial has an empty coefficient tuple, and every other
    polynomial has a nonzero last coefficient.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        cs = [as_rational(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def identity(cls) -> "Polynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, d: int) -> Fraction:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return Fraction(0)

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            tuple(self.coefficient(d) + other.coefficient(d) for d in range(n))
        )

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def scale(self, factor) -> "Polynomial":
        factor = as_rational(factor)
        return Polynomial(tuple(c * factor for c in self.coeffs))

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(d * c for d, c in enumerate(self.coeffs) if d))

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial(0)"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"({c})" if d == 0 else f"({c})*u^{d}")
        return "Polynomial(" + " + ".join(terms) + ")"


def poly_eval(p: Polynomial, x) -> Fraction:
    return p(x)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_scale(p: Polynomial, factor) -> Polynomial:
    return p.scale(factor)


def rational_vector(values: Iterable) -> tuple:
    return tuple(as_rational(v) for v in values)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))
