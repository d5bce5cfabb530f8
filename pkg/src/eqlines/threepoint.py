"""Diagonal entries of the three-point matrices and the 2x2 matrix W(x).

The three-point kernel of degree k in dimension n has (i, j) entry

    Y_k(a, b, c)_{ij} = a^i b^j ((1-a^2)(1-b^2))^{k/2} Q_k((c-ab)/sqrt((1-a^2)(1-b^2)))

with Q_k = P^{n-1}_k, and S_k is its average over the six permutations of
the argument triple. Q_k has the parity of k, so writing
Q_k(s) = sum_m c_m s^{k-2m} the square roots cancel:

    Y_k(a, b, c)_{ij} = a^i b^j sum_m c_m (c-ab)^{k-2m} ((1-a^2)(1-b^2))^m.

Everything here is evaluated in exact rational arithmetic. The overall
positive normalization of S_k differs between references; nothing in the
bound machinery depends on it because each constraint is of the form
entry >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .exact import as_rational, rational_vector
from .gegenbauer import gegenbauer

# Argument triples of the seven terms of S_l(x; alpha, beta), in the order
# constant, x1, ..., x6.
TERM_LABELS = (
    "(1,1,1)",
    "(a,a,1)",
    "(b,b,1)",
    "(a,a,a)",
    "(a,a,b)",
    "(a,b,b)",
    "(b,b,b)",
)

LEMMA_PATTERNS = ("(1,1,1)", "(a,a,1)", "(a,a,a)", "(a,a,-a)")


def _check_unit_interval(*values):
    for v in values:
        if not -1 <= v <= 1:
            raise ValueError(f"three-point arguments must lie in [-1, 1], got {v}")


def _kernel_entry(parity_coeffs, k, i, j, a, b, c):
    d = (1 - a * a) * (1 - b * b)
    s = c - a * b
    acc = Fraction(0)
    for m, cm in parity_coeffs:
        if cm:
            acc += cm * s ** (k - 2 * m) * d**m
    return a**i * b**j * acc


def unnormalized_entry(n: int, k: int, i: int, j: int, u, v, t) -> Fraction:
    """Symmetrized (i, j) entry of the degree-k three-point kernel at (u, v, t)."""
    if n < 3:
        raise ValueError(f"three-point kernels need n >= 3, got {n}")
    if min(k, i, j) < 0:
        raise ValueError("k, i, j must be nonnegative")
    u, v, t = as_rational(u), as_rational(v), as_rational(t)
    _check_unit_interval(u, v, t)
    q = gegenbauer(n - 1, k)
    parity_coeffs = [(m, q.coefficient(k - 2 * m)) for m in range(k // 2 + 1)]
    total = Fraction(0)
    for a, b, c in permutations((u, v, t)):
        total += _kernel_entry(parity_coeffs, k, i, j, a, b, c)
    return total / 6


def _pattern_args(pattern: str, alpha: Fraction):
    args = {
        "(1,1,1)": (1, 1, 1),
        "(a,a,1)": (alpha, alpha, 1),
        "(a,a,a)": (alpha, alpha, alpha),
        "(a,a,-a)": (alpha, alpha, -alpha),
    }
    try:
        return tuple(Fraction(x) for x in args[pattern])
    except KeyError:
        raise ValueError(f"unknown pattern {pattern!r}; expected one of {LEMMA_PATTERNS}")


def lemma_pattern_args(pattern: str, alpha) -> tuple:
    return _pattern_args(pattern, as_rational(alpha))


def lemma32_reference(n: int, pattern: str, alpha) -> Fraction:
    """Closed forms for the (1,1) entry of S^n_3 at the four special triples."""
    if n < 3:
        raise ValueError(f"closed forms need n >= 3 (denominators vanish), got {n}")
    a = as_rational(alpha)
    if pattern == "(1,1,1)":
        return Fraction(0)
    if not 0 < a < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {a}")
    top = n * (n + 2) * (n + 4) * (n + 6)
    if pattern == "(a,a,1)":
        return Fraction(top, 3 * (n - 1) * (n + 1) * (n + 3)) * a**2 * (1 - a**2) ** 3
    common = Fraction(top, (n - 2) * (n - 1) * (n + 1) * (n + 3))
    if pattern == "(a,a,a)":
        return -common * (a - 1) ** 3 * a**3 * ((n - 2) * a**2 - 6 * a - 3)
    if pattern == "(a,a,-a)":
        return -common * a**3 * (a + 1) ** 3 * ((n - 2) * a**2 + 6 * a - 3)
    raise ValueError(f"unknown pattern {pattern!r}; expected one of {LEMMA_PATTERNS}")


def calibration_ratio(n: int) -> Fraction:
    """lambda(n) with closed form = lambda(n) * unnormalized entry (k=3, i=j=1).

    From the (a,a,1) pattern only the two permutations with c = 1 survive,
    giving a^2 (1-a^2)^3 / 3 for the unnormalized entry, hence
    lambda(n) = n(n+2)(n+4)(n+6) / ((n-1)(n+1)(n+3)).
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    return Fraction(n * (n + 2) * (n + 4) * (n + 6), (n - 1) * (n + 1) * (n + 3))


def s_diagonal_terms(n: int, l: int, i: int, alpha, beta) -> tuple:
    """Return the seven scalars (c0, c1, ..., c6) with

    (S_l)_{ii}(x; alpha, beta) = c0 + c1 x1 + ... + c6 x6.
    """
    a, b = as_rational(alpha), as_rational(beta)
    for name, val in (("alpha", a), ("beta", b)):
        if not -1 <= val < 1:
            raise ValueError(f"{name} must lie in [-1, 1), got {val}")
    triples = (
        (1, 1, 1),
        (a, a, 1),
        (b, b, 1),
        (a, a, a),
        (a, a, b),
        (a, b, b),
        (b, b, b),
    )
    return tuple(unnormalized_entry(n, l, i, i, *tr) for tr in triples)


def s_combination_diagonal(n: int, l: int, i: int, x, alpha, beta) -> Fraction:
    x = rational_vector(x)
    if len(x) != 6:
        raise ValueError(f"x must have 6 components, got {len(x)}")
    c = s_diagonal_terms(n, l, i, alpha, beta)
    return c[0] + sum(ci * xi for ci, xi in zip(c[1:], x))


@dataclass(frozen=True)
class WMatrix:
    x: tuple
    entries: tuple

    @property
    def det(self) -> Fraction:
        (p, q), (r, s) = self.entries
        return p * s - q * r


def w_matrix(x) -> WMatrix:
    x = rational_vector(x)
    if len(x) != 6:
        raise ValueError(f"x must have 6 components, got {len(x)}")
    big_x = (x[0] + x[1]) / 3
    rest = x[2] + x[3] + x[4] + x[5]
    return WMatrix(x, ((Fraction(1), big_x), (big_x, big_x + rest)))


def w_det(x) -> Fraction:
    """det W(x) = -X^2 + X + Y + Z with X = (x1+x2)/3, Y = x3+x5, Z = x4+x6."""
    x = rational_vector(x)
    big_x = (x[0] + x[1]) / 3
    return -big_x * big_x + big_x + (x[2] + x[4]) + (x[3] + x[5])
