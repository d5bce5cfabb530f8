"""Closed-form upper bounds on M_alpha(n) and the tight-design certificate.

M_alpha(n) is the largest number of unit vectors in R^n whose pairwise
inner products all lie in {alpha, -alpha}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import as_rational

GERZON = "gerzon"
LEMMENS_SEIDEL = "lemmens_seidel"
OKUDA_YU = "okuda_yu"
OKUDA_YU_INTEGER_L = "okuda_yu_integer_l"
COROLLARY_K = "corollary_k"


def _floor(q: Fraction) -> int:
    return math.floor(q)


@dataclass(frozen=True)
class BoundReport:
    n: int
    alpha: Optional[Fraction]
    method: str
    applicable: bool
    reason: str
    value: Optional[Fraction] = None
    floor_value: Optional[int] = None
    branch: Optional[str] = None
    witness: Optional[Fraction] = None

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "alpha": None if self.alpha is None else str(self.alpha),
            "method": self.method,
            "applicable": self.applicable,
            "reason": self.reason,
            "value": None if self.value is None else str(self.value),
            "floor_value": self.floor_value,
        }
        if self.branch is not None:
            d["branch"] = self.branch
        if self.witness is not None:
            d["witness"] = str(self.witness)
        return d


def _applicable(n, alpha, method, value, reason, **extra) -> BoundReport:
    return BoundReport(n, alpha, method, True, reason, value, _floor(value), **extra)


def gerzon_bound(n: int) -> BoundReport:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return _applicable(n, None, GERZON, Fraction(n * (n + 1), 2), "absolute bound n(n+1)/2")


def lemmens_seidel_bound(n: int, alpha) -> BoundReport:
    a = as_rational(alpha)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= a < 1:
        raise ValueError(f"alpha must lie in [0, 1), got {a}")
    witness = 1 - n * a * a
    if witness <= 0:
        return BoundReport(
            n, a, LEMMENS_SEIDEL, False,
            f"requires 1 - n*alpha^2 > 0, but 1 - n*alpha^2 = {witness}",
            witness=witness,
        )
    value = n * (1 - a * a) / witness
    return _applicable(n, a, LEMMENS_SEIDEL, value, "relative bound n(1-a^2)/(1-n a^2)",
                       witness=witness)


def okuda_yu_denominators(n: int, alpha) -> tuple:
    """(d1, d2) = ((n-2)a^2 + 6a - 3, -(n-2)a^2 + 6a + 3).

    The strict window 2 - (6a-3)/a^2 < n < 2 + (6a+3)/a^2 is d1 > 0 and d2 > 0.
    """
    a = as_rational(alpha)
    return (n - 2) * a * a + 6 * a - 3, -(n - 2) * a * a + 6 * a + 3


def okuda_yu_bound(n: int, alpha) -> BoundReport:
    a = as_rational(alpha)
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if not 0 < a < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {a}")
    d1, d2 = okuda_yu_denominators(n, a)
    if d1 <= 0 or d2 <= 0:
        return BoundReport(
            n, a, OKUDA_YU, False,
            "outside the window (n-2)a^2+6a-3 > 0 and -(n-2)a^2+6a+3 > 0 "
            f"(values {d1} and {d2})",
        )
    first = (1 - a) ** 3 / d1
    second = (1 + a) ** 3 / d2
    if first > second:
        branch, best = "first", first
    elif second > first:
        branch, best = "second", second
    else:
        branch, best = "both", first
    value = 2 + Fraction(n - 2) / a * best
    return _applicable(n, a, OKUDA_YU, value, "three-point relative bound", branch=branch)


def okuda_yu_integer_l_bound(n: int, l: int) -> BoundReport:
    """Specialization of :func:`okuda_yu_bound` to alpha = 1/l, in integers."""
    if l < 2:
        raise ValueError(f"l must be >= 2, got {l}")
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    alpha = Fraction(1, l)
    lo, hi = 3 * l * l - 6 * l + 2, 3 * l * l + 6 * l + 2
    if not lo < n < hi:
        return BoundReport(
            n, alpha, OKUDA_YU_INTEGER_L, False,
            f"outside the window {lo} < n < {hi}",
        )
    first = Fraction((l - 1) ** 3, -3 * l * l + 6 * l + (n - 2))
    second = Fraction((l + 1) ** 3, 3 * l * l + 6 * l - (n - 2))
    if first > second:
        branch, best = "first", first
    elif second > first:
        branch, best = "second", second
    else:
        branch, best = "both", first
    value = 2 + (n - 2) * best
    return _applicable(n, alpha, OKUDA_YU_INTEGER_L, value,
                       "three-point relative bound at alpha = 1/l", branch=branch)


def corollary_dimension(k: int) -> int:
    return 3 * (2 * k - 1) ** 2 - 4


def corollary_value(k: int) -> int:
    return 2 * (k - 1) * (4 * k**3 - k - 1)


def tight_design_cardinality(n: int) -> Fraction:
    """Size (n+1)(n+2)/6 of a tight harmonic index 4 design on S^{n-1}."""
    return Fraction((n + 1) * (n + 2), 6)


@dataclass(frozen=True)
class NonexistenceCertificate:
    k: int
    n_k: int
    alpha_k: Fraction
    bound: Fraction
    tight_cardinality: int
    verdict: bool
    lemmens_seidel_inapplicable_witness: Fraction
    gerzon: Fraction
    okuda_yu: BoundReport = field(repr=False)
    checks: tuple = ()

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n_k": self.n_k,
            "alpha_k": str(self.alpha_k),
            "bound": str(self.bound),
            "tight_cardinality": self.tight_cardinality,
            "verdict": "nonexistent" if self.verdict else "undecided",
            "lemmens_seidel_witness": str(self.lemmens_seidel_inapplicable_witness),
            "gerzon": str(self.gerzon),
            "checks": list(self.checks),
        }


def corollary_bound(k: int) -> NonexistenceCertificate:
    """Certificate that no tight harmonic index 4 design lives on S^{n_k - 1}.

    With n_k = 3(2k-1)^2 - 4 and alpha_k = 1/(2k-1), a tight design would be
    an equiangular set of size (n_k+1)(n_k+2)/6 with angle arccos(alpha_k);
    the three-point bound 2(k-1)(4k^3-k-1) is strictly smaller.
    """
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k!r}")
    n = corollary_dimension(k)
    alpha = Fraction(1, 2 * k - 1)
    checks = []

    if alpha * alpha != Fraction(3, n + 4):
        raise ArithmeticError(f"alpha_k^2 != 3/(n_k+4) at k={k}")
    checks.append("alpha_k^2 = 3/(n_k+4)")

    report = okuda_yu_bound(n, alpha)
    if not report.applicable:
        raise ArithmeticError(f"(n_k, alpha_k) outside the strict window at k={k}")
    checks.append("(n_k, alpha_k) strictly inside the window")

    bound = Fraction(corollary_value(k))
    if report.value != bound:
        raise ArithmeticError(
            f"closed form {report.value} disagrees with 2(k-1)(4k^3-k-1) = {bound} at k={k}"
        )
    checks.append("three-point bound at (n_k, alpha_k) equals 2(k-1)(4k^3-k-1)")

    card = tight_design_cardinality(n)
    if card.denominator != 1:
        raise ArithmeticError(f"(n_k+1)(n_k+2)/6 is not an integer at k={k}")

    ls = lemmens_seidel_bound(n, alpha)
    witness = 1 - n * alpha * alpha
    expected_witness = Fraction(-2 * (4 * k * k - 4 * k - 1), (2 * k - 1) ** 2)
    if ls.applicable or witness != expected_witness or witness >= 0:
        raise ArithmeticError(f"Lemmens-Seidel witness check failed at k={k}")
    checks.append("1 - n_k alpha_k^2 = -2(4k^2-4k-1)/(2k-1)^2 < 0")

    gerzon = gerzon_bound(n).value
    if not bound < gerzon:
        raise ArithmeticError(f"bound does not improve on n(n+1)/2 at k={k}")
    checks.append("bound < n_k(n_k+1)/2")

    verdict = bound < card
    checks.append(f"bound {bound} {'<' if verdict else '>='} tight cardinality {card}")
    return NonexistenceCertificate(
        k=k,
        n_k=n,
        alpha_k=alpha,
        bound=bound,
        tight_cardinality=int(card),
        verdict=verdict,
        lemmens_seidel_inapplicable_witness=witness,
        gerzon=gerzon,
        okuda_yu=report,
        checks=tuple(checks),
    )
