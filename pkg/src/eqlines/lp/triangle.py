"""Linear relaxation of the three-point bound for two-distance sets.

Variables x = (x1, ..., x6) >= 0 and objective 1 + (x1 + x2)/3. The region
keeps

* x_i >= 0,
* det W(x) = -X^2 + X + (x3 + ... + x6) >= 0 with X = (x1 + x2)/3,
* 3 + P^n_l(alpha) x1 + P^n_l(beta) x2 >= 0 for l = 1..l_max_p,
* (S_l)_{ii}(x; alpha, beta) >= 0 for l = 0..l_max_s, i = 0..i_max_s.

The determinant condition is concave in x, so the region is convex and the
attainable X-levels form an interval containing 0. Fixing X = X0 turns the
determinant condition into the linear row x3 + ... + x6 >= X0^2 - X0, and
each level is decided by an exact LP.

Infeasibility certificates are reused across levels. A Farkas vector w
computed at one level only involves the levels through the right-hand
sides (3X0 on the level row, X0^2 - X0 on the determinant row), so
q(X) = w . b(X) is a quadratic in X with nonnegative leading coefficient,
and w proves every level with q(X) > 0 infeasible. The largest root of q
is therefore a certified upper bound on X, often the exact optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..bounds import okuda_yu_bound, okuda_yu_denominators
from ..exact import Polynomial, as_rational, dot
from ..gegenbauer import gegenbauer
from ..threepoint import s_diagonal_terms, w_det
from .simplex import (
    DEFAULT_MAX_PIVOTS,
    EQ,
    GE,
    LinearConstraint,
    LpResult,
    find_feasible_point,
    verify_farkas,
)

NUM_VARS = 6
DEFAULT_L_MAX_P = 10
DEFAULT_L_MAX_S = 6
DEFAULT_I_MAX_S = 3
DEFAULT_TOL = Fraction(1, 2**30)

LEVEL_TAG = "level"
W_TAG = "W"


@dataclass(frozen=True)
class InstanceConstraint:
    """coefficients . x + constant >= 0."""

    tag: str
    coefficients: tuple
    constant: Fraction

    def value(self, x) -> Fraction:
        return dot(self.coefficients, x) + self.constant

    def scaled(self, factor) -> "InstanceConstraint":
        factor = as_rational(factor)
        if factor <= 0:
            raise ValueError("rescaling factor must be positive")
        return InstanceConstraint(
            self.tag, tuple(c * factor for c in self.coefficients), self.constant * factor
        )

    @property
    def is_nonnegativity(self) -> bool:
        return self.tag.startswith("nonneg")

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "kind": "linear",
            "coefficients": [str(c) for c in self.coefficients],
            "constant": str(self.constant),
        }


@dataclass(frozen=True)
class TriangleLpInstance:
    n: int
    alpha: Fraction
    beta: Fraction
    l_max_p: int
    l_max_s: int
    i_max_s: int
    constraints: tuple
    minimal: bool = False

    def linear_rows(self):
        return [c for c in self.constraints if not c.is_nonnegativity]

    def level_rows(self, level) -> list:
        """LP rows deciding whether (x1 + x2)/3 = level is attainable."""
        level = as_rational(level)
        rows = [LinearConstraint(c.coefficients, GE, -c.constant, c.tag) for c in self.linear_rows()]
        rows.append(LinearConstraint((1, 1, 0, 0, 0, 0), EQ, 3 * level, LEVEL_TAG))
        rows.append(LinearConstraint((0, 0, 1, 1, 1, 1), GE, level * level - level, W_TAG))
        return rows

    def contains(self, x) -> bool:
        x = tuple(as_rational(v) for v in x)
        return all(c.value(x) >= 0 for c in self.constraints) and w_det(x) >= 0

    def with_scaled_constraint(self, tag: str, factor) -> "TriangleLpInstance":
        cs = tuple(c.scaled(factor) if c.tag == tag else c for c in self.constraints)
        if cs == self.constraints and all(c.tag != tag for c in self.constraints):
            raise KeyError(tag)
        return TriangleLpInstance(self.n, self.alpha, self.beta, self.l_max_p, self.l_max_s,
                                  self.i_max_s, cs, self.minimal)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "l_max_p": self.l_max_p,
            "l_max_s": self.l_max_s,
            "i_max_s": self.i_max_s,
            "minimal": self.minimal,
            "objective": "1 + (x1 + x2)/3",
            "constraints": [c.to_dict() for c in self.constraints],
            "quadratic": {
                "tag": W_TAG,
                "kind": "det W(x) >= 0",
                "expression": "-X^2 + X + x3 + x4 + x5 + x6, X = (x1 + x2)/3",
            },
        }


def _nonnegativity():
    out = []
    for j in range(NUM_VARS):
        e = [Fraction(0)] * NUM_VARS
        e[j] = Fraction(1)
        out.append(InstanceConstraint(f"nonneg[x{j + 1}]", tuple(e), Fraction(0)))
    return out


def _s_constraint(n, l, i, alpha, beta):
    terms = s_diagonal_terms(n, l, i, alpha, beta)
    return InstanceConstraint(f"S[l={l},i={i}]", terms[1:], terms[0])


def _check_params(n, alpha, beta):
    if not isinstance(n, int) or n < 3:
        raise ValueError(f"n must be an integer >= 3, got {n!r}")
    for name, v in (("alpha", alpha), ("beta", beta)):
        if not -1 <= v < 1:
            raise ValueError(f"{name} must lie in [-1, 1), got {v}")


def build_instance(
    n: int,
    alpha,
    beta=None,
    l_max_p: int = DEFAULT_L_MAX_P,
    l_max_s: int = DEFAULT_L_MAX_S,
    i_max_s: int = DEFAULT_I_MAX_S,
) -> TriangleLpInstance:
    alpha = as_rational(alpha)
    beta = -alpha if beta is None else as_rational(beta)
    _check_params(n, alpha, beta)
    if min(l_max_p, l_max_s, i_max_s) < 0:
        raise ValueError("truncation levels must be nonnegative")
    cs = _nonnegativity()
    for l in range(1, l_max_p + 1):
        p = gegenbauer(n, l)
        cs.append(InstanceConstraint(
            f"P[l={l}]", (p(alpha), p(beta), 0, 0, 0, 0), Fraction(3)))
    for l in range(l_max_s + 1):
        for i in range(i_max_s + 1):
            cs.append(_s_constraint(n, l, i, alpha, beta))
    return TriangleLpInstance(n, alpha, beta, l_max_p, l_max_s, i_max_s, tuple(cs))


def minimal_instance(n: int, alpha) -> TriangleLpInstance:
    """x >= 0, det W(x) >= 0 and the single (l=3, i=1) diagonal row, beta = -alpha."""
    alpha = as_rational(alpha)
    _check_params(n, alpha, -alpha)
    cs = _nonnegativity() + [_s_constraint(n, 3, 1, alpha, -alpha)]
    return TriangleLpInstance(n, alpha, -alpha, 0, 3, 1, tuple(cs), minimal=True)


def feasibility_at_level(
    instance: TriangleLpInstance, level, max_pivots: int = DEFAULT_MAX_PIVOTS
) -> LpResult:
    level = as_rational(level)
    if level < 0:
        raise ValueError(f"level must be nonnegative, got {level}")
    res = find_feasible_point(instance.level_rows(level), NUM_VARS, max_pivots)
    if res.point is not None and not instance.contains(res.point):
        raise RuntimeError("level point is outside the relaxed region")
    return res


# -- certificates -------------------------------------------------------------


def infeasibility_polynomial(instance: TriangleLpInstance, farkas) -> Polynomial:
    """q(X) = w . b(X); the Farkas vector proves every level with q(X) > 0 infeasible."""
    rows = instance.level_rows(0)
    const = Fraction(0)
    w_level = w_w = Fraction(0)
    for row, w in zip(rows, farkas):
        if row.tag == LEVEL_TAG:
            w_level = w
        elif row.tag == W_TAG:
            w_w = w
        else:
            const += w * row.rhs
    return Polynomial((const, 3 * w_level - w_w, w_w))


def _exact_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _positive_beyond(q: Polynomial, h: Fraction) -> bool:
    """Exact check that q(X) > 0 for every X > h, given a nonnegative leading term."""
    lead = q.coefficient(2)
    if lead < 0:
        return False
    v, slope = q(h), q.derivative()(h)
    if v < 0 or slope < 0:
        return False
    return not (v == 0 and slope == 0 and lead == 0)


@dataclass(frozen=True)
class UpperCertificate:
    """Farkas vector from ``level`` proving every level above ``bound`` infeasible."""

    level: Fraction
    bound: Fraction
    farkas: tuple
    row_tags: tuple
    polynomial: Polynomial

    def to_dict(self) -> dict:
        return {
            "level": str(self.level),
            "bound": str(self.bound),
            "multipliers": {t: str(w) for t, w in zip(self.row_tags, self.farkas) if w},
            "q_coefficients": [str(c) for c in self.polynomial.coeffs],
        }


def verify_upper_certificate(instance: TriangleLpInstance, cert: UpperCertificate) -> bool:
    rows = instance.level_rows(cert.level)
    if tuple(r.tag for r in rows) != tuple(cert.row_tags):
        return False
    if not verify_farkas(rows, NUM_VARS, cert.farkas):
        return False
    q = infeasibility_polynomial(instance, cert.farkas)
    return q == cert.polynomial and q(cert.level) > 0 and _positive_beyond(q, cert.bound)


def _certified_root(q: Polynomial, lo: Fraction, hi: Fraction, tol: Fraction):
    """Smallest known h in [lo, hi] with q > 0 on (h, inf); exact when rational."""
    a, b, c = q.coefficient(2), q.coefficient(1), q.coefficient(0)
    if a == 0:
        if b <= 0:
            return hi, False
        return max(lo, -c / b), True
    root = _exact_sqrt(b * b - 4 * a * c)
    if root is not None:
        return max(lo, (-b + root) / (2 * a)), True
    left, right = lo, hi
    while right - left > tol:
        mid = (left + right) / 2
        if _positive_beyond(q, mid):
            right = mid
        else:
            left = mid
    return right, False


@dataclass
class TriangleBound:
    lower: Fraction
    upper: Fraction
    lower_point: tuple
    upper_certificate: UpperCertificate
    transcript: list = field(default_factory=list)
    infeasible_certificate: Optional[UpperCertificate] = None

    @property
    def gap(self) -> Fraction:
        return self.upper - self.lower

    def to_dict(self) -> dict:
        return {
            "objective": "1 + (x1 + x2)/3",
            "lower": str(self.lower),
            "upper": str(self.upper),
            "gap": str(self.gap),
            "lower_point": [str(v) for v in self.lower_point],
            "upper_certificate": self.upper_certificate.to_dict(),
            "transcript": self.transcript,
        }


def triangle_bound(
    instance: TriangleLpInstance,
    tol=DEFAULT_TOL,
    refine: bool = True,
    max_pivots: int = DEFAULT_MAX_PIVOTS,
    max_doublings: int = 64,
) -> TriangleBound:
    """Bracket max 1 + (x1+x2)/3 over the relaxed region to within ``tol``.

    Keeps a feasible level ``lo`` and a level ``hi`` above which everything
    is certified infeasible. Bisection halves the bracket; with ``refine``
    each new Farkas vector is also used to jump ``hi`` down to the root of
    its polynomial q, and that root is tested for feasibility.
    """
    tol = as_rational(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    transcript = []

    def record(kind, level, res, lo, hi):
        transcript.append({
            "step": len(transcript),
            "kind": kind,
            "level": str(level),
            "verdict": res.status,
            "lo": str(lo),
            "hi": None if hi is None else str(hi),
        })

    def certificate(level, res):
        q = infeasibility_polynomial(instance, res.farkas)
        if not q(level) > 0:
            raise RuntimeError("Farkas polynomial is not positive at its own level")
        if refine:
            bound, exact = _certified_root(q, lo, level, tol / 4)
        else:
            bound, exact = level, False
        return UpperCertificate(level, bound, res.farkas, res.row_tags, q), exact

    def snap(cert, exact):
        # A rational root is tested directly: feasible closes the bracket,
        # infeasible yields a fresh certificate with a strictly smaller root.
        nonlocal lo, lo_point, hi
        while exact and lo < cert.bound:
            root = cert.bound
            res = feasibility_at_level(instance, root, max_pivots)
            if res.point is not None:
                lo, lo_point = root, res.point
                record("certificate-root", root, res, lo, hi)
                return cert
            new, exact = certificate(root, res)
            if new.bound >= root:
                record("certificate-root", root, res, lo, hi)
                return cert
            cert, hi = new, new.bound
            record("certificate-root", root, res, lo, hi)
        return cert

    lo = Fraction(0)
    res = feasibility_at_level(instance, lo, max_pivots)
    if res.point is None:
        raise RuntimeError("level 0 is infeasible; the instance is malformed")
    lo_point = res.point
    record("anchor", lo, res, lo, None)

    level = Fraction(1)
    for _ in range(max_doublings):
        res = feasibility_at_level(instance, level, max_pivots)
        if res.point is None:
            break
        lo, lo_point = level, res.point
        record("double", level, res, lo, None)
        level *= 2
    else:
        raise RuntimeError(
            f"no infeasible level found below {level}; the relaxation may be unbounded"
        )
    cert, exact = certificate(level, res)
    first_cert = cert
    hi = cert.bound
    record("double", level, res, lo, hi)
    cert = snap(cert, exact)

    while hi - lo > tol:
        mid = (lo + hi) / 2
        res = feasibility_at_level(instance, mid, max_pivots)
        if res.point is not None:
            lo, lo_point = mid, res.point
            record("bisect", mid, res, lo, hi)
            continue
        new, exact = certificate(mid, res)
        improved = new.bound < hi
        if improved:
            cert, hi = new, new.bound
        record("bisect", mid, res, lo, hi)
        if improved:
            cert = snap(cert, exact)

    if not verify_upper_certificate(instance, cert):
        raise RuntimeError("upper certificate failed exact verification")
    return TriangleBound(
        lower=1 + lo,
        upper=1 + hi,
        lower_point=lo_point,
        upper_certificate=cert,
        transcript=transcript,
        infeasible_certificate=first_cert,
    )


# -- proof replay -------------------------------------------------------------


@dataclass
class ReplayStep:
    name: str
    ok: bool
    detail: str

    def to_dict(self) -> dict:
        return {"step": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class ProofReplay:
    n: int
    alpha: Fraction
    ok: bool
    steps: list
    objective_bound: Optional[Fraction] = None
    closed_form: Optional[Fraction] = None
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": str(self.alpha),
            "ok": self.ok,
            "objective_bound": None if self.objective_bound is None else str(self.objective_bound),
            "closed_form": None if self.closed_form is None else str(self.closed_form),
            "witness": None if self.witness is None else [str(v) for v in self.witness],
            "steps": [s.to_dict() for s in self.steps],
        }


def verify_proposition_33(n: int, alpha) -> ProofReplay:
    """Replay, in exact arithmetic, the hand proof of the three-point bound.

    Only the (l=3, i=1) diagonal row and det W(x) >= 0 are used with
    beta = -alpha. The row groups as A X - c_Y Y - c_Z Z >= 0 with
    X = (x1+x2)/3, Y = x3+x5, Z = x4+x6. Since Y + Z >= X(X-1), one gets
    A X >= min(c_Y, c_Z) X (X-1), so X <= 1 + A/min(c_Y, c_Z) and the
    objective 1 + X is at most 2 + A/min(c_Y, c_Z).
    """
    a = as_rational(alpha)
    steps = []
    replay = ProofReplay(n, a, False, steps)

    def step(name, ok, detail):
        steps.append(ReplayStep(name, bool(ok), detail))
        return ok

    if not (isinstance(n, int) and n >= 3 and 0 < a < 1):
        step("precondition", False, f"need n >= 3 and 0 < alpha < 1, got n={n}, alpha={a}")
        return replay

    d1, d2 = okuda_yu_denominators(n, a)
    y_side = (1 - a) ** 3 * d2
    z_side = (1 + a) ** 3 * d1
    if y_side >= z_side >= 0:
        case = 1
    elif z_side >= y_side >= 0:
        case = 2
    else:
        step("case condition", False,
             f"(1-a)^3(-(n-2)a^2+6a+3) = {y_side}, (1+a)^3((n-2)a^2+6a-3) = {z_side}; "
             "neither ordering with both sides >= 0 holds, no claim made")
        return replay
    step("case condition", True,
         f"case {case}: (1-a)^3(-(n-2)a^2+6a+3) = {y_side}, "
         f"(1+a)^3((n-2)a^2+6a-3) = {z_side}")

    terms = s_diagonal_terms(n, 3, 1, a, -a)
    c0, c1, c2, c3, c4, c5, c6 = terms
    step("extract row", True, "(S_3)_{11}(x; a, -a) coefficients: "
         + ", ".join(str(t) for t in terms))

    grouped = c0 == 0 and c1 == c2 and c3 == c5 and c4 == c6
    if not step("grouping", grouped,
                "constant = 0, coeff(x1) = coeff(x2), coeff(x3) = coeff(x5), "
                "coeff(x4) = coeff(x6)" if grouped else "grouping identities fail"):
        return replay

    big_a = 3 * c1
    c_y, c_z = -c3, -c4
    # Same row, up to one positive factor, as
    # (n-2)(1-a^2)^3/a X - (1-a)^3 d2 Y - (1+a)^3 d1 Z >= 0.
    printed = ((n - 2) * (1 - a * a) ** 3 / a, y_side, z_side)
    scale = printed[0] / big_a if big_a else None
    proportional = (
        big_a > 0 and scale > 0
        and c_y * scale == printed[1] and c_z * scale == printed[2]
    )
    if not step("normalization", proportional,
                f"row equals {scale} x printed inequality" if proportional
                else "row is not a positive multiple of the printed inequality"):
        return replay

    c_min = min(c_y, c_z)
    if not step("positivity", c_min > 0,
                f"min(c_Y, c_Z) = {c_min} must be > 0 for a finite bound"):
        return replay

    x_max = 1 + big_a / c_min
    objective_bound = 1 + x_max
    step("quadratic", True,
         f"{big_a} X - {c_min} X(X-1) >= 0 gives X <= {x_max}, so 1 + X <= {objective_bound}")

    closed = okuda_yu_bound(n, a)
    matches = closed.applicable and closed.value == objective_bound
    step("closed form", matches,
         f"2 + (n-2)/a * max(...) = {closed.value}; replayed bound = {objective_bound} "
         "(the single leading '2 +' form, as in the final displayed inequality)")

    # Tightness: put all of X(X-1) on whichever of Y, Z has the smaller coefficient.
    xs = [3 * x_max, Fraction(0), Fraction(0), Fraction(0), Fraction(0), Fraction(0)]
    if c_y <= c_z:
        xs[2] = x_max * (x_max - 1)
    else:
        xs[3] = x_max * (x_max - 1)
    witness = tuple(xs)
    inst = minimal_instance(n, a)
    attained = inst.contains(witness) and 1 + (witness[0] + witness[1]) / 3 == objective_bound
    step("attained", attained,
         "x* = (" + ", ".join(str(v) for v in witness) + ") lies in the relaxed region "
         f"with objective {objective_bound}")

    replay.ok = all(s.ok for s in steps)
    replay.objective_bound = objective_bound
    replay.closed_form = closed.value
    replay.witness = witness
    return replay
