"""Exact two-phase simplex over the rationals with Farkas certificates.

Problems have the form

    a_i . x  (>=, <=, ==)  b_i   for each row i,      x >= 0,

with Fraction data. Bland's least-index rule is used for both the entering
and the leaving variable, so the method terminates on degenerate problems.
Every answer is re-checked against the input rows before it is returned:
feasible points must satisfy all rows exactly, and a Farkas vector w must
satisfy

    w_i >= 0 on '>=' rows, w_i <= 0 on '<=' rows, w_i free on '==' rows,
    sum_i w_i a_i <= 0 componentwise,  sum_i w_i b_i > 0,

which yields the contradiction 0 >= w.Ax >= w.b > 0 for any x >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..exact import as_rational, dot

GE, LE, EQ = ">=", "<=", "=="

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
OPTIMAL = "optimal"
UNBOUNDED = "unbounded"

DEFAULT_MAX_PIVOTS = 10_000


class PivotLimitExceeded(RuntimeError):
    """The pivot budget ran out before the simplex method finished."""


@dataclass(frozen=True)
class LinearConstraint:
    coefficients: tuple
    sense: str
    rhs: Fraction
    tag: str = ""

    def __post_init__(self):
        if self.sense not in (GE, LE, EQ):
            raise ValueError(f"unknown sense {self.sense!r}")
        object.__setattr__(self, "coefficients", tuple(as_rational(c) for c in self.coefficients))
        object.__setattr__(self, "rhs", as_rational(self.rhs))

    def lhs(self, x) -> Fraction:
        return dot(self.coefficients, x)

    def satisfied_by(self, x) -> bool:
        v = self.lhs(x)
        if self.sense == GE:
            return v >= self.rhs
        if self.sense == LE:
            return v <= self.rhs
        return v == self.rhs

    def scaled(self, factor) -> "LinearConstraint":
        factor = as_rational(factor)
        if factor <= 0:
            raise ValueError("only positive rescaling preserves the constraint")
        return LinearConstraint(
            tuple(c * factor for c in self.coefficients), self.sense, self.rhs * factor, self.tag
        )


@dataclass(frozen=True)
class LpResult:
    status: str
    point: Optional[tuple] = None
    farkas: Optional[tuple] = None
    objective: Optional[Fraction] = None
    pivots: int = 0
    row_tags: tuple = ()

    @property
    def feasible(self) -> bool:
        return self.status in (FEASIBLE, OPTIMAL, UNBOUNDED)

    def to_dict(self) -> dict:
        d = {"status": self.status, "pivots": self.pivots}
        if self.point is not None:
            d["point"] = [str(v) for v in self.point]
        if self.farkas is not None:
            d["farkas"] = {
                (tag or f"row{i}"): str(w)
                for i, (tag, w) in enumerate(zip(self.row_tags, self.farkas))
                if w != 0
            }
        if self.objective is not None:
            d["objective"] = str(self.objective)
        return d


def verify_point(constraints: Sequence[LinearConstraint], x) -> bool:
    if any(v < 0 for v in x):
        return False
    return all(c.satisfied_by(x) for c in constraints)


def verify_farkas(constraints: Sequence[LinearConstraint], num_vars: int, w) -> bool:
    """Exact check that ``w`` proves the rows have no nonnegative solution."""
    if len(w) != len(constraints):
        return False
    for c, wi in zip(constraints, w):
        if c.sense == GE and wi < 0:
            return False
        if c.sense == LE and wi > 0:
            return False
    combo = [Fraction(0)] * num_vars
    for c, wi in zip(constraints, w):
        if wi:
            for j, a in enumerate(c.coefficients):
                combo[j] += wi * a
    if any(v > 0 for v in combo):
        return False
    return sum((wi * c.rhs for c, wi in zip(constraints, w)), Fraction(0)) > 0


class _Tableau:
    """Dense tableau; row i is [T_i0, ..., T_i(ncols-1), rhs_i]."""

    def __init__(self, constraints, num_vars, max_pivots):
        self.num_vars = num_vars
        self.max_pivots = max_pivots
        self.pivots = 0
        m = len(constraints)

        # Orient rows so rhs >= 0; a '>=' row with zero rhs flips to '<='
        # so its slack can start in the basis.
        oriented = []
        for c in constraints:
            if len(c.coefficients) != num_vars:
                raise ValueError(f"row {c.tag!r} has {len(c.coefficients)} coefficients, "
                                 f"expected {num_vars}")
            a, b, sense, sign = list(c.coefficients), c.rhs, c.sense, 1
            if b < 0 or (b == 0 and sense == GE):
                a, b, sign = [-v for v in a], -b, -1
                sense = {GE: LE, LE: GE, EQ: EQ}[sense]
            oriented.append((a, b, sense, sign))

        n_slack = sum(1 for _, _, s, _ in oriented if s != EQ)
        n_art = sum(1 for _, _, s, _ in oriented if s != LE)
        self.ncols = num_vars + n_slack + n_art
        self.art_start = num_vars + n_slack
        self.signs = [o[3] for o in oriented]
        self.rows = []
        self.basis = []
        self.initial_col = []   # identity column each row starts with
        self.cost1 = [Fraction(0)] * self.ncols
        slack_j, art_j = num_vars, self.art_start
        for i, (a, b, sense, _) in enumerate(oriented):
            row = a + [Fraction(0)] * (self.ncols - num_vars) + [b]
            if sense == LE:
                row[slack_j] = Fraction(1)
                self.basis.append(slack_j)
                self.initial_col.append(slack_j)
                slack_j += 1
            else:
                if sense == GE:
                    row[slack_j] = Fraction(-1)
                    slack_j += 1
                row[art_j] = Fraction(1)
                self.cost1[art_j] = Fraction(1)
                self.basis.append(art_j)
                self.initial_col.append(art_j)
                art_j += 1
            self.rows.append(row)
        self.m = m

    def reduced_row(self, cost):
        z = list(cost) + [Fraction(0)]
        for i, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb:
                row = self.rows[i]
                z = [zj - cb * rj for zj, rj in zip(z, row)]
        return z

    def pivot(self, r, col, z):
        if self.pivots >= self.max_pivots:
            raise PivotLimitExceeded(f"pivot limit {self.max_pivots} reached")
        self.pivots += 1
        prow = self.rows[r]
        piv = prow[col]
        prow = [v / piv for v in prow]
        self.rows[r] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[col]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = z[col]
        if f:
            for j in nz:
                z[j] -= f * prow[j]
        self.basis[r] = col

    def run(self, z, allowed):
        """Minimize with reduced-cost row ``z``; return False if unbounded."""
        while True:
            col = next((j for j in range(self.ncols) if allowed[j] and z[j] < 0), None)
            if col is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], col, z)

    def point(self):
        x = [Fraction(0)] * self.num_vars
        for i, bj in enumerate(self.basis):
            if bj < self.num_vars:
                x[bj] = self.rows[i][-1]
        return tuple(x)


def _phase_one(constraints, num_vars, max_pivots):
    tab = _Tableau(constraints, num_vars, max_pivots)
    z = tab.reduced_row(tab.cost1)
    tab.run(z, [True] * tab.ncols)
    infeasibility = -z[-1]
    if infeasibility > 0:
        # Phase-one duals y_i = c_e - r_e on each row's starting identity
        # column; undo the row orientation to get multipliers for the input.
        w = tuple(
            tab.signs[i] * (tab.cost1[e] - z[e]) for i, e in enumerate(tab.initial_col)
        )
        return tab, None, w
    return tab, z, None


def _tags(constraints):
    return tuple(c.tag for c in constraints)


def find_feasible_point(
    constraints: Sequence[LinearConstraint], num_vars: int, max_pivots: int = DEFAULT_MAX_PIVOTS
) -> LpResult:
    """Phase one only: a verified point or a verified Farkas vector."""
    constraints = list(constraints)
    tab, _, w = _phase_one(constraints, num_vars, max_pivots)
    if w is not None:
        if not verify_farkas(constraints, num_vars, w):
            raise RuntimeError("Farkas certificate failed exact verification")
        return LpResult(INFEASIBLE, farkas=w, pivots=tab.pivots, row_tags=_tags(constraints))
    x = tab.point()
    if not verify_point(constraints, x):
        raise RuntimeError("feasible point failed exact verification")
    return LpResult(FEASIBLE, point=x, pivots=tab.pivots, row_tags=_tags(constraints))


def maximize(
    objective,
    constraints: Sequence[LinearConstraint],
    num_vars: int,
    max_pivots: int = DEFAULT_MAX_PIVOTS,
) -> LpResult:
    """Maximize objective . x subject to the rows and x >= 0."""
    constraints = list(constraints)
    c = [as_rational(v) for v in objective]
    if len(c) != num_vars:
        raise ValueError("objective length does not match num_vars")
    tab, z, w = _phase_one(constraints, num_vars, max_pivots)
    tags = _tags(constraints)
    if w is not None:
        if not verify_farkas(constraints, num_vars, w):
            raise RuntimeError("Farkas certificate failed exact verification")
        return LpResult(INFEASIBLE, farkas=w, pivots=tab.pivots, row_tags=tags)

    # Drive zero-level artificials out of the basis; drop redundant rows.
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= tab.art_start:
            row = tab.rows[i]
            col = next((j for j in range(tab.art_start) if row[j] != 0), None)
            if col is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, col, z)
        i += 1

    cost2 = [-v for v in c] + [Fraction(0)] * (tab.ncols - num_vars)
    z2 = tab.reduced_row(cost2)
    allowed = [j < tab.art_start for j in range(tab.ncols)]
    bounded = tab.run(z2, allowed)
    x = tab.point()
    if not verify_point(constraints, x):
        raise RuntimeError("phase-two point failed exact verification")
    if not bounded:
        return LpResult(UNBOUNDED, point=x, pivots=tab.pivots, row_tags=tags)
    return LpResult(OPTIMAL, point=x, objective=dot(c, x), pivots=tab.pivots, row_tags=tags)
