"""Checks on explicit finite configurations X on the unit sphere S^{n-1}.

Every check goes through inner products, so a configuration may be given
either by coordinates or by its Gram matrix. Configurations with
irrational coordinates but rational Gram entries (for example the 28
equiangular lines in R^7) stay exact that way.

Entries are exact Fractions unless any input value is a float, in which
case the whole configuration is handled in double precision with an
absolute tolerance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .exact import RationalParseError, rational_from_string
from .gegenbauer import gegenbauer

EXACT = "exact"
APPROXIMATE = "approximate"
DEFAULT_TOLERANCE = 1e-9


class ConfigurationError(ValueError):
    """Malformed configuration; ``field`` names the offending entry."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class NotPositiveSemidefinite(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _is_zero(v, mode, tol):
    return v == 0 if mode == EXACT else abs(v) <= tol


@dataclass(frozen=True)
class PointSet:
    dimension: int
    points: tuple
    mode: str = EXACT
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        pts = tuple(tuple(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if self.mode not in (EXACT, APPROXIMATE):
            raise ValueError(f"unknown mode {self.mode!r}")
        for idx, p in enumerate(pts):
            if len(p) != self.dimension:
                raise ConfigurationError(
                    f"has {len(p)} coordinates, expected {self.dimension}", f"points[{idx}]")
            norm2 = sum(c * c for c in p)
            if not _is_zero(norm2 - 1, self.mode, self.tolerance):
                raise ConfigurationError(f"not a unit vector (squared norm {norm2})",
                                         f"points[{idx}]")

    @classmethod
    def from_rows(cls, rows, dimension=None, tolerance=DEFAULT_TOLERANCE) -> "PointSet":
        values, mode = _coerce_matrix(rows, "points")
        if dimension is None:
            if not values:
                raise ConfigurationError("cannot infer the dimension of an empty set", "dimension")
            dimension = len(values[0])
        return cls(dimension, tuple(tuple(r) for r in values), mode, tolerance)

    @property
    def size(self) -> int:
        return len(self.points)

    def gram(self) -> list:
        return [[sum(a * b for a, b in zip(p, q)) for q in self.points] for p in self.points]


@dataclass(frozen=True)
class GramSet:
    """Configuration given by its Gram matrix; validated PSD with rank <= dimension."""

    matrix: tuple
    dimension: Optional[int] = None
    mode: str = EXACT
    tolerance: float = DEFAULT_TOLERANCE
    rank: int = field(init=False, default=0)

    def __post_init__(self):
        g = tuple(tuple(r) for r in self.matrix)
        object.__setattr__(self, "matrix", g)
        m = len(g)
        for i, row in enumerate(g):
            if len(row) != m:
                raise ConfigurationError(f"has length {len(row)}, expected {m}", f"gram[{i}]")
            if not _is_zero(row[i] - 1, self.mode, self.tolerance):
                raise ConfigurationError(f"diagonal entry {row[i]} is not 1", f"gram[{i}][{i}]")
            for j in range(i):
                if not _is_zero(row[j] - g[j][i], self.mode, self.tolerance):
                    raise ConfigurationError("matrix is not symmetric", f"gram[{i}][{j}]")
        rank = psd_rank(g, self.mode, self.tolerance)
        object.__setattr__(self, "rank", rank)
        if self.dimension is None:
            object.__setattr__(self, "dimension", max(rank, 1))
        elif rank > self.dimension:
            raise ConfigurationError(
                f"Gram rank {rank} exceeds the claimed dimension {self.dimension}", "dimension")

    @classmethod
    def from_rows(cls, rows, dimension=None, tolerance=DEFAULT_TOLERANCE) -> "GramSet":
        values, mode = _coerce_matrix(rows, "gram")
        return cls(tuple(tuple(r) for r in values), dimension, mode, tolerance)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def gram(self) -> list:
        return [list(r) for r in self.matrix]


Configuration = Union[PointSet, GramSet]


def psd_rank(g, mode=EXACT, tolerance=DEFAULT_TOLERANCE) -> int:
    """Rank of a symmetric PSD matrix; raises NotPositiveSemidefinite otherwise.

    Exact mode runs symmetric Gaussian elimination with diagonal pivots, so
    a failure comes with a witness: a negative pivot, or a zero pivot whose
    row still has a nonzero entry (a 2x2 minor with negative determinant).
    """
    m = len(g)
    if mode == APPROXIMATE:
        if m == 0:
            return 0
        eig = np.linalg.eigvalsh(np.array(g, dtype=float))
        bound = tolerance * m
        if eig[0] < -bound:
            raise NotPositiveSemidefinite(
                f"smallest eigenvalue {eig[0]:.3e} is negative", witness=float(eig[0]))
        return int(np.sum(eig > bound))

    a = [[Fraction(v) for v in row] for row in g]
    remaining = list(range(m))
    rank = 0
    while remaining:
        neg = next((p for p in remaining if a[p][p] < 0), None)
        if neg is not None:
            raise NotPositiveSemidefinite(
                f"negative pivot {a[neg][neg]} at index {neg}", witness=("pivot", neg, a[neg][neg]))
        p = next((p for p in remaining if a[p][p] > 0), None)
        if p is None:
            for i in remaining:
                for j in remaining:
                    if a[i][j] != 0:
                        raise NotPositiveSemidefinite(
                            f"zero pivot at index {i} with nonzero entry {a[i][j]} at ({i}, {j})",
                            witness=("minor", i, j, a[i][j]))
            break
        remaining.remove(p)
        piv = a[p][p]
        for i in remaining:
            f = a[i][p] / piv
            if f:
                for j in remaining:
                    a[i][j] -= f * a[p][j]
        rank += 1
    return rank


def _coerce_entry(v, where):
    if isinstance(v, bool):
        raise ConfigurationError("booleans are not numbers", where)
    if isinstance(v, int):
        return Fraction(v), False
    if isinstance(v, float):
        return v, True
    if isinstance(v, Fraction):
        return v, False
    if isinstance(v, str):
        try:
            return rational_from_string(v), False
        except RationalParseError as exc:
            raise ConfigurationError(str(exc), where) from None
    raise ConfigurationError(f"unsupported entry type {type(v).__name__}", where)


def _coerce_matrix(rows, name):
    if not isinstance(rows, (list, tuple)):
        raise ConfigurationError("expected a list of rows", name)
    out, any_float = [], False
    for i, row in enumerate(rows):
        if not isinstance(row, (list, tuple)):
            raise ConfigurationError("expected a list", f"{name}[{i}]")
        r = []
        for j, v in enumerate(row):
            val, is_float = _coerce_entry(v, f"{name}[{i}][{j}]")
            any_float |= is_float
            r.append(val)
        out.append(r)
    if any_float:
        out = [[float(v) for v in r] for r in out]
        return out, APPROXIMATE
    return out, EXACT


def load_configuration(source, tolerance: float = DEFAULT_TOLERANCE) -> Configuration:
    """Build a configuration from a JSON document (path, text or parsed dict).

    Accepted layouts::

        {"dimension": n, "points": [[...], ...]}
        {"gram": [[...], ...], "dimension": n}      # dimension optional

    Entries are integers, "p/q" or decimal strings (exact), or JSON floats
    (switching the whole configuration to approximate mode).
    """
    if isinstance(source, dict):
        doc = source
    else:
        text = source
        if not (isinstance(source, str) and source.lstrip().startswith("{")):
            with open(source) as fh:
                text = fh.read()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigurationError("top level must be an object")
    dimension = doc.get("dimension")
    if dimension is not None and (isinstance(dimension, bool) or not isinstance(dimension, int)
                                  or dimension < 1):
        raise ConfigurationError("must be a positive integer", "dimension")
    if ("points" in doc) == ("gram" in doc):
        raise ConfigurationError("exactly one of 'points' or 'gram' is required")
    try:
        if "points" in doc:
            return PointSet.from_rows(doc["points"], dimension, tolerance)
        return GramSet.from_rows(doc["gram"], dimension, tolerance)
    except NotPositiveSemidefinite as exc:
        raise ConfigurationError(f"not positive semidefinite ({exc})", "gram") from None


# -- inner product profile -----------------------------------------------------


@dataclass(frozen=True)
class InnerProductProfile:
    values: tuple
    is_two_distance: bool
    is_equiangular_with: Optional[object]
    mode: str
    rank: Optional[int] = None

    def to_dict(self) -> dict:
        def fmt(v):
            return str(v) if isinstance(v, Fraction) else v

        return {
            "inner_products": [fmt(v) for v in self.values],
            "is_two_distance": self.is_two_distance,
            "equiangular_alpha": fmt(self.is_equiangular_with),
            "mode": self.mode,
            "rank": self.rank,
        }


def _bucket(values, tol):
    buckets = []
    for v in sorted(values):
        if buckets and v - buckets[-1][0] <= tol:
            buckets[-1][1] = v
        else:
            buckets.append([v, v])
    return tuple((lo + hi) / 2 for lo, hi in buckets)


def profile(config: Configuration) -> InnerProductProfile:
    """Distinct inner products I(X) over pairs x != y, plus equiangularity."""
    g = config.gram()
    m = len(g)
    off = [g[i][j] for i in range(m) for j in range(i + 1, m)]
    if config.mode == EXACT:
        values = tuple(sorted(set(off)))
        mags = {abs(v) for v in values}
        alpha = mags.pop() if len(mags) == 1 else None
    else:
        tol = config.tolerance
        values = _bucket(off, tol)
        mags = [abs(v) for v in values]
        alpha = None
        if mags and max(mags) - min(mags) <= tol:
            alpha = (max(mags) + min(mags)) / 2
    if alpha is not None and (alpha >= 1 - (0 if config.mode == EXACT else config.tolerance)):
        alpha = None  # coincident lines
    rank = config.rank if isinstance(config, GramSet) else None
    return InnerProductProfile(values, len(values) <= 2, alpha, config.mode, rank)


def gram_profile(g, dimension=None, tolerance=DEFAULT_TOLERANCE) -> InnerProductProfile:
    if not isinstance(g, GramSet):
        g = GramSet.from_rows(g, dimension, tolerance)
    return profile(g)


# -- harmonic index designs -----------------------------------------------------


@dataclass(frozen=True)
class DesignTest:
    t: int
    dimension: int
    size: int
    sum: object
    is_design: bool
    nonnegative: bool
    mode: str

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "dimension": self.dimension,
            "size": self.size,
            "kernel_sum": str(self.sum) if isinstance(self.sum, Fraction) else self.sum,
            "is_design": self.is_design,
            "kernel_sum_nonnegative": self.nonnegative,
            "mode": self.mode,
        }


def harmonic_index_design_test(config: Configuration, t: int) -> DesignTest:
    """Decide whether X is a design of harmonic index t on S^{n-1}.

    By the addition formula, sum_{x,y in X} P^n_t(<x,y>) equals a positive
    multiple of sum_k (sum_{x in X} Y_k(x))^2 over an orthonormal basis Y_k
    of degree-t harmonics, so it vanishes exactly when every degree-t
    harmonic sums to zero over X, and it is never negative.
    """
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"t must be a positive integer, got {t!r}")
    n = config.dimension
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    p = gegenbauer(n, t)
    g = config.gram()
    m = len(g)
    if config.mode == EXACT:
        total = sum((p(v) for row in g for v in row), Fraction(0))
        return DesignTest(t, n, m, total, total == 0, total >= 0, EXACT)
    coeffs = [float(c) for c in reversed(p.coeffs)]
    total = float(np.sum(np.polyval(coeffs, np.array(g, dtype=float))))
    slack = m * m * config.tolerance
    return DesignTest(t, n, m, total, abs(total) <= slack, total >= -slack, APPROXIMATE)


@dataclass(frozen=True)
class TightnessReport:
    dimension: int
    size: int
    required_size: Fraction
    size_matches: bool
    is_design: bool
    is_tight: bool
    contradicts_nonexistence: bool
    message: str

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "size": self.size,
            "required_size": str(self.required_size),
            "size_matches": self.size_matches,
            "is_design": self.is_design,
            "is_tight": self.is_tight,
            "contradicts_nonexistence": self.contradicts_nonexistence,
            "message": self.message,
        }


def tightness_check(config: Configuration, t: int = 4) -> TightnessReport:
    if t != 4:
        raise ValueError("tightness is only defined here for harmonic index 4")
    n = config.dimension
    required = Fraction((n + 1) * (n + 2), 6)
    size_ok = required.denominator == 1 and config.size == required
    design = harmonic_index_design_test(config, 4).is_design
    tight = size_ok and design
    contradiction = tight and n >= 3
    if contradiction:
        message = ("CONTRADICTION: tight harmonic index 4 designs do not exist for n >= 3 "
                   "- check input")
    elif tight:
        message = "tight harmonic index 4 design (allowed: n = 2)"
    elif not size_ok:
        message = f"size {config.size} differs from (n+1)(n+2)/6 = {required}"
    else:
        message = "right size but not a harmonic index 4 design"
    return TightnessReport(n, config.size, required, size_ok, design, tight, contradiction,
                           message)
