"""Normalized Gegenbauer polynomials P^n_l with P^n_l(1) = 1.

These are the zonal kernels of the sphere S^{n-1}. They are generated by

    P_0 = 1,  P_1 = u,
    (l + n - 3) P_l = (2l + n - 4) u P_{l-1} - (l - 1) P_{l-2},

which for n = 3 gives the Legendre polynomials and for n = 2 the Chebyshev
polynomials of the first kind.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .exact import Polynomial, as_rational


class GegenbauerTable:
    """Lazily extended cache of P^n_0, P^n_1, ... for one dimension n."""

    def __init__(self, dimension: int):
        if not isinstance(dimension, int) or dimension < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {dimension!r}")
        self.dimension = dimension
        self._polys = [Polynomial.constant(1), Polynomial.identity()]
        self._lock = threading.Lock()

    def __getitem__(self, degree: int) -> Polynomial:
        if not isinstance(degree, int) or degree < 0:
            raise ValueError(f"degree must be a nonnegative integer, got {degree!r}")
        if degree >= len(self._polys):
            with self._lock:
                self._extend(degree)
        return self._polys[degree]

    def __len__(self) -> int:
        return len(self._polys)

    def _extend(self, degree: int) -> None:
        n = self.dimension
        u = Polynomial.identity()
        polys = self._polys
        for l in range(len(polys), degree + 1):
            nxt = (u * polys[l - 1]).scale(2 * l + n - 4) - polys[l - 2].scale(l - 1)
            polys.append(nxt.scale(Fraction(1, l + n - 3)))


_TABLES: dict = {}
_TABLES_LOCK = threading.Lock()


def table(n: int) -> GegenbauerTable:
    t = _TABLES.get(n)
    if t is None:
        with _TABLES_LOCK:
            t = _TABLES.setdefault(n, GegenbauerTable(n))
    return t


def gegenbauer(n: int, l: int) -> Polynomial:
    """Return P^n_l as an exact polynomial in u."""
    return table(n)[l]


def gegenbauer_eval(n: int, l: int, u) -> Fraction:
    u = as_rational(u)
    if not -1 <= u <= 1:
        raise ValueError(f"argument must lie in [-1, 1], got {u}")
    return gegenbauer(n, l)(u)
