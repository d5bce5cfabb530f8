import itertools
import random
from fractions import Fraction

import pytest
import sympy as sp

from eqlines.threepoint import (
    LEMMA_PATTERNS,
    calibration_ratio,
    lemma32_reference,
    lemma_pattern_args,
    s_combination_diagonal,
    s_diagonal_terms,
    unnormalized_entry,
    w_det,
    w_matrix,
)

F = Fraction


def sqrt_form_oracle(n, k, i, j, u, v, t):
    """Literal square-root definition, simplified symbolically by sympy."""
    s = sp.Symbol("s")
    lam = sp.Rational(n - 3, 2)
    if n == 3:
        q = sp.chebyshevt(k, s)
    else:
        q = sp.gegenbauer(k, lam, s) / sp.gegenbauer(k, lam, 1)
    total = 0
    for a, b, c in itertools.permutations([sp.Rational(x.numerator, x.denominator) for x in (u, v, t)]):
        root = sp.sqrt((1 - a**2) * (1 - b**2))
        if root == 0:
            # polynomial extension: only the top-order term survives
            lead = sp.Poly(q, s).coeff_monomial(s**k)
            term = lead * (c - a * b) ** k
        else:
            term = root**k * q.subs(s, (c - a * b) / root)
        total += a**i * b**j * term
    val = sp.radsimp(sp.simplify(total / 6))
    assert val.is_Rational, val
    return F(int(val.p), int(val.q))


def test_matches_square_root_definition():
    rng = random.Random(11)
    for _ in range(12):
        n, k = rng.randint(3, 9), rng.randint(0, 5)
        i, j = rng.randint(0, 2), rng.randint(0, 2)
        u, v, t = (F(rng.randint(-9, 9), 10) for _ in range(3))
        assert unnormalized_entry(n, k, i, j, u, v, t) == sqrt_form_oracle(n, k, i, j, u, v, t)


@pytest.mark.parametrize("n", [3, 4, 10, 23])
def test_vanishes_at_identity_triple(n):
    assert unnormalized_entry(n, 3, 1, 1, 1, 1, 1) == 0


@pytest.mark.parametrize("n", [3, 6, 23])
def test_alpha_alpha_one_closed_form(n):
    for a in (F(1, 3), F(2, 7), F(-4, 5)):
        expected = F(1, 3) * a**2 * (1 - a**2) ** 3
        assert unnormalized_entry(n, 3, 1, 1, a, a, 1) == expected


def test_degree_zero_is_one():
    assert unnormalized_entry(5, 0, 0, 0, F(1, 2), F(1, 2), F(1, 2)) == 1


def test_permutation_symmetry():
    rng = random.Random(3)
    for _ in range(20):
        n, k, i = rng.randint(3, 10), rng.randint(0, 6), rng.randint(0, 3)
        trip = [F(rng.randint(-20, 20), 21) for _ in range(3)]
        vals = {unnormalized_entry(n, k, i, i, *p) for p in itertools.permutations(trip)}
        assert len(vals) == 1


def test_transpose_symmetry():
    rng = random.Random(5)
    for _ in range(20):
        n, k, i, j = rng.randint(3, 9), rng.randint(0, 5), rng.randint(0, 3), rng.randint(0, 3)
        u, v, t = (F(rng.randint(-20, 20), 21) for _ in range(3))
        assert unnormalized_entry(n, k, i, j, u, v, t) == unnormalized_entry(n, k, j, i, v, u, t)


def test_polynomial_in_arguments():
    # A polynomial of degree <= D in u is pinned by D+1 samples: the
    # Lagrange extrapolation from grid points must reproduce a fresh value.
    n, k, i = 6, 3, 1
    v, t = F(1, 3), F(-2, 5)
    degree = 2 * k + 2 * i + 2
    xs = [F(m, degree + 3) for m in range(-(degree // 2), degree // 2 + 2)]
    ys = [unnormalized_entry(n, k, i, i, x, v, t) for x in xs]
    target = F(5, 11)
    interp = F(0)
    for a, (xa, ya) in enumerate(zip(xs, ys)):
        w = F(1)
        for b, xb in enumerate(xs):
            if a != b:
                w *= (target - xb) / (xa - xb)
        interp += w * ya
    assert interp == unnormalized_entry(n, k, i, i, target, v, t)


def test_rejects_out_of_range_arguments():
    with pytest.raises(ValueError):
        unnormalized_entry(5, 3, 1, 1, F(3, 2), 0, 0)
    with pytest.raises(ValueError):
        unnormalized_entry(2, 3, 1, 1, 0, 0, 0)


def test_lemma_reference_examples():
    assert lemma32_reference(5, "(a,a,1)", F(1, 2)) == F(10395, 16384)
    assert lemma32_reference(5, "(a,a,a)", F(1, 2)) == F(-8085, 16384)
    assert lemma32_reference(17, "(1,1,1)", F(1, 2)) == 0
    with pytest.raises(ValueError):
        lemma32_reference(2, "(a,a,1)", F(1, 2))


@pytest.mark.parametrize("n", [3, 5, 8, 23])
def test_common_ratio_with_closed_forms(n):
    lam = calibration_ratio(n)
    assert lam > 0
    for a in (F(1, 3), F(3, 7), F(9, 10)):
        for pattern in LEMMA_PATTERNS:
            entry = unnormalized_entry(n, 3, 1, 1, *lemma_pattern_args(pattern, a))
            assert lemma32_reference(n, pattern, a) == lam * entry


def test_s_combination_at_zero():
    x0 = (0,) * 6
    assert s_combination_diagonal(7, 0, 0, x0, F(1, 3), F(-1, 3)) == 1
    for l in range(1, 5):
        assert s_combination_diagonal(7, l, 1, x0, F(1, 3), F(-1, 3)) == 0


def test_s_combination_example():
    a = F(1, 3)
    got = s_combination_diagonal(23, 3, 1, (1, 1, 0, 0, 0, 0), a, -a)
    assert got == F(2, 27) * F(8, 9) ** 3


def test_grouping_pattern_when_beta_is_minus_alpha():
    for n in (5, 23, 71):
        for a in (F(1, 3), F(1, 5), F(2, 3)):
            c = s_diagonal_terms(n, 3, 1, a, -a)
            assert c[1] == c[2]
            assert c[3] == c[5]
            assert c[4] == c[6]


def test_w_matrix_and_det():
    assert w_det((0,) * 6) == 0
    assert w_det((3, 0, 0, 0, 0, 0)) == 0
    assert w_det((3, 3, 1, 1, 0, 0)) == 0
    rng = random.Random(1)
    for _ in range(20):
        x = tuple(F(rng.randint(0, 30), rng.randint(1, 7)) for _ in range(6))
        assert w_matrix(x).det == w_det(x)
        (a, b), (c, d) = w_matrix(x).entries
        assert a == 1 and b == c == (x[0] + x[1]) / 3
