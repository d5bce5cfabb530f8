"""Configurations shared by the design and CLI tests."""

import itertools
import random
from fractions import Fraction

F = Fraction


def twenty_eight_lines_gram():
    """Gram matrix of the 28 vectors (3,3,-1,...,-1)/sqrt(24) in R^8 (span is 7-dim)."""
    vecs = []
    for pair in itertools.combinations(range(8), 2):
        vecs.append([3 if k in pair else -1 for k in range(8)])
    return [[F(sum(a * b for a, b in zip(u, v)), 24) for v in vecs] for u in vecs]


def simplex_gram(n):
    """Regular simplex: n + 1 unit vectors with pairwise inner product -1/n."""
    return [[F(1) if i == j else F(-1, n) for j in range(n + 1)] for i in range(n + 1)]


def rational_sphere_point(rng, n, spread=9):
    """Inverse stereographic projection of a random rational vector in Q^{n-1}."""
    y = [F(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(n - 1)]
    s = sum(v * v for v in y)
    return [2 * v / (s + 1) for v in y] + [(s - 1) / (s + 1)]


def random_rational_points(seed, n, m):
    rng = random.Random(seed)
    return [rational_sphere_point(rng, n) for _ in range(m)]


S1_PAIR = [[1.0, 0.0], [2 ** -0.5, 2 ** -0.5]]
