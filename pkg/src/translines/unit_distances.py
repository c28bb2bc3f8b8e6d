"""Unit distances in the norm whose unit ball is a parabola lens.

The ball is |y| <= (1 - x^2)/2. Its lower boundary arc is y = x^2/2 - 1/2, a
translate of the parabola y = x^2/2, and the upper arc is the reflection.
Solving the boundary equation along a ray gives the gauge in closed form,
g(x, y) = |y| + sqrt(x^2 + y^2).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class UnitBall:
    def lower_arc(self, t):
        return (t * t - 1) / 2

    def upper_arc(self, t):
        return (1 - t * t) / 2

    def contains(self, v) -> bool:
        x, y = v
        return abs(x) <= 1 and abs(y) <= (1 - x * x) / 2

    def on_boundary(self, v) -> bool:
        """Exact for Fraction/int input: |x| <= 1 and |y| = (1 - x^2)/2."""
        x, y = v
        return abs(x) <= 1 and 2 * abs(y) == 1 - x * x


LENS = UnitBall()


def gauge(ball: UnitBall, v) -> float:
    x, y = float(v[0]), float(v[1])
    return abs(y) + math.hypot(x, y)


@dataclass(frozen=True)
class ScaledGrid:
    """Points (i/n, j/n^2), 0 <= i < n, 0 <= j < n^2."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")

    @property
    def size(self) -> int:
        return self.n ** 3

    def points(self) -> list[tuple[Fraction, Fraction]]:
        n = self.n
        return [(Fraction(i, n), Fraction(j, n * n)) for i in range(n) for j in range(n * n)]


def unit_vector_classes(n: int) -> list[tuple[int, int]]:
    """Grid difference vectors (di, dj) at gauge exactly 1.

    In grid units the condition is 2|dj| = n^2 - di^2, so di must have the
    parity of n and |di| <= n - 1.
    """
    out = []
    for di in range(-(n - 1), n):
        if (n - di) % 2:
            continue
        dj = (n * n - di * di) // 2
        out.extend([(di, dj), (di, -dj)])
    return out


def _placements(n: int, vectors) -> int:
    return sum((n - abs(di)) * (n * n - abs(dj)) for di, dj in vectors)


def unit_pairs_exact(grid: ScaledGrid, threads: int = 1) -> int:
    """Unordered unit-distance pairs of the grid, in integer arithmetic.

    A difference vector (di, dj) is realised by (n - |di|)(n^2 - |dj|) ordered
    pairs; the class set is symmetric under negation, so halve the total.
    """
    n = grid.n
    vectors = unit_vector_classes(n)
    if threads <= 1 or len(vectors) < 2:
        ordered = _placements(n, vectors)
    else:
        chunks = [vectors[k::threads] for k in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            ordered = sum(pool.map(lambda ch: _placements(n, ch), chunks))
    assert ordered % 2 == 0
    return ordered // 2


def unit_pairs_bruteforce(points: Sequence, ball: UnitBall = LENS, tol: float = 1e-12) -> int:
    pts = [(float(x), float(y)) for x, y in points]
    return sum(
        1 for p, q in combinations(pts, 2) if abs(gauge(ball, (q[0] - p[0], q[1] - p[1])) - 1.0) <= tol
    )


def boundary_incidences(points: Sequence, ball: UnitBall = LENS) -> int:
    """Ordered count of (p, q), q != p, with q on the translated boundary p + dB.

    Uses exact rational arithmetic (floats are converted exactly).
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    return sum(
        1 for p in pts for q in pts if q != p and ball.on_boundary((q[0] - p[0], q[1] - p[1]))
    )


def translate_incidence_identity(points: Sequence, ball: UnitBall = LENS) -> bool:
    """2 * (unit pairs) == point / translated-boundary incidences."""
    return 2 * unit_pairs_bruteforce(points, ball) == boundary_incidences(points, ball)


def exponent_fit(counts: Sequence[tuple[int, int]]) -> float:
    """Least-squares slope of ln(count) against ln(N)."""
    counts = list(counts)
    if len(counts) < 3:
        raise ValueError("need at least three (N, count) entries")
    if any(c <= 0 for _, c in counts):
        raise ValueError("counts must be positive")
    ns = [n for n, _ in counts]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("N must be increasing")
    x = np.log(np.array(ns, dtype=float))
    y = np.log(np.array([c for _, c in counts], dtype=float))
    xc = x - x.mean()
    return float(xc @ (y - y.mean()) / (xc @ xc))
