"""Exact point-line arrangements, incidence counting, and their images under
the curve maps."""

from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .curves import CurveTranslate, Line, MapId, line_image_translate, map_point
from .errors import CountMismatchError, DomainError, InadmissibleLineError


@dataclass(frozen=True)
class IntArrangement:
    """Integer points and integer lines y = a x + b."""

    points: tuple[tuple[int, int], ...]
    lines: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((int(x), int(y)) for x, y in self.points))
        object.__setattr__(self, "lines", tuple((int(a), int(b)) for a, b in self.lines))
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate points")
        if len(set(self.lines)) != len(self.lines):
            raise ValueError("duplicate lines")


@dataclass(frozen=True)
class IncidenceReport:
    N: int
    M: int
    I: int
    residual_I: int | None = None  # second, independent count for mapped arrangements

    @property
    def st_bound(self) -> float:
        return (self.N * self.M) ** (2.0 / 3.0) + self.N + self.M

    @property
    def st_ratio(self) -> float:
        return self.I / self.st_bound if self.I else 0.0

    def summary(self) -> str:
        return f"N={self.N}, M={self.M}, I={self.I}, st_ratio={self.st_ratio:.6f}"


def elekes(n: int) -> IntArrangement:
    """Points [1..n] x [1..2n^2] and lines y = a x + b, a in [1..n], b in [1..n^2].

    Each line meets exactly n grid points (one per column), so N = 2n^3,
    M = n^3 and I = n^4.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    points = tuple((i, j) for i in range(1, n + 1) for j in range(1, 2 * n * n + 1))
    lines = tuple((a, b) for a in range(1, n + 1) for b in range(1, n * n + 1))
    return IntArrangement(points, lines)


def _count_chunk(columns: dict[int, set[int]], lines) -> int:
    total = 0
    for a, b in lines:
        for x, ys in columns.items():
            if a * x + b in ys:
                total += 1
    return total


def count_incidences_exact(arr: IntArrangement, threads: int = 1) -> IncidenceReport:
    """Exact incidence count, grouping points by column.

    Work is O(M * #columns). With ``threads > 1`` the lines are split into
    contiguous chunks; integer sums make the result independent of the split.
    """
    columns: dict[int, set[int]] = defaultdict(set)
    for x, y in arr.points:
        columns[x].add(y)
    lines = arr.lines
    if threads <= 1 or len(lines) < 2:
        total = _count_chunk(columns, lines)
    else:
        size = math.ceil(len(lines) / threads)
        chunks = [lines[k:k + size] for k in range(0, len(lines), size)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            total = sum(pool.map(lambda ch: _count_chunk(columns, ch), chunks))
    return IncidenceReport(len(arr.points), len(lines), total)


def count_incidences_bruteforce(arr: IntArrangement) -> int:
    return sum(1 for a, b in arr.lines for x, y in arr.points if y == a * x + b)


@dataclass(frozen=True)
class MappedArrangement:
    points: tuple[tuple[float, float], ...]
    curves: tuple[CurveTranslate, ...]
    source: IntArrangement = field(repr=False)
    map_id: MapId = MapId.PARABOLA


def map_arrangement(arr: IntArrangement, mid: MapId) -> MappedArrangement:
    points = []
    for p in arr.points:
        try:
            points.append(map_point(mid, p))
        except DomainError as exc:
            raise DomainError(f"point {p}: {exc}") from exc
    curves = []
    for ln in arr.lines:
        try:
            curves.append(line_image_translate(mid, Line(*ln)))
        except InadmissibleLineError as exc:
            exc.args = (f"line {ln}: {exc}",)
            raise
    return MappedArrangement(tuple(points), tuple(curves), arr, mid)


def count_curve_incidences(m: MappedArrangement, tol: float = 1e-9) -> IncidenceReport:
    """Count point-curve incidences twice and insist the counts agree.

    The pullback count is the exact integer count of the source arrangement;
    the residual count tests every image point against every curve translate.
    """
    pullback = count_incidences_exact(m.source).I
    if not m.points or not m.curves:
        return IncidenceReport(len(m.points), len(m.curves), pullback, 0)
    xs = np.array([p[0] for p in m.points])
    ys = np.array([p[1] for p in m.points])
    hits = []
    for k, curve in enumerate(m.curves):
        on = np.abs(curve.residual(xs, ys)) <= tol
        hits.extend((int(i), k) for i in np.flatnonzero(on))
    residual = len(hits)
    if residual != pullback:
        truth = {(i, k) for k, (a, b) in enumerate(m.source.lines) for i, (x, y) in enumerate(m.source.points)
                 if y == a * x + b}
        diff = sorted(truth.symmetric_difference(hits))
        raise CountMismatchError(pullback, residual, diff)
    return IncidenceReport(len(m.points), len(m.curves), pullback, residual)


def st_bound_check(report: IncidenceReport, c: float) -> tuple[bool, float]:
    """(I <= c * (N^(2/3) M^(2/3) + N + M), c * bound - I)."""
    if not c > 0:
        raise ValueError("c must be positive")
    margin = c * report.st_bound - report.I
    return margin >= 0, margin
