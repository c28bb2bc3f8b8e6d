"""3x3 matrix algebra, cross-ratios, real eigen-analysis and the base change
that moves a commuting pair of matrices into the affine subalgebra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateConfigurationError,
    DegenerateQuadError,
    NonCollinearError,
    NonCommutingError,
)

Point = tuple[float, float]

CLUSTER_TOL = 1e-7
SCALAR_TOL = 1e-10


def as_mat3(m) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def mat_scale(*ms) -> float:
    """Max absolute entry over all given matrices (the reference scale for tolerances)."""
    return max(float(np.max(np.abs(m))) for m in ms)


def is_invertible(m) -> bool:
    m = as_mat3(m)
    return abs(np.linalg.det(m)) > 1e-12 * mat_scale(m) ** 3


# ---------------------------------------------------------------- cross-ratio


def cross_ratio(a: float, b: float, c: float, d: float) -> float:
    """Cross-ratio ((c-a)(d-b)) / ((d-a)(c-b)) of four affine parameters."""
    scale = max(abs(a), abs(b), abs(c), abs(d))
    da, cb = d - a, c - b
    if abs(da) <= 1e-12 * scale or abs(cb) <= 1e-12 * scale:
        raise DegenerateQuadError(f"degenerate quad ({a}, {b}; {c}, {d})")
    return ((c - a) * (d - b)) / (da * cb)


@dataclass(frozen=True)
class CollinearQuad:
    points: tuple[Point, Point, Point, Point]
    params: tuple[float, float, float, float]

    @classmethod
    def from_points(cls, points: Sequence[Point], tol: float = 1e-9) -> "CollinearQuad":
        pts = np.asarray(points, dtype=float)
        if pts.shape != (4, 2):
            raise ValueError("a quad needs exactly four planar points")
        # direction from the farthest-apart pair, for conditioning
        i, j = max(combinations(range(4), 2), key=lambda ij: np.linalg.norm(pts[ij[0]] - pts[ij[1]]))
        direction = pts[j] - pts[i]
        length = np.linalg.norm(direction)
        if length == 0.0:
            raise DegenerateQuadError("all four points coincide")
        direction /= length
        normal = np.array([-direction[1], direction[0]])
        rel = pts - pts[i]
        dist = np.abs(rel @ normal)
        scale = max(1.0, float(np.max(np.abs(pts))))
        if float(np.max(dist)) > tol * scale:
            raise NonCollinearError(f"points deviate from a common line by {np.max(dist):.3e}")
        params = rel @ direction
        return cls(tuple(map(tuple, pts.tolist())), tuple(params.tolist()))

    @classmethod
    def on_line(cls, origin: Point, direction: Point, params: Sequence[float]) -> "CollinearQuad":
        o = np.asarray(origin, dtype=float)
        v = np.asarray(direction, dtype=float)
        pts = [tuple((o + p * v).tolist()) for p in params]
        return cls.from_points(pts)


def cross_ratio_points(quad: CollinearQuad) -> float:
    return cross_ratio(*quad.params)


def verify_cross_ratio_preservation(
    fn: Callable[[Point], Point], quads: Iterable[CollinearQuad], tol: float = 1e-9
) -> float:
    """Max |cross-ratio(image quad) - cross-ratio(quad)| over ``quads``.

    Raises NonCollinearError if some image quad is not collinear within ``tol``,
    which means ``fn`` does not send that segment into a segment.
    """
    worst = 0.0
    for quad in quads:
        image = CollinearQuad.from_points([fn(p) for p in quad.points], tol=tol)
        worst = max(worst, abs(cross_ratio_points(image) - cross_ratio_points(quad)))
    return worst


# ---------------------------------------------------------------- eigen-analysis


@dataclass(frozen=True)
class RealEigen:
    value: float
    multiplicity: int
    vector: np.ndarray


@dataclass(frozen=True)
class ComplexPair:
    value: complex  # the member with positive imaginary part
    vector_re: np.ndarray
    vector_im: np.ndarray


@dataclass(frozen=True)
class EigenResult:
    real: list[RealEigen]
    complex_pair: ComplexPair | None = None

    @property
    def has_complex_pair(self) -> bool:
        return self.complex_pair is not None


def char_poly(m) -> tuple[float, float, float]:
    """Coefficients (c2, c1, c0) of det(xI - m) = x^3 + c2 x^2 + c1 x + c0."""
    m = np.asarray(m, dtype=float)
    tr = m[0, 0] + m[1, 1] + m[2, 2]
    minors = (
        m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
        + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    )
    det = (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )
    return -tr, minors, -det


def _cubic_roots(c2: float, c1: float, c0: float) -> tuple[list[float], complex | None]:
    # depressed cubic x^3 + p x + q with lambda = x - c2/3
    shift = -c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2 ** 3 / 27.0 - c2 * c1 / 3.0 + c0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc <= 0.0:
        if p == 0.0:
            return [shift] * 3, None
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * r)  # = (3q/2p) sqrt(-3/p)
        theta = math.acos(min(1.0, max(-1.0, arg))) / 3.0
        roots = [r * math.cos(theta - 2.0 * math.pi * k / 3.0) + shift for k in range(3)]
        return sorted(roots), None
    sq = math.sqrt(disc)
    big = abs(q) / 2.0 + sq
    a_ = -math.copysign(1.0, q) * big ** (1.0 / 3.0)
    b_ = -p / (3.0 * a_) if a_ != 0.0 else 0.0
    real = a_ + b_ + shift
    pair = complex(-(a_ + b_) / 2.0 + shift, math.sqrt(3.0) / 2.0 * abs(a_ - b_))
    return [real], pair


def _null_vector(m: np.ndarray) -> np.ndarray:
    _, _, vh = np.linalg.svd(m)
    return _canonical_sign(vh[-1].conj())


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    k = int(np.argmax(np.abs(v)))
    if np.iscomplexobj(v):
        return v * (abs(v[k]) / v[k])
    return v if v[k] > 0 else -v


def eigen_real_3x3(m) -> EigenResult:
    """Eigenvalues of a real 3x3 matrix from the closed-form cubic.

    Real roots closer than 1e-7 * scale are merged into one eigenvalue with
    multiplicity; the merged value is re-derived from the trace, which is far
    more accurate than the clustered roots themselves.
    """
    m = as_mat3(m)
    scale = mat_scale(m)
    if scale == 0.0:
        return EigenResult([RealEigen(0.0, 3, np.array([1.0, 0.0, 0.0]))])
    ms = m / scale
    tr = float(np.trace(ms))
    roots, pair = _cubic_roots(*char_poly(ms))
    if pair is not None and pair.imag <= CLUSTER_TOL:
        roots = sorted(roots + [pair.real, pair.real])
        pair = None

    groups: list[list[float]] = []
    for r in roots:
        if groups and r - groups[-1][-1] <= CLUSTER_TOL:
            groups[-1].append(r)
        else:
            groups.append([r])

    values: list[tuple[float, int]] = []
    if len(groups) == 1 and len(groups[0]) == 3:
        values = [(tr / 3.0, 3)]
    elif len(groups) == 2:
        single = next(g[0] for g in groups if len(g) == 1)
        double = (tr - single) / 2.0
        values = sorted([(single, 1), (double, 2)])
    else:
        values = [(sum(g) / len(g), len(g)) for g in groups]

    eye = np.eye(3)
    real = [RealEigen(v * scale, k, _null_vector(ms - v * eye)) for v, k in values]
    cpair = None
    if pair is not None:
        w = _null_vector(ms.astype(complex) - pair * eye)
        cpair = ComplexPair(pair * scale, w.real.copy(), w.imag.copy())
    return EigenResult(real, cpair)


# ---------------------------------------------------------------- commuting pairs -> aff(2)


def trace_adjusted_commutator(a, b) -> np.ndarray:
    c = a @ b - b @ a
    return c - np.trace(c) / 3.0 * np.eye(3)


def _is_scalar(m: np.ndarray, scale: float) -> bool:
    return np.linalg.norm(m - np.trace(m) / 3.0 * np.eye(3)) <= SCALAR_TOL * scale


def _invariant_plane_normal(m: np.ndarray) -> np.ndarray | None:
    """Unit normal of a plane invariant under ``m`` (and anything commuting with it).

    None when ``m`` is scalar. The plane is the kernel of a left eigenvector for a
    simple real eigenvalue, or ker N^2 / ker N for a non-scalar triple eigenvalue.
    """
    scale = mat_scale(m)
    if scale == 0.0 or _is_scalar(m, scale):
        return None
    ms = m / scale
    eig = eigen_real_3x3(ms)
    eye = np.eye(3)
    if eig.complex_pair is not None:
        rho = eig.real[0].value
    elif len(eig.real) == 3:
        vals = [e.value for e in eig.real]

        def gap(i):
            return min(abs(vals[i] - vals[j]) for j in range(3) if j != i)

        best = max(gap(i) for i in range(3))
        rho = max(vals[i] for i in range(3) if gap(i) >= best - 1e-12)
    elif len(eig.real) == 2:
        rho = next(e.value for e in eig.real if e.multiplicity == 1)
    else:
        nil = ms - eig.real[0].value * eye
        nil2 = nil @ nil
        target = nil2 if np.linalg.norm(nil2) > CLUSTER_TOL else nil
        _, _, vh = np.linalg.svd(target)
        return _canonical_sign(vh[0])
    return _null_vector((ms - rho * eye).T)


def basis_with_normal(normal) -> np.ndarray:
    """Orthogonal P = [u1 u2 n] with span(u1, u2) = n-perp, chosen canonically.

    u1 is the projection of the standard basis vector least aligned with n, so
    a coordinate-aligned normal e3 gives the identity.
    """
    n = _canonical_sign(np.asarray(normal, dtype=float))
    k = int(np.argmin(np.abs(n)))
    e = np.zeros(3)
    e[k] = 1.0
    u1 = e - (e @ n) * n
    u1 /= np.linalg.norm(u1)
    u2 = np.cross(n, u1)
    return np.column_stack([u1, u2, n])


def commuting_to_aff(a, b) -> np.ndarray:
    """Base change P such that P^-1 A P and P^-1 B P fix the plane z = 0.

    In the new basis both matrices have zero (3,1) and (3,2) entries, so their
    images modulo scalars lie in the affine subalgebra.
    """
    a, b = as_mat3(a), as_mat3(b)
    scale = max(mat_scale(a, b), np.finfo(float).tiny)
    comm = float(np.linalg.norm(trace_adjusted_commutator(a, b)))
    tol = 1e-8 * scale * scale
    if comm > tol:
        raise NonCommutingError(comm, tol)
    for m in (a, b):
        n = _invariant_plane_normal(m)
        if n is not None:
            return basis_with_normal(n)
    return np.eye(3)


def aff_residual(m, p) -> float:
    """max(|(3,1)|, |(3,2)|) of P^-1 M P."""
    conj = np.linalg.solve(p, np.asarray(m, dtype=float) @ p)
    return float(max(abs(conj[2, 0]), abs(conj[2, 1])))


# ---------------------------------------------------------------- projective maps


class ProjMat:
    """A projective linear map, stored with Frobenius norm 1 and first
    significant entry positive so that equality is a plain entrywise check."""

    __slots__ = ("rep",)
    __hash__ = None

    def __init__(self, m):
        m = as_mat3(m)
        norm = np.linalg.norm(m)
        if norm == 0.0:
            raise ValueError("zero matrix has no projective class")
        rep = m / norm
        flat = rep.ravel()
        first = next(x for x in flat if abs(x) > 1e-12)
        if first < 0:
            rep = -rep
        rep.setflags(write=False)
        self.rep = rep

    def __eq__(self, other):
        if not isinstance(other, ProjMat):
            return NotImplemented
        return bool(np.allclose(self.rep, other.rep, rtol=0.0, atol=1e-10))

    def distance(self, other: "ProjMat") -> float:
        return float(np.max(np.abs(self.rep - other.rep)))

    def apply(self, p: Point) -> Point:
        h = self.rep @ np.array([p[0], p[1], 1.0])
        return (float(h[0] / h[2]), float(h[1] / h[2]))

    def __repr__(self):
        return f"ProjMat({self.rep.tolist()!r})"


def _homog(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    return np.column_stack([pts, np.ones(len(pts))])


def _check_general_position(points, label: str) -> None:
    h = _homog(points)
    scale = max(1.0, float(np.max(np.abs(h))))
    for idx in combinations(range(4), 3):
        if abs(np.linalg.det(h[list(idx)])) <= 1e-10 * scale * scale:
            raise DegenerateConfigurationError(f"{label} points {idx} are collinear")


def _frame(points) -> np.ndarray:
    # columns: homogeneous p1..p3 scaled so that their sum is p4
    h = _homog(points).T
    coeffs = np.linalg.solve(h[:, :3], h[:, 3])
    return h[:, :3] * coeffs


def projective_from_correspondences(pairs) -> ProjMat:
    """The unique projective map sending four source points to four targets."""
    pairs = list(pairs)
    if len(pairs) != 4:
        raise ValueError("exactly four point pairs are required")
    src = [p for p, _ in pairs]
    dst = [q for _, q in pairs]
    _check_general_position(src, "source")
    _check_general_position(dst, "target")
    return ProjMat(_frame(dst) @ np.linalg.inv(_frame(src)))
