"""Five planar maps that send lines to translates of a single curve.

Each map comes with its base curve (an implicit residual R(x, y) that vanishes
exactly on the curve), the closed-form translate offset of the image of a line
y = a x + b, and sampling/verification helpers.
"""

from __future__ import annotations

import cmath
import enum
import math
import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .actions import ActionCase, build_phi
from .errors import DomainError, HorizontalImageError, InadmissibleLineError, VerificationError

Point = tuple[float, float]


class MapId(enum.Enum):
    PARABOLA = "parabola"
    LOG = "log"
    SOFTPLUS = "softplus"
    NEG_EXP = "negexp"
    COMPLEX_LOG = "complexlog"

    @classmethod
    def parse(cls, text: str) -> "MapId":
        key = text.strip().lower()
        for m in cls:
            if key in (m.value, m.name.lower()):
                return m
        raise ValueError(f"unknown map {text!r}; choose from {', '.join(m.value for m in cls)}")


class Line(NamedTuple):
    """The non-vertical line y = a x + b."""

    a: float
    b: float

    def at(self, t):
        return self.a * t + self.b

    def contains(self, p: Point, tol: float = 0.0) -> bool:
        return abs(p[1] - (self.a * p[0] + self.b)) <= tol


# ---------------------------------------------------------------- base curves

_FAMILY_NAMES = ("Parabola", "LogCurve", "NegExpCurve", "SoftplusNegCurve", "ComplexLogCurve")


@dataclass(frozen=True)
class CurveFamily:
    name: str
    coef: float | None = None  # leading coefficient, parabolas only

    def __post_init__(self):
        if self.name not in _FAMILY_NAMES:
            raise ValueError(f"unknown curve family {self.name!r}")
        if (self.name == "Parabola") != (self.coef is not None):
            raise ValueError("exactly the Parabola family carries a coefficient")

    def __str__(self):
        if self.coef is None:
            return self.name
        return f"Parabola({self.coef:.17g})"

    @classmethod
    def parse(cls, text: str) -> "CurveFamily":
        m = re.fullmatch(r"\s*Parabola\(([^)]*)\)\s*", text)
        if m:
            return cls("Parabola", float(m.group(1)))
        return cls(text.strip())

    def residual(self, x, y):
        """Implicit residual of the base curve; zero exactly on the curve.

        Points outside the family's natural domain (x <= 0 for LogCurve, y <= 0
        for SoftplusNegCurve) get an infinite residual. The ComplexLogCurve
        residual is 2*pi-periodic in y, matching the principal-branch wrap of
        the complex logarithm.
        """
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if self.name == "Parabola":
                r = y - self.coef * x * x
            elif self.name == "LogCurve":
                r = np.where(x > 0, y - np.log(np.where(x > 0, x, 1.0)), np.inf)
            elif self.name == "NegExpCurve":
                r = y - np.exp(-x)
            elif self.name == "SoftplusNegCurve":
                r = np.where(y > 0, np.expm1(y) * np.exp(x) - 1.0, np.inf)
            else:
                r = np.exp(x) * np.sin(y) - 1.0
        return r if r.ndim else float(r)


def parabola(c: float) -> CurveFamily:
    return CurveFamily("Parabola", float(c))


LOG_CURVE = CurveFamily("LogCurve")
NEG_EXP_CURVE = CurveFamily("NegExpCurve")
SOFTPLUS_NEG_CURVE = CurveFamily("SoftplusNegCurve")
COMPLEX_LOG_CURVE = CurveFamily("ComplexLogCurve")


@dataclass(frozen=True)
class CurveTranslate:
    """The base curve shifted by (u, v + branch * pi)."""

    family: CurveFamily
    u: float
    v: float
    branch: int = 0

    @property
    def offset(self) -> tuple[float, float]:
        return (self.u, self.v)

    @property
    def vertical_shift(self) -> float:
        return self.v + self.branch * math.pi

    def residual(self, x, y):
        return self.family.residual(np.asarray(x, dtype=float) - self.u, np.asarray(y, dtype=float) - self.vertical_shift)

    def contains(self, p: Point, tol: float = 1e-9) -> bool:
        return abs(self.residual(p[0], p[1])) <= tol


def recover_offset(family: CurveFamily, q1: Point, q2: Point) -> tuple[float, float]:
    """Solve for the translation (u, w) putting two given points on ``family``.

    Returns the total vertical shift w (for ComplexLogCurve reduced to
    (-pi, pi]). Used to check that the offset of a line image is unique.
    """
    (x1, y1), (x2, y2) = q1, q2
    if family.name == "Parabola":
        c = family.coef
        u = (x1 + x2) / 2.0 - (y1 - y2) / (2.0 * c * (x1 - x2))
        return u, y1 - c * (x1 - u) ** 2
    if family.name == "LogCurve":
        w = math.log((math.exp(y1) - math.exp(y2)) / (x1 - x2))
        return x1 - math.exp(y1 - w), w
    if family.name == "NegExpCurve":
        eu = (y1 - y2) / (math.exp(-x1) - math.exp(-x2))
        return math.log(eu), y1 - eu * math.exp(-x1)
    if family.name == "SoftplusNegCurve":
        # e^y = A + B e^-x with A = e^w, B = e^(w+u)
        m = np.array([[1.0, math.exp(-x1)], [1.0, math.exp(-x2)]])
        big_a, big_b = np.linalg.solve(m, [math.exp(y1), math.exp(y2)])
        return math.log(big_b / big_a), math.log(big_a)
    # e^(x + iy) = e^(u + iw) (s + i): the direction of the line through the
    # two exponentials fixes w mod pi, the sign of its distance fixes it mod 2 pi
    z1, z2 = cmath.exp(complex(x1, y1)), cmath.exp(complex(x2, y2))
    w = cmath.phase(z1 - z2)
    height = (z1 * cmath.exp(-1j * w)).imag
    if height < 0:
        w, height = w + math.pi, -height
    w = math.remainder(w, 2.0 * math.pi)
    return math.log(height), w


# ---------------------------------------------------------------- the maps


def map_point(mid: MapId, p: Point) -> Point:
    x, y = float(p[0]), float(p[1])
    if mid is MapId.PARABOLA:
        return (x, y + x * x)
    if mid is MapId.LOG:
        if not y > 0:
            raise DomainError(f"log map needs y > 0, got {p}")
        return (x, math.log(y))
    if mid is MapId.SOFTPLUS:
        if not (x > 0 and y / x > 0):
            raise DomainError(f"softplus map needs x > 0 and y/x > 0, got {p}")
        return (math.log(x), math.log(y / x))
    if mid is MapId.NEG_EXP:
        if not x > 0:
            raise DomainError(f"negexp map needs x > 0, got {p}")
        return (math.log(x), y / x)
    if x == 1.0 and y == 0.0:
        raise DomainError("complexlog map is singular at (1, 0)")
    # +0.0 turns a negative zero into the principal branch, Im in (-pi, pi]
    z = cmath.log(complex(1.0 - x, y + 0.0))
    return (z.real, z.imag)


def map_point_inverse(mid: MapId, q: Point) -> Point:
    X, Y = float(q[0]), float(q[1])
    if mid is MapId.PARABOLA:
        return (X, Y - X * X)
    if mid is MapId.LOG:
        return (X, math.exp(Y))
    if mid is MapId.SOFTPLUS:
        x = math.exp(X)
        return (x, x * math.exp(Y))
    if mid is MapId.NEG_EXP:
        x = math.exp(X)
        return (x, Y * x)
    if not -math.pi < Y <= math.pi:
        raise DomainError(f"complexlog image has Im in (-pi, pi], got {Y}")
    w = cmath.exp(complex(X, Y))
    return (1.0 - w.real, w.imag)


def map_points(mid: MapId, xs, ys) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized map_point; the caller guarantees the domain."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if mid is MapId.PARABOLA:
        return xs, ys + xs * xs
    if mid is MapId.LOG:
        return xs, np.log(ys)
    if mid is MapId.SOFTPLUS:
        return np.log(xs), np.log(ys / xs)
    if mid is MapId.NEG_EXP:
        return np.log(xs), ys / xs
    z = np.log((1.0 - xs) + 1j * (ys + 0.0))
    return z.real, z.imag


def _horizontal(mid: MapId, line: Line) -> tuple[float, ...] | None:
    a, b = line
    if mid is MapId.LOG and a == 0 and b > 0:
        return (math.log(b),)
    if mid is MapId.SOFTPLUS and b == 0 and a > 0:
        return (math.log(a),)
    if mid is MapId.NEG_EXP and b == 0:
        return (float(a),)
    if mid is MapId.COMPLEX_LOG and a + b == 0:
        # 1 - t + i a (t - 1) = (1 - t)(1 - i a): two rays of constant argument
        return (-math.atan(a), math.remainder(math.pi - math.atan(a), 2.0 * math.pi))
    return None


def check_line(mid: MapId, line: Line) -> None:
    """Raise unless the map sends ``line`` to a translate of its base curve."""
    a, b = line
    if not (math.isfinite(a) and math.isfinite(b)):
        raise InadmissibleLineError("line coefficients must be finite")
    heights = _horizontal(mid, line)
    if heights is not None:
        raise HorizontalImageError(
            f"{mid.value} map sends y = {a:g}x + {b:g} to horizontal line(s) y = "
            + ", ".join(f"{h:.6g}" for h in heights),
            heights,
        )
    if mid is MapId.LOG and not a > 0:
        raise InadmissibleLineError("log map requires a>0")
    if mid in (MapId.SOFTPLUS, MapId.NEG_EXP):
        if not a > 0:
            raise InadmissibleLineError(f"{mid.value} map requires a>0")
        if not b > 0:
            raise InadmissibleLineError(f"{mid.value} map requires b>0")


def line_image_translate(mid: MapId, line: Line) -> CurveTranslate:
    line = Line(float(line[0]), float(line[1]))
    check_line(mid, line)
    a, b = line
    if mid is MapId.PARABOLA:
        return CurveTranslate(parabola(1.0), -a / 2.0, b - a * a / 4.0)
    if mid is MapId.LOG:
        return CurveTranslate(LOG_CURVE, -b / a, math.log(a))
    if mid is MapId.SOFTPLUS:
        return CurveTranslate(SOFTPLUS_NEG_CURVE, math.log(b / a), math.log(a))
    if mid is MapId.NEG_EXP:
        return CurveTranslate(NEG_EXP_CURVE, math.log(b), a)
    return _complex_log_translate(a, b)


def _complex_log_translate(a: float, b: float) -> CurveTranslate:
    # 1 - t + i(a t + b) = (ia - 1)(t - z0), z0 = (1 + ib)/(1 - ia);
    # t - z0 runs over the horizontal line Im = v0
    v0 = -(a + b) / (1.0 + a * a)
    branch = 0 if v0 > 0 else -1
    u = math.log(abs(v0)) + 0.5 * math.log1p(a * a)
    return CurveTranslate(COMPLEX_LOG_CURVE, u, cmath.phase(complex(-1.0, a)), branch)


def line_domain(mid: MapId, line: Line) -> tuple[float, float]:
    """Open interval of x-parameters t whose line point lies in the map domain."""
    a, b = line
    if mid is MapId.LOG:
        if a > 0:
            return (-b / a, math.inf)
        if a < 0:
            return (-math.inf, -b / a)
        return (-math.inf, math.inf) if b > 0 else (0.0, 0.0)
    if mid in (MapId.SOFTPLUS, MapId.NEG_EXP):
        lo = 0.0
        if mid is MapId.SOFTPLUS and a > 0:
            lo = max(lo, -b / a)
        return (lo, math.inf)
    return (-math.inf, math.inf)


def default_parameters(mid: MapId, line: Line, count: int) -> np.ndarray:
    """Deterministic t-samples inside the line's domain, kept to moderate image sizes."""
    lo, hi = line_domain(mid, line)
    if math.isinf(lo) and math.isinf(hi):
        return np.linspace(-10.0, 10.0, count)
    if math.isinf(hi):
        return lo + np.geomspace(1e-2, 1e2, count)
    if math.isinf(lo):
        return hi - np.geomspace(1e-2, 1e2, count)
    return np.linspace(lo, hi, count + 2)[1:-1]


def _check_range(mid: MapId, line: Line, t0: float, t1: float) -> None:
    lo, hi = line_domain(mid, line)
    if not (lo < t0 and t1 < hi):
        raise DomainError(f"parameter range [{t0:g}, {t1:g}] leaves the {mid.value} domain ({lo:g}, {hi:g})")
    if mid is MapId.COMPLEX_LOG and line.a + line.b == 0 and t0 <= 1.0 <= t1:
        raise DomainError("parameter range contains t = 1, the singular point (1, 0)")


def sample_line_image(mid: MapId, line: Line, t_range: tuple[float, float], count: int) -> list[Point]:
    if count < 2:
        raise ValueError("count must be at least 2")
    t0, t1 = sorted(map(float, t_range))
    line = Line(float(line[0]), float(line[1]))
    _check_range(mid, line, t0, t1)
    ts = np.linspace(t0, t1, count)
    return [map_point(mid, (t, line.at(t))) for t in ts.tolist()]


def translate_residuals(mid: MapId, line: Line, ts) -> np.ndarray:
    curve = line_image_translate(mid, line)
    ts = np.asarray(ts, dtype=float)
    X, Y = map_points(mid, ts, line.a * ts + line.b)
    return np.abs(curve.residual(X, Y))


def verify_translate(mid: MapId, line: Line, count: int = 100, tol: float = 1e-9) -> float:
    """Max base-curve residual over ``count`` image samples of ``line``.

    Raises VerificationError when it exceeds ``tol``.
    """
    line = Line(float(line[0]), float(line[1]))
    worst = float(np.max(translate_residuals(mid, line, default_parameters(mid, line, count))))
    if not worst <= tol:
        raise VerificationError(f"{mid.value} image of {line} is off its translate by {worst:.3e}", worst)
    return worst


def random_admissible_line(mid: MapId, rng: np.random.Generator) -> Line:
    """Seeded admissible line with coefficients of moderate size."""
    if mid in (MapId.LOG, MapId.SOFTPLUS, MapId.NEG_EXP):
        a, b = rng.uniform(0.1, 5.0, size=2)
        if mid is MapId.LOG:
            b = rng.uniform(-5.0, 5.0)
        return Line(float(a), float(b))
    while True:
        a, b = rng.uniform(-5.0, 5.0, size=2)
        if mid is MapId.PARABOLA or abs(a + b) > 0.1:
            return Line(float(a), float(b))


# ---------------------------------------------------------------- affine-action maps


@dataclass(frozen=True)
class ActionLineImage:
    """Curve translate for the image of a line under an action's phi.

    When ``swapped`` is set the image points must have their coordinates
    exchanged before testing against ``curve`` (the A6 curve y = e^x is the
    mirror of y = ln x in the diagonal).
    """

    curve: CurveTranslate
    swapped: bool = False

    def residual(self, p: Point) -> float:
        x, y = (p[1], p[0]) if self.swapped else p
        return float(self.curve.residual(x, y))


def action_line_image(case: ActionCase, line: Line) -> ActionLineImage:
    a, b = float(line[0]), float(line[1])
    if case is ActionCase.A5_IDENTITY:
        raise InadmissibleLineError("identity action: lines stay lines, no single base curve")
    if case is ActionCase.A4_PARABOLA:
        # (x, ax + b - x^2/2) = (x, -(x - a)^2/2 + a^2/2 + b)
        return ActionLineImage(CurveTranslate(parabola(-0.5), a, b + a * a / 2.0))
    if case is ActionCase.A6_LOG:
        if not a > 0:
            raise InadmissibleLineError("A6 requires a>0")
        return ActionLineImage(CurveTranslate(LOG_CURVE, b - a, -math.log(a)), swapped=True)
    if case in (ActionCase.A1, ActionCase.A2) and a == b:
        raise HorizontalImageError(f"{case.value}: y = c(x + 1) maps to a horizontal line", (
            math.log1p(a) if case is ActionCase.A1 else a,))
    if case is ActionCase.A1:
        if not (a > -1 and b > a):
            raise InadmissibleLineError("A1 requires a > -1 and b > a")
        return ActionLineImage(CurveTranslate(SOFTPLUS_NEG_CURVE, math.log((b - a) / (1.0 + a)), math.log1p(a)))
    if case is ActionCase.A2:
        if not b > a:
            raise InadmissibleLineError("A2 requires b > a")
        return ActionLineImage(CurveTranslate(NEG_EXP_CURVE, math.log(b - a), a))
    # A3: phi is the complex-log map restricted to x < 1; its singular
    # family is y = c(x - 1), the lines through (1, 0)
    if a + b == 0:
        raise HorizontalImageError("A3: lines through (1, 0) map to horizontal lines", _horizontal(MapId.COMPLEX_LOG, Line(a, b)))
    return ActionLineImage(_complex_log_translate(a, b))


def action_line_residual(case: ActionCase, line: Line, xs) -> float:
    """Max residual of phi-images of the line points with x in ``xs``."""
    image = action_line_image(case, line)
    phi = build_phi(case)
    return max(abs(image.residual(phi.forward((x, line[0] * x + line[1])))) for x in xs)
