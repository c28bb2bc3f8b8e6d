"""The six affine actions of the translation group on the plane, their
generators, and the maps phi that conjugate translations into them."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .errors import DomainError

Point = tuple[float, float]


class ActionCase(enum.Enum):
    A1 = "A1"
    A2 = "A2"
    A3_ROTATIONS = "A3"
    A4_PARABOLA = "A4"
    A5_IDENTITY = "A5"
    A6_LOG = "A6"

    @classmethod
    def parse(cls, text: str) -> "ActionCase":
        key = text.strip().upper()
        for case in cls:
            if key in (case.value, case.name):
                return case
        raise ValueError(f"unknown action case {text!r}")


class TranslationVec(NamedTuple):
    s: float
    t: float

    def __add__(self, other):  # vector addition, not tuple concatenation
        return TranslationVec(self.s + other[0], self.t + other[1])


def action_matrix(case: ActionCase, v) -> np.ndarray:
    s, t = float(v[0]), float(v[1])
    if case is ActionCase.A5_IDENTITY:
        rows = [[1.0, 0.0, s], [0.0, 1.0, t]]
    elif case is ActionCase.A4_PARABOLA:
        rows = [[1.0, 0.0, s], [s, 1.0, t + s * s / 2.0]]
    elif case is ActionCase.A6_LOG:
        es = math.exp(s)
        rows = [[es, 0.0, es - 1.0], [0.0, 1.0, t]]
    elif case is ActionCase.A1:
        es, et = math.exp(s), math.exp(t)
        rows = [[es, 0.0, es - 1.0], [es * (et - 1.0), es * et, es * (et - 1.0)]]
    elif case is ActionCase.A2:
        es = math.exp(s)
        rows = [[es, 0.0, es - 1.0], [es * t, es, es * t]]
    elif case is ActionCase.A3_ROTATIONS:
        # Multiplication of 1 - x + iy by e^(s + it). The rotation block is the
        # transpose of the commonly printed one; only this sign choice is a
        # homomorphism compatible with the last column (1 - e^s cos t, e^s sin t).
        ec, es_ = math.exp(s) * math.cos(t), math.exp(s) * math.sin(t)
        rows = [[ec, es_, 1.0 - ec], [-es_, ec, es_]]
    else:  # pragma: no cover
        raise ValueError(case)
    return np.array(rows + [[0.0, 0.0, 1.0]])


def action_apply(case: ActionCase, v, p: Point) -> Point:
    m = action_matrix(case, v)
    x, y = p
    return (
        float(m[0, 0] * x + m[0, 1] * y + m[0, 2]),
        float(m[1, 0] * x + m[1, 1] * y + m[1, 2]),
    )


def _e(i: int, j: int) -> np.ndarray:
    m = np.zeros((3, 3))
    m[i - 1, j - 1] = 1.0
    return m


def generators(case: ActionCase) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form derivatives dA/ds and dA/dt at (0, 0)."""
    e = _e
    if case is ActionCase.A5_IDENTITY:
        return e(1, 3), e(2, 3)
    if case is ActionCase.A4_PARABOLA:
        return e(1, 3) + e(2, 1), e(2, 3)
    if case is ActionCase.A6_LOG:
        return e(1, 1) + e(1, 3), e(2, 3)
    if case is ActionCase.A1:
        return e(1, 1) + e(1, 3) + e(2, 2), e(2, 1) + e(2, 2) + e(2, 3)
    if case is ActionCase.A2:
        return e(1, 1) + e(1, 3) + e(2, 2), e(2, 1) + e(2, 3)
    if case is ActionCase.A3_ROTATIONS:
        return e(1, 1) + e(2, 2) - e(1, 3), e(1, 2) - e(2, 1) + e(2, 3)
    raise ValueError(case)  # pragma: no cover


def generator_commutator_norm(case: ActionCase) -> float:
    xs, xt = generators(case)
    c = xs @ xt - xt @ xs
    c -= np.trace(c) / 3.0 * np.eye(3)
    return float(np.linalg.norm(c))


def phi_inverse_from_action(case: ActionCase, v) -> Point:
    """phi^-1(s, t) = a(s, t)(0, 0): the first two entries of the last column."""
    return action_apply(case, v, (0.0, 0.0))


@dataclass(frozen=True)
class PlanarMap:
    case: ActionCase
    forward_fn: Callable[[float, float], Point]
    inverse_fn: Callable[[float, float], Point]
    in_domain: Callable[[float, float], bool]
    in_inverse_domain: Callable[[float, float], bool]

    def forward(self, p: Point) -> Point:
        if not self.in_domain(*p):
            raise DomainError(f"{self.case.value}: point {p} outside the domain of phi")
        return self.forward_fn(*p)

    def inverse(self, q: Point) -> Point:
        if not self.in_inverse_domain(*q):
            raise DomainError(f"{self.case.value}: point {q} outside the domain of phi^-1")
        return self.inverse_fn(*q)


def _always(x, y):
    return True


def build_phi(case: ActionCase) -> PlanarMap:
    """phi obtained by inverting (s, t) -> a(s, t)(0, 0) in closed form."""

    def inv(s, t):
        return phi_inverse_from_action(case, (s, t))

    if case is ActionCase.A5_IDENTITY:
        return PlanarMap(case, lambda x, y: (x, y), inv, _always, _always)
    if case is ActionCase.A4_PARABOLA:
        return PlanarMap(case, lambda x, y: (x, y - x * x / 2.0), inv, _always, _always)
    if case is ActionCase.A6_LOG:
        return PlanarMap(case, lambda x, y: (math.log1p(x), y), inv, lambda x, y: x > -1.0, _always)
    if case is ActionCase.A1:
        return PlanarMap(
            case,
            lambda x, y: (math.log1p(x), math.log1p(y / (x + 1.0))),
            inv,
            lambda x, y: x > -1.0 and 1.0 + y / (x + 1.0) > 0.0,
            _always,
        )
    if case is ActionCase.A2:
        return PlanarMap(case, lambda x, y: (math.log1p(x), y / (x + 1.0)), inv, lambda x, y: x > -1.0, _always)
    if case is ActionCase.A3_ROTATIONS:
        return PlanarMap(
            case,
            lambda x, y: (0.5 * math.log((1.0 - x) ** 2 + y * y), math.atan(y / (1.0 - x))),
            inv,
            lambda x, y: x < 1.0,
            lambda s, t: abs(t) < math.pi / 2.0,
        )
    raise ValueError(case)  # pragma: no cover


def conjugation_residuals(case: ActionCase, samples: Iterable[tuple[Point, TranslationVec]]) -> np.ndarray:
    """Per-sample |phi^-1(phi(p) + v) - a(v) p|.

    Every sample must be valid: p in the domain of phi and phi(p) + v in the
    domain of phi^-1. Invalid samples raise DomainError rather than being skipped.
    """
    phi = build_phi(case)
    out = []
    for p, v in samples:
        s, t = phi.forward(p)
        lhs = phi.inverse((s + v[0], t + v[1]))
        rhs = action_apply(case, v, p)
        out.append(math.hypot(lhs[0] - rhs[0], lhs[1] - rhs[1]))
    return np.array(out)


def verify_conjugation(case: ActionCase, samples) -> float:
    res = conjugation_residuals(case, samples)
    return float(res.max()) if res.size else 0.0


def homomorphism_residuals(case: ActionCase, samples: Iterable[tuple]) -> np.ndarray:
    """Per-sample |A(v)A(w) - A(v+w)|_F / scale, scale the largest entry involved."""
    out = []
    for v, w in samples:
        av, aw = action_matrix(case, v), action_matrix(case, w)
        avw = action_matrix(case, (v[0] + w[0], v[1] + w[1]))
        scale = max(1.0, float(np.max(np.abs(av))), float(np.max(np.abs(aw))), float(np.max(np.abs(avw))))
        out.append(float(np.linalg.norm(av @ aw - avw)) / scale)
    return np.array(out)


def verify_homomorphism(case: ActionCase, samples) -> float:
    res = homomorphism_residuals(case, samples)
    return float(res.max()) if res.size else 0.0


def homomorphism_samples(rng: np.random.Generator, count: int, box: float = 2.0):
    vals = rng.uniform(-box, box, size=(count, 4))
    return [(TranslationVec(a, b), TranslationVec(c, d)) for a, b, c, d in vals.tolist()]


def conjugation_samples(case: ActionCase, rng: np.random.Generator, count: int):
    """Seeded valid samples: points and translations in (-0.5, 0.5)^2.

    On this box every case stays inside its domains; for A3 the angle of
    phi(p) + v stays within (-pi/2, pi/2) because |atan(y/(1-x))| <= pi/4.
    """
    vals = rng.uniform(-0.5, 0.5, size=(count, 4))
    return [((x, y), TranslationVec(s, t)) for x, y, s, t in vals.tolist()]
