import math

import numpy as np
import pytest

from translines.actions import ActionCase, build_phi
from translines.curves import (
    COMPLEX_LOG_CURVE,
    LOG_CURVE,
    NEG_EXP_CURVE,
    CurveFamily,
    CurveTranslate,
    Line,
    MapId,
    action_line_image,
    action_line_residual,
    default_parameters,
    line_image_translate,
    map_point,
    map_point_inverse,
    parabola,
    random_admissible_line,
    recover_offset,
    sample_line_image,
    translate_residuals,
    verify_translate,
)
from translines.errors import DomainError, HorizontalImageError, InadmissibleLineError, VerificationError

MAPS = list(MapId)


def test_map_point_examples():
    assert map_point(MapId.PARABOLA, (3, 1)) == (3, 10)
    assert map_point(MapId.LOG, (5, 1)) == (5, 0)
    assert map_point(MapId.COMPLEX_LOG, (0, 1)) == pytest.approx((0.5 * math.log(2), math.pi / 4), abs=1e-15)
    assert map_point(MapId.SOFTPLUS, (math.e, math.e ** 3)) == pytest.approx((1, 2))
    assert map_point(MapId.NEG_EXP, (math.e, 3 * math.e)) == pytest.approx((1, 3))


def test_complex_log_principal_branch():
    # negative real axis of 1 - x + iy, with either sign of zero
    assert map_point(MapId.COMPLEX_LOG, (2, 0.0))[1] == math.pi
    assert map_point(MapId.COMPLEX_LOG, (2, -0.0))[1] == math.pi


@pytest.mark.parametrize("mid,p", [
    (MapId.LOG, (1, 0)),
    (MapId.SOFTPLUS, (-1, -1)),
    (MapId.SOFTPLUS, (1, -1)),
    (MapId.NEG_EXP, (0, 1)),
    (MapId.COMPLEX_LOG, (1, 0)),
])
def test_map_point_domain(mid, p):
    with pytest.raises(DomainError):
        map_point(mid, p)


def test_inverse_examples():
    assert map_point_inverse(MapId.PARABOLA, (3, 10)) == (3, 1)
    assert map_point_inverse(MapId.LOG, (5, 0)) == (5, 1)
    assert map_point_inverse(MapId.COMPLEX_LOG, (0.5 * math.log(2), math.pi / 4)) == pytest.approx((0, 1), abs=1e-15)


@pytest.mark.parametrize("mid", MAPS)
def test_inverse_round_trip(mid):
    rng = np.random.default_rng(3)
    for x, y in rng.uniform(0.05, 5, size=(500, 2)).tolist():
        q = map_point(mid, (x, y))
        back = map_point_inverse(mid, q)
        assert back == pytest.approx((x, y), rel=1e-10, abs=1e-12)
        assert map_point(mid, back) == pytest.approx(q, rel=1e-10, abs=1e-12)


def test_translate_examples():
    assert line_image_translate(MapId.LOG, (2, 4)) == CurveTranslate(LOG_CURVE, -2.0, math.log(2))
    assert line_image_translate(MapId.PARABOLA, (2, 1)) == CurveTranslate(parabola(1), -1.0, 0.0)
    c = line_image_translate(MapId.NEG_EXP, (1, math.e))
    assert c.family == NEG_EXP_CURVE and (c.u, c.v) == pytest.approx((1, 1))


def test_complex_log_offset():
    c = line_image_translate(MapId.COMPLEX_LOG, (1, 1))
    # v0 = -(a + b)/(1 + a^2) = -1, so the lower branch; arg(-1 + i) = 3 pi / 4
    assert c.family == COMPLEX_LOG_CURVE
    assert c.branch == -1
    assert (c.u, c.v) == pytest.approx((0.5 * math.log(2), 3 * math.pi / 4))
    assert line_image_translate(MapId.COMPLEX_LOG, (0, -1)).branch == 0


@pytest.mark.parametrize("mid,line,msg", [
    (MapId.LOG, (-1, 1), "a>0"),
    (MapId.SOFTPLUS, (1, -2), "b>0"),
    (MapId.NEG_EXP, (-1, 2), "a>0"),
])
def test_inadmissible(mid, line, msg):
    with pytest.raises(InadmissibleLineError, match=msg):
        line_image_translate(mid, line)


@pytest.mark.parametrize("mid,line,heights", [
    (MapId.LOG, (0, math.e), (1.0,)),
    (MapId.SOFTPLUS, (2, 0), (math.log(2),)),
    (MapId.NEG_EXP, (3, 0), (3.0,)),
    (MapId.COMPLEX_LOG, (1, -1), (-math.pi / 4, 3 * math.pi / 4)),
])
def test_horizontal_images(mid, line, heights):
    with pytest.raises(HorizontalImageError) as info:
        line_image_translate(mid, line)
    assert info.value.heights == pytest.approx(heights)
    # and the samples really are horizontal
    lo = 0.5 if mid is not MapId.COMPLEX_LOG else 1.5
    ys = {round(p[1], 12) for p in sample_line_image(mid, Line(*line), (lo, lo + 3), 7)}
    assert len(ys) == 1 and ys.pop() == pytest.approx(heights[-1] if mid is MapId.COMPLEX_LOG else heights[0])


def test_sample_examples():
    assert sample_line_image(MapId.PARABOLA, (0, 0), (-1, 1), 3) == [(-1, 1), (0, 0), (1, 1)]
    pts = sample_line_image(MapId.LOG, (1, 0), (1, math.e), 2)
    assert pts == pytest.approx([(1, 0), (math.e, 1)])
    pts = sample_line_image(MapId.COMPLEX_LOG, (0, 1), (0, 1), 2)
    assert pts[0] == pytest.approx((0.5 * math.log(2), math.pi / 4))


def test_sample_range_errors():
    with pytest.raises(DomainError):
        sample_line_image(MapId.LOG, (1, 0), (-1, 1), 5)
    with pytest.raises(DomainError):
        sample_line_image(MapId.COMPLEX_LOG, (2, -2), (0, 2), 4)  # passes (1, 0) at t = 1
    sample_line_image(MapId.COMPLEX_LOG, (2, -2), (1.5, 2), 4)


def test_verify_examples():
    assert verify_translate(MapId.LOG, (2, 4), 100) <= 1e-12
    assert verify_translate(MapId.COMPLEX_LOG, (1, 1), 100) <= 1e-9
    for line in [(0, 0), (-3, 2.5), (7, -1)]:
        assert verify_translate(MapId.PARABOLA, line, 100) <= 1e-12


def test_verify_detects_wrong_translate(monkeypatch):
    import translines.curves as curves

    real = curves.line_image_translate
    monkeypatch.setattr(curves, "line_image_translate",
                        lambda mid, line: CurveTranslate(LOG_CURVE, real(mid, line).u, real(mid, line).v + 1e-6))
    with pytest.raises(VerificationError):
        curves.verify_translate(MapId.LOG, (2, 4), 50, 1e-9)


@pytest.mark.parametrize("mid", MAPS)
def test_translate_property_random_lines(mid):
    rng = np.random.default_rng(17)
    for _ in range(100):
        assert verify_translate(mid, random_admissible_line(mid, rng), 100, 1e-9) <= 1e-9


@pytest.mark.parametrize("mid", MAPS)
def test_offset_unique(mid):
    rng = np.random.default_rng(4)
    for _ in range(50):
        line = random_admissible_line(mid, rng)
        c = line_image_translate(mid, line)
        ts = default_parameters(mid, line, 40)
        i, j = sorted(rng.choice(40, size=2, replace=False))
        q1, q2 = (map_point(mid, (t, line.at(t))) for t in (ts[i], ts[j]))
        u, w = recover_offset(c.family, q1, q2)
        assert u == pytest.approx(c.u, abs=1e-8)
        dw = w - c.vertical_shift
        if mid is MapId.COMPLEX_LOG:
            dw = math.remainder(dw, 2 * math.pi)
        assert abs(dw) <= 1e-8


def _incidence_pairs(mid, rng, count):
    out = []
    while len(out) < count:
        line = random_admissible_line(mid, rng)
        t = float(default_parameters(mid, line, 30)[rng.integers(30)])
        out.append((line, t))
    return out


@pytest.mark.parametrize("mid", MAPS)
def test_incidence_preservation(mid):
    rng = np.random.default_rng(23)
    for line, t in _incidence_pairs(mid, rng, 1000):
        c = line_image_translate(mid, line)
        q = map_point(mid, (t, line.at(t)))
        assert abs(c.residual(*q)) <= 1e-9
    margin = math.inf
    for line, t in _incidence_pairs(mid, rng, 1000):
        c = line_image_translate(mid, line)
        # move off the line by a random vertical amount, staying in the domain
        dy = rng.uniform(0.01, 1.0) * (1 if mid is not MapId.LOG or rng.random() < 0.5 else 1)
        q = map_point(mid, (t, line.at(t) + dy))
        margin = min(margin, abs(c.residual(*q)))
    assert margin > 1e-6


def test_complex_log_base_identity():
    rng = np.random.default_rng(8)
    for _ in range(100):
        line = random_admissible_line(MapId.COMPLEX_LOG, rng)
        c = line_image_translate(MapId.COMPLEX_LOG, line)
        for t in default_parameters(MapId.COMPLEX_LOG, line, 50):
            x, y = map_point(MapId.COMPLEX_LOG, (t, line.at(t)))
            assert math.exp(x - c.u) * math.sin(y - c.vertical_shift) == pytest.approx(1.0, abs=1e-9)


def test_family_parse_round_trip():
    for fam in [parabola(1), parabola(-0.5), LOG_CURVE, COMPLEX_LOG_CURVE]:
        assert CurveFamily.parse(str(fam)) == fam
    with pytest.raises(ValueError):
        CurveFamily.parse("Circle")


# ---------- consistency with the affine actions ------------------------------

@pytest.mark.parametrize("case,family", [
    (ActionCase.A1, "SoftplusNegCurve"),
    (ActionCase.A2, "NegExpCurve"),
    (ActionCase.A3_ROTATIONS, "ComplexLogCurve"),
    (ActionCase.A4_PARABOLA, "Parabola"),
    (ActionCase.A6_LOG, "LogCurve"),
])
def test_action_images_use_the_same_families(case, family):
    rng = np.random.default_rng(31)
    for _ in range(100):
        a = rng.uniform(0.1, 3)
        b = a + rng.uniform(0.1, 3)
        image = action_line_image(case, (a, b))
        assert image.curve.family.name == family
        xs = rng.uniform(-0.9, 0.9, 20)
        assert action_line_residual(case, (a, b), xs) <= 1e-9


def test_a4_image_is_downward_parabola():
    image = action_line_image(ActionCase.A4_PARABOLA, (1, 0))
    assert image.curve.family == parabola(-0.5)


def test_a3_agrees_with_complex_log_map():
    phi = build_phi(ActionCase.A3_ROTATIONS)
    for p in [(0.2, 0.3), (-3, -1), (0.99, -5)]:
        assert phi.forward(p) == pytest.approx(map_point(MapId.COMPLEX_LOG, p))


@pytest.mark.parametrize("case,line", [
    (ActionCase.A1, (2, 2)),
    (ActionCase.A2, (-0.5, -0.5)),
    (ActionCase.A3_ROTATIONS, (0.7, -0.7)),
])
def test_action_horizontal_families(case, line):
    with pytest.raises(HorizontalImageError):
        action_line_image(case, line)
    phi = build_phi(case)
    ys = {round(phi.forward((x, line[0] * x + line[1]))[1], 12) for x in (-0.5, 0.0, 0.5)}
    assert len(ys) == 1


def test_identity_action_has_no_curve():
    with pytest.raises(InadmissibleLineError):
        action_line_image(ActionCase.A5_IDENTITY, (1, 1))


def test_residuals_vectorized():
    line = Line(2.0, 4.0)
    r = translate_residuals(MapId.LOG, line, [-1.5, 0.0, 3.0])
    assert r.shape == (3,) and r.max() <= 1e-14
