"""Chart and embedding tests: parabolic / spherical / ambient / quasi
coordinate maps, metric components, constraint closure, the antipodal
map, the flat limit, and polar factorization of S3 chart points.

Frozen oracle points were derived by hand from the defining chart
relations (see the exact values noted next to each).
"""

import cmath
import math
import warnings

import numpy as np
import pytest

from curvedkepler import (
    AmbientPoint,
    ConstraintError,
    DomainError,
    H3,
    IndeterminateCoordinateWarning,
    ParabolicPoint,
    QuasiCartesian,
    S3,
    SingularLocusError,
    SphericalPoint,
    ambient_to_parabolic,
    ambient_to_quasi,
    antipodal,
    chart_points,
    constraint_check,
    flat_limit_coords,
    make_rng,
    metric_parabolic,
    metric_pullback_check,
    parabolic_to_ambient,
    parabolic_to_spherical,
    polar_decompose,
    quasi_points,
    quasi_to_ambient,
    spherical_to_parabolic,
)

ROUNDTRIP_TOL = 1e-10
CONSTRAINT_TOL = 1e-12
METRIC_FORMULA_TOL = 1e-14
PULLBACK_TOL = 1e-6
ANTIPODAL_TOL = 1e-12
N_ROUNDTRIP = 2000

# (0.5, -1, phi) <-> (ln 2, arccos(1/3), phi): with chi = ln 2 one has
# sinh(chi) = 3/4, e^{-chi} = 1/2, e^{chi} = 2, so t1 = (4/3)(3/4)(1/2) = 1/2
# and t2 = -(2/3)(3/4)(2) = -1.
H3_EXACT_PARABOLIC = (0.5, -1.0)
H3_EXACT_SPHERICAL = (math.log(2.0), math.acos(1.0 / 3.0))

# chi = pi/4, theta = pi/3: w = sin(chi) e^{i(pi/2-chi)} = (1+i)/2, so
# t1 = (3/2) w = 0.75 + 0.75i and t2 = (1/2) conj(w) = 0.25 - 0.25i.
S3_EXACT_T1 = 0.75 + 0.75j
S3_EXACT_T2 = 0.25 - 0.25j


def test_h3_exact_chart_point_forward():
    chi, theta = H3_EXACT_SPHERICAL
    p = spherical_to_parabolic(H3, SphericalPoint(chi, theta, 0.3))
    assert abs(p.t1 - H3_EXACT_PARABOLIC[0]) < 1e-15
    assert abs(p.t2 - H3_EXACT_PARABOLIC[1]) < 2e-15
    assert p.phi == 0.3


def test_h3_exact_chart_point_inverse():
    s = parabolic_to_spherical(H3, ParabolicPoint(0.5, -1.0, 0.3))
    assert abs(s.chi - H3_EXACT_SPHERICAL[0]) < 1e-15
    assert abs(s.theta - H3_EXACT_SPHERICAL[1]) < 1e-15
    assert s.phi == 0.3


def test_s3_exact_chart_point():
    p = spherical_to_parabolic(S3, SphericalPoint(math.pi / 4.0, math.pi / 3.0, 0.7))
    assert abs(p.t1 - S3_EXACT_T1) < 2e-15
    assert abs(p.t2 - S3_EXACT_T2) < 2e-15


def test_h3_ambient_oracle():
    # (1.25, sqrt(1/2), 0, 0.25): r = sqrt(1/2 + 1/16) = 3/4, so
    # t1 = (1/4 + 3/4)/(5/4 + 3/4) = 1/2, t2 = (1/4 - 3/4)/(5/4 - 3/4) = -1.
    amb = AmbientPoint(1.25, math.sqrt(0.5), 0.0, 0.25)
    assert abs(amb.quadric(H3) - 1.0) < 1e-15
    q = ambient_to_parabolic(H3, amb)
    assert abs(q.t1 - 0.5) < 1e-15
    assert abs(q.t2 + 1.0) < 1e-12
    assert abs(q.phi) == 0.0


def test_h3_ambient_axis_point_warns():
    # c1 = c2 = 0 leaves phi indeterminate; t1 = 2/(sqrt(2)+1) = 2(sqrt(2)-1)
    with pytest.warns(IndeterminateCoordinateWarning):
        q = ambient_to_parabolic(H3, AmbientPoint(math.sqrt(2.0), 0.0, 0.0, 1.0))
    assert abs(q.t1 - (2.0 * math.sqrt(2.0) - 2.0)) < 4e-15
    assert q.t2 == 0.0


@pytest.mark.parametrize("space, seed", [(H3, 101), (S3, 102)])
def test_parabolic_spherical_roundtrip(space, seed):
    rng = make_rng(seed)
    pts = chart_points(space, rng, n=N_ROUNDTRIP)
    worst = 0.0
    for p in pts:
        s = parabolic_to_spherical(space, p)
        back = spherical_to_parabolic(space, s)
        worst = max(worst, abs(back.t1 - p.t1), abs(back.t2 - p.t2))
        assert abs(cmath.exp(1j * (back.phi - p.phi)) - 1.0) < ROUNDTRIP_TOL
    assert worst < ROUNDTRIP_TOL, worst


@pytest.mark.parametrize("space, seed", [(H3, 103), (S3, 104)])
def test_parabolic_ambient_roundtrip(space, seed):
    rng = make_rng(seed)
    pts = chart_points(space, rng, n=N_ROUNDTRIP // 4)
    for p in pts:
        amb = parabolic_to_ambient(space, p)
        assert abs(amb.quadric(space) - 1.0) < CONSTRAINT_TOL
        back = ambient_to_parabolic(space, amb)
        assert abs(back.t1 - p.t1) < ROUNDTRIP_TOL
        assert abs(back.t2 - p.t2) < ROUNDTRIP_TOL
        assert abs(cmath.exp(1j * (back.phi - p.phi)) - 1.0) < ROUNDTRIP_TOL


@pytest.mark.parametrize("space, seed", [(H3, 105), (S3, 106)])
def test_quasi_roundtrip(space, seed):
    rng = make_rng(seed)
    qs = quasi_points(space, rng, n=200)
    assert qs.shape == (3, 200)
    for i in range(qs.shape[1]):
        q = QuasiCartesian(qs[0, i], qs[1, i], qs[2, i])
        amb = quasi_to_ambient(space, q)
        assert abs(amb.quadric(space) - 1.0) < CONSTRAINT_TOL
        back = ambient_to_quasi(space, amb)
        assert abs(back.q1 - q.q1) < ROUNDTRIP_TOL
        assert abs(back.q2 - q.q2) < ROUNDTRIP_TOL
        assert abs(back.q3 - q.q3) < ROUNDTRIP_TOL


def test_quasi_h3_ball_bound():
    with pytest.raises(DomainError):
        quasi_to_ambient(H3, QuasiCartesian(1.2, 0.0, 0.0))
    # S3 has no such bound
    amb = quasi_to_ambient(S3, QuasiCartesian(0.9, 0.1, -1.2))
    assert abs(amb.quadric(S3) - 1.0) < 1e-14


def test_h3_lower_sheet_rejected():
    amb = parabolic_to_ambient(H3, ParabolicPoint(0.25, -0.5, 0.0))
    with pytest.raises(DomainError):
        ambient_to_parabolic(H3, antipodal(amb))


def test_off_quadric_rejected():
    with pytest.raises(DomainError):
        ambient_to_parabolic(H3, AmbientPoint(1.0, 1.0, 1.0, 1.0))


def test_antipodal_swaps_s3_factors():
    rng = make_rng(107)
    for p in chart_points(S3, rng, n=300):
        amb = parabolic_to_ambient(S3, p)
        q = ambient_to_parabolic(S3, antipodal(amb))
        assert abs(q.t1 - p.t2) < ANTIPODAL_TOL
        assert abs(q.t2 - p.t1) < ANTIPODAL_TOL
        assert abs(cmath.exp(1j * (q.phi - p.phi - math.pi)) - 1.0) < ANTIPODAL_TOL


def test_metric_frozen_values():
    g = metric_parabolic(H3, ParabolicPoint(0.5, -1.0, 0.3))
    assert np.allclose(np.diag(g), [3.0, 0.09375, 0.5], rtol=0, atol=1e-15)
    off = g - np.diag(np.diag(g))
    assert np.max(np.abs(off)) == 0.0


@pytest.mark.parametrize(
    "space, sign, seed",
    [(H3, 1.0, 108), (S3, -1.0, 109)],
)
def test_metric_component_formulas(space, sign, seed):
    """Diagonal components against the hand-derived closed forms.

    H3: g11 = (t1-t2)/(4 t1 (1-t1)^2), g22 = -(t1-t2)/(4 t2 (1-t2)^2),
        gpp = -t1 t2; the S3 chart carries the opposite overall sign.
    """
    rng = make_rng(seed)
    for p in chart_points(space, rng, n=100):
        g = metric_parabolic(space, p)
        d = p.t1 - p.t2
        want = np.array(
            [
                sign * d / (4.0 * p.t1 * (1.0 - p.t1) ** 2),
                -sign * d / (4.0 * p.t2 * (1.0 - p.t2) ** 2),
                -sign * p.t1 * p.t2,
            ]
        )
        scale = np.maximum(1.0, np.abs(want))
        assert np.max(np.abs(np.diag(g) - want) / scale) < METRIC_FORMULA_TOL


@pytest.mark.parametrize("space, seed", [(H3, 110), (S3, 111)])
def test_metric_pullback_against_embedding(space, seed):
    rng = make_rng(seed)
    for _ in range(10):
        s = SphericalPoint(
            float(rng.uniform(0.3, 1.4)),
            float(rng.uniform(0.3, math.pi - 0.3)),
            float(rng.uniform(0.0, 2.0 * math.pi)),
        )
        report = metric_pullback_check(space, s)
        assert report.passed, report
        assert report.max_rel < PULLBACK_TOL


def test_constraint_closure_on_s3_samples():
    rng = make_rng(112)
    for p in chart_points(S3, rng, n=400):
        report = constraint_check(p)
        assert report.passed
        assert report.max_abs < CONSTRAINT_TOL


def test_constraint_detects_corruption():
    p = ParabolicPoint(S3_EXACT_T1, S3_EXACT_T2 + 0.01, 0.0)
    assert not constraint_check(p).passed
    # H3 points genuinely do not satisfy the S3 closure
    assert not constraint_check(ParabolicPoint(0.25, -0.5, 0.0)).passed


def test_origin_is_flagged_indeterminate():
    with pytest.warns(IndeterminateCoordinateWarning):
        s = parabolic_to_spherical(S3, ParabolicPoint(0.0, 0.0, 0.7))
    assert s.chi == 0.0 and s.theta == 0.0 and s.phi == 0.7


def test_chart_axis_is_singular():
    # (iy, iy) satisfies the algebraic constraint but sits on the t1 = t2 axis
    with pytest.raises(SingularLocusError):
        parabolic_to_spherical(S3, ParabolicPoint(0.3j, 0.3j, 0.0))


def test_spherical_range_validation():
    with pytest.raises(DomainError):
        spherical_to_parabolic(S3, SphericalPoint(math.pi + 0.2, 1.0, 0.0))
    with pytest.raises(DomainError):
        spherical_to_parabolic(H3, SphericalPoint(400.0, 1.0, 0.0))


def test_chart_point_sampler_respects_guards():
    rng = make_rng(113)
    for space in (H3, S3):
        for p in chart_points(space, rng, n=500):
            for t in (p.t1, p.t2):
                assert abs(t) > 1e-4
                assert abs(1.0 - t) > 1e-4
            assert abs(p.t1 - p.t2) > 1e-4
            p.validate_for(space)


def test_flat_limit_slope_is_minus_one():
    rhos = [1e2, 1e3, 1e4]
    for space in (H3, S3):
        table = flat_limit_coords(space, rhos, (0.3, 0.2, 0.4))
        assert not table.degenerate
        for errs in (table.err_t1, table.err_t2):
            slope = np.polyfit(np.log(rhos), np.log(errs), 1)[0]
            assert abs(slope + 1.0) < 0.1, (space, slope)


def test_flat_limit_validation():
    table = flat_limit_coords(H3, [100.0, 1000.0], (0.0, 0.0, 0.0))
    assert table.degenerate
    with pytest.raises(DomainError):
        flat_limit_coords(H3, [1000.0, 100.0], (0.3, 0.2, 0.4))
    with pytest.raises(DomainError):
        flat_limit_coords(H3, [1.0, 10.0], (0.3, 0.2, 0.4))


def test_polar_decompose_frozen_and_roundtrip():
    pf = polar_decompose(ParabolicPoint(S3_EXACT_T1, S3_EXACT_T2, 0.0))
    assert abs(pf.a - 0.75 * math.sqrt(2.0)) < 1e-15
    assert abs(pf.b - 0.25 * math.sqrt(2.0)) < 1e-15
    assert abs(pf.alpha - math.pi / 4.0) < 1e-15
    rng = make_rng(114)
    for p in chart_points(S3, rng, n=200):
        pf = polar_decompose(p)
        assert pf.a >= 0.0 and pf.b >= 0.0
        assert abs(pf.a * cmath.exp(1j * pf.alpha) - p.t1) < 1e-12
        assert abs(pf.b * cmath.exp(-1j * pf.alpha) - p.t2) < 1e-12


def test_polar_decompose_rejects_non_s3_points():
    with pytest.raises(ConstraintError):
        polar_decompose(ParabolicPoint(0.5, -1.0, 0.3))
