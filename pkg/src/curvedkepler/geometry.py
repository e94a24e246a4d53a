"""Coordinate charts and metrics on H3 and S3.

Four charts are connected here:

* ambient quadric coordinates (x0..x3 on H3, y0..y3 on S3),
* geodesic spherical coordinates (chi, theta, phi),
* quasi-Cartesian ratios q_l = c_l/c0,
* generalized parabolic coordinates (t1, t2, phi).

On H3 the parabolic pair is real with 0 <= t1 < 1 and t2 <= 0,

    t1 = (1 + cos th) sinh(chi) e^{-chi},   t2 = -(1 - cos th) sinh(chi) e^{chi},

while on S3 it is genuinely complex,

    t1 = (1 + cos th) phi(chi),   t2 = (1 - cos th) conj(phi(chi)),
    phi(chi) = sin(chi) e^{i(pi/2 - chi)},

tied to the real sphere by the conjugation constraint
t1* = -t1 (1 - t2)/(1 - t1) (equivalently t2* = -t2 (1 - t1)/(1 - t2),
and t1 t2 real).  The closed-form parabolic metrics are diagonal,

    H3:  diag( (t1-t2)/(4 t1 (1-t1)^2),  (t2-t1)/(4 t2 (1-t2)^2),  -t1 t2 ),
    S3:  the negated first two entries and +t1 t2,

where the global sign of the S3 line element is a formal convention;
pullback comparisons treat it as such.  All maps are pure functions of
double-precision values; singular loci raise typed errors instead of
producing NaNs.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConstraintError,
    DomainError,
    IndeterminateCoordinateWarning,
    SingularLocusError,
)
from .report import ResidualReport, build_report
from .spaces import Model, SpaceTag

__all__ = [
    "AmbientPoint",
    "SphericalPoint",
    "ParabolicPoint",
    "QuasiCartesian",
    "PolarFactors",
    "FlatLimitTable",
    "spherical_to_parabolic",
    "parabolic_to_spherical",
    "parabolic_to_ambient",
    "ambient_to_parabolic",
    "ambient_to_quasi",
    "quasi_to_ambient",
    "antipodal",
    "metric_parabolic",
    "metric_pullback_check",
    "constraint_check",
    "flat_limit_coords",
    "polar_decompose",
]

# Minimum distance kept from chart singular loci when validating inputs.
SINGULAR_GUARD = 1e-3
# Tolerance of the S3 conjugation constraint on stored points.
CONSTRAINT_TOL = 1e-10
# Quadric residual allowance, scaled by max(1, c0^2) since the ambient
# components grow like e^chi on H3 and the cancellation error with them.
QUADRIC_TOL = 1e-12

_TWO_PI = 2.0 * math.pi


def _norm_phi(phi: float) -> float:
    phi = math.fmod(float(phi), _TWO_PI)
    return phi + _TWO_PI if phi < 0.0 else phi


@dataclass(frozen=True)
class AmbientPoint:
    """Quadric embedding coordinates; c0 is x0 (H3) or y0 (S3)."""

    c0: float
    c1: float
    c2: float
    c3: float

    def quadric(self, space: SpaceTag) -> float:
        s = self.c1 * self.c1 + self.c2 * self.c2 + self.c3 * self.c3
        if space.model is Model.H3:
            return self.c0 * self.c0 - s
        return self.c0 * self.c0 + s

    def validate_for(self, space: SpaceTag) -> None:
        scale = max(1.0, self.c0 * self.c0)
        if abs(self.quadric(space) - 1.0) > QUADRIC_TOL * scale:
            raise DomainError(f"point not on the {space.name} quadric: {self}")
        if space.model is Model.H3 and self.c0 < 1.0 - QUADRIC_TOL:
            raise DomainError("H3 points live on the upper sheet (x0 >= 1)")

    def radius(self) -> float:
        """Euclidean length of the spatial part (c1, c2, c3)."""
        return math.sqrt(self.c1 * self.c1 + self.c2 * self.c2 + self.c3 * self.c3)


@dataclass(frozen=True)
class SphericalPoint:
    """Geodesic polar coordinates; chi in [0, inf) on H3, [0, pi] on S3."""

    chi: float
    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (self.chi >= 0.0 and math.isfinite(self.chi)):
            raise DomainError(f"chi must be finite and >= 0, got {self.chi}")
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        object.__setattr__(self, "phi", _norm_phi(self.phi))


@dataclass(frozen=True)
class ParabolicPoint:
    """Generalized parabolic coordinates (t1, t2, phi)."""

    t1: complex
    t2: complex
    phi: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "t1", complex(self.t1))
        object.__setattr__(self, "t2", complex(self.t2))
        object.__setattr__(self, "phi", _norm_phi(self.phi))

    def validate_for(self, space: SpaceTag, tol: float = CONSTRAINT_TOL) -> None:
        if space.model is Model.H3:
            if abs(self.t1.imag) > tol or abs(self.t2.imag) > tol:
                raise DomainError("H3 parabolic coordinates must be real")
            if not -tol <= self.t1.real < 1.0 + tol:
                raise DomainError(f"H3 requires 0 <= t1 < 1, got {self.t1.real}")
            if self.t2.real > tol:
                raise DomainError(f"H3 requires t2 <= 0, got {self.t2.real}")
            return
        r1, r2 = _constraint_residuals(self.t1, self.t2)
        if max(r1, r2) > tol:
            raise ConstraintError(
                f"conjugation constraint violated by ({self.t1}, {self.t2}): "
                f"residuals {r1:.2e}, {r2:.2e}"
            )


@dataclass(frozen=True)
class QuasiCartesian:
    """Ratios q_l = c_l / c0 of the ambient coordinates."""

    q1: float
    q2: float
    q3: float

    @property
    def q(self) -> float:
        return math.sqrt(self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3)

    def validate_for(self, space: SpaceTag) -> None:
        if space.model is Model.H3 and self.q >= 1.0:
            raise DomainError("H3 quasi-Cartesian radius must satisfy q < 1")


@dataclass(frozen=True)
class PolarFactors:
    """S3 polar split t1 = a e^{i alpha}, t2 = b e^{-i alpha}."""

    a: float
    b: float
    alpha: float


# ---------------------------------------------------------------------------
# chart maps


def spherical_to_parabolic(space: SpaceTag, p: SphericalPoint) -> ParabolicPoint:
    """Map geodesic polar coordinates to the parabolic chart.

    phi passes through unchanged; the output satisfies the space's
    parabolic invariants by construction.
    """
    c = math.cos(p.theta)
    if space.model is Model.H3:
        if p.chi > 350.0:
            raise DomainError("chi too large: parabolic t2 would overflow")
        sh = math.sinh(p.chi)
        t1 = (1.0 + c) * sh * math.exp(-p.chi)
        t2 = -(1.0 - c) * sh * math.exp(p.chi)
        return ParabolicPoint(complex(t1, 0.0), complex(t2, 0.0), p.phi)
    if p.chi > math.pi:
        raise DomainError(f"S3 requires chi <= pi, got {p.chi}")
    w = math.sin(p.chi) * cmath.exp(1j * (math.pi / 2.0 - p.chi))
    return ParabolicPoint((1.0 + c) * w, (1.0 - c) * w.conjugate(), p.phi)


def parabolic_to_spherical(space: SpaceTag, p: ParabolicPoint) -> SphericalPoint:
    """Invert the parabolic chart back to (chi, theta, phi).

    At the coordinate origin t1 = t2 = 0 the polar angle is genuinely
    indeterminate; chi = 0 with theta = 0 is returned under a warning.
    """
    p.validate_for(space)
    t1, t2 = p.t1, p.t2
    if t1 == t2:
        if t1 == 0:
            warnings.warn(
                "theta is indeterminate at the chart origin",
                IndeterminateCoordinateWarning,
            )
            return SphericalPoint(0.0, 0.0, p.phi)
        raise SingularLocusError("t1 = t2 != 0 lies on the chart axis")
    cos_theta = (t1 + t2 - 2.0 * t1 * t2) / (t1 - t2)
    if abs(cos_theta.imag) > 1e-8:
        raise ConstraintError(f"cos(theta) came out non-real: {cos_theta}")
    theta = math.acos(min(1.0, max(-1.0, cos_theta.real)))
    if space.model is Model.H3:
        tanh_chi = ((t1 - t2) / (2.0 - t1 - t2)).real
        if not 0.0 <= tanh_chi < 1.0:
            raise DomainError(f"point outside the H3 chart: tanh(chi) = {tanh_chi}")
        return SphericalPoint(math.atanh(tanh_chi), theta, p.phi)
    # S3: arg t1 = pi/2 - chi (and arg t2 = chi - pi/2), so either
    # nonzero member of the pair recovers chi in [0, pi].
    if t1 != 0:
        chi = math.pi / 2.0 - cmath.phase(t1)
    else:
        chi = math.pi / 2.0 + cmath.phase(t2)
    chi = min(math.pi, max(0.0, chi))
    return SphericalPoint(chi, theta, p.phi)


def parabolic_to_ambient(space: SpaceTag, p: ParabolicPoint) -> AmbientPoint:
    """Map parabolic coordinates to the ambient quadric.

    The S3 square root has two branches differing by the simultaneous
    flip of (y0, y3); only one of them inverts the forward formulas, so
    both candidates are built and the one reproducing (t1, t2) is kept.
    """
    p.validate_for(space)
    t1, t2 = p.t1, p.t2
    if space.model is Model.H3:
        r1, r2 = 1.0 - t1.real, 1.0 - t2.real
        if r1 <= 0.0:
            raise SingularLocusError("t1 = 1 is the chart boundary")
        root = math.sqrt(r1 * r2)
        radial = math.sqrt(max(0.0, -(t1.real * t2.real)))
        x3 = (t1.real + t2.real - 2.0 * t1.real * t2.real) / (2.0 * root)
        x0 = (2.0 - t1.real - t2.real) / (2.0 * root)
        out = AmbientPoint(x0, radial * math.cos(p.phi), radial * math.sin(p.phi), x3)
        out.validate_for(space)
        return out
    prod = (1.0 - t1) * (1.0 - t2)
    if prod == 0:
        raise SingularLocusError("t = 1 is the chart boundary")
    root = cmath.sqrt(prod)
    # t1*t2 is nonnegative real on S3 points, so -t1*t2 would sit on the
    # sqrt branch cut and rounding noise could flip the sign of (y1, y2);
    # keep the argument on the positive axis instead.
    radial = 1j * cmath.sqrt(t1 * t2)
    best: AmbientPoint | None = None
    best_err = math.inf
    for sign in (1.0, -1.0):
        iy3 = (t1 + t2 - 2.0 * t1 * t2) / (2.0 * sign * root)
        y0 = (2.0 - t1 - t2) / (2.0 * sign * root)
        iy1 = radial * math.cos(p.phi)
        iy2 = radial * math.sin(p.phi)
        ys = (y0, -1j * iy1, -1j * iy2, -1j * iy3)
        imag = max(abs(v.imag) for v in ys)
        if imag > 1e-9:
            continue
        cand = AmbientPoint(*(v.real for v in ys))
        # keep the branch that inverts (2.14b)
        y = cand.radius()
        t1_rec = (y + cand.c3) * (y + 1j * cand.c0)
        t2_rec = (y - cand.c3) * (y - 1j * cand.c0)
        err = abs(t1_rec - t1) + abs(t2_rec - t2)
        if err < best_err:
            best, best_err = cand, err
    if best is None or best_err > 1e-8 * (1.0 + abs(t1) + abs(t2)):
        raise ConstraintError(
            f"({t1}, {t2}) does not correspond to a real S3 point"
        )
    best.validate_for(space)
    return best


def ambient_to_parabolic(space: SpaceTag, p: AmbientPoint) -> ParabolicPoint:
    """Invert the ambient parametrization of the parabolic chart."""
    p.validate_for(space)
    r = p.radius()
    if p.c1 == 0.0 and p.c2 == 0.0:
        warnings.warn(
            "phi is indeterminate on the c1 = c2 = 0 axis",
            IndeterminateCoordinateWarning,
        )
    phi = math.atan2(p.c2, p.c1)
    if space.model is Model.H3:
        if r == 0.0:
            return ParabolicPoint(0j, 0j, phi)
        t1 = (p.c3 + r) / (p.c0 + r)
        t2 = (p.c3 - r) / (p.c0 - r)
        return ParabolicPoint(complex(t1, 0.0), complex(t2, 0.0), phi)
    t1 = (r + p.c3) * (r + 1j * p.c0)
    t2 = (r - p.c3) * (r - 1j * p.c0)
    return ParabolicPoint(t1, t2, phi)


def ambient_to_quasi(space: SpaceTag, p: AmbientPoint) -> QuasiCartesian:
    """Project to q_l = c_l/c0; requires c0 != 0 (S3 equator excluded)."""
    p.validate_for(space)
    if p.c0 == 0.0:
        raise SingularLocusError("quasi-Cartesian chart undefined at c0 = 0")
    return QuasiCartesian(p.c1 / p.c0, p.c2 / p.c0, p.c3 / p.c0)


def quasi_to_ambient(space: SpaceTag, q: QuasiCartesian) -> AmbientPoint:
    """Lift q back to the quadric, taking the c0 > 0 sheet/hemisphere."""
    q.validate_for(space)
    s = q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3
    if space.model is Model.H3:
        c0 = 1.0 / math.sqrt(1.0 - s)
    else:
        c0 = 1.0 / math.sqrt(1.0 + s)
    return AmbientPoint(c0, q.q1 * c0, q.q2 * c0, q.q3 * c0)


def antipodal(p: AmbientPoint) -> AmbientPoint:
    """The S3 antipodal map (y0, y_k) -> (-y0, -y_k)."""
    return AmbientPoint(-p.c0, -p.c1, -p.c2, -p.c3)


# ---------------------------------------------------------------------------
# metrics


def metric_parabolic(space: SpaceTag, p: ParabolicPoint) -> np.ndarray:
    """Closed-form diagonal metric in (t1, t2, phi) order."""
    t1, t2 = p.t1, p.t2
    if t1 in (0, 1) or t2 in (0, 1) or t1 == t2:
        raise SingularLocusError(f"metric singular at ({t1}, {t2})")
    g11 = (t1 - t2) / (4.0 * t1 * (1.0 - t1) ** 2)
    g22 = (t2 - t1) / (4.0 * t2 * (1.0 - t2) ** 2)
    gpp = -t1 * t2
    if space.model is Model.S3:
        g11, g22, gpp = -g11, -g22, -gpp
    return np.diag(np.array([g11, g22, gpp], dtype=complex))


def _spherical_metric(space: SpaceTag, p: SphericalPoint) -> np.ndarray:
    f = math.sinh(p.chi) if space.model is Model.H3 else math.sin(p.chi)
    return np.diag([1.0, f * f, f * f * math.sin(p.theta) ** 2]).astype(complex)


def _chart_jacobian(space: SpaceTag, p: SphericalPoint, h: float) -> np.ndarray:
    """Central-difference Jacobian of (chi,theta,phi) -> (t1,t2,phi)."""
    jac = np.zeros((3, 3), dtype=complex)
    for col, (dchi, dth) in enumerate(((h, 0.0), (0.0, h))):
        plus = spherical_to_parabolic(
            space, SphericalPoint(p.chi + dchi, p.theta + dth, p.phi)
        )
        minus = spherical_to_parabolic(
            space, SphericalPoint(p.chi - dchi, p.theta - dth, p.phi)
        )
        jac[0, col] = (plus.t1 - minus.t1) / (2.0 * h)
        jac[1, col] = (plus.t2 - minus.t2) / (2.0 * h)
    jac[2, 2] = 1.0
    return jac


def metric_pullback_check(
    space: SpaceTag, p: SphericalPoint, h: float = 1e-5, tolerance: float = 1e-6
) -> ResidualReport:
    """Compare the closed-form parabolic metric against a numerical pullback.

    The chart Jacobian is differentiated numerically with Richardson
    extrapolation over (h, h/2); J^T G J must reproduce the spherical
    metric.  For S3 the comparison ignores the overall sign of the line
    element.  Entrywise residuals are measured against 1 + |reference|.
    """
    if p.chi <= 0.05 or not SINGULAR_GUARD < p.theta < math.pi - SINGULAR_GUARD:
        raise DomainError("pullback check needs chi > 0.05 and theta off the axis")
    center = spherical_to_parabolic(space, p)
    for t in (center.t1, center.t2):
        if min(abs(t), abs(1.0 - t)) < SINGULAR_GUARD:
            raise SingularLocusError("point too close to a parabolic boundary")
    g = metric_parabolic(space, center)
    ref = _spherical_metric(space, p)

    def deviation(jac: np.ndarray) -> np.ndarray:
        pull = jac.T @ g @ jac
        if space.model is Model.S3:
            d_plus = np.abs(pull - ref)
            d_minus = np.abs(-pull - ref)
            return d_minus if d_minus.max() < d_plus.max() else d_plus
        return np.abs(pull - ref)

    j_h = _chart_jacobian(space, p, h)
    j_half = _chart_jacobian(space, p, h / 2.0)
    dev_h = deviation(j_h)
    dev_half = deviation(j_half)
    dev_rich = deviation((4.0 * j_half - j_h) / 3.0)
    note = ""
    if dev_rich.max() > tolerance and dev_half.max() > 0.5 * dev_h.max():
        note = "nonconvergent: halving h did not reduce the deviation"
    return build_report(dev_rich.ravel(), np.abs(ref).ravel(), tolerance, note=note)


# ---------------------------------------------------------------------------
# constraint, flat limit, polar split


def _constraint_residuals(t1: complex, t2: complex) -> tuple[float, float]:
    if abs(1.0 - t1) < 1e-14:
        return math.inf, abs((t1 * t2).imag)
    return (
        abs(t1.conjugate() + t1 * (1.0 - t2) / (1.0 - t1)),
        abs((t1 * t2).imag),
    )


def constraint_check(p: ParabolicPoint, tolerance: float = 1e-12) -> ResidualReport:
    """Report the S3 conjugation-constraint residuals of a single point.

    Pure report: H3-real points simply show a nonzero residual since the
    constraint is an S3 statement.
    """
    r1, r2 = _constraint_residuals(p.t1, p.t2)
    return build_report(
        np.array([r1, r2]),
        np.array([0.0, 0.0]),
        tolerance,
        points=[(p.t1, p.t2, p.phi)] * 2,
    )


@dataclass(frozen=True)
class FlatLimitTable:
    """Convergence table of the flat-limit coordinate identities."""

    rho: tuple[float, ...]
    err_t1: tuple[float, ...]
    err_t2: tuple[float, ...]
    degenerate: bool

    def slope(self) -> float:
        """Least-squares slope of log10(max error) against log10(rho)."""
        errs = np.maximum(np.array(self.err_t1), np.array(self.err_t2))
        mask = errs > 0.0
        if mask.sum() < 2:
            return 0.0
        x = np.log10(np.array(self.rho)[mask])
        y = np.log10(errs[mask])
        return float(np.polyfit(x, y, 1)[0])


def flat_limit_coords(
    space: SpaceTag, rho_list: list[float], euclidean_point: tuple[float, float, float]
) -> FlatLimitTable:
    """Check that scaled parabolic coordinates approach their flat limits.

    A Euclidean point (x, y, z) with r = |(x,y,z)| placed at geodesic
    distance r/rho has rho*t1 -> z + r and rho*t2 -> z - r on H3, and the
    same limits for -i*rho*t on S3; errors decay as O(1/rho).
    """
    x, y, z = euclidean_point
    r = math.sqrt(x * x + y * y + z * z)
    rhos = [float(v) for v in rho_list]
    if any(b <= a for a, b in zip(rhos, rhos[1:])):
        raise DomainError("rho values must be strictly increasing")
    if r == 0.0:
        return FlatLimitTable(tuple(rhos), (0.0,) * len(rhos), (0.0,) * len(rhos), True)
    if rhos[0] < 10.0 * r:
        raise DomainError("need rho >= 10 * |point| for the asymptotic regime")
    theta = math.acos(z / r)
    phi = math.atan2(y, x)
    xi = z + r
    eta_neg = z - r
    unit = -1j if space.model is Model.S3 else 1.0
    e1, e2 = [], []
    for rho in rhos:
        q = spherical_to_parabolic(space, SphericalPoint(r / rho, theta, phi))
        e1.append(abs(unit * rho * q.t1 - xi))
        e2.append(abs(unit * rho * q.t2 - eta_neg))
    return FlatLimitTable(tuple(rhos), tuple(e1), tuple(e2), False)


def polar_decompose(p: ParabolicPoint, tolerance: float = CONSTRAINT_TOL) -> PolarFactors:
    """Split S3 parabolic coordinates as t1 = a e^{i alpha}, t2 = b e^{-i alpha}."""
    if p.t1 == 0 and p.t2 == 0:
        warnings.warn(
            "alpha is indeterminate at the chart origin",
            IndeterminateCoordinateWarning,
        )
        return PolarFactors(0.0, 0.0, 0.0)
    a, b = abs(p.t1), abs(p.t2)
    alpha = cmath.phase(p.t1) if p.t1 != 0 else -cmath.phase(p.t2)
    if p.t1 != 0 and p.t2 != 0:
        mismatch = abs(_wrap_angle(cmath.phase(p.t2) + alpha))
        if mismatch > math.sqrt(tolerance):
            raise ConstraintError(
                f"arg t2 != -arg t1 (mismatch {mismatch:.2e}); not an S3 point"
            )
    if not -math.pi / 2.0 - 1e-12 <= alpha <= math.pi / 2.0 + 1e-12:
        raise ConstraintError(f"alpha = {alpha} outside [-pi/2, pi/2]")
    return PolarFactors(a, b, alpha)


def _wrap_angle(a: float) -> float:
    return math.remainder(a, _TWO_PI)
