"""Differential-operator and symmetry-algebra verification.

Everything here measures how well a constructed bound state satisfies
the equations that define it, and reports the outcome as a
:class:`~curvedkepler.report.ResidualReport`:

* ``ode_residual`` — each separated factor against its second-order ODE,
  using exact hypergeometric derivatives (no finite differences).
* ``hamiltonian_residual`` — the full Hamiltonian in parabolic
  coordinates against the energy eigenvalue.
* ``b_operator_residual`` — the second separation operator (the one
  diagonal with eigenvalue k1+k2), plus the per-point identity tying its
  scalar coefficient to cos(theta) through the ambient chart.
* ``runge_lenz_check`` — the operator identity B = A3 + L^2 (H3) /
  iB = A3 + iL^2 (S3), with the left side built from nested central
  finite differences in quasi-Cartesian coordinates.
* ``momentum_commutators`` — the so(3,1)/so(4) commutation relations as
  exact polynomial-coefficient identities.
"""

from __future__ import annotations

import math
from dataclasses import replace
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, ParameterError
from .geometry import ParabolicPoint, ambient_to_quasi, parabolic_to_ambient
from .kepler import SeparatedFactor, StateParams, factor, wavefunction_values
from .report import ResidualReport, build_report
from .spaces import Model, SpaceTag
from .specfun import hyp2f1, hyp2f1_derivative, pow_arr

ODE_TOL = 1e-10
HAMILTONIAN_TOL = 1e-9
B_OPERATOR_TOL = 1e-9
RUNGE_LENZ_TOL = 1e-4
COMMUTATOR_TOL = 1e-12
COUPLING_IDENTITY_TOL = 1e-12

# points closer than this to a chart singularity are skipped (and
# counted) rather than evaluated; samplers keep a wider margin (1e-3).
SINGULAR_SKIP = 1e-6

_DEFAULT_FD_STEP = 5e-4


# ---------------------------------------------------------------------------
# exact factor derivatives


def factor_derivatives(fac: SeparatedFactor, t) -> tuple:
    """(f, f', f'') of f(t) = t^a (1-t)^b F(alpha, beta; gamma; t).

    Product rule with exact hypergeometric derivatives throughout; no
    finite differences.  Scalar in, scalars out; array in, arrays out.
    """
    scalar = np.isscalar(t) or isinstance(t, complex)
    tt = np.atleast_1d(np.asarray(t, dtype=complex))
    a, b = fac.a, fac.b
    if a < 2.0 and np.any(tt == 0):
        raise DomainError("derivatives need t != 0 when the t^a power is active")
    if b != 0 and np.any(tt == 1):
        raise DomainError("derivatives need t != 1 when the (1-t)^b power is active")

    F = hyp2f1(fac.params, tt)
    F1 = hyp2f1_derivative(fac.params, tt, 1)
    F2 = hyp2f1_derivative(fac.params, tt, 2)

    one = np.ones_like(tt)
    zero = np.zeros_like(tt)
    if a == 0.0:
        u, u1, u2 = one, zero, zero
    else:
        p2 = pow_arr(tt, a - 2.0)
        u = p2 * tt * tt
        u1 = a * p2 * tt
        u2 = a * (a - 1.0) * p2
    if b == 0:
        v, v1, v2 = one, zero, zero
    else:
        q2 = pow_arr(1.0 - tt, b - 2.0)
        v = q2 * (1.0 - tt) * (1.0 - tt)
        v1 = -b * q2 * (1.0 - tt)
        v2 = b * (b - 1.0) * q2

    f = u * v * F
    f1 = u1 * v * F + u * v1 * F + u * v * F1
    f2 = (
        u2 * v * F
        + u * v2 * F
        + u * v * F2
        + 2.0 * (u1 * v1 * F + u1 * v * F1 + u * v1 * F1)
    )
    if scalar:
        return complex(f[0]), complex(f1[0]), complex(f2[0])
    shape = np.shape(t)
    return f.reshape(shape), f1.reshape(shape), f2.reshape(shape)


# ---------------------------------------------------------------------------
# separated ODE residual


def ode_residual(
    state: StateParams,
    which: int,
    sample,
    tolerance: float = ODE_TOL,
) -> ResidualReport:
    """Residual of one separated factor in its defining ODE.

    (1-t) d/dt[t(1-t) f'] + (c t - m^2/(4t) + k_i) f = 0, where c is the
    energy/coupling combination of the factor's variable.  The relative
    scale is 1 + |k_i f|.
    """
    if which not in (1, 2):
        raise ParameterError(f"which must be 1 or 2, got {which}")
    t = np.atleast_1d(np.asarray(sample, dtype=complex))
    if np.any(np.abs(t) < SINGULAR_SKIP) or np.any(np.abs(1.0 - t) < SINGULAR_SKIP):
        raise DomainError("ODE sample points must stay away from t = 0 and t = 1")

    e, eps = state.e, state.epsilon
    if state.space.model is Model.S3:
        c = (1j * e - eps) / 2.0 if which == 1 else (-1j * e - eps) / 2.0
    else:
        c = (-e + eps) / 2.0 if which == 1 else (e + eps) / 2.0
    kconst = state.k1 if which == 1 else state.k2
    m2 = float(state.qn.m * state.qn.m)

    f, f1, f2 = factor_derivatives(factor(state, which), t)
    lhs = (1.0 - t) * ((1.0 - 2.0 * t) * f1 + t * (1.0 - t) * f2) + (
        c * t - m2 / (4.0 * t) + kconst
    ) * f
    points = [(z.real, z.imag) for z in t]
    return build_report(lhs, kconst * f, tolerance, points=points)


# ---------------------------------------------------------------------------
# Hamiltonian and B-operator applications (exact derivatives)


def _point_arrays(points: Sequence[ParabolicPoint]):
    t1 = np.array([p.t1 for p in points], dtype=complex)
    t2 = np.array([p.t2 for p in points], dtype=complex)
    phi = np.array([p.phi for p in points], dtype=float)
    return t1, t2, phi


def _nonsingular_mask(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    d = np.minimum.reduce(
        [
            np.abs(t1),
            np.abs(1.0 - t1),
            np.abs(t2),
            np.abs(1.0 - t2),
            np.abs(t1 - t2),
        ]
    )
    return d >= SINGULAR_SKIP


def _separated_derivatives(state: StateParams, t1, t2):
    f1, d1, dd1 = factor_derivatives(factor(state, 1), t1)
    f2, d2, dd2 = factor_derivatives(factor(state, 2), t2)
    return (f1, d1, dd1), (f2, d2, dd2)


def apply_hamiltonian(
    state: StateParams,
    t1,
    t2,
    phi,
    operator_space: SpaceTag | None = None,
) -> np.ndarray:
    """H Psi with exact separated derivatives, arrays in chart coordinates.

    ``operator_space`` applies the other model's Hamiltonian to this
    state's factors — only useful as a deliberate mismatch control.
    """
    space = operator_space if operator_space is not None else state.space
    t1 = np.asarray(t1, dtype=complex)
    t2 = np.asarray(t2, dtype=complex)
    (f1, d1, dd1), (f2, d2, dd2) = _separated_derivatives(state, t1, t2)
    m2 = float(state.qn.m * state.qn.m)
    e = state.e
    big1 = (1.0 - 2.0 * t1) * d1 + t1 * (1.0 - t1) * dd1
    big2 = (1.0 - 2.0 * t2) * d2 + t2 * (1.0 - t2) * dd2
    pair = f1 * f2
    core = (
        2.0 * (1.0 - t1) / (t1 - t2) * big1 * f2
        + 2.0 * (1.0 - t2) / (t2 - t1) * f1 * big2
        + m2 / (2.0 * t1 * t2) * pair
    )
    if space.model is Model.S3:
        out = core - 1j * e * (2.0 - t1 - t2) / (t1 - t2) * pair
    else:
        out = -core - e * (2.0 - t1 - t2) / (t1 - t2) * pair
    return out * np.exp(1j * state.qn.m * np.asarray(phi, dtype=float))


def apply_b_operator(state: StateParams, t1, t2, phi) -> np.ndarray:
    """B Psi: the second separation operator, exact derivatives.

    Same differential structure in both models; only the scalar
    coupling differs (e on H3, -ie on S3).
    """
    t1 = np.asarray(t1, dtype=complex)
    t2 = np.asarray(t2, dtype=complex)
    (f1, d1, dd1), (f2, d2, dd2) = _separated_derivatives(state, t1, t2)
    m2 = float(state.qn.m * state.qn.m)
    w = state.e if state.space.model is Model.H3 else -1j * state.e
    diff = t1 - t2
    pair = f1 * f2
    c = (t1 + t2 - 2.0 * t1 * t2) / diff
    out = (
        w * c * pair
        + 2.0 * t2 * (1.0 - t1) * (1.0 - 2.0 * t1) / diff * d1 * f2
        - 2.0 * t1 * (1.0 - t2) * (1.0 - 2.0 * t2) / diff * f1 * d2
        + 2.0 * t1 * t2 * (1.0 - t1) ** 2 / diff * dd1 * f2
        - 2.0 * t1 * t2 * (1.0 - t2) ** 2 / diff * f1 * dd2
        + m2 * (t1 + t2) / (2.0 * t1 * t2) * pair
    )
    return out * np.exp(1j * state.qn.m * np.asarray(phi, dtype=float))


def hamiltonian_residual(
    state: StateParams,
    sample: Sequence[ParabolicPoint],
    tolerance: float = HAMILTONIAN_TOL,
    operator_space: SpaceTag | None = None,
) -> ResidualReport:
    """(H Psi - eps Psi) over chart points, relative to 1 + (1 + |eps|) |Psi|.

    The scale keeps the measure relative to the local wavefunction
    magnitude even when the eigenvalue is zero (possible on S3 when
    e^2 = k^2 (k^2 - 1)); |eps Psi| alone would then degenerate to an
    absolute comparison against unnormalized Psi.
    """
    t1, t2, phi = _point_arrays(sample)
    keep = _nonsingular_mask(t1, t2)
    skipped = int(np.count_nonzero(~keep))
    if not keep.any():
        raise DomainError("every sample point sits on a singular chart locus")
    t1, t2, phi = t1[keep], t2[keep], phi[keep]
    hpsi = apply_hamiltonian(state, t1, t2, phi, operator_space=operator_space)
    psi = wavefunction_values(state, t1, t2, phi)
    scale = (1.0 + abs(state.epsilon)) * np.abs(psi)
    points = [(a.real, a.imag, b.real, b.imag, p) for a, b, p in zip(t1, t2, phi)]
    note = f"skipped {skipped} singular point(s)" if skipped else ""
    return build_report(hpsi - state.epsilon * psi, scale, tolerance, points=points, note=note)


def coupling_identity_residual(space: SpaceTag, points: Sequence[ParabolicPoint]) -> float:
    """max |(t1+t2-2 t1 t2)/(t1-t2) - cos(theta)| via the ambient chart.

    The left side is the scalar coefficient of the B operator; the right
    side is cos(theta) = c3/|vec c| reconstructed through
    parabolic_to_ambient, so the comparison crosses module boundaries.
    Wherever the quasi-Cartesian chart is single-valued (c0 > 0 — always
    on H3, the near hemisphere on S3) the same value is also checked as
    q3/q; on the far S3 hemisphere q = y/y0 swaps antipodes and q3/q
    flips sign, so only the ambient form applies there.
    """
    worst = 0.0
    for p in points:
        c = (p.t1 + p.t2 - 2.0 * p.t1 * p.t2) / (p.t1 - p.t2)
        amb = parabolic_to_ambient(space, p)
        worst = max(worst, abs(c - amb.c3 / amb.radius()))
        if amb.c0 > 0:
            quasi = ambient_to_quasi(space, amb)
            worst = max(worst, abs(c - quasi.q3 / quasi.q))
    return worst


def b_operator_residual(
    state: StateParams,
    sample: Sequence[ParabolicPoint],
    tolerance: float = B_OPERATOR_TOL,
) -> ResidualReport:
    """(B Psi - (k1+k2) Psi) over chart points, plus the cos(theta) identity.

    Normalized like hamiltonian_residual, by 1 + (1 + |k1+k2|) |Psi|;
    the eigenvalue alone cannot set the scale because k1 + k2 = 0 for
    every ground state on S3.
    """
    t1, t2, phi = _point_arrays(sample)
    keep = _nonsingular_mask(t1, t2)
    skipped = int(np.count_nonzero(~keep))
    if not keep.any():
        raise DomainError("every sample point sits on a singular chart locus")
    kept_points = [p for p, ok in zip(sample, keep) if ok]
    t1, t2, phi = t1[keep], t2[keep], phi[keep]
    bpsi = apply_b_operator(state, t1, t2, phi)
    eigenvalue = state.k1 + state.k2
    psi = wavefunction_values(state, t1, t2, phi)
    scale = (1.0 + abs(eigenvalue)) * np.abs(psi)
    points = [(a.real, a.imag, b.real, b.imag, p) for a, b, p in zip(t1, t2, phi)]
    identity = coupling_identity_residual(state.space, kept_points)
    parts = []
    if skipped:
        parts.append(f"skipped {skipped} singular point(s)")
    parts.append(f"coupling/cos(theta) identity max |diff| = {identity:.3e}")
    report = build_report(bpsi - eigenvalue * psi, scale, tolerance, points=points, note="; ".join(parts))
    if identity > COUPLING_IDENTITY_TOL:
        report = replace(report, passed=False)
    return report


# ---------------------------------------------------------------------------
# Runge-Lenz / angular-momentum identity via finite differences


def _quasi_evaluator(state: StateParams) -> Callable[[np.ndarray], np.ndarray]:
    """Psi as a function of stacked quasi-Cartesian coordinates (3, n)."""
    if state.space.model is Model.H3:

        def fn(Q: np.ndarray) -> np.ndarray:
            q = np.sqrt((Q * Q).sum(axis=0))
            t1 = (Q[2] + q) / (1.0 + q)
            t2 = (Q[2] - q) / (1.0 - q)
            phi = np.arctan2(Q[1], Q[0])
            return wavefunction_values(state, t1.astype(complex), t2.astype(complex), phi)

    else:

        def fn(Q: np.ndarray) -> np.ndarray:
            q = np.sqrt((Q * Q).sum(axis=0))
            y0 = 1.0 / np.sqrt(1.0 + q * q)
            y = q * y0
            y3 = Q[2] * y0
            t1 = (y + y3) * (y + 1j * y0)
            t2 = (y - y3) * (y - 1j * y0)
            phi = np.arctan2(Q[1], Q[0])
            return wavefunction_values(state, t1, t2, phi)

    return fn


def _shifted(Q: np.ndarray, axis: int, delta: np.ndarray) -> np.ndarray:
    out = Q.copy()
    out[axis] = out[axis] + delta
    return out


def _gradient(fn, Q: np.ndarray, h: np.ndarray) -> np.ndarray:
    rows = [
        (fn(_shifted(Q, a, h)) - fn(_shifted(Q, a, -h))) / (2.0 * h) for a in range(3)
    ]
    return np.stack(rows)


def _momentum_op(fn, sigma: int, axis: int, h: np.ndarray):
    """P_a = -i (d_a - sigma q_a q_j d_j), as a closure over an evaluator."""

    def apply(Q: np.ndarray) -> np.ndarray:
        g = _gradient(fn, Q, h)
        radial = (Q * g).sum(axis=0)
        return -1j * (g[axis] - sigma * Q[axis] * radial)

    return apply


def _angular_op(fn, axis: int, h: np.ndarray):
    """L_a = -i (q_b d_c - q_c d_b) with (a, b, c) cyclic."""
    b = (axis + 1) % 3
    c = (axis + 2) % 3

    def apply(Q: np.ndarray) -> np.ndarray:
        g = _gradient(fn, Q, h)
        return -1j * (Q[b] * g[c] - Q[c] * g[b])

    return apply


def _a3_and_l2(state: StateParams, Q: np.ndarray, h: np.ndarray):
    """(A3 Psi, L^2 Psi) by nested central differences at columns of Q."""
    psi = _quasi_evaluator(state)
    sigma = state.space.sigma
    p1 = _momentum_op(psi, sigma, 0, h)
    p2 = _momentum_op(psi, sigma, 1, h)
    l1 = _angular_op(psi, 0, h)
    l2 = _angular_op(psi, 1, h)

    l1p2 = _angular_op(p2, 0, h)(Q)
    l2p1 = _angular_op(p1, 1, h)(Q)
    p1l2 = _momentum_op(l2, sigma, 0, h)(Q)
    p2l1 = _momentum_op(l1, sigma, 1, h)(Q)

    q = np.sqrt((Q * Q).sum(axis=0))
    a3 = state.e * Q[2] / q * psi(Q) + 0.5 * (l1p2 - l2p1 - p1l2 + p2l1)
    lsq = sum(
        _angular_op(_angular_op(psi, a, h), a, h)(Q) for a in range(3)
    )
    return a3, lsq


def _quasi_to_chart(space: SpaceTag, Q: np.ndarray):
    q = np.sqrt((Q * Q).sum(axis=0))
    phi = np.arctan2(Q[1], Q[0])
    if space.model is Model.H3:
        t1 = ((Q[2] + q) / (1.0 + q)).astype(complex)
        t2 = ((Q[2] - q) / (1.0 - q)).astype(complex)
    else:
        y0 = 1.0 / np.sqrt(1.0 + q * q)
        y = q * y0
        y3 = Q[2] * y0
        t1 = (y + y3) * (y + 1j * y0)
        t2 = (y - y3) * (y - 1j * y0)
    return t1, t2, phi


def runge_lenz_check(
    state: StateParams,
    sample,
    h: float = _DEFAULT_FD_STEP,
    tolerance: float = RUNGE_LENZ_TOL,
) -> ResidualReport:
    """A3 + L^2 (H3) or A3 + i L^2 (S3) against the exact B operator.

    The left side uses nested second-order central differences in
    quasi-Cartesian coordinates with per-point step h * max(1, |q|),
    Richardson-extrapolated over (h, h/2); the right side applies the
    exact separated derivatives through the chart.  The note records the
    observed convergence order (should sit near 2) before extrapolation.
    """
    Q = np.asarray(sample, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != 3:
        Q = Q.T if Q.ndim == 2 and Q.shape[1] == 3 else Q
    if Q.ndim != 2 or Q.shape[0] != 3:
        raise ParameterError("sample must be 3 x n (or n x 3) quasi-Cartesian coordinates")
    q = np.sqrt((Q * Q).sum(axis=0))
    rho = np.sqrt(Q[0] ** 2 + Q[1] ** 2)
    h_eff = h * np.maximum(1.0, q)
    keep = (q >= 0.05) & (rho >= 6.0 * h_eff + 0.01)
    if state.space.model is Model.H3:
        keep &= q + 4.0 * h_eff <= 0.98
    skipped = int(np.count_nonzero(~keep))
    if not keep.any():
        raise DomainError("no usable sample points for the finite-difference stencil")
    Q, q, h_eff = Q[:, keep], q[keep], h_eff[keep]

    t1, t2, phi = _quasi_to_chart(state.space, Q)
    b_exact = apply_b_operator(state, t1, t2, phi)
    if state.space.model is Model.H3:
        unit = 1.0 + 0j
    else:
        unit = 1j
    want = unit * b_exact

    a3_h, l2_h = _a3_and_l2(state, Q, h_eff)
    a3_h2, l2_h2 = _a3_and_l2(state, Q, h_eff / 2.0)
    fd_h = a3_h + unit * l2_h
    fd_h2 = a3_h2 + unit * l2_h2
    rich = (4.0 * fd_h2 - fd_h) / 3.0

    r1 = np.abs(fd_h - want)
    r2 = np.abs(fd_h2 - want)
    ok = r2 > 1e-13
    order = float(np.median(np.log2(r1[ok] / r2[ok]))) if ok.any() else math.nan
    parts = [f"median FD convergence order {order:.2f} over (h, h/2), h={h:g}"]
    if skipped:
        parts.append(f"skipped {skipped} point(s) near chart boundaries")
    points = [tuple(col) for col in Q.T]
    return build_report(rich - want, want, tolerance, points=points, note="; ".join(parts))


# ---------------------------------------------------------------------------
# polynomial algebra for the commutation relations


class QPolynomial:
    """Sparse complex polynomial in (q1, q2, q3).

    Coefficients live in a dict keyed by exponent triples; exact zeros
    are dropped on construction so equality-to-zero is just emptiness.
    Products are capped at total degree 12 — the commutator checks never
    legitimately exceed degree(p) + 2.
    """

    MAX_DEGREE = 12

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs: dict[tuple[int, int, int], complex] = {}
        if coeffs:
            for key, val in coeffs.items():
                k = tuple(int(x) for x in key)
                if len(k) != 3 or min(k) < 0:
                    raise ParameterError(f"bad monomial key {key!r}")
                c = complex(val)
                if c != 0:
                    self.coeffs[k] = c
        if self.degree() > self.MAX_DEGREE:
            raise ParameterError(
                f"polynomial degree {self.degree()} exceeds cap {self.MAX_DEGREE}"
            )

    @staticmethod
    def _check_axis(axis: int) -> int:
        if axis not in (0, 1, 2):
            raise ParameterError(f"axis must be 0, 1 or 2, got {axis!r}")
        return axis

    @classmethod
    def variable(cls, axis: int) -> "QPolynomial":
        key = tuple(1 if i == cls._check_axis(axis) else 0 for i in range(3))
        return cls({key: 1.0})

    @classmethod
    def random(cls, rng: np.random.Generator, degree: int = 6, terms: int = 8) -> "QPolynomial":
        coeffs: dict[tuple[int, int, int], complex] = {}
        for _ in range(terms):
            while True:
                key = tuple(int(x) for x in rng.integers(0, degree + 1, size=3))
                if sum(key) <= degree:
                    break
            coeffs[key] = complex(rng.standard_normal(), rng.standard_normal())
        return cls(coeffs)

    def degree(self) -> int:
        return max((sum(k) for k in self.coeffs), default=0)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0j) + c
        return QPolynomial(out)

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        return self + (-1.0) * other

    def __mul__(self, other):
        if isinstance(other, QPolynomial):
            out: dict[tuple[int, int, int], complex] = {}
            for k1, c1 in self.coeffs.items():
                for k2, c2 in other.coeffs.items():
                    k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                    out[k] = out.get(k, 0j) + c1 * c2
            return QPolynomial(out)
        scalar = complex(other)
        return QPolynomial({k: scalar * c for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def diff(self, axis: int) -> "QPolynomial":
        self._check_axis(axis)
        out: dict[tuple[int, int, int], complex] = {}
        for k, c in self.coeffs.items():
            if k[axis] == 0:
                continue
            nk = list(k)
            nk[axis] -= 1
            out[tuple(nk)] = out.get(tuple(nk), 0j) + c * k[axis]
        return QPolynomial(out)

    def __call__(self, q1: complex, q2: complex, q3: complex) -> complex:
        total = 0j
        for (i, j, k), c in self.coeffs.items():
            total += c * q1**i * q2**j * q3**k
        return total

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        terms = ", ".join(f"{k}: {c:.3g}" for k, c in sorted(self.coeffs.items()))
        return f"QPolynomial({{{terms}}})"


def momentum_polynomial(space: SpaceTag, axis: int, p: QPolynomial) -> QPolynomial:
    """P_a p = -i (d_a p - sigma q_a q_j d_j p), exact in coefficients.

    Axes are 0-indexed: axis 2 is the distinguished q3 direction.
    """
    QPolynomial._check_axis(axis)
    grads = [p.diff(j) for j in range(3)]
    radial = QPolynomial()
    for j in range(3):
        radial = radial + QPolynomial.variable(j) * grads[j]
    return (-1j) * (grads[axis] - space.sigma * (QPolynomial.variable(axis) * radial))


def angular_polynomial(axis: int, p: QPolynomial) -> QPolynomial:
    """L_a p = -i (q_b d_c - q_c d_b) p with (a, b, c) cyclic, 0-indexed."""
    QPolynomial._check_axis(axis)
    b = (axis + 1) % 3
    c = (axis + 2) % 3
    return (-1j) * (
        QPolynomial.variable(b) * p.diff(c) - QPolynomial.variable(c) * p.diff(b)
    )


def momentum_commutators(
    space: SpaceTag,
    p: QPolynomial,
    tolerance: float = COMMUTATOR_TOL,
) -> ResidualReport:
    """All nine so(3,1)/so(4) commutation identities applied to p.

    [L_a,L_b] = i eps_abc L_c and [L_a,P_b] = i eps_abc P_c in both
    models; [P_a,P_b] = -i eps_abc L_c on H3 and +i eps_abc L_c on S3.
    Residual per identity is the max coefficient magnitude of
    (commutator - right side) applied to p.
    """
    if p.degree() > 10:
        raise ParameterError("commutator check is limited to degree <= 10 inputs")

    def P(a: int, poly: QPolynomial) -> QPolynomial:
        return momentum_polynomial(space, a, poly)

    def L(a: int, poly: QPolynomial) -> QPolynomial:
        return angular_polynomial(a, poly)

    pp_sign = -1j * space.sigma  # -i on H3, +i on S3
    residuals = []
    labels = []
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        r = L(a, L(b, p)) - L(b, L(a, p)) - 1j * L(c, p)
        residuals.append(r.max_abs_coeff())
        labels.append(f"[L{a+1},L{b+1}] - iL{c+1}")
        r = L(a, P(b, p)) - P(b, L(a, p)) - 1j * P(c, p)
        residuals.append(r.max_abs_coeff())
        labels.append(f"[L{a+1},P{b+1}] - iP{c+1}")
        r = P(a, P(b, p)) - P(b, P(a, p)) - pp_sign * L(c, p)
        residuals.append(r.max_abs_coeff())
        rhs = "+ iL" if space.model is Model.H3 else "- iL"
        labels.append(f"[P{a+1},P{b+1}] {rhs}{c+1}")
    vals = np.asarray(residuals)
    worst = labels[int(np.argmax(vals))]
    sign_word = "so(3,1)" if space.model is Model.H3 else "so(4)"
    note = f"{sign_word} relations on degree-{p.degree()} input; worst identity: {worst}"
    return build_report(vals, np.zeros_like(vals), tolerance, note=note)
