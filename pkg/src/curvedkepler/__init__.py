"""Bound states of the Kepler problem on H3 and S3.

Closed-form construction of the discrete spectrum and the separated
wavefunctions in generalized parabolic coordinates on the two constant-
curvature 3-spaces, together with the verification machinery (exact ODE
and operator residuals, symmetry-algebra checks, chart/metric
cross-checks) and a small CLI.
"""

from .errors import (
    BoundaryRootWarning,
    BoundStateError,
    ConstraintError,
    ConvergenceError,
    CurvedKeplerError,
    DomainError,
    IndeterminateCoordinateWarning,
    IntegrabilityError,
    ParameterError,
    SingularLocusError,
)
from .geometry import (
    AmbientPoint,
    FlatLimitTable,
    ParabolicPoint,
    PolarFactors,
    QuasiCartesian,
    SphericalPoint,
    ambient_to_parabolic,
    ambient_to_quasi,
    antipodal,
    constraint_check,
    flat_limit_coords,
    metric_parabolic,
    metric_pullback_check,
    parabolic_to_ambient,
    parabolic_to_spherical,
    polar_decompose,
    quasi_to_ambient,
    spherical_to_parabolic,
)
from .kepler import (
    NormalizationResult,
    QuantumNumbers,
    SeparatedFactor,
    StateParams,
    assemble_state,
    bound_count_h3,
    bound_interval_h3,
    energy,
    energy_split,
    enumerate_states,
    factor,
    is_admissible,
    normalize,
    perturbed,
    radial_spherical,
    wavefunction,
    wavefunction_values,
)
from .operators import (
    QPolynomial,
    angular_polynomial,
    apply_b_operator,
    apply_hamiltonian,
    b_operator_residual,
    coupling_identity_residual,
    factor_derivatives,
    hamiltonian_residual,
    momentum_commutators,
    momentum_polynomial,
    ode_residual,
    runge_lenz_check,
)
from .report import ResidualReport, build_report, merge_reports
from .sampling import chart_points, factor_samples, make_rng, quasi_points
from .spaces import H3, S3, Model, SpaceTag, space_from_name
from .specfun import Hyp2F1Params, complex_pow, hyp2f1, hyp2f1_derivative, pow_arr, spectral_root
from .verify import SUITES, SuiteResult, all_passed, bound_states, run_suite, run_suites

__version__ = "0.1.0"

__all__ = [
    "AmbientPoint",
    "BoundStateError",
    "BoundaryRootWarning",
    "ConstraintError",
    "ConvergenceError",
    "CurvedKeplerError",
    "DomainError",
    "FlatLimitTable",
    "H3",
    "Hyp2F1Params",
    "IndeterminateCoordinateWarning",
    "IntegrabilityError",
    "Model",
    "NormalizationResult",
    "ParabolicPoint",
    "ParameterError",
    "PolarFactors",
    "QPolynomial",
    "QuantumNumbers",
    "QuasiCartesian",
    "ResidualReport",
    "S3",
    "SUITES",
    "SeparatedFactor",
    "SingularLocusError",
    "SpaceTag",
    "SphericalPoint",
    "StateParams",
    "SuiteResult",
    "all_passed",
    "ambient_to_parabolic",
    "ambient_to_quasi",
    "angular_polynomial",
    "antipodal",
    "apply_b_operator",
    "apply_hamiltonian",
    "assemble_state",
    "b_operator_residual",
    "bound_count_h3",
    "bound_interval_h3",
    "bound_states",
    "build_report",
    "chart_points",
    "complex_pow",
    "constraint_check",
    "coupling_identity_residual",
    "energy",
    "energy_split",
    "enumerate_states",
    "factor",
    "factor_derivatives",
    "factor_samples",
    "flat_limit_coords",
    "hamiltonian_residual",
    "hyp2f1",
    "hyp2f1_derivative",
    "is_admissible",
    "make_rng",
    "merge_reports",
    "metric_parabolic",
    "metric_pullback_check",
    "momentum_commutators",
    "momentum_polynomial",
    "normalize",
    "ode_residual",
    "parabolic_to_ambient",
    "parabolic_to_spherical",
    "perturbed",
    "polar_decompose",
    "pow_arr",
    "quasi_points",
    "quasi_to_ambient",
    "radial_spherical",
    "run_suite",
    "run_suites",
    "runge_lenz_check",
    "spectral_root",
    "space_from_name",
    "spherical_to_parabolic",
    "wavefunction",
    "wavefunction_values",
]
