"""Radial harmonic analysis on the harmonic spaces X^(p,q).

Spherical functions and their spectral derivatives, spherical Fourier
transforms of ball / sphere / mean-value distributions, the dual Abel
transform and its differential-operator inverse (even p, even q), certified
zero sets, and two-radius admissibility decisions with counterexample
generation and verification.
"""

__version__ = "0.1.0"

from ._kernels import ENV_FLAG, USING_NUMBA
from .errors import (
    CalibrationError,
    ContourTooCloseError,
    DomainError,
    JetDepthError,
    NonConvergenceError,
    NotEnoughZerosError,
    QuadratureError,
    TangentZeroWarning,
    UnsupportedParametersError,
)
from .geometry import (
    SpaceParams,
    ball_volume,
    cheeger,
    log_growth_estimate,
    log_sphere_area,
    sphere_area,
    surface_coefficient,
)
from .hypergeom import EvalReport, HypArgs, f21_neg, f21_neg_conjpair
from .jets import Jet
from .spherical import (
    SpectralPoint,
    phi,
    phi_dk,
    phi_grid,
    phi_ode_oracle,
    phi_report,
    psi,
)
from .transforms import (
    DistKind,
    Method,
    PaleyWienerReport,
    TransformValue,
    ball_transform,
    ball_transform_quadrature,
    ball_prefactor,
    default_pw_grid,
    convolve_spectral,
    mean_value_transform,
    paley_wiener_check,
    sphere_transform,
    transform,
    transform_callable,
)
from .abel import (
    CosineSum,
    SphericalSum,
    calibrate_constant,
    dual_abel,
    inverse_dual_abel,
    roundtrip,
)
from .zeros import (
    Admissibility,
    PairVerdict,
    ZeroSet,
    common_zero,
    complex_zero_count,
    radial_zeros,
    spectral_zero_set,
)
from .tworadius import (
    AnnihilationReport,
    Certificate,
    Scenario,
    check_pair,
    generate_inadmissible_pair,
    harmonicity_scenario,
    verify_annihilation,
)
from .selftest import SelfTestReport, run_selftest

__all__ = [
    "ENV_FLAG",
    "USING_NUMBA",
    "SpaceParams",
    "SpectralPoint",
    "HypArgs",
    "EvalReport",
    "Jet",
    "DistKind",
    "Method",
    "TransformValue",
    "PaleyWienerReport",
    "CosineSum",
    "SphericalSum",
    "Admissibility",
    "PairVerdict",
    "ZeroSet",
    "Scenario",
    "Certificate",
    "AnnihilationReport",
    "SelfTestReport",
    "ball_volume",
    "ball_prefactor",
    "default_pw_grid",
    "cheeger",
    "sphere_area",
    "log_sphere_area",
    "log_growth_estimate",
    "surface_coefficient",
    "f21_neg",
    "f21_neg_conjpair",
    "phi",
    "phi_dk",
    "phi_grid",
    "phi_ode_oracle",
    "phi_report",
    "psi",
    "ball_transform",
    "ball_transform_quadrature",
    "sphere_transform",
    "mean_value_transform",
    "transform",
    "transform_callable",
    "convolve_spectral",
    "paley_wiener_check",
    "calibrate_constant",
    "dual_abel",
    "inverse_dual_abel",
    "roundtrip",
    "spectral_zero_set",
    "common_zero",
    "complex_zero_count",
    "radial_zeros",
    "check_pair",
    "generate_inadmissible_pair",
    "verify_annihilation",
    "harmonicity_scenario",
    "run_selftest",
    "CalibrationError",
    "ContourTooCloseError",
    "DomainError",
    "JetDepthError",
    "NonConvergenceError",
    "NotEnoughZerosError",
    "QuadratureError",
    "TangentZeroWarning",
    "UnsupportedParametersError",
    "__version__",
]
