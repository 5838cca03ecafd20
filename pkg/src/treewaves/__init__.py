"""Pinned and traveling waves of bistable reaction-diffusion dynamics on
biinfinite k-ary trees.

The layer reduction of the tree dynamics is a lattice equation with
asymmetric coupling d (k u_{i+1} - (k+1) u_i + u_{i-1}).  For McKean's
piecewise-linear bistable reaction the pinning region, the pinned front
itself, its linear stability kernel and the propagation-reversal
thresholds are all available in closed form; this package provides them
together with a time-domain simulator and an independent finite-window
verification route.
"""

from .errors import (
    BesselRangeError,
    BranchPatternViolationError,
    InsufficientDataError,
    InvalidParameterError,
    NoCrossingError,
    NonFiniteStateError,
    NotPinnedError,
    NumericsError,
    OutOfRangeError,
    SingularSystemError,
    StepSizeError,
)
from .oracle import empirical_bounds, solve_stationary_window, tridiagonal_solve
from .pinning import (
    Direction,
    RegionBounds,
    TreeParams,
    WaveCoefficients,
    classify,
    discriminant,
    eigenvalues,
    is_pinned,
    min_upper_bound,
    pinned_profile,
    pinned_value,
    pinning_bounds,
    reversal_thresholds,
    wave_coefficients,
)
from .profile import Profile
from .reaction import (
    Reaction,
    ReactionKind,
    cubic,
    evaluate,
    evaluate_heaviside_form,
    mckean,
)
from .simulator import (
    BACKEND,
    SimConfig,
    Trajectory,
    default_step,
    initial_profile,
    integrate,
    residual,
    rhs,
    rhs_advection_form,
    stability_limit,
    step_profile,
)
from .stability import (
    DecayReport,
    KernelParams,
    bessel_i,
    bessel_i_scaled,
    kernel_decay_rate,
    linear_kernel,
    perturbation_decay_test,
)
from .wavespeed import (
    NonMonotoneProfileWarning,
    SpeedEstimate,
    classify_empirical,
    estimate_speed,
    interface_position,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BesselRangeError",
    "BranchPatternViolationError",
    "DecayReport",
    "Direction",
    "InsufficientDataError",
    "InvalidParameterError",
    "KernelParams",
    "NoCrossingError",
    "NonFiniteStateError",
    "NonMonotoneProfileWarning",
    "NotPinnedError",
    "NumericsError",
    "OutOfRangeError",
    "Profile",
    "Reaction",
    "ReactionKind",
    "RegionBounds",
    "SimConfig",
    "SingularSystemError",
    "SpeedEstimate",
    "StepSizeError",
    "Trajectory",
    "TreeParams",
    "WaveCoefficients",
    "bessel_i",
    "bessel_i_scaled",
    "classify",
    "classify_empirical",
    "cubic",
    "default_step",
    "discriminant",
    "eigenvalues",
    "empirical_bounds",
    "estimate_speed",
    "evaluate",
    "evaluate_heaviside_form",
    "initial_profile",
    "integrate",
    "interface_position",
    "is_pinned",
    "kernel_decay_rate",
    "linear_kernel",
    "mckean",
    "min_upper_bound",
    "perturbation_decay_test",
    "pinned_profile",
    "pinned_value",
    "pinning_bounds",
    "residual",
    "reversal_thresholds",
    "rhs",
    "rhs_advection_form",
    "solve_stationary_window",
    "stability_limit",
    "step_profile",
    "tridiagonal_solve",
    "wave_coefficients",
]
