"""Time integration of the tree lattice dynamics on a truncated window.

The biinfinite system is cut to the window [-N, N] with Dirichlet ghost
sites held at the stable equilibria (0 on the left, 1 on the right), which
matches the limits of a front profile; the truncation error decays
geometrically in N.  Advancement is fixed-step classical RK4: the McKean
reaction is discontinuous in u, so adaptive error control misfires near
threshold crossings, while a fixed step below the stiffness bound is
reproducible and convergence is checked explicitly in the tests.

The stepping loop is the package hot spot.  It lives in the compiled
extension ``treewaves._core`` when built, with the numpy fallback
``treewaves._core_py`` selected at import otherwise (or when
TREEWAVES_BACKEND=python is set).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidParameterError,
    NonFiniteStateError,
    StepSizeError,
)
from .pinning import TreeParams, pinned_profile
from .profile import Profile
from .reaction import Reaction, ReactionKind

_requested = os.environ.get("TREEWAVES_BACKEND")
if _requested == "python":
    from . import _core_py as _backend

    BACKEND = "python"
else:
    try:
        from . import _core as _backend  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        from . import _core_py as _backend  # type: ignore[no-redef]

        BACKEND = "python"

_KIND_CODE = {ReactionKind.MCKEAN: 0, ReactionKind.CUBIC: 1}


def stability_limit(p: TreeParams) -> float:
    """Largest admissible RK4 step, 1 / (2 (d (k+1) + 1)), from the
    linearized stiffness of the coupled system."""
    return 1.0 / (2.0 * (p.d * (p.k + 1.0) + 1.0))


def default_step(p: TreeParams) -> float:
    """Default step 0.01 / (d (k+1) + 1), fifty times below the bound."""
    return 0.01 / (p.d * (p.k + 1.0) + 1.0)


@dataclass(frozen=True)
class SimConfig:
    """Window half-width, step, horizon and boundary values for a run.

    ``h`` and ``record_every`` default to None, meaning: resolve at
    integration time to ``default_step(p)`` and to roughly 2000 snapshots
    per run.
    """

    half_width: int = 100
    h: float | None = None
    t_end: float = 200.0
    left_boundary: float = 0.0
    right_boundary: float = 1.0
    record_every: int | None = None

    def __post_init__(self) -> None:
        if self.half_width < 10:
            raise InvalidParameterError(f"half_width must be >= 10, got {self.half_width}")
        if self.h is not None and not self.h > 0.0:
            raise InvalidParameterError(f"step h must be positive, got {self.h}")
        if not self.t_end > 0.0:
            raise InvalidParameterError(f"t_end must be positive, got {self.t_end}")
        if self.record_every is not None and self.record_every < 1:
            raise InvalidParameterError(f"record_every must be >= 1, got {self.record_every}")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded states of one integration, aligned with ``times``."""

    times: np.ndarray = field(repr=False)
    offset: int
    states: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return self.times.size

    def snapshot(self, j: int) -> Profile:
        return Profile(self.offset, self.states[j])

    @property
    def snapshots(self) -> list[Profile]:
        return [self.snapshot(j) for j in range(len(self))]

    @property
    def final(self) -> Profile:
        return self.snapshot(len(self) - 1)


def step_profile(half_width: int) -> Profile:
    """Sharp front initial condition: 0 for i < 0, 1 for i >= 0."""
    values = np.zeros(2 * half_width + 1)
    values[half_width:] = 1.0
    return Profile(-half_width, values)


def initial_profile(kind: str, p: TreeParams, half_width: int) -> Profile:
    """Named initial conditions: ``step`` or the exact ``pinned`` front.

    The pinned front formula depends only on (d, k), so it doubles as a
    smooth tail interpolant for parameters outside the pinning region.
    """
    if kind == "step":
        return step_profile(half_width)
    if kind == "pinned":
        return pinned_profile(p.d, p.k, -half_width, half_width)
    raise InvalidParameterError(f"unknown initial condition {kind!r}")


def _check_consistent(p: TreeParams, reaction: Reaction) -> None:
    if reaction.a != p.a:
        raise InvalidParameterError(
            f"reaction detuning {reaction.a} disagrees with parameter a={p.a}"
        )


def rhs(
    state: Profile,
    p: TreeParams,
    reaction: Reaction,
    left_boundary: float = 0.0,
    right_boundary: float = 1.0,
) -> Profile:
    """Right-hand side d (k u_{i+1} - (k+1) u_i + u_{i-1}) + g(u_i) on the
    window, with ghost values substituted at the two edges."""
    _check_consistent(p, reaction)
    u = state.values
    up = np.empty_like(u)
    up[:-1] = u[1:]
    up[-1] = right_boundary
    um = np.empty_like(u)
    um[1:] = u[:-1]
    um[0] = left_boundary
    g = _reaction_values(u, reaction)
    out = p.d * (p.k * up - (p.k + 1.0) * u + um) + g
    return Profile(state.offset, out)


def rhs_advection_form(
    state: Profile,
    p: TreeParams,
    reaction: Reaction,
    left_boundary: float = 0.0,
    right_boundary: float = 1.0,
) -> Profile:
    """Equivalent rearrangement: second difference plus advection,
    d (u_{i+1} - 2 u_i + u_{i-1}) + d (k-1)(u_{i+1} - u_i) + g(u_i).

    Agrees with ``rhs`` to rounding; at k = 1 the advection term vanishes
    and the plain lattice form remains.
    """
    _check_consistent(p, reaction)
    u = state.values
    up = np.empty_like(u)
    up[:-1] = u[1:]
    up[-1] = right_boundary
    um = np.empty_like(u)
    um[1:] = u[:-1]
    um[0] = left_boundary
    g = _reaction_values(u, reaction)
    out = p.d * (up - 2.0 * u + um) + p.d * (p.k - 1.0) * (up - u) + g
    return Profile(state.offset, out)


def _reaction_values(u: np.ndarray, reaction: Reaction) -> np.ndarray:
    if reaction.kind is ReactionKind.MCKEAN:
        g = -u.copy()
        g[u >= reaction.a] += 1.0
        return g
    return u * (1.0 - u) * (u - reaction.a)


def residual(profile: Profile, p: TreeParams, reaction: Reaction) -> float:
    """Sup-norm of the stationarity defect over the interior sites
    (both neighbours stored; no ghost values involved)."""
    _check_consistent(p, reaction)
    u = profile.values
    g = _reaction_values(u[1:-1], reaction)
    interior = p.d * (p.k * u[2:] - (p.k + 1.0) * u[1:-1] + u[:-2]) + g
    return float(np.abs(interior).max())


def integrate(
    initial: Profile,
    p: TreeParams,
    reaction: Reaction,
    cfg: SimConfig,
) -> Trajectory:
    """Advance the window dynamics to cfg.t_end with classical RK4.

    The final recorded time equals t_end up to one step.  Raises
    StepSizeError when the step exceeds the stiffness bound and
    NonFiniteStateError if the state leaves the finite range.
    """
    _check_consistent(p, reaction)
    n = 2 * cfg.half_width + 1
    if initial.offset != -cfg.half_width or len(initial) != n:
        raise InvalidParameterError(
            f"initial profile window [{initial.offset}, {initial.last_index}] does not "
            f"match the configured window [-{cfg.half_width}, {cfg.half_width}]"
        )
    h = cfg.h if cfg.h is not None else default_step(p)
    limit = stability_limit(p)
    if h > limit:
        raise StepSizeError(
            f"step h={h} exceeds the stability bound 1/(2(d(k+1)+1))={limit:.6g}"
        )
    n_steps = max(1, int(round(cfg.t_end / h)))
    record_every = (
        cfg.record_every if cfg.record_every is not None else max(1, n_steps // 2000)
    )
    times, states = _backend.integrate_window(
        initial.values,
        p.d,
        p.k,
        reaction.a,
        _KIND_CODE[reaction.kind],
        cfg.left_boundary,
        cfg.right_boundary,
        h,
        n_steps,
        record_every,
    )
    if not np.isfinite(states).all():
        raise NonFiniteStateError(
            "integration produced non-finite values; check the initial data and step size"
        )
    return Trajectory(times, initial.offset, states)
