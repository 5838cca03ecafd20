"""Front speed estimation from simulated trajectories.

A traveling front u_i(t) = U(i - c t) shifts rigidly, so its speed is the
slope of the interface position (the interpolated level-1/2 crossing)
against time.  The estimator discards an initial transient, fits the rest
by least squares, and classifies the run as pinned when |c| falls below a
tolerance that separates genuine motion from truncation drift.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, InvalidParameterError, NoCrossingError
from .pinning import Direction, TreeParams
from .profile import Profile
from .reaction import mckean
from .simulator import SimConfig, Trajectory, integrate, step_profile

#: Speeds below this magnitude (sites per unit time) classify as pinned.
DEFAULT_SPEED_TOLERANCE = 1e-3

#: Fraction of the usable run discarded as transient before fitting.
DEFAULT_TRANSIENT_FRACTION = 0.5

#: Minimum number of snapshots a speed fit needs.
_MIN_FIT_POINTS = 10


class NonMonotoneProfileWarning(UserWarning):
    """The profile straddles the level more than once."""


@dataclass(frozen=True)
class SpeedEstimate:
    """Fitted front speed c, quality of the linear fit (R^2 in [0, 1]),
    the resulting direction call, and whether the interface came within
    a quarter window of an edge during the run."""

    c: float
    fit_quality: float
    direction: Direction
    truncated: bool


def interface_position(profile: Profile, level: float = 0.5) -> float:
    """Interpolated lattice position where the profile crosses ``level``.

    Uses the first upward crossing u_i < level <= u_{i+1} and interpolates
    linearly between the two sites.  Raises NoCrossingError when the window
    does not straddle the level; warns (and keeps the first crossing) when
    it straddles more than once.
    """
    u = profile.values
    below = u < level
    crossings = np.nonzero(below[:-1] & ~below[1:])[0]
    if crossings.size == 0:
        raise NoCrossingError(
            f"profile on [{profile.offset}, {profile.last_index}] does not straddle {level}"
        )
    if crossings.size > 1:
        warnings.warn(
            f"profile straddles level {level} more than once; using the first crossing",
            NonMonotoneProfileWarning,
            stacklevel=2,
        )
    j = int(crossings[0])
    return profile.offset + j + (level - u[j]) / (u[j + 1] - u[j])


def estimate_speed(
    traj: Trajectory,
    transient_fraction: float = DEFAULT_TRANSIENT_FRACTION,
    level: float = 0.5,
    speed_tolerance: float = DEFAULT_SPEED_TOLERANCE,
) -> SpeedEstimate:
    """Least-squares front speed over the settled part of a trajectory.

    Snapshots from the moment the interface first enters the edge zone
    (within a quarter half-width of either window edge) are excluded:
    past that point the Dirichlet boundaries stall the front and the
    positions no longer reflect free propagation.  Such runs are flagged
    ``truncated``.  Of the remaining span the leading
    ``transient_fraction`` is discarded and the rest fitted.
    """
    if not 0.0 <= transient_fraction < 1.0:
        raise InvalidParameterError(
            f"transient_fraction must lie in [0, 1), got {transient_fraction}"
        )
    n = traj.states.shape[1]
    half_width = (n - 1) // 2
    margin = half_width / 4.0
    lo_edge = traj.offset + margin
    hi_edge = traj.offset + (n - 1) - margin

    positions = np.empty(len(traj))
    usable = len(traj)
    truncated = False
    for j in range(len(traj)):
        try:
            pos = interface_position(traj.snapshot(j), level)
        except NoCrossingError:
            usable = j
            truncated = True
            break
        positions[j] = pos
        if pos <= lo_edge or pos >= hi_edge:
            usable = j
            truncated = True
            break
    if usable < 2:
        raise InsufficientDataError(
            "interface sits in the edge zone from the start; enlarge the window"
        )

    t = traj.times[:usable]
    x = positions[:usable]
    t_start = t[0] + transient_fraction * (t[-1] - t[0])
    sel = t >= t_start
    if int(sel.sum()) < _MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"only {int(sel.sum())} post-transient snapshots available, "
            f"need {_MIN_FIT_POINTS}; record more densely or extend the run"
        )
    tf = t[sel]
    xf = x[sel]
    tc = tf - tf.mean()
    denom = float(np.dot(tc, tc))
    slope = float(np.dot(tc, xf) / denom)
    fitted = xf.mean() + slope * tc
    ss_res = float(np.sum((xf - fitted) ** 2))
    ss_tot = float(np.sum((xf - xf.mean()) ** 2))
    if ss_tot < 1e-20:
        quality = 1.0 if ss_res < 1e-20 else 0.0
    else:
        quality = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))

    if slope > speed_tolerance:
        direction = Direction.DOWN
    elif slope < -speed_tolerance:
        direction = Direction.UP
    else:
        direction = Direction.PINNED
    return SpeedEstimate(slope, quality, direction, truncated)


def classify_empirical(
    p: TreeParams,
    cfg: SimConfig | None = None,
    transient_fraction: float = DEFAULT_TRANSIENT_FRACTION,
    speed_tolerance: float = DEFAULT_SPEED_TOLERANCE,
) -> SpeedEstimate:
    """Simulation-based direction call: integrate from a sharp step and
    estimate the speed.  Away from the region boundaries this agrees with
    the closed-form classification."""
    if cfg is None:
        cfg = SimConfig()
    traj = integrate(step_profile(cfg.half_width), p, mckean(p.a), cfg)
    return estimate_speed(traj, transient_fraction, speed_tolerance=speed_tolerance)
