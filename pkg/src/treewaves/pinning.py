"""Closed-form pinning machinery for the tree lattice.

The layer-reduced dynamics on a biinfinite k-ary tree,

    du_i/dt = d (k u_{i+1} - (k+1) u_i + u_{i-1}) + g(u_i; a),

admits, for the McKean reaction, an explicit monotone stationary front.
Off the reaction threshold the stationary system is linear with
characteristic polynomial

    d k x^2 - (d (k+1) + 1) x + d = 0,

whose roots lambda1 > 1 > lambda2 > 0 build the front out of two
geometric tails.  Matching the tails pins the front values at the
interface to

    a_pm(d, k) = (1 + ((k-1) d pm 1) / sqrt((1 + d(k+1))^2 - 4 d^2 k)) / 2,

and a pinned monotone wave exists exactly for a_minus < a <= a_plus.
Everything in this module is a pure function of (d, k) or (d, k, a).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidParameterError, OutOfRangeError
from .profile import Profile

#: Relative convergence tolerance of the bisection used for the
#: propagation-reversal thresholds.
_BISECT_RTOL = 1e-12


class Direction(Enum):
    """Front motion in layer coordinates: down the tree means c > 0
    (toward the children), up means c < 0 (toward the parents)."""

    PINNED = "pinned"
    DOWN = "down"
    UP = "up"


@dataclass(frozen=True)
class TreeParams:
    """Diffusion d > 0, branching/advection factor k > 1, detuning a in (0, 1).

    Real (non-integer) k is admitted: rewriting the coupling as a second
    difference plus an advection term d (k-1)(u_{i+1} - u_i) makes sense for
    any real k, and k = 1 recovers the plain lattice equation.
    """

    d: float
    k: float
    a: float

    def __post_init__(self) -> None:
        _validate_dk(self.d, self.k)
        if not 0.0 < self.a < 1.0:
            raise InvalidParameterError(f"detuning a must lie in (0, 1), got {self.a}")


@dataclass(frozen=True)
class WaveCoefficients:
    """Roots and tail amplitudes of the explicit pinned front.

    The front is C * lambda1**i for i <= 0 and 1 - D * lambda2**i for
    i >= -1; the two-site overlap forces C = 1 - D and
    C / lambda1 = 1 - D / lambda2.
    """

    lambda1: float
    lambda2: float
    C: float
    D: float


@dataclass(frozen=True)
class RegionBounds:
    """The pinning interval endpoints a_minus < a_plus for fixed (d, k)."""

    a_minus: float
    a_plus: float


def _validate_dk(d: float, k: float) -> None:
    if not d > 0.0:
        raise InvalidParameterError(f"diffusion d must be positive, got {d}")
    if not k > 1.0:
        raise InvalidParameterError(f"branching factor k must exceed 1, got {k}")


def discriminant(d: float, k: float) -> float:
    """Discriminant of the characteristic polynomial.

    Evaluated in the expanded form 1 + 2 d (k+1) + d^2 (k-1)^2, which is
    algebraically equal to (1 + d(k+1))^2 - 4 d^2 k but free of the
    cancellation that form suffers for k near 1 with large d.
    """
    _validate_dk(d, k)
    return 1.0 + 2.0 * d * (k + 1.0) + (d * (k - 1.0)) ** 2


def eigenvalues(d: float, k: float) -> tuple[float, float]:
    """Characteristic roots (lambda1, lambda2) with lambda1 > 1 > lambda2 > 0.

    lambda1 uses the additive root formula (no cancellation); lambda2 is
    recovered from the product of roots lambda1 * lambda2 = 1 / k.
    """
    lam1 = (1.0 + d * (k + 1.0) + math.sqrt(discriminant(d, k))) / (2.0 * d * k)
    lam2 = 1.0 / (k * lam1)
    return lam1, lam2


def wave_coefficients(d: float, k: float) -> WaveCoefficients:
    lam1, lam2 = eigenvalues(d, k)
    c = (1.0 - lam2) / (lam1 - lam2) * lam1
    dd = (lam1 - 1.0) / (lam1 - lam2) * lam2
    return WaveCoefficients(lam1, lam2, c, dd)


def pinning_bounds(d: float, k: float) -> RegionBounds:
    """Endpoints a_pm(d, k) of the pinning interval."""
    root = math.sqrt(discriminant(d, k))
    a_minus = 0.5 * (1.0 + ((k - 1.0) * d - 1.0) / root)
    a_plus = 0.5 * (1.0 + ((k - 1.0) * d + 1.0) / root)
    return RegionBounds(a_minus, a_plus)


def is_pinned(p: TreeParams, strict: bool = True) -> bool:
    """Whether (d, k, a) admits a pinned monotone front.

    Strict mode is the single-valued reaction: a_minus < a <= a_plus.
    Nonstrict mode corresponds to the multivalued caricature, which fills
    in the reaction at the threshold and makes both inequalities weak.
    """
    bounds = pinning_bounds(p.d, p.k)
    if strict:
        return bounds.a_minus < p.a <= bounds.a_plus
    return bounds.a_minus <= p.a <= bounds.a_plus


def classify(p: TreeParams, strict: bool = True) -> Direction:
    """Predicted front direction: Pinned inside the region, Down (c > 0)
    above the a_plus curve, Up (c < 0) below the a_minus curve.

    The boundary a = a_plus is pinned in both modes; a = a_minus is Up in
    strict mode and pinned in nonstrict mode.
    """
    bounds = pinning_bounds(p.d, p.k)
    if p.a > bounds.a_plus:
        return Direction.DOWN
    pinned = p.a > bounds.a_minus if strict else p.a >= bounds.a_minus
    return Direction.PINNED if pinned else Direction.UP


def pinned_value(d: float, k: float, i: int) -> float:
    """Single site value of the explicit pinned front (any index)."""
    co = wave_coefficients(d, k)
    if i <= -1:
        return co.C * co.lambda1**i
    return 1.0 - co.D * co.lambda2**i


def pinned_profile(d: float, k: float, i_min: int, i_max: int) -> Profile:
    """Explicit pinned front on the window [i_min, i_max].

    The left tail C * lambda1**i is used for i <= -1 and the right tail
    1 - D * lambda2**i for i >= 0; the two formulas agree at i in {-1, 0}
    to rounding.  By construction u_0 = a_plus(d, k), u_{-1} = a_minus(d, k),
    the profile is strictly increasing, and it tends to 0 and 1 in the two
    tail directions.
    """
    _validate_dk(d, k)
    if i_min > -1 or i_max < 0:
        raise InvalidParameterError(
            f"window [{i_min}, {i_max}] must contain both interface sites -1 and 0"
        )
    co = wave_coefficients(d, k)
    idx = np.arange(i_min, i_max + 1, dtype=np.int64)
    values = np.empty(idx.size, dtype=np.float64)
    left = idx <= -1
    values[left] = co.C * co.lambda1 ** idx[left].astype(np.float64)
    values[~left] = 1.0 - co.D * co.lambda2 ** idx[~left].astype(np.float64)
    return Profile(i_min, values)


def min_upper_bound(k: float) -> tuple[float, float]:
    """Global minimum of d -> a_plus(d, k).

    Returns (a_plus_star, d_plus_star) with d_plus_star = 1 / (k - 1) and
    a_plus_star = 1 / (2 (k - sqrt(k (k-1)))); a_plus decreases before the
    minimum and increases after it.
    """
    if not k > 1.0:
        raise InvalidParameterError(f"branching factor k must exceed 1, got {k}")
    d_star = 1.0 / (k - 1.0)
    a_star = 1.0 / (2.0 * (k - math.sqrt(k * (k - 1.0))))
    return a_star, d_star


def _bisect(f, lo: float, hi: float) -> float:
    """Bisection on a bracket with a sign change, to relative width _BISECT_RTOL."""
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise OutOfRangeError(f"no sign change on bracket [{lo}, {hi}]")
    while hi - lo > _BISECT_RTOL * max(abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return 0.5 * (lo + hi)


def reversal_thresholds(a: float, k: float) -> tuple[float, float, float]:
    """Diffusion thresholds of the propagation reversal at fixed (a, k).

    For a above the minimum a_plus_star(k) of the upper bound curve, the
    horizontal line at height a crosses a_plus twice and a_minus once,
    splitting the d axis into Pinned / Down / Pinned / Up.  Returns
    (d_lo_plus, d_hi_plus, d_lo_minus), the two roots of a_plus(d, k) = a
    and the single root of a_minus(d, k) = a, with
    0 < d_lo_plus < d_hi_plus < d_lo_minus.

    Roots are located by bracketed bisection; strict monotonicity of the
    bound curves on each bracket guarantees uniqueness.
    """
    if not k > 1.0:
        raise InvalidParameterError(f"branching factor k must exceed 1, got {k}")
    if not a < 1.0:
        raise OutOfRangeError(f"detuning a must be below 1, got {a}")
    a_star, d_star = min_upper_bound(k)
    if not a > a_star:
        raise OutOfRangeError(
            f"a={a} does not exceed the minimum of the upper bound curve "
            f"a_plus_star({k})={a_star:.12g}; no crossing of a_plus exists"
        )

    def f_plus(d: float) -> float:
        return pinning_bounds(d, k).a_plus - a

    def f_minus(d: float) -> float:
        return pinning_bounds(d, k).a_minus - a

    # a_plus decreases from 1 to a_star on (0, d_star]: one root there.
    d_lo_plus = _bisect(f_plus, 1e-12, d_star)

    # a_plus increases back to 1 beyond d_star: grow the bracket outward.
    hi = 2.0 * d_star
    while f_plus(hi) < 0.0:
        hi *= 2.0
    d_hi_plus = _bisect(f_plus, d_star, hi)

    # a_minus increases from 0 to 1 over all d: single root.
    hi = max(d_star, 1.0)
    while f_minus(hi) < 0.0:
        hi *= 2.0
    d_lo_minus = _bisect(f_minus, 1e-12, hi)

    return d_lo_plus, d_hi_plus, d_lo_minus
