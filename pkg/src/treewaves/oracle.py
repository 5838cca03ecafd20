"""Independent finite-window verification of the pinning bounds.

With the sign pattern of a monotone front fixed (below threshold for
i < 0, above for i >= 0), the stationary system on a window [-N, N] is a
plain tridiagonal linear system:

    0 = d k u_{i+1} - (d (k+1) + 1) u_i + d u_{i-1} + [i >= 0],

closed by the exact equilibria u_{-N-1} = 0 and u_{N+1} = 1.  Solving it
directly recovers the interface values (u_{-1}, u_0), which are the
finite-window pinning bounds: the front exists for u_{-1} < a <= u_0.
Nothing here touches the closed-form eigenvalue route, so agreement of
the two is a genuine cross-check.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidParameterError, SingularSystemError
from .pinning import RegionBounds
from .profile import Profile

_PIVOT_FLOOR = 1e-300


def tridiagonal_solve(
    lower: np.ndarray,
    diag: np.ndarray,
    upper: np.ndarray,
    rhs: np.ndarray,
) -> np.ndarray:
    """Thomas algorithm: forward elimination then back substitution.

    All four arrays share the system length n; ``lower[i]`` multiplies
    x[i-1] in row i (lower[0] unused) and ``upper[i]`` multiplies x[i+1]
    (upper[n-1] unused).  Raises SingularSystemError on a zero pivot.
    """
    lower = np.asarray(lower, dtype=np.float64)
    diag = np.asarray(diag, dtype=np.float64)
    upper = np.asarray(upper, dtype=np.float64)
    rhs = np.asarray(rhs, dtype=np.float64)
    n = diag.size
    if n < 1 or lower.size != n or upper.size != n or rhs.size != n:
        raise InvalidParameterError("tridiagonal bands and rhs must share one length >= 1")

    c_prime = np.empty(n)
    d_prime = np.empty(n)
    piv = diag[0]
    if abs(piv) < _PIVOT_FLOOR:
        raise SingularSystemError("zero pivot in row 0")
    c_prime[0] = upper[0] / piv
    d_prime[0] = rhs[0] / piv
    for i in range(1, n):
        piv = diag[i] - lower[i] * c_prime[i - 1]
        if abs(piv) < _PIVOT_FLOOR:
            raise SingularSystemError(f"zero pivot in row {i}")
        c_prime[i] = upper[i] / piv
        d_prime[i] = (rhs[i] - lower[i] * d_prime[i - 1]) / piv

    x = np.empty(n)
    x[-1] = d_prime[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d_prime[i] - c_prime[i] * x[i + 1]
    return x


def solve_stationary_window(
    d: float,
    k: float,
    N: int,
    interface_at_zero: bool = True,
) -> Profile:
    """Direct solution of the fixed-sign-pattern stationary system on [-N, N].

    With ``interface_at_zero`` the forcing [i >= 0] starts at site 0;
    otherwise it starts at site 1, which reproduces the same front shifted
    one site right (translation invariance of the stationary system).
    The detuning a never enters: it only decides afterwards whether the
    solved front is consistent.
    """
    if not d > 0.0:
        raise InvalidParameterError(f"diffusion d must be positive, got {d}")
    if not k > 1.0:
        raise InvalidParameterError(f"branching factor k must exceed 1, got {k}")
    if N < 10:
        raise InvalidParameterError(f"window half-width N must be >= 10, got {N}")
    n = 2 * N + 1
    alpha = d * (k + 1.0) + 1.0
    lower = np.full(n, d)
    diag = np.full(n, -alpha)
    upper = np.full(n, d * k)
    first_forced = 0 if interface_at_zero else 1
    indices = np.arange(-N, N + 1)
    rhs_vec = np.where(indices >= first_forced, -1.0, 0.0)
    rhs_vec[-1] -= d * k * 1.0
    return Profile(-N, tridiagonal_solve(lower, diag, upper, rhs_vec))


def empirical_bounds(d: float, k: float, N: int = 200) -> RegionBounds:
    """Finite-window pinning bounds (u_{-1}, u_0) of the window front.

    Converges geometrically to the closed-form bounds as N grows.
    """
    window = solve_stationary_window(d, k, N)
    return RegionBounds(float(window.values[N - 1]), float(window.values[N]))
