"""Pure-numpy fallback for the time-integration hot loop.

Mirrors the compiled extension ``treewaves._core`` operation for
operation (same expressions, same evaluation order per site) so the two
backends agree to rounding.  Selected automatically when the extension
is not built, or explicitly via TREEWAVES_BACKEND=python.
"""

from __future__ import annotations

import numpy as np

MCKEAN = 0
CUBIC = 1


def _rhs(u, d, k, a, kind, left, right, up, um, g, out):
    up[:-1] = u[1:]
    up[-1] = right
    um[1:] = u[:-1]
    um[0] = left
    if kind == MCKEAN:
        np.negative(u, out=g)
        g[u >= a] += 1.0
    else:
        np.multiply(u, 1.0 - u, out=g)
        g *= u - a
    out[:] = d * (k * up - (k + 1.0) * u + um) + g


def integrate_window(u0, d, k, a, kind, left, right, h, n_steps, record_every):
    """Fixed-step classical RK4 on the truncated window.

    Ghost sites beyond the window are held at ``left`` and ``right``.
    Records the state every ``record_every`` steps plus the initial and
    final states; returns (times, states) with states of shape
    (n_records, window length).
    """
    u = np.array(u0, dtype=np.float64, copy=True)
    n = u.size
    n_records = 1 + n_steps // record_every + (0 if n_steps % record_every == 0 else 1)
    times = np.empty(n_records, dtype=np.float64)
    states = np.empty((n_records, n), dtype=np.float64)
    times[0] = 0.0
    states[0] = u

    k1 = np.empty(n)
    k2 = np.empty(n)
    k3 = np.empty(n)
    k4 = np.empty(n)
    tmp = np.empty(n)
    up = np.empty(n)
    um = np.empty(n)
    g = np.empty(n)

    hh = 0.5 * h
    h6 = h / 6.0
    row = 1
    # Divergent states are reported by the caller via the final finiteness
    # check, exactly as with the compiled core; keep the loop silent.
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, n_steps + 1):
            _rhs(u, d, k, a, kind, left, right, up, um, g, k1)
            tmp[:] = u + hh * k1
            _rhs(tmp, d, k, a, kind, left, right, up, um, g, k2)
            tmp[:] = u + hh * k2
            _rhs(tmp, d, k, a, kind, left, right, up, um, g, k3)
            tmp[:] = u + h * k3
            _rhs(tmp, d, k, a, kind, left, right, up, um, g, k4)
            u += h6 * (((k1 + 2.0 * k2) + 2.0 * k3) + k4)
            if step % record_every == 0 or step == n_steps:
                times[row] = step * h
                states[row] = u
                row += 1
    return times, states
