# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled time-integration hot loop (fixed-step classical RK4).

Same contract as the pure-numpy fallback ``treewaves._core_py``; the two
are interchangeable and kept expression-for-expression identical.
"""

import numpy as np

MCKEAN = 0
CUBIC = 1


cdef inline void _rhs(const double* u, double* out, Py_ssize_t n, double d,
                      double k, double a, int kind, double left,
                      double right) noexcept nogil:
    cdef Py_ssize_t i
    cdef double ui, up, um, g
    for i in range(n):
        ui = u[i]
        um = left if i == 0 else u[i - 1]
        up = right if i == n - 1 else u[i + 1]
        if kind == 0:
            g = (1.0 - ui) if ui >= a else -ui
        else:
            g = ui * (1.0 - ui) * (ui - a)
        out[i] = d * (k * up - (k + 1.0) * ui + um) + g


def integrate_window(u0, double d, double k, double a, int kind, double left,
                     double right, double h, long n_steps, long record_every):
    """Fixed-step classical RK4 on the truncated window.

    Ghost sites beyond the window are held at ``left`` and ``right``.
    Records the state every ``record_every`` steps plus the initial and
    final states; returns (times, states) with states of shape
    (n_records, window length).
    """
    u_arr = np.array(u0, dtype=np.float64, copy=True)
    cdef double[::1] u = u_arr
    cdef Py_ssize_t n = u.shape[0]
    cdef long n_records = 1 + n_steps // record_every + (0 if n_steps % record_every == 0 else 1)
    times_arr = np.empty(n_records, dtype=np.float64)
    states_arr = np.empty((n_records, n), dtype=np.float64)
    cdef double[::1] times = times_arr
    cdef double[:, ::1] states = states_arr

    work = np.empty((5, n), dtype=np.float64)
    cdef double[:, ::1] w = work
    cdef double* k1 = &w[0, 0]
    cdef double* k2 = &w[1, 0]
    cdef double* k3 = &w[2, 0]
    cdef double* k4 = &w[3, 0]
    cdef double* tmp = &w[4, 0]
    cdef double* up = &u[0]

    cdef double hh = 0.5 * h
    cdef double h6 = h / 6.0
    cdef long step, row
    cdef Py_ssize_t i

    times[0] = 0.0
    for i in range(n):
        states[0, i] = up[i]

    row = 1
    with nogil:
        for step in range(1, n_steps + 1):
            _rhs(up, k1, n, d, k, a, kind, left, right)
            for i in range(n):
                tmp[i] = up[i] + hh * k1[i]
            _rhs(tmp, k2, n, d, k, a, kind, left, right)
            for i in range(n):
                tmp[i] = up[i] + hh * k2[i]
            _rhs(tmp, k3, n, d, k, a, kind, left, right)
            for i in range(n):
                tmp[i] = up[i] + h * k3[i]
            _rhs(tmp, k4, n, d, k, a, kind, left, right)
            for i in range(n):
                up[i] = up[i] + h6 * (((k1[i] + 2.0 * k2[i]) + 2.0 * k3[i]) + k4[i])
            if step % record_every == 0 or step == n_steps:
                times[row] = step * h
                for i in range(n):
                    states[row, i] = up[i]
                row += 1
    return times_arr, states_arr
