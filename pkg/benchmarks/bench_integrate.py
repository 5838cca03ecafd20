#!/usr/bin/env python3
"""Benchmark the compiled integration core against the numpy fallback.

Runs the same RK4 workloads through ``treewaves._core`` (Cython) and
``treewaves._core_py`` (numpy) and reports wall times, the speedup, and
the maximum state difference between the two backends.

Usage:
    python benchmarks/bench_integrate.py
"""

from __future__ import annotations

import time

import numpy as np

from treewaves import _core_py
from treewaves.pinning import TreeParams
from treewaves.simulator import default_step, step_profile

try:
    from treewaves import _core
except ImportError:
    _core = None

CASES = [
    # (d, k, a, half_width, t_end)
    (1.0, 2.0, 0.9, 100, 20.0),
    (5.0, 2.0, 0.97, 100, 20.0),
    (10.0, 2.0, 0.3, 100, 20.0),
    (1.0, 3.0, 0.7, 200, 20.0),
]


def run(backend, u0, d, k, a, h, n_steps):
    t0 = time.perf_counter()
    _, states = backend.integrate_window(
        u0, d, k, a, _core_py.MCKEAN, 0.0, 1.0, h, n_steps, max(1, n_steps // 200)
    )
    return time.perf_counter() - t0, states


def main() -> None:
    if _core is None:
        print("compiled core not built (pip install -e . --no-build-isolation); "
              "timing the numpy fallback only\n")
    header = f"{'case (d, k, a, N)':<28}{'steps':>9}{'numpy [s]':>11}{'cython [s]':>12}{'speedup':>9}{'max diff':>11}"
    print(header)
    print("-" * len(header))
    for d, k, a, half_width, t_end in CASES:
        p = TreeParams(d, k, a)
        h = default_step(p)
        n_steps = int(round(t_end / h))
        u0 = step_profile(half_width).values
        t_py, s_py = run(_core_py, u0, d, k, a, h, n_steps)
        label = f"({d:g}, {k:g}, {a:g}, {half_width})"
        if _core is None:
            print(f"{label:<28}{n_steps:>9}{t_py:>11.3f}{'-':>12}{'-':>9}{'-':>11}")
            continue
        t_cy, s_cy = run(_core, u0, d, k, a, h, n_steps)
        diff = float(np.abs(s_py - s_cy).max())
        print(f"{label:<28}{n_steps:>9}{t_py:>11.3f}{t_cy:>12.3f}{t_py / t_cy:>8.1f}x{diff:>11.2e}")


if __name__ == "__main__":
    main()
