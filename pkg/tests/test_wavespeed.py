"""Interface tracking and empirical direction classification."""

import numpy as np
import pytest

from treewaves import (
    Direction,
    InsufficientDataError,
    InvalidParameterError,
    NoCrossingError,
    NonMonotoneProfileWarning,
    Profile,
    SimConfig,
    Trajectory,
    TreeParams,
    classify,
    classify_empirical,
    estimate_speed,
    integrate,
    interface_position,
    mckean,
    pinned_profile,
    step_profile,
)


class TestInterfacePosition:
    def test_sharp_step(self):
        assert interface_position(step_profile(10)) == pytest.approx(-0.5, abs=1e-14)

    def test_pinned_front_hits_level_at_node(self):
        # u_{-1} = 0.5 exactly at (d, k) = (1, 2), so the crossing sits on
        # the node itself.
        prof = pinned_profile(1.0, 2.0, -10, 10)
        assert interface_position(prof, 0.5) == pytest.approx(-1.0, abs=1e-12)

    def test_translation_equivariance(self):
        prof = pinned_profile(1.0, 2.0, -10, 10)
        base = interface_position(prof)
        shifted = interface_position(prof.shifted(1))
        assert shifted == pytest.approx(base + 1.0, abs=1e-12)

    def test_no_crossing(self):
        low = Profile(0, np.array([0.0, 0.1, 0.2]))
        with pytest.raises(NoCrossingError):
            interface_position(low)
        high = Profile(0, np.array([0.8, 0.9, 1.0]))
        with pytest.raises(NoCrossingError):
            interface_position(high)

    def test_non_monotone_warns_and_uses_first_crossing(self):
        wiggly = Profile(0, np.array([0.0, 0.6, 0.4, 0.7]))
        with pytest.warns(NonMonotoneProfileWarning):
            pos = interface_position(wiggly)
        assert pos == pytest.approx(0.0 + 0.5 / 0.6)


def translated_ramp_trajectory(c, n_snapshots=30, half_width=40, dt=1.0):
    """Exactly linearly moving piecewise-linear front: recovered speed is c."""
    times = dt * np.arange(n_snapshots)
    idx = np.arange(-half_width, half_width + 1, dtype=float)
    states = np.empty((n_snapshots, idx.size))
    for j, t in enumerate(times):
        states[j] = np.clip(0.5 + (idx - c * t) / 8.0, 0.0, 1.0)
    return Trajectory(times, -half_width, states)


class TestEstimateSpeed:
    def test_recovers_linear_motion(self):
        for c in [0.25, -0.4, 0.0]:
            est = estimate_speed(translated_ramp_trajectory(c))
            assert est.c == pytest.approx(c, abs=1e-12)
            assert est.fit_quality == pytest.approx(1.0, abs=1e-9)
            assert not est.truncated

    def test_direction_thresholds(self):
        assert estimate_speed(translated_ramp_trajectory(0.25)).direction is Direction.DOWN
        assert estimate_speed(translated_ramp_trajectory(-0.25)).direction is Direction.UP
        assert estimate_speed(translated_ramp_trajectory(0.0)).direction is Direction.PINNED

    def test_insufficient_data(self):
        with pytest.raises(InsufficientDataError):
            estimate_speed(translated_ramp_trajectory(0.1, n_snapshots=12))

    def test_bad_transient_fraction_rejected(self):
        with pytest.raises(InvalidParameterError):
            estimate_speed(translated_ramp_trajectory(0.1), transient_fraction=1.5)

    def test_truncated_run_keeps_pretruncation_fit(self):
        # Fast front: later snapshots sit in the edge zone and are dropped,
        # but the direction and the flag survive.
        est = estimate_speed(
            translated_ramp_trajectory(2.0, n_snapshots=240, dt=0.25)
        )
        assert est.truncated
        assert est.direction is Direction.DOWN
        assert est.c == pytest.approx(2.0, abs=1e-9)

    @pytest.mark.parametrize("d,k,a", [(1.0, 2.0, 0.7), (0.5, 3.0, 0.8), (2.0, 1.5, 0.6)])
    def test_exact_pinned_front_speed(self, d, k, a):
        p = TreeParams(d, k, a)
        prof = pinned_profile(d, k, -100, 100)
        cfg = SimConfig(half_width=100, t_end=50.0)
        traj = integrate(prof, p, mckean(a), cfg)
        est = estimate_speed(traj)
        assert abs(est.c) <= 1e-6
        assert est.direction is Direction.PINNED

    def test_step_data_above_region_moves_down(self):
        p = TreeParams(1.0, 2.0, 0.9)
        cfg = SimConfig(half_width=100, t_end=200.0)
        traj = integrate(step_profile(100), p, mckean(0.9), cfg)
        est = estimate_speed(traj)
        assert est.direction is Direction.DOWN
        assert est.c > 1e-3

    def test_step_data_below_region_moves_up(self):
        p = TreeParams(1.0, 2.0, 0.4)
        cfg = SimConfig(half_width=100, t_end=200.0)
        traj = integrate(step_profile(100), p, mckean(0.4), cfg)
        est = estimate_speed(traj)
        assert est.direction is Direction.UP
        assert est.c < -1e-3


class TestClassifyEmpirical:
    def test_interior_of_region_is_pinned(self):
        est = classify_empirical(TreeParams(1.0, 2.0, 0.7))
        assert est.direction is Direction.PINNED

    def test_small_diffusion_is_pinned(self):
        est = classify_empirical(TreeParams(0.01, 2.0, 0.5))
        assert est.direction is Direction.PINNED

    def test_agrees_with_closed_form_at_strong_diffusion(self):
        p = TreeParams(5.0, 2.0, 0.99)
        expected = classify(p)
        est = classify_empirical(p)
        assert est.direction is expected

    @pytest.mark.parametrize(
        "d,a", [(1.0, 0.9), (1.0, 0.7), (10.0, 0.45)]
    )
    def test_direction_robust_to_discretization(self, d, a):
        p = TreeParams(d, 2.0, a)
        base = classify_empirical(p, SimConfig(half_width=100, t_end=150.0))
        h_half = SimConfig(half_width=100, t_end=150.0, h=0.5 * 0.01 / (d * 3.0 + 1.0))
        refined_h = classify_empirical(p, h_half)
        wide = classify_empirical(p, SimConfig(half_width=200, t_end=150.0))
        assert base.direction is refined_h.direction is wide.direction
        assert base.direction is classify(p)
