"""Bessel primitives, linear kernel, and nonlinear perturbation decay."""

import math

import numpy as np
import pytest
import scipy.special

from treewaves import (
    BesselRangeError,
    BranchPatternViolationError,
    InvalidParameterError,
    KernelParams,
    NotPinnedError,
    Profile,
    SimConfig,
    TreeParams,
    bessel_i,
    bessel_i_scaled,
    integrate,
    kernel_decay_rate,
    linear_kernel,
    mckean,
    perturbation_decay_test,
    pinned_profile,
)


def series_i0(x, terms=30):
    """Independent power-series oracle for I_0."""
    return sum((x / 2.0) ** (2 * m) / math.factorial(m) ** 2 for m in range(terms))


class TestBessel:
    def test_at_zero(self):
        assert bessel_i(0, 0.0) == 1.0
        for n in (1, 2, 7, 40):
            assert bessel_i(n, 0.0) == 0.0

    def test_i0_of_one_against_series_oracle(self):
        ref = series_i0(1.0)
        assert ref == pytest.approx(1.2660658777520084, abs=1e-12)
        assert bessel_i(0, 1.0) == pytest.approx(ref, rel=1e-10)

    def test_negative_order_symmetry(self):
        assert bessel_i(-3, 2.5) == bessel_i(3, 2.5)

    def test_recurrence_identity(self):
        # I_{n-1}(x) - I_{n+1}(x) = (2n/x) I_n(x)
        for n in range(1, 41):
            for x in [0.1, 0.5, 2.0, 8.0, 15.0, 40.0]:
                lhs = bessel_i(n - 1, x) - bessel_i(n + 1, x)
                rhs = (2.0 * n / x) * bessel_i(n, x)
                assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-300)

    def test_against_scipy_grid(self):
        for n in range(0, 61, 5):
            for x in [0.05, 1.0, 5.0, 11.9, 12.1, 25.0, 50.0]:
                ref = scipy.special.iv(n, x)
                assert bessel_i(n, x) == pytest.approx(ref, rel=1e-10, abs=1e-300)

    def test_scaled_against_scipy_large_arguments(self):
        for n in (0, 3, 25, 80):
            for x in (80.0, 200.0, 650.0):
                ref = scipy.special.ive(n, x)
                assert bessel_i_scaled(n, x) == pytest.approx(ref, rel=1e-10)

    def test_scaled_times_exponential_consistency(self):
        x = 30.0
        assert bessel_i_scaled(4, x) * math.exp(x) == pytest.approx(
            bessel_i(4, x), rel=1e-12
        )

    def test_overflow_range_check(self):
        with pytest.raises(BesselRangeError):
            bessel_i(0, 701.0)
        # The scaled variant keeps working there.
        assert bessel_i_scaled(0, 701.0) > 0.0

    def test_negative_argument_rejected(self):
        with pytest.raises(InvalidParameterError):
            bessel_i(0, -1.0)


class TestDecayRate:
    def test_reference_value(self):
        rate = kernel_decay_rate(KernelParams(1.0, 2.0))
        assert rate == pytest.approx(2.0 * math.sqrt(2.0) - 4.0, abs=1e-12)
        assert rate == pytest.approx(-1.1715728752538097, abs=1e-12)

    def test_limits(self):
        # Diffusion-free and unit-branching limits are pure reaction decay.
        assert kernel_decay_rate(KernelParams(1e-12, 2.0)) == pytest.approx(-1.0, abs=1e-6)
        assert kernel_decay_rate(KernelParams(3.0, 1.0 + 1e-12)) == pytest.approx(
            -1.0, abs=1e-5
        )

    def test_strictly_negative_everywhere(self):
        for d in np.logspace(-3, 3, 13):
            for k in [1.001, 1.5, 2.0, 10.0, 100.0]:
                assert kernel_decay_rate(KernelParams(float(d), float(k))) < 0.0


def rk4_linear_lattice(d, k, t_end, h, half_width):
    """Independent time-integration oracle for the linearized dynamics:
    unit impulse at site 0, Dirichlet-zero ghosts."""
    alpha = d * (k + 1.0) + 1.0
    u = np.zeros(2 * half_width + 1)
    u[half_width] = 1.0

    def deriv(v):
        vp = np.concatenate([v[1:], [0.0]])
        vm = np.concatenate([[0.0], v[:-1]])
        return d * k * vp - alpha * v + d * vm

    n_steps = int(round(t_end / h))
    for _ in range(n_steps):
        k1 = deriv(u)
        k2 = deriv(u + 0.5 * h * k1)
        k3 = deriv(u + 0.5 * h * k2)
        k4 = deriv(u + h * k3)
        u = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return u


class TestLinearKernel:
    def test_initial_condition_is_delta(self):
        kp = KernelParams(1.0, 2.0)
        assert linear_kernel(0, 0.0, kp) == 1.0
        for i in (-3, -1, 1, 2, 10):
            assert linear_kernel(i, 0.0, kp) == 0.0

    def test_reference_composition(self):
        kp = KernelParams(1.0, 2.0)
        expected = math.exp(-4.0) * bessel_i(0, 2.0 * math.sqrt(2.0))
        assert linear_kernel(0, 1.0, kp) == pytest.approx(expected, rel=1e-12)

    def test_against_time_integration(self):
        kp = KernelParams(1.0, 2.0)
        u = rk4_linear_lattice(1.0, 2.0, t_end=1.0, h=1e-3, half_width=40)
        for i in (-3, -1, 0, 1, 4):
            assert linear_kernel(i, 1.0, kp) == pytest.approx(
                u[40 + i], abs=1e-6
            )

    def test_decay_in_time(self):
        kp = KernelParams(1.0, 2.0)
        rate = kernel_decay_rate(kp)
        previous = None
        for t in (2.0, 4.0, 8.0, 16.0):
            value = linear_kernel(0, t, kp)
            assert value > 0.0
            if previous is not None:
                # Per-site decay is at least exponential at the predicted rate.
                assert value <= previous * math.exp(rate * (t / 2.0)) * 1.5
            previous = value

    def test_solves_linear_lattice_equation(self):
        # Centered time difference at (i, t) converges at second order to
        # the lattice right-hand side under step halving.
        kp = KernelParams(1.0, 2.0)
        d, k = 1.0, 2.0
        alpha = d * (k + 1.0) + 1.0
        i, t = 2, 1.5
        rhs_val = (
            d * k * linear_kernel(i + 1, t, kp)
            - alpha * linear_kernel(i, t, kp)
            + d * linear_kernel(i - 1, t, kp)
        )

        def fd_error(dt):
            fd = (linear_kernel(i, t + dt, kp) - linear_kernel(i, t - dt, kp)) / (
                2.0 * dt
            )
            return abs(fd - rhs_val)

        err1 = fd_error(0.02)
        err2 = fd_error(0.01)
        order = math.log2(err1 / err2)
        assert order >= 1.9

    def test_weight_asymmetry(self):
        # Parent-side sites carry the k^{-i/2} amplification.
        kp = KernelParams(1.0, 2.0)
        assert linear_kernel(-4, 2.0, kp) == pytest.approx(
            linear_kernel(4, 2.0, kp) * 2.0**4, rel=1e-12
        )


class TestPerturbationDecay:
    def test_small_perturbation_decays(self):
        p = TreeParams(1.0, 2.0, 0.7)
        report = perturbation_decay_test(p, 0.01)
        assert report.times[-1] == pytest.approx(
            10.0 / abs(report.theory_rate), rel=1e-2
        )
        assert report.final_sup <= 0.01 * report.amplitude
        assert np.all(np.diff(report.sup_norms) <= 1e-12)
        assert report.fitted_rate is not None
        assert report.fitted_rate <= -1.0

    def test_envelope_bound(self):
        p = TreeParams(1.0, 2.0, 0.7)
        report = perturbation_decay_test(p, 0.01)
        rate = report.theory_rate
        sel = report.times >= 1.0
        bound = report.amplitude * np.exp((rate + 0.1) * report.times[sel])
        assert np.all(report.sup_norms[sel] <= bound)

    def test_zero_amplitude_is_stationary(self):
        p = TreeParams(1.0, 2.0, 0.7)
        report = perturbation_decay_test(p, 0.0)
        assert report.sup_norms.max() <= 1e-10

    def test_linear_regime_matches_kernel(self):
        # With the branch pattern intact the deviation is exactly linear,
        # so amplitude * kernel predicts the site-0 deviation.
        p = TreeParams(1.0, 2.0, 0.7)
        amplitude = 0.01
        cfg = SimConfig(half_width=100, h=1e-3, t_end=2.0, record_every=100)
        base = pinned_profile(1.0, 2.0, -100, 100)
        perturbed = base.values.copy()
        perturbed[100] -= amplitude
        traj = integrate(Profile(-100, perturbed), p, mckean(0.7), cfg)
        j = int(np.argmin(np.abs(traj.times - 1.0)))
        t = float(traj.times[j])
        deviation = base.values[100] - traj.states[j][100]
        predicted = amplitude * linear_kernel(0, t, KernelParams(1.0, 2.0))
        assert deviation == pytest.approx(predicted, rel=0.05)

    def test_branch_crossing_detected(self):
        p = TreeParams(1.0, 2.0, 0.7)
        # a_plus - a = 0.1536 here, so 0.2 pushes site 0 below threshold.
        with pytest.raises(BranchPatternViolationError):
            perturbation_decay_test(p, 0.2)

    def test_outside_region_rejected(self):
        with pytest.raises(NotPinnedError):
            perturbation_decay_test(TreeParams(1.0, 2.0, 0.95), 0.01)

    def test_negative_amplitude_rejected(self):
        with pytest.raises(InvalidParameterError):
            perturbation_decay_test(TreeParams(1.0, 2.0, 0.7), -0.01)

    def test_kernel_params_validation(self):
        with pytest.raises(InvalidParameterError):
            KernelParams(0.0, 2.0)
        with pytest.raises(InvalidParameterError):
            KernelParams(1.0, 1.0)
