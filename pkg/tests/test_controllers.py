import numpy as np
import pytest

from rovsim.controllers import (
    AdaptiveState,
    AismcController,
    IsmcController,
    PidController,
    PidGains,
    SlidingGains,
    SmcController,
    aismc_law,
    default_adaptive_state,
    default_pid_gains,
    default_sliding_gains,
    ismc_law,
    lyapunov_diagnostic,
    pid_law,
    sliding_surface,
    smc_law,
    smooth_sign,
    tracking_error,
)
from rovsim.references import ReferenceSample


def zero_ref():
    return ReferenceSample(np.zeros(6), np.zeros(6), np.zeros(6))


class TestTrackingError:
    def test_exact_match_is_zero(self):
        eta = np.array([1.0, -2.0, 0.5, 0.3, 0.2, -1.1])
        np.testing.assert_allclose(tracking_error(eta, eta), np.zeros(6))

    def test_yaw_wraps_short_way(self):
        eta = np.zeros(6)
        eta_r = np.zeros(6)
        eta[5] = 3.1
        eta_r[5] = -3.1
        e = tracking_error(eta, eta_r)
        assert e[5] == pytest.approx(6.2 - 2.0 * np.pi)

    def test_position_offset_leaves_angles(self):
        eta = np.array([2.0, -1.0, 0.3, 0.0, 0.0, 0.0])
        e = tracking_error(eta, np.zeros(6))
        np.testing.assert_allclose(e[3:], np.zeros(3))
        np.testing.assert_allclose(e[:3], eta[:3])


class TestSlidingSurface:
    def test_all_zero(self):
        gains = default_sliding_gains()
        s = sliding_surface(np.zeros(6), np.zeros(6), np.zeros(6), gains)
        np.testing.assert_allclose(s, np.zeros(6))

    def test_proportional_term(self):
        gains = default_sliding_gains()
        e = np.zeros(6)
        e[4] = 0.1
        s = sliding_surface(e, np.zeros(6), np.zeros(6), gains)
        assert s[4] == pytest.approx(0.085)

    def test_integral_term(self):
        gains = default_sliding_gains()
        integral = np.zeros(6)
        integral[5] = 0.2
        s = sliding_surface(np.zeros(6), np.zeros(6), integral, gains)
        assert s[5] == pytest.approx(0.3)


class TestSwitching:
    def test_bounded_by_one(self):
        x = np.linspace(-5, 5, 101)
        assert np.all(np.abs(smooth_sign(x, 0.01)) <= 1.0)

    def test_saturates_beyond_width(self):
        assert smooth_sign(np.array([0.5]), 0.01)[0] == pytest.approx(1.0, abs=1e-12)
        assert smooth_sign(np.array([-0.5]), 0.01)[0] == pytest.approx(-1.0, abs=1e-12)

    def test_zero_width_is_hard_sign(self):
        np.testing.assert_array_equal(smooth_sign(np.array([-0.3, 0.0, 2.0]), 0.0),
                                      [-1.0, 0.0, 1.0])


class TestIsmcLaw:
    def test_quiescent_on_surface(self):
        gains = default_sliding_gains()
        tau = ismc_law(np.zeros(6), np.zeros(6), np.zeros(6), np.zeros(6), gains)
        np.testing.assert_allclose(tau, np.zeros(6))

    def test_switching_contribution_when_saturated(self):
        gains = SlidingGains(c1=np.ones(6), c2=np.ones(6), gamma=np.ones(6),
                             k=np.full(6, 0.15))
        s = np.zeros(6)
        s[4] = 0.5  # far beyond the smoothing width
        tau = ismc_law(np.zeros(6), np.zeros(6), np.zeros(6), s, gains)
        assert tau[4] == pytest.approx(-1.0 * 0.5 - 0.15, abs=1e-6)

    def test_odd_symmetry_in_s(self):
        gains = default_sliding_gains()
        rng = np.random.default_rng(31)
        s = rng.uniform(-0.5, 0.5, 6)
        plus = ismc_law(np.zeros(6), np.zeros(6), np.zeros(6), s, gains)
        minus = ismc_law(np.zeros(6), np.zeros(6), np.zeros(6), -s, gains)
        np.testing.assert_allclose(plus, -minus, atol=1e-12)


class TestSmcLaw:
    def test_reduces_to_ismc_with_zero_c2(self):
        gains = default_sliding_gains()
        rng = np.random.default_rng(32)
        e = rng.uniform(-0.2, 0.2, 6)
        e_dot = rng.uniform(-0.2, 0.2, 6)
        ref_ddot = rng.uniform(-0.1, 0.1, 6)
        from dataclasses import replace
        reduced = replace(gains, c2=np.zeros(6))
        s = sliding_surface(e, e_dot, np.zeros(6), reduced)
        np.testing.assert_allclose(smc_law(ref_ddot, e, e_dot, gains),
                                   ismc_law(ref_ddot, e, e_dot, s, reduced), atol=1e-12)

    def test_quiescent(self):
        np.testing.assert_allclose(
            smc_law(np.zeros(6), np.zeros(6), np.zeros(6), default_sliding_gains()),
            np.zeros(6))

    def test_undersized_gain_leaves_steady_state_error(self):
        # single-axis closed loop with a constant disturbance the switching
        # gain cannot dominate: the error settles away from zero
        k, d = 0.1, 0.5
        gains = SlidingGains(c1=np.ones(6), c2=np.ones(6), gamma=np.ones(6),
                             k=np.full(6, k))
        x = np.zeros(2)  # [e, e_dot] on one axis
        dt = 0.01
        for _ in range(4000):
            tau = smc_law(np.zeros(6), np.array([x[0], 0, 0, 0, 0, 0]),
                          np.array([x[1], 0, 0, 0, 0, 0]), gains)[0]
            acc = tau + d
            x = x + dt * np.array([x[1], acc])
        assert abs(x[0]) > 0.05

    def test_integral_variant_removes_the_offset(self):
        k, d = 0.1, 0.5
        gains = SlidingGains(c1=np.ones(6), c2=np.ones(6), gamma=np.ones(6),
                             k=np.full(6, k))
        x = np.zeros(2)
        integral = 0.0
        dt = 0.01
        for _ in range(8000):
            e = np.array([x[0], 0, 0, 0, 0, 0])
            e_dot = np.array([x[1], 0, 0, 0, 0, 0])
            integral += x[0] * dt
            ivec = np.array([integral, 0, 0, 0, 0, 0])
            s = sliding_surface(e, e_dot, ivec, gains)
            tau = ismc_law(np.zeros(6), e, e_dot, s, gains)[0]
            x = x + dt * np.array([x[1], tau + d])
        assert abs(x[0]) < 0.01


class TestAismcLaw:
    def test_growth_outside_boundary_layer(self):
        gains = default_sliding_gains()
        adaptive = AdaptiveState(k_hat=np.full(6, 0.01), k_bar=np.full(6, 0.15),
                                 beta=np.full(6, 1e-3), lam=np.full(6, 20.0),
                                 integral_e=np.zeros(6))
        s = np.zeros(6)
        s[4] = 0.3  # boundary layer is 20 * 0.01 = 0.2
        _, updated = aismc_law(np.zeros(6), np.zeros(6), np.zeros(6), s, gains,
                               adaptive, dt=1.0)
        assert updated.k_hat[4] == pytest.approx(0.01 + 0.045)

    def test_decay_inside_boundary_layer(self):
        gains = default_sliding_gains()
        adaptive = AdaptiveState(k_hat=np.full(6, 0.01), k_bar=np.full(6, 0.15),
                                 beta=np.full(6, 1e-3), lam=np.full(6, 20.0),
                                 integral_e=np.zeros(6))
        s = np.zeros(6)
        s[4] = 0.1  # inside the 0.2 boundary layer
        _, updated = aismc_law(np.zeros(6), np.zeros(6), np.zeros(6), s, gains,
                               adaptive, dt=1.0)
        assert updated.k_hat[4] == pytest.approx(0.01 - 0.015 + 0.0, abs=1e-12) or \
            updated.k_hat[4] == pytest.approx(1e-3)

    def test_floor_pushes_gain_up(self):
        gains = default_sliding_gains()
        beta = np.full(6, 1e-3)
        adaptive = AdaptiveState(k_hat=beta.copy(), k_bar=np.full(6, 0.15),
                                 beta=beta, lam=np.full(6, 20.0),
                                 integral_e=np.zeros(6))
        _, updated = aismc_law(np.zeros(6), np.zeros(6), np.zeros(6), np.zeros(6),
                               gains, adaptive, dt=0.05)
        assert np.all(updated.k_hat > beta)
        np.testing.assert_allclose(updated.k_hat, beta + 0.05 * beta)

    def test_gain_never_below_floor(self):
        gains = default_sliding_gains()
        rng = np.random.default_rng(33)
        adaptive = default_adaptive_state()
        for _ in range(500):
            s = rng.uniform(-0.5, 0.5, 6)
            _, adaptive = aismc_law(np.zeros(6), np.zeros(6), np.zeros(6), s, gains,
                                    adaptive, dt=0.05)
            assert np.all(adaptive.k_hat >= adaptive.beta)

    def test_update_sign_follows_boundary_rule(self):
        gains = default_sliding_gains()
        rng = np.random.default_rng(34)
        adaptive = default_adaptive_state()
        for _ in range(500):
            s = rng.uniform(-0.4, 0.4, 6)
            eps_hat = adaptive.epsilon_hat
            above_floor = adaptive.k_hat > adaptive.beta
            _, updated = aismc_law(np.zeros(6), np.zeros(6), np.zeros(6), s, gains,
                                   adaptive, dt=0.05)
            step = updated.k_hat - adaptive.k_hat
            outside = np.abs(s) > eps_hat
            assert np.all(step[above_floor & outside] >= 0)
            assert np.all(step[above_floor & ~outside] <= 0)
            adaptive = updated

    def test_boundary_layer_recomputed_from_current_gain(self):
        state = default_adaptive_state()
        np.testing.assert_allclose(state.epsilon_hat, state.lam * state.k_hat)
        from dataclasses import replace
        bigger = replace(state, k_hat=2.0 * state.k_hat)
        np.testing.assert_allclose(bigger.epsilon_hat, 2.0 * state.epsilon_hat)


class TestPidLaw:
    def test_zero_errors_zero_output(self):
        np.testing.assert_allclose(
            pid_law(np.zeros(6), np.zeros(6), np.zeros(6), default_pid_gains()),
            np.zeros(6))

    def test_pd_part_exact_without_integral(self):
        gains = PidGains(kp=np.full(6, 2.0), ki=np.zeros(6), kd=np.full(6, 0.5))
        e = np.full(6, 0.1)
        e_dot = np.full(6, -0.2)
        np.testing.assert_allclose(pid_law(e, e_dot, np.zeros(6), gains),
                                   -(2.0 * e + 0.5 * e_dot))

    def test_integral_clamp_engages(self):
        gains = PidGains(kp=np.zeros(6), ki=np.ones(6), kd=np.zeros(6),
                         integral_clamp=0.5)
        out = pid_law(np.zeros(6), np.zeros(6), np.full(6, 10.0), gains)
        np.testing.assert_allclose(out, np.full(6, -0.5))


class TestLyapunovDiagnostic:
    def test_zero_surface(self):
        diag = lyapunov_diagnostic(np.zeros(6), np.ones(6), np.ones(6))
        assert diag.v1 == 0.0
        assert diag.v1_dot_bound == 0.0

    def test_dominating_gain_gives_negative_bound(self):
        s = np.array([0.1, -0.2, 0.05, 0.0, 0.3, -0.1])
        d = np.full(6, 0.2)
        diag = lyapunov_diagnostic(s, np.ones(6), np.full(6, 0.5), d)
        assert diag.gain_dominates
        assert diag.v1_dot_bound < 0

    def test_undersized_gain_flagged(self):
        diag = lyapunov_diagnostic(np.ones(6), np.ones(6), np.full(6, 0.1),
                                   np.full(6, 0.5))
        assert not diag.gain_dominates


class TestOnSurfaceDecay:
    def test_error_decay_matches_closed_form(self):
        # on the surface the error obeys e_ddot + c1 e_dot + c2 e = 0;
        # compare an RK4 integration of that reduction with the closed form
        c1, c2 = 0.85, 0.8
        e0 = 0.2
        roots = np.roots([1.0, c1, c2])
        # s = 0 at t=0 fixes e_dot(0) = -c1 e0 (zero integral state)
        edot0 = -c1 * e0
        A = np.array([[1.0, 1.0], [roots[0], roots[1]]])
        coef = np.linalg.solve(A, [e0, edot0])

        def closed_form(t):
            return float(np.real(coef[0] * np.exp(roots[0] * t)
                                 + coef[1] * np.exp(roots[1] * t)))

        x = np.array([e0, edot0])
        dt = 1e-3
        for i in range(int(10.0 / dt)):
            def f(x):
                return np.array([x[1], -c1 * x[1] - c2 * x[0]])
            k1 = f(x)
            k2 = f(x + 0.5 * dt * k1)
            k3 = f(x + 0.5 * dt * k2)
            k4 = f(x + dt * k3)
            x = x + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        assert x[0] == pytest.approx(closed_form(10.0), abs=1e-6)


class TestControllers:
    @pytest.mark.parametrize("ctrl", [PidController(), SmcController(),
                                      IsmcController(), AismcController()])
    def test_quiescent_at_zero(self, ctrl):
        ctrl.reset()
        out = ctrl.compute(0.0, np.zeros(6), np.zeros(6), zero_ref(), 0.05)
        np.testing.assert_allclose(out.tau_tilde.vec, np.zeros(6), atol=1e-12)

    def test_aismc_controller_floors_gain(self):
        ctrl = AismcController()
        rng = np.random.default_rng(35)
        for i in range(200):
            eta = np.zeros(6)
            eta[3:] = rng.uniform(-0.1, 0.1, 3)
            out = ctrl.compute(i * 0.05, eta, rng.uniform(-0.1, 0.1, 6),
                               zero_ref(), 0.05)
            assert np.all(ctrl.adaptive.k_hat >= ctrl.adaptive.beta)
            assert np.all(np.isfinite(out.tau_tilde.vec))

    def test_reset_restores_initial_adaptive_state(self):
        ctrl = AismcController()
        k0 = ctrl.adaptive.k_hat.copy()
        eta = np.zeros(6)
        eta[4] = 0.3
        for i in range(50):
            ctrl.compute(i * 0.05, eta, np.zeros(6), zero_ref(), 0.05)
        assert not np.array_equal(ctrl.adaptive.k_hat, k0)
        ctrl.reset()
        np.testing.assert_array_equal(ctrl.adaptive.k_hat, k0)
        np.testing.assert_array_equal(ctrl.adaptive.integral_e, np.zeros(6))
