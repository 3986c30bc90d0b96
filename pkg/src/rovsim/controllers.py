"""Attitude/position tracking controllers: PID, SMC, ISMC and AISMC.

All four controllers act in the earth-frame acceleration space: they output
a normalized control wrench that the allocation chain converts to thruster
voltages. The sliding-mode family shares one surface definition,

    s = e_dot + C1 e + C2 integral(e),

with the conventional variant dropping the integral term. AISMC replaces
the fixed switching gain with a per-axis adaptive gain that grows while the
state is outside a boundary layer proportional to the gain itself and decays
inside it, keeping the switching authority near the smallest level that
still rejects the acting disturbance.

The switching function defaults to a narrow tanh ramp instead of a hard
sign: at a 20 Hz control rate a hard sign produces sampling-artifact
chattering that has nothing to do with the control design under test. A
zero width selects the hard sign.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dynamics import FRAME_NORMACC, Wrench
from .kinematics import wrap_angle
from .references import ReferenceSample

DEFAULT_SWITCH_WIDTH = 0.01


def _vec6(x) -> np.ndarray:
    return np.asarray(x, dtype=float).reshape(6).copy()


@dataclass
class SlidingGains:
    """Diagonal gains of the sliding-mode family.

    c1/c2 shape the error dynamics on the surface, gamma sets the
    exponential reaching rate, and k is the fixed switching gain used by the
    non-adaptive variants.
    """

    c1: np.ndarray
    c2: np.ndarray
    gamma: np.ndarray
    k: np.ndarray

    def __post_init__(self):
        self.c1 = _vec6(self.c1)
        self.c2 = _vec6(self.c2)
        self.gamma = _vec6(self.gamma)
        self.k = _vec6(self.k)
        for name in ("c1", "c2", "gamma", "k"):
            if np.any(getattr(self, name) < 0):
                raise ValueError(f"{name} entries must be non-negative")


@dataclass
class AdaptiveState:
    """Adaptive switching gains and their tuning, plus the error integral."""

    k_hat: np.ndarray
    k_bar: np.ndarray
    beta: np.ndarray
    lam: np.ndarray
    integral_e: np.ndarray

    def __post_init__(self):
        self.k_hat = _vec6(self.k_hat)
        self.k_bar = _vec6(self.k_bar)
        self.beta = _vec6(self.beta)
        self.lam = _vec6(self.lam)
        self.integral_e = _vec6(self.integral_e)
        if np.any(self.beta <= 0) or np.any(self.k_bar <= 0) or np.any(self.lam <= 0):
            raise ValueError("k_bar, beta and lam must be positive")
        if np.any(self.k_hat < self.beta):
            raise ValueError("k_hat must start at or above its floor beta")

    @property
    def epsilon_hat(self) -> np.ndarray:
        """Boundary layer, proportional to the current gain (never stored)."""
        return self.lam * self.k_hat


@dataclass
class PidGains:
    kp: np.ndarray
    ki: np.ndarray
    kd: np.ndarray
    integral_clamp: float = 10.0

    def __post_init__(self):
        self.kp = _vec6(self.kp)
        self.ki = _vec6(self.ki)
        self.kd = _vec6(self.kd)


@dataclass
class LyapunovDiagnostic:
    v1: float
    v1_dot_bound: float
    gain_dominates: bool


@dataclass
class ControlOutput:
    """Controller result for one step plus runtime diagnostics."""

    tau_tilde: Wrench
    s: np.ndarray
    k_hat: np.ndarray
    v1: float
    v1_dot_bound: float


def default_sliding_gains() -> SlidingGains:
    """Experimentally tuned surface/reaching gains for the BlueROV2 Heavy.

    The fixed switching gain defaults to a level that dominates the inherent
    dynamics even at large pitch, which is what a conventional SMC without
    an integral term needs to avoid steady-state offsets.
    """
    return SlidingGains(
        c1=(1.4, 1.6, 2.0, 0.7, 0.85, 2.0),
        c2=(2.0, 2.0, 0.7, 1.0, 0.8, 1.5),
        gamma=(0.2, 0.2, 0.2, 8.0, 8.0, 8.0),
        k=(0.3, 0.3, 0.3, 6.0, 6.0, 6.0),
    )


def default_adaptive_state() -> AdaptiveState:
    return AdaptiveState(
        k_hat=(0.05,) * 6,
        k_bar=(0.15, 0.1, 0.015, 0.15, 0.15, 0.025),
        beta=(1e-3,) * 6,
        lam=(20.0,) * 6,
        integral_e=np.zeros(6),
    )


def default_pid_gains() -> PidGains:
    """Benchmark PID, tuned once to match the adaptive controller's rise on
    the zero-angle task; conventional damping/integral ratios otherwise."""
    return PidGains(
        kp=(2.0, 2.0, 1.0, 5.0, 5.0, 6.0),
        kd=(2.0, 2.0, 2.0, 3.2, 3.2, 3.6),
        ki=(0.4, 0.4, 0.2, 1.6, 1.6, 1.8),
        integral_clamp=10.0,
    )


def smooth_sign(x: np.ndarray, width: float = DEFAULT_SWITCH_WIDTH) -> np.ndarray:
    """Switching function: tanh ramp of the given width, hard sign if zero."""
    if width == 0.0:
        return np.sign(x)
    return np.tanh(np.asarray(x, dtype=float) / width)


def tracking_error(eta: np.ndarray, eta_r: np.ndarray) -> np.ndarray:
    """Pose tracking error with angular components wrapped to (-pi, pi]."""
    e = np.asarray(eta, dtype=float) - np.asarray(eta_r, dtype=float)
    e[3:6] = wrap_angle(e[3:6])
    return e


def sliding_surface(e: np.ndarray, e_dot: np.ndarray, integral_e: np.ndarray,
                    gains: SlidingGains) -> np.ndarray:
    """Integral sliding variable s = e_dot + C1 e + C2 integral(e)."""
    return np.asarray(e_dot, dtype=float) + gains.c1 * e + gains.c2 * integral_e


def ismc_law(eta_r_ddot: np.ndarray, e: np.ndarray, e_dot: np.ndarray,
             s: np.ndarray, gains: SlidingGains,
             switch_width: float = DEFAULT_SWITCH_WIDTH) -> np.ndarray:
    """Integral sliding-mode control with a fixed switching gain."""
    return (np.asarray(eta_r_ddot, dtype=float) - gains.c1 * e_dot - gains.c2 * e
            - gains.gamma * s - gains.k * smooth_sign(s, switch_width))


def smc_law(eta_r_ddot: np.ndarray, e: np.ndarray, e_dot: np.ndarray,
            gains: SlidingGains,
            switch_width: float = DEFAULT_SWITCH_WIDTH) -> np.ndarray:
    """Conventional sliding-mode control: the integral-free reduction."""
    reduced = replace(gains, c2=np.zeros(6))
    s = sliding_surface(e, e_dot, np.zeros(6), reduced)
    return ismc_law(eta_r_ddot, e, e_dot, s, reduced, switch_width)


def aismc_law(eta_r_ddot: np.ndarray, e: np.ndarray, e_dot: np.ndarray,
              s: np.ndarray, gains: SlidingGains, adaptive: AdaptiveState,
              dt: float,
              switch_width: float = DEFAULT_SWITCH_WIDTH) -> tuple[np.ndarray, AdaptiveState]:
    """Adaptive ISMC step: control with the current gains, then adapt them.

    The gain rate is k_bar*|s| directed outward (growing) when |s| is beyond
    the boundary layer and inward (decaying) when inside it; at or below the
    floor beta the gain is pushed back up at rate beta. The updated gain is
    floored at beta, so k_hat >= beta holds after every step.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    tau = (np.asarray(eta_r_ddot, dtype=float) - gains.c1 * e_dot - gains.c2 * e
           - gains.gamma * s - adaptive.k_hat * smooth_sign(s, switch_width))
    abs_s = np.abs(s)
    k_dot = np.where(
        adaptive.k_hat > adaptive.beta,
        adaptive.k_bar * abs_s * np.sign(abs_s - adaptive.epsilon_hat),
        adaptive.beta,
    )
    k_new = np.maximum(adaptive.beta, adaptive.k_hat + dt * k_dot)
    return tau, replace(adaptive, k_hat=k_new)


def pid_law(e: np.ndarray, e_dot: np.ndarray, integral_e: np.ndarray,
            gains: PidGains) -> np.ndarray:
    """PID in acceleration space; the integral term is clamped by magnitude."""
    i_term = gains.ki * integral_e
    clamp = gains.integral_clamp
    i_term = np.clip(i_term, -clamp, clamp)
    return -(gains.kp * e + i_term + gains.kd * e_dot)


def lyapunov_diagnostic(s: np.ndarray, gamma: np.ndarray, k_gains: np.ndarray,
                        d_estimate: np.ndarray | None = None) -> LyapunovDiagnostic:
    """Runtime stability diagnostic for the sliding-mode loop.

    Reports the quadratic storage V1 = s^T s / 2 and the decrease bound
    -s^T Gamma s - sum_i (k_i - |d_i|) |s_i|, which is non-positive whenever
    every switching gain dominates the matching disturbance component.
    """
    s = np.asarray(s, dtype=float)
    v1 = 0.5 * float(s @ s)
    d_abs = np.zeros(6) if d_estimate is None else np.abs(np.asarray(d_estimate, dtype=float))
    bound = float(-(s * np.asarray(gamma) * s).sum() - ((np.asarray(k_gains) - d_abs) * np.abs(s)).sum())
    return LyapunovDiagnostic(v1, bound, bool(np.all(np.asarray(k_gains) >= d_abs)))


class _IntegralAccumulator:
    """Trapezoidal accumulation of the tracking error with a per-axis clamp."""

    def __init__(self, clamp):
        self.clamp = np.asarray(clamp, dtype=float)
        self.reset()

    def reset(self) -> None:
        self.value = np.zeros(6)
        self._prev: np.ndarray | None = None

    def update(self, e: np.ndarray, dt: float) -> np.ndarray:
        if self._prev is not None:
            self.value = self.value + 0.5 * dt * (e + self._prev)
            self.value = np.clip(self.value, -self.clamp, self.clamp)
        self._prev = e.copy()
        return self.value


class PidController:
    controller_id = "pid"

    def __init__(self, gains: PidGains | None = None):
        self.gains = gains if gains is not None else default_pid_gains()
        ki_floor = np.maximum(self.gains.ki, 1e-12)
        self._integral = _IntegralAccumulator(self.gains.integral_clamp / ki_floor)
        self.reset()

    def reset(self) -> None:
        self._integral.reset()

    def compute(self, t: float, eta: np.ndarray, eta_dot: np.ndarray,
                ref: ReferenceSample, dt: float) -> ControlOutput:
        e = tracking_error(eta, ref.eta_r)
        e_dot = eta_dot - ref.eta_r_dot
        integral = self._integral.update(e, dt)
        tau = pid_law(e, e_dot, integral, self.gains)
        return ControlOutput(Wrench(tau, FRAME_NORMACC), np.zeros(6), np.zeros(6), 0.0, 0.0)


class _SlidingControllerBase:
    """Shared plumbing of the sliding-mode controllers."""

    uses_integral = True

    def __init__(self, gains: SlidingGains | None = None,
                 switch_width: float = DEFAULT_SWITCH_WIDTH):
        self.gains = gains if gains is not None else default_sliding_gains()
        self.switch_width = switch_width
        c2max = float(np.max(self.gains.c2))
        self._integral = _IntegralAccumulator(10.0 / c2max if c2max > 0 else np.inf)
        self.reset()

    def reset(self) -> None:
        self._integral.reset()

    def _errors(self, eta, eta_dot, ref, dt):
        e = tracking_error(eta, ref.eta_r)
        e_dot = eta_dot - ref.eta_r_dot
        integral = self._integral.update(e, dt) if self.uses_integral else np.zeros(6)
        return e, e_dot, integral


class SmcController(_SlidingControllerBase):
    controller_id = "smc"
    uses_integral = False

    def compute(self, t, eta, eta_dot, ref, dt) -> ControlOutput:
        e, e_dot, _ = self._errors(eta, eta_dot, ref, dt)
        reduced = replace(self.gains, c2=np.zeros(6))
        s = sliding_surface(e, e_dot, np.zeros(6), reduced)
        tau = ismc_law(ref.eta_r_ddot, e, e_dot, s, reduced, self.switch_width)
        diag = lyapunov_diagnostic(s, self.gains.gamma, self.gains.k)
        return ControlOutput(Wrench(tau, FRAME_NORMACC), s, self.gains.k.copy(),
                             diag.v1, diag.v1_dot_bound)


class IsmcController(_SlidingControllerBase):
    controller_id = "ismc"

    def compute(self, t, eta, eta_dot, ref, dt) -> ControlOutput:
        e, e_dot, integral = self._errors(eta, eta_dot, ref, dt)
        s = sliding_surface(e, e_dot, integral, self.gains)
        tau = ismc_law(ref.eta_r_ddot, e, e_dot, s, self.gains, self.switch_width)
        diag = lyapunov_diagnostic(s, self.gains.gamma, self.gains.k)
        return ControlOutput(Wrench(tau, FRAME_NORMACC), s, self.gains.k.copy(),
                             diag.v1, diag.v1_dot_bound)


class AismcController(_SlidingControllerBase):
    controller_id = "aismc"

    def __init__(self, gains: SlidingGains | None = None,
                 adaptive: AdaptiveState | None = None,
                 switch_width: float = DEFAULT_SWITCH_WIDTH):
        self._adaptive_init = adaptive if adaptive is not None else default_adaptive_state()
        super().__init__(gains, switch_width)

    def reset(self) -> None:
        super().reset()
        self.adaptive = replace(self._adaptive_init)

    def compute(self, t, eta, eta_dot, ref, dt) -> ControlOutput:
        e, e_dot, integral = self._errors(eta, eta_dot, ref, dt)
        self.adaptive = replace(self.adaptive, integral_e=integral)
        s = sliding_surface(e, e_dot, integral, self.gains)
        k_used = self.adaptive.k_hat.copy()
        tau, self.adaptive = aismc_law(ref.eta_r_ddot, e, e_dot, s, self.gains,
                                       self.adaptive, dt, self.switch_width)
        diag = lyapunov_diagnostic(s, self.gains.gamma, k_used)
        return ControlOutput(Wrench(tau, FRAME_NORMACC), s, k_used,
                             diag.v1, diag.v1_dot_bound)


CONTROLLER_IDS = ("pid", "smc", "ismc", "aismc")
