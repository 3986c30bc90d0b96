"""Closed-loop fixed-step simulation of the attitude-tracking tasks.

The loop is multi-rate: the controller runs at the control rate (20 Hz by
default, matching the attitude sensor) with its output held constant, while
the plant integrates with classical RK4 at a faster physics step that must
divide the control period exactly. The flow disturbance advances once per
physics step and is held constant within it. A run is a pure function of its
setup, including the seed: identical setups produce bit-identical logs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .controllers import tracking_error
from .disturbance import FlowDisturbance
from .dynamics import VehicleModel, make_body_ode
from .errors import NonFiniteState, SingularAttitude
from .kinematics import TOL_SINGULAR, VehicleState, transform_matrix, wrap_angle
from .references import DEFAULT_REFERENCE_PARAMS, ReferenceParams, reference_trajectory
from .thrusters import ThrusterLayout, control_to_body_wrench, voltages_to_wrench, \
    wrench_to_voltages
from .trajlog import LogBuilder, TrajectoryLog

_STREAM_SENSOR = 2


@dataclass
class SensorNoise:
    """Optional additive Gaussian measurement noise.

    Attitude and rate channels refresh at the control rate; the depth
    channel refreshes at half of it (the pressure sensor is the slower
    instrument) and holds its last value in between.
    """

    sigma_eta: np.ndarray = field(default_factory=lambda: np.zeros(6))
    sigma_nu: np.ndarray = field(default_factory=lambda: np.zeros(6))

    def __post_init__(self):
        self.sigma_eta = np.asarray(self.sigma_eta, dtype=float).reshape(6).copy()
        self.sigma_nu = np.asarray(self.sigma_nu, dtype=float).reshape(6).copy()


class _MeasurementModel:
    def __init__(self, noise: SensorNoise | None, seed: int):
        self.noise = noise
        self._rng = np.random.default_rng([seed, _STREAM_SENSOR])
        self._held_z: float | None = None
        self._tick = 0

    def measure(self, eta: np.ndarray, nu: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if self.noise is None:
            return eta.copy(), nu.copy()
        m_eta = eta + self.noise.sigma_eta * self._rng.standard_normal(6)
        m_nu = nu + self.noise.sigma_nu * self._rng.standard_normal(6)
        if self._tick % 2 == 0 or self._held_z is None:
            self._held_z = float(m_eta[2])
        else:
            m_eta[2] = self._held_z
        self._tick += 1
        return m_eta, m_nu


@dataclass
class SimulationSetup:
    """Everything one closed-loop run needs, fully constructed."""

    task: int
    controller: object
    nominal_model: VehicleModel
    plant_model: VehicleModel
    layout: ThrusterLayout
    disturbance: FlowDisturbance
    duration: float = 130.0
    dt_physics: float = 0.005
    control_period: float = 0.05
    seed: int = 0
    reference_params: ReferenceParams = DEFAULT_REFERENCE_PARAMS
    initial_eta: np.ndarray = field(default_factory=lambda: np.zeros(6))
    initial_nu: np.ndarray = field(default_factory=lambda: np.zeros(6))
    sensor_noise: SensorNoise | None = None

    def __post_init__(self):
        self.initial_eta = np.asarray(self.initial_eta, dtype=float).reshape(6).copy()
        self.initial_nu = np.asarray(self.initial_nu, dtype=float).reshape(6).copy()
        n_sub = self.control_period / self.dt_physics
        if abs(n_sub - round(n_sub)) > 1e-9:
            raise ValueError("dt_physics must divide the control period exactly")


def rk4_step(ode, y: np.ndarray, tau: np.ndarray, dt: float) -> np.ndarray:
    """One classical RK4 step of the 12-state plant with constant wrench."""
    k1 = ode(y[:6], y[6:], tau)
    y2 = y + (0.5 * dt) * k1
    k2 = ode(y2[:6], y2[6:], tau)
    y3 = y + (0.5 * dt) * k2
    k3 = ode(y3[:6], y3[6:], tau)
    y4 = y + dt * k3
    k4 = ode(y4[:6], y4[6:], tau)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def run_simulation(setup: SimulationSetup, raise_on_fault: bool = False) -> TrajectoryLog:
    """Run one closed-loop task and return the trajectory log.

    A singular attitude or a non-finite state aborts the run; the partial
    log is returned with its fault field set (or the error re-raised when
    ``raise_on_fault`` is true).
    """
    controller = setup.controller
    builder = LogBuilder(setup.task, getattr(controller, "controller_id", "custom"),
                         setup.seed, setup.control_period)
    try:
        _run_loop(setup, builder)
    except (SingularAttitude, NonFiniteState) as exc:
        if raise_on_fault:
            raise
        return builder.build(fault=f"{type(exc).__name__}: {exc}")
    return builder.build()


def _run_loop(setup: SimulationSetup, builder: LogBuilder) -> None:
    dt = setup.dt_physics
    n_sub = int(round(setup.control_period / dt))
    n_ctrl = int(round(setup.duration / setup.control_period))
    theta_limit = np.pi / 2.0 - TOL_SINGULAR

    ode = make_body_ode(setup.plant_model)
    controller = setup.controller
    controller.reset()
    setup.disturbance.reset()
    sensors = _MeasurementModel(setup.sensor_noise, setup.seed)

    y = np.concatenate([setup.initial_eta, setup.initial_nu])

    for k in range(n_ctrl):
        t = k * setup.control_period
        if not np.all(np.isfinite(y)):
            raise NonFiniteState(f"non-finite state at t={t:.3f}")
        if abs(y[4]) >= theta_limit:
            raise SingularAttitude(f"pitch {y[4]:.4f} rad at t={t:.3f}")

        eta_snap = y[:6].copy()
        nu_snap = y[6:].copy()
        meas_eta, meas_nu = sensors.measure(eta_snap, nu_snap)
        tm = transform_matrix(meas_eta[3:6])
        meas_eta_dot = tm.full @ meas_nu
        ref = reference_trajectory(setup.task, t, setup.reference_params)

        out = controller.compute(t, meas_eta, meas_eta_dot, ref, setup.control_period)
        meas_state = VehicleState(meas_eta, meas_nu)
        tau_cmd = control_to_body_wrench(out.tau_tilde, meas_state, setup.nominal_model)
        command, saturated = wrench_to_voltages(tau_cmd, setup.layout,
                                                setup.nominal_model.f_max)
        tau_ach = voltages_to_wrench(command, setup.layout, setup.plant_model.f_max)
        e_log = tracking_error(meas_eta, ref.eta_r)

        tau_e_first = np.zeros(6)
        tau_ach_vec = tau_ach.vec
        for i in range(n_sub):
            tau_e = setup.disturbance.sample_vector(dt)
            if i == 0:
                tau_e_first = tau_e.copy()
            y = rk4_step(ode, y, tau_ach_vec + tau_e, dt)
            if y[3] > np.pi or y[3] <= -np.pi:
                y[3] = wrap_angle(y[3])
            if y[5] > np.pi or y[5] <= -np.pi:
                y[5] = wrap_angle(y[5])
            if abs(y[4]) >= theta_limit:
                raise SingularAttitude(f"pitch {y[4]:.4f} rad at t={t + (i + 1) * dt:.3f}")
            # NaN or +/-inf anywhere poisons the sum.
            if not np.isfinite(y.sum()):
                raise NonFiniteState(f"non-finite state at t={t + (i + 1) * dt:.3f}")

        builder.append(t, eta_snap, nu_snap, ref.eta_r, e_log, out.s, out.k_hat,
                       command.mu, tau_e_first, out.v1, saturated)
