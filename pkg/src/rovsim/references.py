"""Reference trajectories for the three station-holding attitude tasks.

All tasks hold position at the origin and command only the attitude:

* Task 1 holds zero angles.
* Task 2 steps the pitch reference to a configurable amplitude at a set
  time. The raw step is shaped by a second-order critically damped filter,
  evaluated in closed form, because the control laws consume the reference
  acceleration and a true step has none.
* Task 3 tracks a slow full-range pitch sinusoid over a 120 s window.

Velocity and acceleration references are the analytic derivatives of the
pose reference, so the three are consistent by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnknownTask

TASK_IDS = (1, 2, 3)


@dataclass(frozen=True)
class ReferenceSample:
    """Pose, velocity and acceleration references at one instant."""

    eta_r: np.ndarray
    eta_r_dot: np.ndarray
    eta_r_ddot: np.ndarray


@dataclass(frozen=True)
class ReferenceParams:
    """Shape parameters of the reference generators."""

    step_amplitude: float = np.pi / 4.0
    step_time: float = 5.0
    step_filter_tc: float = 0.5
    sine_amplitude: float = np.pi / 4.0
    sine_start: float = 5.0
    sine_period: float = 240.0

    @property
    def sine_end(self) -> float:
        return self.sine_start + self.sine_period / 2.0


DEFAULT_REFERENCE_PARAMS = ReferenceParams()

# Pitch channel index within the pose vector.
_PITCH = 4


def reference_trajectory(task: int, t: float,
                         params: ReferenceParams = DEFAULT_REFERENCE_PARAMS) -> ReferenceSample:
    """Reference sample for the given task at time t (s)."""
    if t < 0:
        raise ValueError("t must be non-negative")
    eta_r = np.zeros(6)
    eta_r_dot = np.zeros(6)
    eta_r_ddot = np.zeros(6)
    if task == 1:
        pass
    elif task == 2:
        if t > params.step_time:
            tc = params.step_filter_tc
            x = (t - params.step_time) / tc
            decay = np.exp(-x)
            amp = params.step_amplitude
            eta_r[_PITCH] = amp * (1.0 - (1.0 + x) * decay)
            eta_r_dot[_PITCH] = amp * x * decay / tc
            eta_r_ddot[_PITCH] = amp * (1.0 - x) * decay / (tc * tc)
    elif task == 3:
        if params.sine_start < t < params.sine_end:
            omega = 2.0 * np.pi / params.sine_period
            phase = omega * (t - params.sine_start)
            amp = params.sine_amplitude
            eta_r[_PITCH] = amp * np.sin(phase)
            eta_r_dot[_PITCH] = amp * omega * np.cos(phase)
            eta_r_ddot[_PITCH] = -amp * omega * omega * np.sin(phase)
    else:
        raise UnknownTask(f"task must be one of {TASK_IDS}, got {task!r}")
    return ReferenceSample(eta_r, eta_r_dot, eta_r_ddot)
