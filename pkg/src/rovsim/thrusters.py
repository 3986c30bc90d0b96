"""Thrust allocation: body wrench demands to per-thruster voltages and back.

Eight fixed thrusters (four vectored horizontally at 45 degrees, four
vertical) give full control over all six degrees of freedom. Commands are
normalized voltages in [-1, 1]; each thruster contributes its direction
times ``f_max`` per unit command. Allocation inverts the 6x8 map with the
minimum-norm pseudoinverse and clamps per component, reporting saturation
instead of silently rescaling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import FRAME_BODY, FRAME_NORMACC, Wrench, VehicleModel
from .errors import DegenerateLayout, FrameMismatch
from .kinematics import VehicleState, inverse_transform_matrix

_C45 = np.sqrt(2.0) / 2.0

# Vectored layout in the body frame (x forward, y starboard, z down):
# thrusters 1-4 horizontal at the corners, 5-8 vertical pushing down.
_DEFAULT_POSITIONS = np.array([
    [0.14, 0.10, 0.0],
    [0.14, -0.10, 0.0],
    [-0.14, 0.10, 0.0],
    [-0.14, -0.10, 0.0],
    [0.12, 0.12, 0.0],
    [0.12, -0.12, 0.0],
    [-0.12, 0.12, 0.0],
    [-0.12, -0.12, 0.0],
])
_DEFAULT_DIRECTIONS = np.array([
    [_C45, -_C45, 0.0],
    [_C45, _C45, 0.0],
    [-_C45, -_C45, 0.0],
    [-_C45, _C45, 0.0],
    [0.0, 0.0, 1.0],
    [0.0, 0.0, 1.0],
    [0.0, 0.0, 1.0],
    [0.0, 0.0, 1.0],
])


def allocation_matrix(positions: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """6x8 allocation matrix; column i is [direction_i; position_i x direction_i].

    Raises:
        DegenerateLayout: if a direction is not unit length or the
            resulting matrix cannot span all six wrench axes.
    """
    positions = np.asarray(positions, dtype=float).reshape(8, 3)
    directions = np.asarray(directions, dtype=float).reshape(8, 3)
    norms = np.linalg.norm(directions, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-12):
        raise DegenerateLayout(f"thruster directions must be unit vectors, norms={norms}")
    B = np.zeros((6, 8))
    B[0:3, :] = directions.T
    B[3:6, :] = np.cross(positions, directions).T
    if np.linalg.matrix_rank(B) < 6:
        raise DegenerateLayout("allocation matrix rank < 6: not fully actuated")
    return B


@dataclass
class ThrusterLayout:
    """Thruster geometry with the cached allocation matrix and pseudoinverse."""

    positions: np.ndarray
    directions: np.ndarray

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float).reshape(8, 3).copy()
        self.directions = np.asarray(self.directions, dtype=float).reshape(8, 3).copy()
        self.B = allocation_matrix(self.positions, self.directions)
        self.B_pinv = np.linalg.pinv(self.B)

    @classmethod
    def default(cls) -> "ThrusterLayout":
        return cls(_DEFAULT_POSITIONS, _DEFAULT_DIRECTIONS)


@dataclass(frozen=True)
class VoltageCommand:
    """Normalized voltage command for the eight thrusters, each in [-1, 1]."""

    mu: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float).reshape(8).copy()
        if np.any(np.abs(mu) > 1.0 + 1e-12):
            raise ValueError(f"voltage command out of [-1, 1]: {mu}")
        object.__setattr__(self, "mu", mu)


def voltages_to_wrench(command: VoltageCommand, layout: ThrusterLayout,
                       f_max: float) -> Wrench:
    """Body wrench produced by a voltage command (thruster dynamics neglected)."""
    return Wrench(f_max * (layout.B @ command.mu), FRAME_BODY)


def wrench_to_voltages(tau: Wrench, layout: ThrusterLayout,
                       f_max: float) -> tuple[VoltageCommand, bool]:
    """Minimum-norm voltages realizing a body wrench, clamped per component.

    Returns the command and a saturation flag. When the flag is set, the
    achieved wrench is the image of the clamped command, not the demand;
    callers log the flag rather than rescaling.
    """
    if tau.frame != FRAME_BODY:
        raise FrameMismatch("wrench_to_voltages expects a body-frame wrench")
    raw = layout.B_pinv @ (tau.vec / f_max)
    saturated = bool(np.any(np.abs(raw) > 1.0))
    return VoltageCommand(np.clip(raw, -1.0, 1.0)), saturated


def control_to_body_wrench(tau_tilde: Wrench, state: VehicleState,
                           model: VehicleModel) -> Wrench:
    """Body wrench that realizes a normalized (acceleration-space) control.

    Exact inverse of :func:`rovsim.dynamics.normalized_control`;
    algebraically M J^-1 tau_tilde.
    """
    if tau_tilde.frame != FRAME_NORMACC:
        raise FrameMismatch("control_to_body_wrench expects a normalized-acceleration wrench")
    Jinv = inverse_transform_matrix(state.eta2)
    return Wrench(model.inertia_diagonal * (Jinv @ tau_tilde.vec), FRAME_BODY)
