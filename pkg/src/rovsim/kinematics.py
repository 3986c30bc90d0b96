"""Euler-angle kinematics: frames, velocity transforms and their derivatives.

Conventions follow the marine-robotics standard: earth-fixed pose
``eta = [x, y, z, phi, theta, psi]`` (NED positions plus roll/pitch/yaw) and
body-fixed velocity ``nu = [u, v, w, p, q, r]``. Attitude is kept as plain
Euler angles; every commanded pitch in this library stays well inside the
+/-pi/2 singularity, which is enforced with a hard guard band rather than a
quaternion representation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularAttitude

# Guard band (rad) kept between |theta| and pi/2.
TOL_SINGULAR = 1e-3


def wrap_angle(angle):
    """Wrap an angle (or array of angles) to (-pi, pi]."""
    return -(np.mod(-np.asarray(angle, dtype=float) + np.pi, 2.0 * np.pi) - np.pi)


def wrap_pose(eta: np.ndarray) -> np.ndarray:
    """Return a copy of a pose with roll and yaw wrapped to (-pi, pi].

    Pitch is left untouched: it lives inside (-pi/2, pi/2) by the
    singularity guard, so wrapping could only mask a fault.
    """
    out = np.array(eta, dtype=float)
    out[3] = wrap_angle(out[3])
    out[5] = wrap_angle(out[5])
    return out


def require_nonsingular(theta: float) -> None:
    """Raise :class:`SingularAttitude` if pitch is inside the guard band."""
    if abs(theta) >= np.pi / 2.0 - TOL_SINGULAR:
        raise SingularAttitude(f"pitch {theta:.6f} rad is within {TOL_SINGULAR} of +/-pi/2")


@dataclass
class VehicleState:
    """Earth-frame pose and body-frame velocity, the 12-dim simulation state."""

    eta: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        self.eta = np.asarray(self.eta, dtype=float).reshape(6).copy()
        self.nu = np.asarray(self.nu, dtype=float).reshape(6).copy()

    @classmethod
    def at_rest(cls, eta=None) -> "VehicleState":
        return cls(np.zeros(6) if eta is None else eta, np.zeros(6))

    @property
    def eta2(self) -> np.ndarray:
        """Euler angles [phi, theta, psi]."""
        return self.eta[3:6]

    def copy(self) -> "VehicleState":
        return VehicleState(self.eta, self.nu)


def rotation_matrix(eta2: np.ndarray) -> np.ndarray:
    """Body-to-earth rotation (ZYX Euler) for angles [phi, theta, psi]."""
    phi, theta, psi = eta2
    sphi, cphi = np.sin(phi), np.cos(phi)
    sth, cth = np.sin(theta), np.cos(theta)
    spsi, cpsi = np.sin(psi), np.cos(psi)
    return np.array([
        [cpsi * cth, -spsi * cphi + cpsi * sth * sphi, spsi * sphi + cpsi * cphi * sth],
        [spsi * cth, cpsi * cphi + sphi * sth * spsi, -cpsi * sphi + sth * spsi * cphi],
        [-sth, cth * sphi, cth * cphi],
    ])


def angular_rate_matrix(eta2: np.ndarray) -> np.ndarray:
    """Map from body angular rates [p, q, r] to Euler-angle rates."""
    phi, theta, _ = eta2
    require_nonsingular(theta)
    sphi, cphi = np.sin(phi), np.cos(phi)
    cth = np.cos(theta)
    tth = np.tan(theta)
    return np.array([
        [1.0, sphi * tth, cphi * tth],
        [0.0, cphi, -sphi],
        [0.0, sphi / cth, cphi / cth],
    ])


@dataclass
class TransformMatrix:
    """Block-diagonal velocity transform: rotation and angular-rate blocks."""

    j1: np.ndarray
    j2: np.ndarray

    @property
    def full(self) -> np.ndarray:
        """Assembled 6x6 transform; off-diagonal blocks are exactly zero."""
        out = np.zeros((6, 6))
        out[0:3, 0:3] = self.j1
        out[3:6, 3:6] = self.j2
        return out

def inverse_transform_matrix(eta2: np.ndarray) -> np.ndarray:
    """Analytic inverse of the assembled 6x6 velocity transform.

    The rotation block inverts by transpose; the rate block has the
    well-known closed-form inverse, finite even at the pitch singularity.
    """
    phi, theta, _ = np.asarray(eta2, dtype=float)
    sphi, cphi = np.sin(phi), np.cos(phi)
    sth, cth = np.sin(theta), np.cos(theta)
    out = np.zeros((6, 6))
    out[0:3, 0:3] = rotation_matrix(eta2).T
    out[3:6, 3:6] = np.array([
        [1.0, 0.0, -sth],
        [0.0, cphi, cth * sphi],
        [0.0, -sphi, cth * cphi],
    ])
    return out


def transform_matrix(eta2: np.ndarray) -> TransformMatrix:
    """Velocity transform for the given Euler angles.

    Raises:
        SingularAttitude: if pitch is within the guard band of +/-pi/2.
    """
    eta2 = np.asarray(eta2, dtype=float)
    require_nonsingular(eta2[1])
    return TransformMatrix(rotation_matrix(eta2), angular_rate_matrix(eta2))


def body_to_earth_rates(state: VehicleState) -> np.ndarray:
    """Earth-frame pose rate for the current state."""
    tm = transform_matrix(state.eta2)
    out = np.empty(6)
    out[0:3] = tm.j1 @ state.nu[0:3]
    out[3:6] = tm.j2 @ state.nu[3:6]
    return out


# Angle-derivative generators of the elementary rotations, used to build the
# analytic time derivative of the rotation block.
def _rz(psi):
    s, c = np.sin(psi), np.cos(psi)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _ry(theta):
    s, c = np.sin(theta), np.cos(theta)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def _rx(phi):
    s, c = np.sin(phi), np.cos(phi)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _drz(psi):
    s, c = np.sin(psi), np.cos(psi)
    return np.array([[-s, -c, 0.0], [c, -s, 0.0], [0.0, 0.0, 0.0]])


def _dry(theta):
    s, c = np.sin(theta), np.cos(theta)
    return np.array([[-s, 0.0, c], [0.0, 0.0, 0.0], [-c, 0.0, -s]])


def _drx(phi):
    s, c = np.sin(phi), np.cos(phi)
    return np.array([[0.0, 0.0, 0.0], [0.0, -s, -c], [0.0, c, -s]])


def transform_matrix_derivative(eta2: np.ndarray, eta2_dot: np.ndarray) -> np.ndarray:
    """Analytic time derivative of the 6x6 velocity transform.

    Args:
        eta2: Euler angles [phi, theta, psi] (rad).
        eta2_dot: their time derivatives (rad/s).

    Returns:
        6x6 matrix; agrees with a central finite difference of
        :func:`transform_matrix` to second order in the step.
    """
    eta2 = np.asarray(eta2, dtype=float)
    eta2_dot = np.asarray(eta2_dot, dtype=float)
    phi, theta, _ = eta2
    require_nonsingular(theta)
    phid, thd, psid = eta2_dot

    rz, ry, rx = _rz(eta2[2]), _ry(theta), _rx(phi)
    j1_dot = psid * (_drz(eta2[2]) @ ry @ rx) + thd * (rz @ _dry(theta) @ rx) \
        + phid * (rz @ ry @ _drx(phi))

    sphi, cphi = np.sin(phi), np.cos(phi)
    sth, cth = np.sin(theta), np.cos(theta)
    tth = sth / cth
    sec2 = 1.0 / (cth * cth)
    dj2_dphi = np.array([
        [0.0, cphi * tth, -sphi * tth],
        [0.0, -sphi, -cphi],
        [0.0, cphi / cth, -sphi / cth],
    ])
    dj2_dth = np.array([
        [0.0, sphi * sec2, cphi * sec2],
        [0.0, 0.0, 0.0],
        [0.0, sphi * sth * sec2, cphi * sth * sec2],
    ])
    j2_dot = phid * dj2_dphi + thd * dj2_dth

    out = np.zeros((6, 6))
    out[0:3, 0:3] = j1_dot
    out[3:6, 3:6] = j2_dot
    return out
