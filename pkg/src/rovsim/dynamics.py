"""Rigid-body plus added-mass dynamics of a neutrally trimmed ROV.

The model is the standard marine-vehicle (Fossen-form) formulation with a
diagonal inertia matrix: rigid-body terms plus decoupled added mass, linear
plus quadratic diagonal damping, and a gravity/buoyancy restoring wrench.
Body-frame dynamics are the primary representation; the earth-frame
reformulation used by the controllers is provided alongside, together with
the normalized (acceleration-space) control input and its inverse map.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import FrameMismatch, InvalidModel
from .kinematics import (
    TOL_SINGULAR,
    VehicleState,
    inverse_transform_matrix,
    require_nonsingular,
    transform_matrix,
    transform_matrix_derivative,
)

FRAME_BODY = "body"
FRAME_EARTH = "earth"
FRAME_NORMACC = "normalized-acceleration"

GRAVITY = 9.81


@dataclass(frozen=True)
class Wrench:
    """6-component force/moment vector tagged with its frame of expression."""

    vec: np.ndarray
    frame: str = FRAME_BODY

    def __post_init__(self):
        object.__setattr__(self, "vec", np.asarray(self.vec, dtype=float).reshape(6).copy())

    def _check(self, other: "Wrench") -> None:
        if self.frame != other.frame:
            raise FrameMismatch(f"cannot combine {self.frame} wrench with {other.frame} wrench")

    def __add__(self, other: "Wrench") -> "Wrench":
        self._check(other)
        return Wrench(self.vec + other.vec, self.frame)

    def __sub__(self, other: "Wrench") -> "Wrench":
        self._check(other)
        return Wrench(self.vec - other.vec, self.frame)

    @classmethod
    def zero(cls, frame: str = FRAME_BODY) -> "Wrench":
        return cls(np.zeros(6), frame)


def _vec(x, n):
    return np.asarray(x, dtype=float).reshape(n).copy()


@dataclass
class VehicleModel:
    """Physical parameters of the vehicle (defaults: BlueROV2 Heavy).

    Mass, inertias, added mass/inertia and the per-thruster force limit are
    the published identification values for the BlueROV2 Heavy. Damping and
    restoring geometry are not part of that identification; the defaults are
    plausible published values (damping) and a 2% positively buoyant trim
    with the buoyancy center 2 cm above the gravity center, which gives the
    passive self-righting moment the real vehicle exhibits.
    """

    mass: float = 13.5
    inertia: np.ndarray = (0.26, 0.23, 0.37)
    added_mass: np.ndarray = (6.36, 7.12, 18.68, 0.189, 0.135, 0.222)
    damping_linear: np.ndarray = (4.03, 6.22, 5.18, 0.07, 0.07, 0.07)
    damping_quadratic: np.ndarray = (18.18, 21.66, 36.99, 1.55, 1.55, 1.55)
    weight: float = 13.5 * GRAVITY
    buoyancy: float = 13.5 * GRAVITY * 1.01
    r_g: np.ndarray = (0.0, 0.0, 0.0)
    r_b: np.ndarray = (0.0, 0.0, -0.02)
    f_max: float = 15.4

    def __post_init__(self):
        self.inertia = _vec(self.inertia, 3)
        self.added_mass = _vec(self.added_mass, 6)
        self.damping_linear = _vec(self.damping_linear, 6)
        self.damping_quadratic = _vec(self.damping_quadratic, 6)
        self.r_g = _vec(self.r_g, 3)
        self.r_b = _vec(self.r_b, 3)
        self.validate()

    def validate(self) -> None:
        if not self.mass > 0:
            raise InvalidModel(f"mass must be positive, got {self.mass}")
        if not np.all(self.inertia > 0):
            raise InvalidModel(f"inertias must be positive, got {self.inertia}")
        if np.any(self.added_mass < 0):
            raise InvalidModel("added mass entries must be non-negative")
        if np.any(self.damping_linear < 0) or np.any(self.damping_quadratic < 0):
            raise InvalidModel("damping entries must be non-negative")
        if not self.f_max > 0:
            raise InvalidModel(f"f_max must be positive, got {self.f_max}")

    @property
    def inertia_diagonal(self) -> np.ndarray:
        """Diagonal of the combined rigid-body + added-mass inertia matrix."""
        rb = np.concatenate(([self.mass] * 3, self.inertia))
        return rb + self.added_mass

    def neutral(self) -> "VehicleModel":
        """Copy with exact neutral buoyancy and collocated centers."""
        return replace(self, buoyancy=self.weight, r_g=np.zeros(3), r_b=np.zeros(3))


def inertia_matrix(model: VehicleModel) -> np.ndarray:
    """Combined 6x6 inertia matrix (rigid body plus added mass)."""
    diag = model.inertia_diagonal
    if np.any(diag <= 0):
        raise InvalidModel("inertia matrix has a non-positive diagonal entry")
    return np.diag(diag)


def _skew(a: np.ndarray) -> np.ndarray:
    return np.array([
        [0.0, -a[2], a[1]],
        [a[2], 0.0, -a[0]],
        [-a[1], a[0], 0.0],
    ])


def coriolis_matrix(M: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """Coriolis/centripetal matrix in the standard skew-symmetric form.

    Built from the (block-)diagonal inertia matrix and the body velocity;
    satisfies C(nu) = -C(nu)^T for every nu.
    """
    nu = np.asarray(nu, dtype=float)
    a = M[0:3, 0:3] @ nu[0:3]
    b = M[3:6, 3:6] @ nu[3:6]
    out = np.zeros((6, 6))
    out[0:3, 3:6] = -_skew(a)
    out[3:6, 0:3] = -_skew(a)
    out[3:6, 3:6] = -_skew(b)
    return out


def damping_matrix(nu: np.ndarray, model: VehicleModel) -> np.ndarray:
    """Diagonal damping matrix: linear plus velocity-proportional quadratic."""
    nu = np.asarray(nu, dtype=float)
    return np.diag(model.damping_linear + model.damping_quadratic * np.abs(nu))


def restoring_vector(eta: np.ndarray, model: VehicleModel) -> np.ndarray:
    """Gravity/buoyancy restoring wrench g(eta) in the body frame.

    Enters the dynamics on the left-hand side, so positive entries oppose
    the motion that produced them.
    """
    eta = np.asarray(eta, dtype=float)
    require_nonsingular(eta[4])
    phi, theta = eta[3], eta[4]
    sphi, cphi = np.sin(phi), np.cos(phi)
    sth, cth = np.sin(theta), np.cos(theta)
    # Unit gravity direction expressed in the body frame.
    f_unit = np.array([-sth, cth * sphi, cth * cphi])
    w_minus_b = model.weight - model.buoyancy
    lever = model.weight * model.r_g - model.buoyancy * model.r_b
    out = np.empty(6)
    out[0:3] = -w_minus_b * f_unit
    out[3:6] = -np.cross(lever, f_unit)
    return out


def body_acceleration(state: VehicleState, tau: Wrench, tau_E: Wrench,
                      model: VehicleModel) -> np.ndarray:
    """Body-frame acceleration nu_dot from the force balance."""
    if tau.frame != FRAME_BODY or tau_E.frame != FRAME_BODY:
        raise FrameMismatch("body_acceleration expects body-frame wrenches")
    M = inertia_matrix(model)
    C = coriolis_matrix(M, state.nu)
    D = damping_matrix(state.nu, model)
    g = restoring_vector(state.eta, model)
    rhs = tau.vec + tau_E.vec - C @ state.nu - D @ state.nu - g
    return rhs / np.diag(M)


def earth_frame_terms(state: VehicleState, model: VehicleModel):
    """Earth-frame dynamics terms (M_eta, C_eta, D_eta, g_eta).

    These are the congruence transforms of the body-frame terms by the
    velocity map J, with the extra J-dot coupling folded into C_eta.
    """
    tm = transform_matrix(state.eta2)
    J = tm.full
    Jinv = inverse_transform_matrix(state.eta2)
    eta2_dot = tm.j2 @ state.nu[3:6]
    Jdot = transform_matrix_derivative(state.eta2, eta2_dot)

    M = inertia_matrix(model)
    C = coriolis_matrix(M, state.nu)
    D = damping_matrix(state.nu, model)
    g = restoring_vector(state.eta, model)

    M_eta = Jinv.T @ M @ Jinv
    C_eta = Jinv.T @ (C - M @ Jinv @ Jdot) @ Jinv
    D_eta = Jinv.T @ D @ Jinv
    g_eta = Jinv.T @ g
    return M_eta, C_eta, D_eta, g_eta


def earth_frame_acceleration(eta: np.ndarray, eta_dot: np.ndarray, tau: Wrench,
                             tau_E: Wrench, model: VehicleModel) -> np.ndarray:
    """Pose acceleration from the earth-frame form of the dynamics.

    Body-frame wrenches are rotated into the earth frame internally. This is
    the same physics as the body-frame balance expressed in pose
    coordinates; integrating either representation from the same initial
    condition yields the same trajectory, which the tests exercise.
    """
    if tau.frame != FRAME_BODY or tau_E.frame != FRAME_BODY:
        raise FrameMismatch("earth_frame_acceleration expects body-frame wrenches")
    eta = np.asarray(eta, dtype=float)
    eta_dot = np.asarray(eta_dot, dtype=float)
    Jinv = inverse_transform_matrix(eta[3:6])
    nu = Jinv @ eta_dot
    state = VehicleState(eta, nu)
    M_eta, C_eta, D_eta, g_eta = earth_frame_terms(state, model)
    rhs = Jinv.T @ (tau.vec + tau_E.vec) - (C_eta + D_eta) @ eta_dot - g_eta
    return np.linalg.solve(M_eta, rhs)


def normalized_control(tau: Wrench, state: VehicleState, model: VehicleModel) -> Wrench:
    """Map a body wrench to the earth-frame acceleration it produces.

    This is the acceleration-space ("normalized") control input consumed by
    the tracking controllers; algebraically J M^-1 tau, the unique map that
    keeps the compact earth-frame model consistent with the body dynamics.
    """
    if tau.frame != FRAME_BODY:
        raise FrameMismatch("normalized_control expects a body-frame wrench")
    tm = transform_matrix(state.eta2)
    return Wrench(tm.full @ (tau.vec / model.inertia_diagonal), FRAME_NORMACC)


def make_body_ode(model: VehicleModel):
    """Build a fast body-frame derivative function for the integrator.

    Returns ``ode(eta, nu, tau) -> (12,)`` giving [eta_dot, nu_dot] with the
    applied wrench ``tau`` (thrust plus disturbance) held constant. All model
    terms are unrolled to scalars (this sits inside every integrator stage);
    cross-checked against the matrix-form operations in the tests.
    """
    from math import cos, sin

    m1, m2, m3, i1, i2, i3 = (float(x) for x in model.inertia_diagonal)
    mi1, mi2, mi3, mi4, mi5, mi6 = (1.0 / float(x) for x in model.inertia_diagonal)
    dl = tuple(float(x) for x in model.damping_linear)
    dq = tuple(float(x) for x in model.damping_quadratic)
    w_minus_b = float(model.weight - model.buoyancy)
    lx, ly, lz = (float(x) for x in model.weight * model.r_g - model.buoyancy * model.r_b)
    tol = np.pi / 2.0 - TOL_SINGULAR

    def ode(eta: np.ndarray, nu: np.ndarray, tau: np.ndarray) -> np.ndarray:
        theta = float(eta[4])
        if abs(theta) >= tol:
            require_nonsingular(theta)
        phi, psi = float(eta[3]), float(eta[5])
        sphi, cphi = sin(phi), cos(phi)
        sth, cth = sin(theta), cos(theta)
        spsi, cpsi = sin(psi), cos(psi)
        u, v, w = float(nu[0]), float(nu[1]), float(nu[2])
        p, q, r = float(nu[3]), float(nu[4]), float(nu[5])

        xd = cpsi * cth * u + (cpsi * sth * sphi - spsi * cphi) * v \
            + (spsi * sphi + cpsi * cphi * sth) * w
        yd = spsi * cth * u + (cpsi * cphi + sphi * sth * spsi) * v \
            + (sth * spsi * cphi - cpsi * sphi) * w
        zd = -sth * u + cth * sphi * v + cth * cphi * w
        tth = sth / cth
        phid = p + sphi * tth * q + cphi * tth * r
        thd = cphi * q - sphi * r
        psid = (sphi * q + cphi * r) / cth

        a1, a2, a3 = m1 * u, m2 * v, m3 * w
        b1, b2, b3 = i1 * p, i2 * q, i3 * r
        c1 = -(a2 * r - a3 * q)
        c2 = -(a3 * p - a1 * r)
        c3 = -(a1 * q - a2 * p)
        c4 = -(a2 * w - a3 * v) - (b2 * r - b3 * q)
        c5 = -(a3 * u - a1 * w) - (b3 * p - b1 * r)
        c6 = -(a1 * v - a2 * u) - (b1 * q - b2 * p)

        d1 = (dl[0] + dq[0] * abs(u)) * u
        d2 = (dl[1] + dq[1] * abs(v)) * v
        d3 = (dl[2] + dq[2] * abs(w)) * w
        d4 = (dl[3] + dq[3] * abs(p)) * p
        d5 = (dl[4] + dq[4] * abs(q)) * q
        d6 = (dl[5] + dq[5] * abs(r)) * r

        fx, fy, fz = -sth, cth * sphi, cth * cphi
        g1 = -w_minus_b * fx
        g2 = -w_minus_b * fy
        g3 = -w_minus_b * fz
        g4 = -(ly * fz - lz * fy)
        g5 = -(lz * fx - lx * fz)
        g6 = -(lx * fy - ly * fx)

        return np.array([
            xd, yd, zd, phid, thd, psid,
            (float(tau[0]) - c1 - d1 - g1) * mi1,
            (float(tau[1]) - c2 - d2 - g2) * mi2,
            (float(tau[2]) - c3 - d3 - g3) * mi3,
            (float(tau[3]) - c4 - d4 - g4) * mi4,
            (float(tau[4]) - c5 - d5 - g5) * mi5,
            (float(tau[5]) - c6 - d6 - g6) * mi6,
        ])

    return ode
