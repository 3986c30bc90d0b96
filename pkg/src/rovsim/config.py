"""Run configuration: INI-style parsing, validation and setup construction.

A configuration file is key/value text with sections. Every key has an
embedded default (the BlueROV2 Heavy model and the experimentally tuned
adaptive-controller gains), so an empty file is a complete, valid
configuration. Parsing is strict: unknown sections or keys are rejected,
and every value is validated with the offending field named. The canonical
dump of a configuration re-parses to an identical configuration.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field, fields

import numpy as np

from . import controllers, thrusters
from .controllers import (
    AdaptiveState,
    AismcController,
    IsmcController,
    PidController,
    PidGains,
    SlidingGains,
    SmcController,
)
from .disturbance import DisturbanceConfig, FlowDisturbance, apply_mismatch
from .dynamics import VehicleModel
from .errors import ParseError, ValidationError
from .kinematics import TOL_SINGULAR
from .references import ReferenceParams
from .simulation import SensorNoise, SimulationSetup
from .thrusters import ThrusterLayout

_DEFAULT_VEHICLE = VehicleModel()
_DEFAULT_SLIDING = controllers.default_sliding_gains()
_DEFAULT_ADAPTIVE = controllers.default_adaptive_state()
_DEFAULT_PID = controllers.default_pid_gains()


def _arr(value) -> np.ndarray:
    return np.asarray(value, dtype=float).copy()


@dataclass
class RunConfig:
    """Resolved run configuration; all values validated on construction."""

    # run
    task: int = 1
    controller: str = "aismc"
    duration: float = 130.0
    dt_physics: float = 0.005
    control_period: float = 0.05
    seed: int = 42
    output_dir: str = "runs"
    initial_eta: np.ndarray = field(default_factory=lambda: np.zeros(6))
    initial_nu: np.ndarray = field(default_factory=lambda: np.zeros(6))
    # vehicle
    mass: float = _DEFAULT_VEHICLE.mass
    inertia: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_VEHICLE.inertia))
    added_mass: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_VEHICLE.added_mass))
    damping_linear: np.ndarray = field(
        default_factory=lambda: _arr(_DEFAULT_VEHICLE.damping_linear))
    damping_quadratic: np.ndarray = field(
        default_factory=lambda: _arr(_DEFAULT_VEHICLE.damping_quadratic))
    weight: float = _DEFAULT_VEHICLE.weight
    buoyancy: float = _DEFAULT_VEHICLE.buoyancy
    r_g: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_VEHICLE.r_g))
    r_b: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_VEHICLE.r_b))
    f_max: float = _DEFAULT_VEHICLE.f_max
    # thrusters
    thruster_positions: np.ndarray = field(
        default_factory=lambda: _arr(thrusters._DEFAULT_POSITIONS))
    thruster_directions: np.ndarray = field(
        default_factory=lambda: _arr(thrusters._DEFAULT_DIRECTIONS))
    # disturbance
    sigma: np.ndarray = field(default_factory=lambda: _arr((2.0, 2.0, 2.0, 0.1, 0.1, 0.1)))
    t_corr: np.ndarray = field(default_factory=lambda: np.full(6, 0.5))
    disturbance_seed: int | None = None
    mismatch_scale: float = 0.1
    # reference
    step_amplitude: float = np.pi / 4.0
    step_time: float = 5.0
    step_filter_tc: float = 0.5
    # controller.common
    switch_width: float = controllers.DEFAULT_SWITCH_WIDTH
    # controller.sliding
    c1: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_SLIDING.c1))
    c2: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_SLIDING.c2))
    gamma: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_SLIDING.gamma))
    k: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_SLIDING.k))
    # controller.adaptive
    k_bar: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_ADAPTIVE.k_bar))
    lam: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_ADAPTIVE.lam))
    beta: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_ADAPTIVE.beta))
    k_init: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_ADAPTIVE.k_hat))
    # controller.pid
    kp: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_PID.kp))
    ki: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_PID.ki))
    kd: np.ndarray = field(default_factory=lambda: _arr(_DEFAULT_PID.kd))
    integral_clamp: float = _DEFAULT_PID.integral_clamp
    # sensor_noise
    noise_enabled: bool = False
    noise_sigma_eta: np.ndarray = field(default_factory=lambda: np.zeros(6))
    noise_sigma_nu: np.ndarray = field(default_factory=lambda: np.zeros(6))

    _VECTOR_FIELDS = ("initial_eta", "initial_nu", "inertia", "added_mass",
                      "damping_linear", "damping_quadratic", "r_g", "r_b",
                      "thruster_positions", "thruster_directions", "sigma", "t_corr",
                      "c1", "c2", "gamma", "k", "k_bar", "lam", "beta", "k_init",
                      "kp", "ki", "kd", "noise_sigma_eta", "noise_sigma_nu")

    def __post_init__(self):
        for name in self._VECTOR_FIELDS:
            setattr(self, name, _arr(getattr(self, name)))
        self.validate()

    def validate(self) -> None:
        if self.task not in (1, 2, 3):
            raise ValidationError("run.task", f"must be 1, 2 or 3, got {self.task}")
        if self.controller not in controllers.CONTROLLER_IDS:
            raise ValidationError("run.controller",
                                  f"must be one of {controllers.CONTROLLER_IDS}")
        for name in ("duration", "dt_physics", "control_period"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"run.{name}", "must be positive")
        ratio = self.control_period / self.dt_physics
        if abs(ratio - round(ratio)) > 1e-9 or round(ratio) < 1:
            raise ValidationError("run.dt_physics",
                                  f"must divide control_period exactly "
                                  f"({self.dt_physics} vs {self.control_period})")
        if self.seed < 0:
            raise ValidationError("run.seed", "must be non-negative")
        if self.disturbance_seed is not None and self.disturbance_seed < 0:
            raise ValidationError("disturbance.seed", "must be non-negative")
        if np.any(self.sigma < 0):
            raise ValidationError("disturbance.sigma", "entries must be non-negative")
        if np.any(self.t_corr <= 0):
            raise ValidationError("disturbance.t_corr", "entries must be positive")
        if not 0.0 <= self.mismatch_scale <= 0.5:
            raise ValidationError("disturbance.mismatch_scale", "must be in [0, 0.5]")
        if not 0.0 <= self.step_amplitude < np.pi / 2.0 - TOL_SINGULAR:
            raise ValidationError(
                "reference.step_amplitude",
                f"must stay below the pitch singularity guard "
                f"(< {np.pi / 2.0 - TOL_SINGULAR:.6f} rad), got {self.step_amplitude}")
        if self.step_filter_tc <= 0:
            raise ValidationError("reference.step_filter_tc", "must be positive")
        if self.switch_width < 0:
            raise ValidationError("controller.common.switch_width", "must be non-negative")
        for name in ("c1", "c2", "gamma"):
            if np.any(getattr(self, name) <= 0):
                raise ValidationError(f"controller.sliding.{name}", "entries must be positive")
        if np.any(self.k < 0):
            raise ValidationError("controller.sliding.k", "entries must be non-negative")
        for name in ("k_bar", "lam", "beta"):
            key = "lambda" if name == "lam" else name
            if np.any(getattr(self, name) <= 0):
                raise ValidationError(f"controller.adaptive.{key}", "entries must be positive")
        if np.any(self.k_init < self.beta):
            raise ValidationError("controller.adaptive.k_init", "must be >= beta")
        try:
            self.vehicle_model()
        except Exception as exc:
            raise ValidationError("vehicle", str(exc)) from exc

    # --- constructed objects -------------------------------------------------

    def vehicle_model(self) -> VehicleModel:
        return VehicleModel(
            mass=self.mass, inertia=self.inertia, added_mass=self.added_mass,
            damping_linear=self.damping_linear, damping_quadratic=self.damping_quadratic,
            weight=self.weight, buoyancy=self.buoyancy, r_g=self.r_g, r_b=self.r_b,
            f_max=self.f_max,
        )

    def thruster_layout(self) -> ThrusterLayout:
        return ThrusterLayout(self.thruster_positions, self.thruster_directions)

    def disturbance_config(self, seed: int | None = None) -> DisturbanceConfig:
        if seed is None:
            seed = self.disturbance_seed if self.disturbance_seed is not None else self.seed
        return DisturbanceConfig(sigma=self.sigma, t_corr=self.t_corr, seed=seed,
                                 mismatch_scale=self.mismatch_scale)

    def sliding_gains(self) -> SlidingGains:
        return SlidingGains(c1=self.c1, c2=self.c2, gamma=self.gamma, k=self.k)

    def adaptive_state(self) -> AdaptiveState:
        return AdaptiveState(k_hat=self.k_init, k_bar=self.k_bar, beta=self.beta,
                             lam=self.lam, integral_e=np.zeros(6))

    def pid_gains(self) -> PidGains:
        return PidGains(kp=self.kp, ki=self.ki, kd=self.kd,
                        integral_clamp=self.integral_clamp)

    def reference_params(self) -> ReferenceParams:
        return ReferenceParams(step_amplitude=self.step_amplitude,
                               step_time=self.step_time,
                               step_filter_tc=self.step_filter_tc)

    def build_controller(self, controller_id: str | None = None):
        cid = controller_id or self.controller
        if cid == "pid":
            return PidController(self.pid_gains())
        if cid == "smc":
            return SmcController(self.sliding_gains(), self.switch_width)
        if cid == "ismc":
            return IsmcController(self.sliding_gains(), self.switch_width)
        if cid == "aismc":
            return AismcController(self.sliding_gains(), self.adaptive_state(),
                                   self.switch_width)
        raise ValidationError("run.controller", f"unknown controller {cid!r}")

    def build_setup(self, controller_id: str | None = None, seed: int | None = None,
                    task: int | None = None) -> SimulationSetup:
        """Construct the simulation setup, optionally overriding the
        controller, seed or task (used by paired comparisons)."""
        nominal = self.vehicle_model()
        dist_cfg = self.disturbance_config(seed=seed)
        plant = apply_mismatch(nominal, dist_cfg)
        noise = SensorNoise(self.noise_sigma_eta, self.noise_sigma_nu) \
            if self.noise_enabled else None
        return SimulationSetup(
            task=self.task if task is None else task,
            controller=self.build_controller(controller_id),
            nominal_model=nominal,
            plant_model=plant,
            layout=self.thruster_layout(),
            disturbance=FlowDisturbance(dist_cfg),
            duration=self.duration,
            dt_physics=self.dt_physics,
            control_period=self.control_period,
            seed=dist_cfg.seed,
            reference_params=self.reference_params(),
            initial_eta=self.initial_eta,
            initial_nu=self.initial_nu,
            sensor_noise=noise,
        )


# --- schema-driven parse/dump ----------------------------------------------

_F, _I, _B, _S, _V3, _V6 = "float", "int", "bool", "str", "vec3", "vec6"

_SCHEMA: dict[str, dict[str, tuple[str, str]]] = {
    "run": {
        "task": ("task", _I),
        "controller": ("controller", _S),
        "duration": ("duration", _F),
        "dt_physics": ("dt_physics", _F),
        "control_period": ("control_period", _F),
        "seed": ("seed", _I),
        "output_dir": ("output_dir", _S),
        "initial_eta": ("initial_eta", _V6),
        "initial_nu": ("initial_nu", _V6),
    },
    "vehicle": {
        "mass": ("mass", _F),
        "inertia": ("inertia", _V3),
        "added_mass": ("added_mass", _V6),
        "damping_linear": ("damping_linear", _V6),
        "damping_quadratic": ("damping_quadratic", _V6),
        "weight": ("weight", _F),
        "buoyancy": ("buoyancy", _F),
        "r_g": ("r_g", _V3),
        "r_b": ("r_b", _V3),
        "f_max": ("f_max", _F),
    },
    "thrusters": {},  # filled below with position_i / direction_i
    "disturbance": {
        "sigma": ("sigma", _V6),
        "t_corr": ("t_corr", _V6),
        "seed": ("disturbance_seed", _I),
        "mismatch_scale": ("mismatch_scale", _F),
    },
    "reference": {
        "step_amplitude": ("step_amplitude", _F),
        "step_time": ("step_time", _F),
        "step_filter_tc": ("step_filter_tc", _F),
    },
    "controller.common": {
        "switch_width": ("switch_width", _F),
    },
    "controller.sliding": {
        "c1": ("c1", _V6),
        "c2": ("c2", _V6),
        "gamma": ("gamma", _V6),
        "k": ("k", _V6),
    },
    "controller.adaptive": {
        "k_bar": ("k_bar", _V6),
        "lambda": ("lam", _V6),
        "beta": ("beta", _V6),
        "k_init": ("k_init", _V6),
    },
    "controller.pid": {
        "kp": ("kp", _V6),
        "ki": ("ki", _V6),
        "kd": ("kd", _V6),
        "integral_clamp": ("integral_clamp", _F),
    },
    "sensor_noise": {
        "enabled": ("noise_enabled", _B),
        "sigma_eta": ("noise_sigma_eta", _V6),
        "sigma_nu": ("noise_sigma_nu", _V6),
    },
}
for _i in range(1, 9):
    _SCHEMA["thrusters"][f"position_{_i}"] = (f"thruster_position_{_i}", _V3)
    _SCHEMA["thrusters"][f"direction_{_i}"] = (f"thruster_direction_{_i}", _V3)


def _convert(raw: str, kind: str, where: str):
    try:
        if kind == _F:
            return float(raw)
        if kind == _I:
            return int(raw)
        if kind == _S:
            return raw.strip()
        if kind == _B:
            low = raw.strip().lower()
            if low in ("true", "yes", "on", "1"):
                return True
            if low in ("false", "no", "off", "0"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        n = 3 if kind == _V3 else 6
        values = [float(tok) for tok in raw.split()]
        if len(values) != n:
            raise ValueError(f"expected {n} values, got {len(values)}")
        return np.array(values)
    except ValueError as exc:
        raise ValidationError(where, str(exc)) from exc


def parse_config(text: str, overrides: list[tuple[str, str]] | None = None) -> RunConfig:
    """Parse configuration text; missing keys keep their defaults.

    ``overrides`` are (\"section.key\", \"value\") pairs applied on top of the
    text, the mechanism behind command-line flag precedence.

    Raises:
        ParseError: malformed INI text (with line information).
        ValidationError: unknown or invalid fields.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"),
                                       interpolation=None)
    parser.optionxform = str.lower
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        line = getattr(exc, "lineno", None)
        if line is None and getattr(exc, "errors", None):
            line = exc.errors[0][0]
        raise ParseError(exc.message.splitlines()[0], line) from exc

    for dotted, raw in overrides or []:
        section, _, key = dotted.rpartition(".")
        if not section:
            raise ValidationError(dotted, "override must look like section.key=value")
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section, key.lower(), raw)

    overrides: dict[str, object] = {}
    thr_pos = {}
    thr_dir = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ValidationError(section, "unknown section")
        for key, raw in parser.items(section):
            if key not in _SCHEMA[section]:
                raise ValidationError(f"{section}.{key}", "unknown option")
            attr, kind = _SCHEMA[section][key]
            value = _convert(raw, kind, f"{section}.{key}")
            if attr.startswith("thruster_position_"):
                thr_pos[int(attr.rsplit("_", 1)[1]) - 1] = value
            elif attr.startswith("thruster_direction_"):
                thr_dir[int(attr.rsplit("_", 1)[1]) - 1] = value
            else:
                overrides[attr] = value

    cfg = RunConfig(**overrides)
    if thr_pos or thr_dir:
        positions = cfg.thruster_positions.copy()
        directions = cfg.thruster_directions.copy()
        for i, v in thr_pos.items():
            positions[i] = v
        for i, v in thr_dir.items():
            directions[i] = v
        cfg.thruster_positions = positions
        cfg.thruster_directions = directions
        try:
            cfg.thruster_layout()
        except Exception as exc:
            raise ValidationError("thrusters", str(exc)) from exc
    return cfg


def load_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as f:
        return parse_config(f.read())


def _fmt(value, kind: str) -> str:
    if kind in (_V3, _V6):
        return " ".join(repr(float(v)) for v in value)
    if kind == _B:
        return "true" if value else "false"
    if kind == _F:
        return repr(float(value))
    return str(value)


def dump_config(cfg: RunConfig) -> str:
    """Canonical text form of a configuration; re-parses to the same values."""
    out = io.StringIO()
    for section, keys in _SCHEMA.items():
        out.write(f"[{section}]\n")
        for key, (attr, kind) in keys.items():
            if attr.startswith("thruster_position_"):
                value = cfg.thruster_positions[int(attr.rsplit("_", 1)[1]) - 1]
            elif attr.startswith("thruster_direction_"):
                value = cfg.thruster_directions[int(attr.rsplit("_", 1)[1]) - 1]
            else:
                value = getattr(cfg, attr)
                if value is None:
                    continue
            out.write(f"{key} = {_fmt(value, kind)}\n")
        out.write("\n")
    return out.getvalue()


def config_equal(a: RunConfig, b: RunConfig) -> bool:
    """Field-wise equality, treating array fields by value."""
    for f in fields(RunConfig):
        va, vb = getattr(a, f.name), getattr(b, f.name)
        if isinstance(va, np.ndarray) or isinstance(vb, np.ndarray):
            if not np.array_equal(np.asarray(va), np.asarray(vb)):
                return False
        elif va != vb:
            return False
    return True
