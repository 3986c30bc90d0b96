"""Desk-scale 6-DOF underwater vehicle simulation with sliding-mode attitude control."""

from .config import RunConfig, dump_config, load_config, parse_config
from .controllers import (
    AdaptiveState,
    AismcController,
    ControlOutput,
    IsmcController,
    PidController,
    PidGains,
    SlidingGains,
    SmcController,
    aismc_law,
    ismc_law,
    lyapunov_diagnostic,
    pid_law,
    sliding_surface,
    smc_law,
    tracking_error,
)
from .disturbance import DisturbanceConfig, FlowDisturbance, apply_mismatch
from .dynamics import (
    VehicleModel,
    Wrench,
    body_acceleration,
    coriolis_matrix,
    damping_matrix,
    earth_frame_terms,
    inertia_matrix,
    normalized_control,
    restoring_vector,
)
from .kinematics import (
    VehicleState,
    body_to_earth_rates,
    transform_matrix,
    transform_matrix_derivative,
    wrap_angle,
)
from .metrics import RmseReport, comparison_report, error_distribution, rmse, total_rmse
from .references import ReferenceParams, ReferenceSample, reference_trajectory
from .simulation import SensorNoise, SimulationSetup, run_simulation
from .thrusters import (
    ThrusterLayout,
    VoltageCommand,
    allocation_matrix,
    control_to_body_wrench,
    voltages_to_wrench,
    wrench_to_voltages,
)
from .trajlog import TrajectoryLog

__version__ = "0.1.0"
