"""Geometric adaptive attitude tracking on the rotation group.

Rigid-body attitude dynamics, adaptive and robust-adaptive tracking
controllers with inertia estimation, gain certification, and a scenario
harness with CSV export.  See the README for the CLI.
"""

from .controllers import (
    EstimatorState,
    GainReport,
    Gains,
    RobustParams,
    adaptive_control,
    adaptive_update_rate,
    c_max,
    control_and_update,
    lyapunov_value,
    rejection_term,
    robust_control,
    robust_update_rate,
    validate_gains,
)
from .dynamics import (
    BodyState,
    InertiaMatrix,
    IntegrationError,
    IntegratorConfig,
    benchmark_inertia,
    body_dynamics_rhs,
    step_lgvi,
    step_rk4_projected,
)
from .errors import (
    BoundConstants,
    ErrorState,
    GainMatrix,
    attitude_error_vector,
    angular_velocity_error,
    bound_constants,
    error_state,
    feedforward_acceleration,
    psi,
    transport_bound,
    transport_matrix,
)
from .harness import (
    CSV_HEADER,
    ConfigError,
    GainInfeasibleError,
    Metrics,
    Scenario,
    TimeSeries,
    benchmark_disturbance,
    bundled_config_path,
    compute_metrics,
    load_scenario,
    run_scenario,
)
from .properties import PropertyResult, run_all
from .so3 import (
    check_rotation,
    exp_so3,
    hat,
    log_so3,
    project_to_so3,
    random_rotation,
    rotation_defect,
    vee,
)
from .trajectory import CommandSample, EulerCommand, benchmark_command

__version__ = "0.1.0"

__all__ = [
    "BodyState",
    "BoundConstants",
    "CSV_HEADER",
    "CommandSample",
    "ConfigError",
    "ErrorState",
    "EstimatorState",
    "EulerCommand",
    "GainInfeasibleError",
    "GainMatrix",
    "GainReport",
    "Gains",
    "InertiaMatrix",
    "IntegrationError",
    "IntegratorConfig",
    "Metrics",
    "PropertyResult",
    "RobustParams",
    "Scenario",
    "TimeSeries",
    "adaptive_control",
    "adaptive_update_rate",
    "angular_velocity_error",
    "attitude_error_vector",
    "benchmark_command",
    "benchmark_disturbance",
    "benchmark_inertia",
    "body_dynamics_rhs",
    "bound_constants",
    "bundled_config_path",
    "c_max",
    "check_rotation",
    "compute_metrics",
    "control_and_update",
    "error_state",
    "exp_so3",
    "feedforward_acceleration",
    "hat",
    "load_scenario",
    "log_so3",
    "lyapunov_value",
    "project_to_so3",
    "psi",
    "random_rotation",
    "rejection_term",
    "robust_control",
    "robust_update_rate",
    "rotation_defect",
    "run_all",
    "run_scenario",
    "step_lgvi",
    "step_rk4_projected",
    "transport_bound",
    "transport_matrix",
    "validate_gains",
    "vee",
]
