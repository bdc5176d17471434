"""Closed-loop scenario runner with CSV and metrics export.

run_scenario propagates the plant, the controller, and the inertia
estimator together, certifying the gain set first, and records a
fixed-cadence time series plus summary metrics.  Scenario configs are
YAML mappings with unknown keys rejected at every level; the three
bundled cases live under configs/.
"""

from __future__ import annotations

import copy
import logging
from dataclasses import dataclass, replace
from importlib import resources
from typing import Callable, Optional, Tuple

import numpy as np
import yaml

from .controllers import (
    EstimatorState,
    Gains,
    RobustParams,
    control_and_update,
    lyapunov_value,
    validate_gains,
)
from .dynamics import (
    BodyState,
    InertiaMatrix,
    IntegrationError,
    IntegratorConfig,
    benchmark_inertia,
    step_lgvi_split,
)
from .errors import GainMatrix
from .so3 import check_rotation, hat, project_to_so3
from .trajectory import EulerCommand

log = logging.getLogger(__name__)

CSV_HEADER = (
    "t",
    "R11", "R12", "R13", "R21", "R22", "R23", "R31", "R32", "R33",
    "Wx", "Wy", "Wz",
    "Rd11", "Rd12", "Rd13", "Rd21", "Rd22", "Rd23", "Rd31", "Rd32", "Rd33",
    "Wdx", "Wdy", "Wdz",
    "eRx", "eRy", "eRz",
    "eWx", "eWy", "eWz",
    "Psi",
    "ux", "uy", "uz",
    "Dx", "Dy", "Dz",
    "Jb11", "Jb12", "Jb13", "Jb22", "Jb23", "Jb33",
    "V",
    "Jtilde_F",
)

CASE_IDS = ("adaptive_no_dist", "adaptive_with_dist", "robust_with_dist",
            "custom")

V_VIOLATION_TOL = 1e-12


def benchmark_disturbance(t: float, R) -> np.ndarray:
    """Bounded attitude-coupled disturbance moment (N m).

    0.1 (sin 2 pi t, cos 5 pi t, R11); componentwise below 0.1, so the
    norm stays under 0.1 sqrt(3) ~ 0.173.
    """
    return np.array([
        0.1 * np.sin(2.0 * np.pi * t),
        0.1 * np.cos(5.0 * np.pi * t),
        0.1 * float(R[0, 0]),
    ])


class GainInfeasibleError(RuntimeError):
    """Gain certification failed and the scenario did not override it."""

    def __init__(self, report):
        super().__init__(
            "gain certification failed: " + "; ".join(report.violations)
        )
        self.report = report


class ConfigError(ValueError):
    """Scenario config is malformed (unknown key, missing field, bad value)."""


@dataclass(frozen=True)
class Scenario:
    """Everything one closed-loop run needs; validated on construction.

    The robust controller runs exactly when robust parameters are
    present.  seed is recorded for reproducibility of any future
    randomized sweeps; the bundled cases are fully deterministic.
    """

    case_id: str
    duration: float
    step: float
    record_every: int
    seed: int
    integrator: IntegratorConfig
    gains: Gains
    robust: Optional[RobustParams]
    psi_bar: float
    J_true: InertiaMatrix
    J_bar0: np.ndarray
    R0: np.ndarray
    Omega0: np.ndarray
    command: Callable[[float], object]
    disturbance: Optional[Callable[[float, np.ndarray], np.ndarray]]
    settle: float = 5.0

    def __post_init__(self):
        if self.case_id not in CASE_IDS:
            raise ValueError(f"unknown case_id {self.case_id!r}")
        if not (np.isfinite(self.duration) and self.duration > 0.0):
            raise ValueError("duration must be positive")
        if not (np.isfinite(self.step) and self.step > 0.0):
            raise ValueError("step must be positive")
        n = round(self.duration / self.step)
        if n < 1 or abs(n * self.step - self.duration) > 1e-9 * max(1.0, self.duration):
            raise ValueError("duration must be an integer number of steps")
        if self.record_every != int(self.record_every) or self.record_every < 1:
            raise ValueError("record_every must be a positive integer")
        if abs(self.integrator.step_size - self.step) > 1e-15:
            raise ValueError("integrator step_size must match the scenario step")
        if not (0.0 <= self.settle < self.duration):
            raise ValueError("settle window must end before the run does")
        if not (np.isfinite(self.psi_bar) and self.psi_bar > 0.0):
            raise ValueError("psi_bar must be positive")
        object.__setattr__(self, "R0", check_rotation(np.asarray(self.R0, float)))
        Om0 = np.asarray(self.Omega0, dtype=float)
        if Om0.shape != (3,) or not np.all(np.isfinite(Om0)):
            raise ValueError("Omega0 must be a finite 3-vector")
        object.__setattr__(self, "Omega0", Om0)
        Jb0 = np.asarray(self.J_bar0, dtype=float)
        if Jb0.shape != (3, 3) or np.linalg.norm(Jb0 - Jb0.T, "fro") > 1e-12:
            raise ValueError("J_bar0 must be a symmetric 3x3 matrix")
        object.__setattr__(self, "J_bar0", 0.5 * (Jb0 + Jb0.T))

    @property
    def n_steps(self) -> int:
        return round(self.duration / self.step)


@dataclass
class TimeSeries:
    """Recorded closed-loop samples, one row per cadence point."""

    t: np.ndarray
    R: np.ndarray
    Omega: np.ndarray
    R_d: np.ndarray
    Omega_d: np.ndarray
    e_R: np.ndarray
    e_Omega: np.ndarray
    psi: np.ndarray
    u: np.ndarray
    delta: np.ndarray
    J_bar: np.ndarray
    V: np.ndarray
    J_tilde_F: np.ndarray

    def __len__(self) -> int:
        return int(self.t.size)

    def to_csv(self, path) -> None:
        """Write the fixed 46-column schema, 17 significant digits."""
        iu, ju = np.triu_indices(3)
        with open(path, "w", newline="") as f:
            f.write(",".join(CSV_HEADER) + "\n")
            for i in range(self.t.size):
                vals = (
                    self.t[i], *self.R[i].ravel(), *self.Omega[i],
                    *self.R_d[i].ravel(), *self.Omega_d[i],
                    *self.e_R[i], *self.e_Omega[i], self.psi[i],
                    *self.u[i], *self.delta[i],
                    *self.J_bar[i][iu, ju],
                    self.V[i], self.J_tilde_F[i],
                )
                f.write(",".join(f"{v:.17g}" for v in vals) + "\n")


@dataclass(frozen=True)
class Metrics:
    """Scalar run summary; the optional fields are robust-run only."""

    final_e_R: float
    final_e_Omega: float
    max_e_R_after_settle: float
    v_violations: int
    settle: float
    max_J_bar_fro: float
    ultimate_bound: Optional[float] = None
    ub_entry_time: Optional[float] = None
    ub_margin: Optional[float] = None
    max_e_A_power: Optional[float] = None
    max_rejection_norm: Optional[float] = None

    def to_kv(self) -> str:
        pairs = [
            ("final_e_R", f"{self.final_e_R:.17g}"),
            ("final_e_Omega", f"{self.final_e_Omega:.17g}"),
            ("max_e_R_after_settle", f"{self.max_e_R_after_settle:.17g}"),
            ("v_violations", str(self.v_violations)),
            ("settle", f"{self.settle:.17g}"),
            ("max_J_bar_fro", f"{self.max_J_bar_fro:.17g}"),
        ]
        for name in ("ultimate_bound", "ub_entry_time", "ub_margin",
                     "max_e_A_power", "max_rejection_norm"):
            val = getattr(self, name)
            if val is not None:
                pairs.append((name, f"{val:.17g}"))
        return "\n".join(f"{k} = {v}" for k, v in pairs)


def compute_metrics(ts: TimeSeries, settle: float = 5.0,
                    ultimate_bound: Optional[float] = None) -> Metrics:
    """Summarize a time series.

    A monotonicity violation is a recorded step where V increases by
    more than 1e-12.  With an ultimate bound given, ub_entry_time is the
    first recorded time |z|^2 <= bound and ub_margin is the bound minus
    the worst |z|^2 from then on (nonnegative iff the trajectory stayed
    inside).
    """
    if ts.t.size == 0:
        raise ValueError("empty time series")
    if ts.t.size > 1 and not settle < ts.t[-1]:
        raise ValueError("settle window must end before the series does")
    e_R_norm = np.linalg.norm(ts.e_R, axis=1)
    e_W_norm = np.linalg.norm(ts.e_Omega, axis=1)
    violations = int(np.count_nonzero(np.diff(ts.V) > V_VIOLATION_TOL))
    tail = ts.t >= settle
    metrics = Metrics(
        final_e_R=float(e_R_norm[-1]),
        final_e_Omega=float(e_W_norm[-1]),
        max_e_R_after_settle=float(e_R_norm[tail].max()) if tail.any() else 0.0,
        v_violations=violations,
        settle=float(settle),
        max_J_bar_fro=float(np.linalg.norm(ts.J_bar, axis=(1, 2)).max()),
    )
    if ultimate_bound is not None:
        z_sq = e_R_norm**2 + e_W_norm**2 + ts.J_tilde_F**2
        inside = z_sq <= ultimate_bound
        if inside.any():
            first = int(np.argmax(inside))
            entry_time = float(ts.t[first])
            margin = float(ultimate_bound - z_sq[first:].max())
        else:
            entry_time = float("inf")
            margin = float(ultimate_bound - z_sq.min())
        metrics = replace(metrics, ultimate_bound=float(ultimate_bound),
                          ub_entry_time=entry_time, ub_margin=margin)
    return metrics


def run_scenario(s: Scenario) -> Tuple[TimeSeries, Metrics]:
    """Propagate the closed loop and summarize it.

    Gain certification runs first; infeasible gains abort with
    GainInfeasibleError unless the gain set carries force=True, in which
    case the report is logged and the run proceeds.  Robust inequality
    margins (e_A . (delta + v) and |v|) are tracked at every integration
    step, not just at recorded ones.
    """
    report = validate_gains(
        s.gains, (s.J_true.lambda_min, s.J_true.lambda_max), s.psi_bar,
        robust=s.robust,
    )
    if not report.feasible:
        if not s.gains.force:
            raise GainInfeasibleError(report)
        log.warning("running with uncertified gains:\n%s", report.to_text())

    n = s.n_steps
    h = s.step
    every = int(s.record_every)
    n_rows = n // every + 1
    rec = {
        "t": np.empty(n_rows),
        "R": np.empty((n_rows, 3, 3)),
        "Omega": np.empty((n_rows, 3)),
        "R_d": np.empty((n_rows, 3, 3)),
        "Omega_d": np.empty((n_rows, 3)),
        "e_R": np.empty((n_rows, 3)),
        "e_Omega": np.empty((n_rows, 3)),
        "psi": np.empty(n_rows),
        "u": np.empty((n_rows, 3)),
        "delta": np.empty((n_rows, 3)),
        "J_bar": np.empty((n_rows, 3, 3)),
        "V": np.empty(n_rows),
        "J_tilde_F": np.empty(n_rows),
    }

    Jm = s.J_true.matrix
    zero3 = np.zeros(3)
    disturb = s.disturbance if s.disturbance is not None else None
    method = s.integrator.method
    tol = s.integrator.newton_tol
    max_iter = s.integrator.newton_max_iter

    R = s.R0.copy()
    Om = s.Omega0.copy()
    Jb = s.J_bar0.copy()
    row = 0
    max_power = None
    max_v_norm = None
    max_jbar = 0.0

    for k in range(n + 1):
        t = k * h
        cmd = s.command(t)
        state = BodyState(R=R, Omega=Om)
        est = EstimatorState(J_bar=Jb)
        u, rate, es, v = control_and_update(state, cmd, s.gains, est,
                                            robust=s.robust)
        d = disturb(t, R) if disturb is not None else zero3

        jbar_fro = float(np.linalg.norm(Jb, "fro"))
        if jbar_fro > max_jbar:
            max_jbar = jbar_fro
        if s.robust is not None:
            power = float(es.e_A @ (d + v))
            v_norm = float(np.linalg.norm(v))
            if max_power is None or power > max_power:
                max_power = power
            if max_v_norm is None or v_norm > max_v_norm:
                max_v_norm = v_norm

        if k % every == 0:
            rec["t"][row] = t
            rec["R"][row] = R
            rec["Omega"][row] = Om
            rec["R_d"][row] = cmd.R_d
            rec["Omega_d"][row] = cmd.Omega_d
            rec["e_R"][row] = es.e_R
            rec["e_Omega"][row] = es.e_Omega
            rec["psi"][row] = es.psi
            rec["u"][row] = u
            rec["delta"][row] = d
            rec["J_bar"][row] = Jb
            rec["V"][row] = lyapunov_value(state, cmd, s.gains, est, s.J_true)
            rec["J_tilde_F"][row] = np.linalg.norm(Jm - Jb, "fro")
            row += 1

        if k == n:
            break
        t1 = (k + 1) * h
        try:
            if method == "lgvi":
                # The incremental rotation depends only on the start
                # moment, so the endpoint moment enters as a pure
                # momentum correction; the estimator uses a trapezoid
                # with one predictor pass.
                M0 = u + d
                st1 = step_lgvi_split(state, s.J_true, h, moment_start=M0,
                                      newton_tol=tol, newton_max_iter=max_iter)
                R1, Om1z = st1.R, st1.Omega
                Jb_pred = Jb + h * rate
                cmd1 = s.command(t1)
                u1, rate1, _, _ = control_and_update(
                    BodyState(R=R1, Omega=Om1z), cmd1, s.gains,
                    EstimatorState(J_bar=Jb_pred), robust=s.robust,
                )
                d1 = disturb(t1, R1) if disturb is not None else zero3
                Om = Om1z + 0.5 * h * np.linalg.solve(Jm, (u1 + d1) - M0)
                R = R1
                Jb = Jb + 0.5 * h * (rate + rate1)
            else:
                def deriv(ti, Ri, Omi, Jbi):
                    ui, ri, _, _ = control_and_update(
                        BodyState(R=Ri, Omega=Omi), s.command(ti), s.gains,
                        EstimatorState(J_bar=Jbi), robust=s.robust,
                    )
                    di = disturb(ti, Ri) if disturb is not None else zero3
                    torque = -np.cross(Omi, Jm @ Omi) + ui + di
                    return Ri @ hat(Omi), np.linalg.solve(Jm, torque), ri

                k1 = (R @ hat(Om),
                      np.linalg.solve(Jm, -np.cross(Om, Jm @ Om) + u + d),
                      rate)
                k2 = deriv(t + 0.5 * h, R + 0.5 * h * k1[0],
                           Om + 0.5 * h * k1[1], Jb + 0.5 * h * k1[2])
                k3 = deriv(t + 0.5 * h, R + 0.5 * h * k2[0],
                           Om + 0.5 * h * k2[1], Jb + 0.5 * h * k2[2])
                k4 = deriv(t1, R + h * k3[0], Om + h * k3[1], Jb + h * k3[2])
                R_raw = R + (h / 6.0) * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
                if not np.all(np.isfinite(R_raw)):
                    raise IntegrationError("state became non-finite",
                                           step_index=k)
                try:
                    R = project_to_so3(R_raw)
                except ValueError as err:
                    # finite but degenerate update (det <= 0): a blow-up,
                    # not a caller mistake
                    raise IntegrationError(str(err), step_index=k) from None
                Om = Om + (h / 6.0) * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
                Jb = Jb + (h / 6.0) * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        except IntegrationError as err:
            if err.step_index is None:
                raise IntegrationError(str(err), step_index=k) from None
            raise
        if not (np.all(np.isfinite(Om)) and np.all(np.isfinite(Jb))):
            raise IntegrationError("state became non-finite", step_index=k)

    ts = TimeSeries(**rec)
    metrics = compute_metrics(
        ts, settle=s.settle,
        ultimate_bound=report.ultimate_bound if s.robust is not None else None,
    )
    metrics = replace(metrics, max_J_bar_fro=max_jbar)
    if s.robust is not None:
        metrics = replace(metrics, max_e_A_power=max_power,
                          max_rejection_norm=max_v_norm)
    return ts, metrics


_TOP_KEYS = {
    "case_id", "duration", "step", "record_every", "seed", "integrator",
    "gains", "robust", "psi_bar", "J_true", "J_bar0", "R0", "Omega0",
    "command", "disturbance", "force_gains", "settle",
}
_GAIN_KEYS = {"k_R", "k_Omega", "k_J", "c", "G"}
_ROBUST_KEYS = {"sigma", "epsilon", "delta_bound"}
_INTEGRATOR_KEYS = {"method", "newton_tol", "newton_max_iter"}
_COMMAND_KEYS = {"type", "amplitude_phi", "amplitude_theta", "frequency"}
_DISTURBANCE_KEYS = {"type"}

_PI = float(np.pi)


def _check_keys(d: dict, allowed: set, ctx: str) -> None:
    if not isinstance(d, dict):
        raise ConfigError(f"{ctx} must be a mapping")
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {ctx}: {', '.join(sorted(unknown))}")


def _as_float(val, ctx: str) -> float:
    try:
        return float(val)
    except (TypeError, ValueError):
        raise ConfigError(f"{ctx} must be a number, got {val!r}") from None


def _as_mat3(val, ctx: str) -> np.ndarray:
    try:
        arr = np.asarray(val, dtype=float)
    except (TypeError, ValueError):
        raise ConfigError(f"{ctx} must be a 3x3 array of numbers") from None
    if arr.shape != (3, 3):
        raise ConfigError(f"{ctx} must be 3x3, got shape {arr.shape}")
    return arr


def _as_vec3(val, ctx: str) -> np.ndarray:
    try:
        arr = np.asarray(val, dtype=float)
    except (TypeError, ValueError):
        raise ConfigError(f"{ctx} must be a 3-vector of numbers") from None
    if arr.shape != (3,):
        raise ConfigError(f"{ctx} must have 3 entries, got shape {arr.shape}")
    return arr


def load_config(path) -> dict:
    """Parse a YAML scenario config file into a plain mapping."""
    try:
        with open(path) as f:
            raw = yaml.safe_load(f)
    except yaml.YAMLError as err:
        raise ConfigError(f"config does not parse: {err}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a mapping")
    return raw


def apply_overrides(cfg: dict, assignments) -> dict:
    """Apply dotted key=value overrides; values parse as YAML scalars.

    Returns a new mapping; the input is not modified.  Creating a new
    nested section (say robust.sigma on an adaptive config) is allowed
    and the result is validated as usual afterwards.
    """
    out = copy.deepcopy(cfg)
    for item in assignments:
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        node = out
        parts = key.split(".")
        for part in parts[:-1]:
            nxt = node.setdefault(part, {})
            if not isinstance(nxt, dict):
                raise ConfigError(
                    f"cannot descend into {part!r} applying override {item!r}")
            node = nxt
        try:
            parsed = yaml.safe_load(val)
        except yaml.YAMLError:
            parsed = val
        node[parts[-1]] = parsed
    return out


def scenario_from_dict(cfg: dict) -> Scenario:
    """Build a validated Scenario from a parsed config mapping."""
    _check_keys(cfg, _TOP_KEYS, "config")
    for key in ("duration", "step", "gains"):
        if key not in cfg:
            raise ConfigError(f"config is missing required key {key!r}")

    duration = _as_float(cfg["duration"], "duration")
    step = _as_float(cfg["step"], "step")

    gains_cfg = cfg["gains"]
    _check_keys(gains_cfg, _GAIN_KEYS, "gains")
    g_diag = _as_vec3(gains_cfg.get("G", [0.9, 1.0, 1.1]), "gains.G")
    force = bool(cfg.get("force_gains", False))
    try:
        G = GainMatrix(*g_diag)
        gains = Gains(
            k_R=_as_float(gains_cfg.get("k_R"), "gains.k_R"),
            k_Omega=_as_float(gains_cfg.get("k_Omega"), "gains.k_Omega"),
            k_J=_as_float(gains_cfg.get("k_J"), "gains.k_J"),
            c=_as_float(gains_cfg.get("c"), "gains.c"),
            G=G,
            force=force,
        )
    except (TypeError, ValueError) as err:
        raise ConfigError(f"bad gains: {err}") from None

    robust = None
    if cfg.get("robust") is not None:
        rob_cfg = cfg["robust"]
        _check_keys(rob_cfg, _ROBUST_KEYS, "robust")
        try:
            robust = RobustParams(
                sigma=_as_float(rob_cfg.get("sigma"), "robust.sigma"),
                epsilon=_as_float(rob_cfg.get("epsilon"), "robust.epsilon"),
                delta_bound=_as_float(rob_cfg.get("delta_bound"),
                                      "robust.delta_bound"),
            )
        except (TypeError, ValueError) as err:
            raise ConfigError(f"bad robust parameters: {err}") from None

    integ_cfg = cfg.get("integrator") or {}
    _check_keys(integ_cfg, _INTEGRATOR_KEYS, "integrator")
    try:
        integrator = IntegratorConfig(
            method=str(integ_cfg.get("method", "lgvi")),
            step_size=step,
            newton_tol=_as_float(integ_cfg.get("newton_tol", 1e-14),
                                 "integrator.newton_tol"),
            newton_max_iter=int(integ_cfg.get("newton_max_iter", 50)),
        )
    except (TypeError, ValueError) as err:
        raise ConfigError(f"bad integrator config: {err}") from None

    j_true_cfg = cfg.get("J_true", "benchmark")
    if isinstance(j_true_cfg, str):
        if j_true_cfg != "benchmark":
            raise ConfigError(f"J_true must be 'benchmark' or a 3x3 matrix, "
                              f"got {j_true_cfg!r}")
        J_true = benchmark_inertia()
    else:
        try:
            J_true = InertiaMatrix(_as_mat3(j_true_cfg, "J_true"))
        except ValueError as err:
            raise ConfigError(f"bad J_true: {err}") from None

    jb0_cfg = cfg.get("J_bar0", 1e-3)
    if isinstance(jb0_cfg, (int, float)):
        J_bar0 = float(jb0_cfg) * np.eye(3)
    else:
        J_bar0 = _as_mat3(jb0_cfg, "J_bar0")

    r0_cfg = cfg.get("R0", "identity")
    if isinstance(r0_cfg, str):
        if r0_cfg != "identity":
            raise ConfigError(f"R0 must be 'identity' or a 3x3 matrix, "
                              f"got {r0_cfg!r}")
        R0 = np.eye(3)
    else:
        R0 = _as_mat3(r0_cfg, "R0")

    Omega0 = _as_vec3(cfg.get("Omega0", [0.0, 0.0, 0.0]), "Omega0")

    cmd_cfg = cfg.get("command") or {"type": "benchmark"}
    _check_keys(cmd_cfg, _COMMAND_KEYS, "command")
    cmd_type = cmd_cfg.get("type", "benchmark")
    if cmd_type not in ("benchmark", "euler_sine"):
        raise ConfigError(f"unknown command type {cmd_type!r}")
    try:
        command = EulerCommand(
            amplitude_phi=_as_float(cmd_cfg.get("amplitude_phi", _PI / 9.0),
                                    "command.amplitude_phi"),
            amplitude_theta=_as_float(cmd_cfg.get("amplitude_theta", _PI / 9.0),
                                      "command.amplitude_theta"),
            frequency=_as_float(cmd_cfg.get("frequency", _PI),
                                "command.frequency"),
        )
    except ValueError as err:
        raise ConfigError(f"bad command: {err}") from None

    dist_cfg = cfg.get("disturbance") or {"type": "none"}
    _check_keys(dist_cfg, _DISTURBANCE_KEYS, "disturbance")
    dist_type = dist_cfg.get("type", "none")
    if dist_type == "none":
        disturbance = None
    elif dist_type == "benchmark":
        disturbance = benchmark_disturbance
    else:
        raise ConfigError(f"unknown disturbance type {dist_type!r}")

    case_id = str(cfg.get("case_id", "custom"))
    if case_id in ("adaptive_no_dist", "adaptive_with_dist") and robust is not None:
        raise ConfigError(f"case {case_id} must not define robust parameters")
    if case_id == "robust_with_dist" and robust is None:
        raise ConfigError("case robust_with_dist requires robust parameters")
    if case_id.endswith("_no_dist") and disturbance is not None:
        raise ConfigError(f"case {case_id} must use disturbance type none")
    if case_id.endswith("_with_dist") and disturbance is None:
        raise ConfigError(f"case {case_id} requires a disturbance")

    psi_bar_cfg = cfg.get("psi_bar")
    if psi_bar_cfg is None:
        g1, g2, g3 = g_diag
        psi_bar = 0.5 * min(g1 + g2, g2 + g3, g3 + g1)
    else:
        psi_bar = _as_float(psi_bar_cfg, "psi_bar")

    try:
        return Scenario(
            case_id=case_id,
            duration=duration,
            step=step,
            record_every=int(cfg.get("record_every", 10)),
            seed=int(cfg.get("seed", 0)),
            integrator=integrator,
            gains=gains,
            robust=robust,
            psi_bar=psi_bar,
            J_true=J_true,
            J_bar0=J_bar0,
            R0=R0,
            Omega0=Omega0,
            command=command,
            disturbance=disturbance,
            settle=_as_float(cfg.get("settle", 5.0), "settle"),
        )
    except (TypeError, ValueError) as err:
        raise ConfigError(str(err)) from None


def load_scenario(path) -> Scenario:
    """Load and validate a scenario config file."""
    return scenario_from_dict(load_config(path))


def bundled_config_path(case_id: str):
    """Filesystem path of a bundled case config."""
    res = resources.files(__package__).joinpath("configs").joinpath(
        f"{case_id}.yaml")
    if not res.is_file():
        raise ConfigError(f"no bundled config named {case_id!r}")
    return res
