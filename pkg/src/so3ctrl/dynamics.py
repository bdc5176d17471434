"""Rigid-body attitude dynamics and two integrators.

The plant is J dOmega/dt = -Omega x J Omega + u + delta together with
dR/dt = R hat(Omega).  Two steppers are provided:

* step_rk4_projected: classical RK4 treating R as nine reals, followed by
  polar projection back onto SO(3).  Fourth order, not structure
  preserving between projections.
* step_lgvi: a variational Lie-group integrator.  The incremental
  rotation F = exp(hat(g)) solves an implicit three-dimensional equation,
  so R never leaves SO(3) and torque-free spatial momentum is conserved
  exactly.  Second order; control moments are zero-order held.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .so3 import exp_so3, hat, project_to_so3, sym_eigvals3

_EYE3 = np.eye(3)


class IntegrationError(RuntimeError):
    """An integration step could not be completed."""

    def __init__(self, message: str, step_index: Optional[int] = None):
        if step_index is not None:
            message = f"{message} (step {step_index})"
        super().__init__(message)
        self.step_index = step_index


class InertiaMatrix:
    """Symmetric positive-definite inertia with cached eigenvalue bounds."""

    SYMMETRY_TOL = 1e-12

    def __init__(self, matrix):
        M = np.array(matrix, dtype=float)
        if M.shape != (3, 3):
            raise ValueError(f"inertia must be 3x3, got shape {M.shape}")
        if not np.all(np.isfinite(M)):
            raise ValueError("inertia entries must be finite")
        if np.linalg.norm(M - M.T, "fro") > self.SYMMETRY_TOL:
            raise ValueError("inertia must be symmetric within 1e-12")
        M = 0.5 * (M + M.T)
        eigs = sym_eigvals3(M)
        if eigs[0] <= 0.0:
            raise ValueError(f"inertia must be positive definite, eigenvalues {eigs}")
        self.matrix = M
        self.lambda_min = float(eigs[0])
        self.lambda_max = float(eigs[2])

    @property
    def frobenius(self) -> float:
        return float(np.linalg.norm(self.matrix, "fro"))

    def __repr__(self):
        return f"InertiaMatrix({self.matrix.tolist()})"


def benchmark_inertia() -> InertiaMatrix:
    """Quadrotor-scale inertia used by the bundled scenarios (kg m^2)."""
    return InertiaMatrix(
        [
            [1.059e-2, -5.156e-6, 2.361e-5],
            [-5.156e-6, 1.059e-2, -1.026e-5],
            [2.361e-5, -1.026e-5, 1.005e-2],
        ]
    )


@dataclass(frozen=True)
class BodyState:
    """Attitude (body to inertial) and body angular velocity."""

    R: np.ndarray
    Omega: np.ndarray


@dataclass(frozen=True)
class IntegratorConfig:
    """Stepper selection and implicit-solve controls."""

    method: str = "lgvi"
    step_size: float = 1e-3
    newton_tol: float = 1e-14
    newton_max_iter: int = 50

    def __post_init__(self):
        if self.method not in ("lgvi", "rk4_projected"):
            raise ValueError(f"unknown integrator method {self.method!r}")
        if not (np.isfinite(self.step_size) and self.step_size > 0.0):
            raise ValueError(f"step_size must be positive, got {self.step_size}")
        if self.newton_tol <= 0.0:
            raise ValueError("newton_tol must be positive")
        if self.newton_max_iter < 1:
            raise ValueError("newton_max_iter must be at least 1")


def body_dynamics_rhs(state: BodyState, u, delta, J: InertiaMatrix):
    """Time derivative (dOmega/dt, body-frame attitude rate Omega)."""
    Omega = np.asarray(state.Omega, dtype=float)
    JOm = J.matrix @ Omega
    torque = -np.cross(Omega, JOm) + np.asarray(u, float) + np.asarray(delta, float)
    return np.linalg.solve(J.matrix, torque), Omega


def step_rk4_projected(
    state: BodyState,
    t: float,
    u_fn: Callable[[float, BodyState], np.ndarray],
    delta_fn: Callable[[float, np.ndarray], np.ndarray],
    J: InertiaMatrix,
    h: float,
) -> BodyState:
    """One classical RK4 step on (R, Omega) with polar re-projection.

    u_fn(t, state) and delta_fn(t, R) are evaluated at every stage.
    """
    Jm = J.matrix

    def rhs(ti, R, Omega):
        st = BodyState(R=R, Omega=Omega)
        torque = (
            -np.cross(Omega, Jm @ Omega)
            + np.asarray(u_fn(ti, st), float)
            + np.asarray(delta_fn(ti, R), float)
        )
        return R @ hat(Omega), np.linalg.solve(Jm, torque)

    R0, W0 = np.asarray(state.R, float), np.asarray(state.Omega, float)
    k1R, k1W = rhs(t, R0, W0)
    k2R, k2W = rhs(t + 0.5 * h, R0 + 0.5 * h * k1R, W0 + 0.5 * h * k1W)
    k3R, k3W = rhs(t + 0.5 * h, R0 + 0.5 * h * k2R, W0 + 0.5 * h * k2W)
    k4R, k4W = rhs(t + h, R0 + h * k3R, W0 + h * k3W)
    R_raw = R0 + (h / 6.0) * (k1R + 2.0 * k2R + 2.0 * k3R + k4R)
    Omega = W0 + (h / 6.0) * (k1W + 2.0 * k2W + 2.0 * k3W + k4W)
    if not (np.all(np.isfinite(R_raw)) and np.all(np.isfinite(Omega))):
        raise IntegrationError("state became non-finite during RK4 step")
    return BodyState(R=project_to_so3(R_raw), Omega=Omega)


def _implicit_coeffs(theta: float):
    """(a, b, da/dtheta, db/dtheta) for a = sin t / t, b = (1 - cos t) / t^2."""
    if theta < 1e-2:
        t2 = theta * theta
        a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0
        da = theta * (-1.0 / 3.0 + t2 / 30.0 - t2 * t2 / 840.0)
        b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0 - t2 * t2 * t2 / 40320.0
        db = theta * (-1.0 / 12.0 + t2 / 180.0 - t2 * t2 / 6720.0)
        return a, b, da, db
    s, c = np.sin(theta), np.cos(theta)
    half = np.sin(0.5 * theta)
    a = s / theta
    da = (theta * c - s) / (theta * theta)
    b = 2.0 * half * half / (theta * theta)
    db = (theta * s - 4.0 * half * half) / theta**3
    return a, b, da, db


def _solve_incremental_rotation(mu, J: InertiaMatrix, g0, tol, max_iter):
    """Solve a(|g|) J g + b(|g|) g x (J g) = mu for the rotation vector g.

    This is the reduced form of the implicit stage equation
    hat(mu) = F J_d - J_d F^T with F = exp(hat(g)) and
    J_d = 0.5 tr(J) I - J.  Newton iteration with analytic Jacobian;
    tolerance is on the Frobenius norm of the matrix residual, which is
    sqrt(2) times the vector residual norm.
    """
    Jm = J.matrix
    g = np.asarray(g0, dtype=float).copy()
    for _ in range(max_iter):
        theta = float(np.linalg.norm(g))
        a, b, da, db = _implicit_coeffs(theta)
        Jg = Jm @ g
        cross = np.cross(g, Jg)
        r = a * Jg + b * cross - mu
        if np.sqrt(2.0) * np.linalg.norm(r) <= tol:
            return g
        jac = a * Jm + b * (hat(g) @ Jm - hat(Jg))
        if theta > 0.0:
            jac = jac + np.outer(da * Jg + db * cross, g / theta)
        try:
            delta_g = np.linalg.solve(jac, r)
        except np.linalg.LinAlgError as exc:
            raise IntegrationError(f"implicit stage Jacobian is singular: {exc}")
        g = g - delta_g
        if not np.all(np.isfinite(g)):
            raise IntegrationError("implicit stage iterate became non-finite")
    theta = float(np.linalg.norm(g))
    a, b, _, _ = _implicit_coeffs(theta)
    res = np.sqrt(2.0) * np.linalg.norm(a * (Jm @ g) + b * np.cross(g, Jm @ g) - mu)
    raise IntegrationError(
        f"implicit stage Newton did not reach tolerance {tol:.1e} "
        f"in {max_iter} iterations (residual {res:.3e})"
    )


def step_lgvi_split(
    state: BodyState,
    J: InertiaMatrix,
    h: float,
    moment_start,
    moment_end=None,
    newton_tol: float = 1e-14,
    newton_max_iter: int = 50,
) -> BodyState:
    """Variational step with distinct start/end moments (zero-order hold).

    Solves h hat(J Omega_k + (h/2) M_k) = F J_d - J_d F^T for F in SO(3),
    then R_{k+1} = R_k F and
    J Omega_{k+1} = F^T (J Omega_k + (h/2) M_k) + (h/2) M_{k+1}.
    """
    if moment_end is None:
        moment_end = moment_start
    R = np.asarray(state.R, dtype=float)
    Omega = np.asarray(state.Omega, dtype=float)
    mu = h * (J.matrix @ Omega + 0.5 * h * np.asarray(moment_start, float))
    g = _solve_incremental_rotation(
        mu, J, g0=h * Omega, tol=newton_tol, max_iter=newton_max_iter
    )
    F = exp_so3(g)
    momentum_new = F.T @ (J.matrix @ Omega + 0.5 * h * np.asarray(moment_start, float))
    momentum_new = momentum_new + 0.5 * h * np.asarray(moment_end, float)
    Omega_new = np.linalg.solve(J.matrix, momentum_new)
    if not np.all(np.isfinite(Omega_new)):
        raise IntegrationError("state became non-finite during variational step")
    return BodyState(R=R @ F, Omega=Omega_new)


def step_lgvi(
    state: BodyState,
    u,
    delta,
    J: InertiaMatrix,
    h: float,
    newton_tol: float = 1e-14,
    newton_max_iter: int = 50,
) -> BodyState:
    """Variational step with the moment u + delta held over the step."""
    moment = np.asarray(u, dtype=float) + np.asarray(delta, dtype=float)
    return step_lgvi_split(
        state, J, h, moment_start=moment, moment_end=moment,
        newton_tol=newton_tol, newton_max_iter=newton_max_iter,
    )
