"""Adaptive and robust attitude tracking laws with gain certification.

The adaptive law tracks a command without knowing the inertia, carrying a
symmetric estimate J_bar updated from the combined error e_A = e_Omega +
c e_R.  The robust variant adds a continuous disturbance-rejection term
and sigma-leakage on the estimator so bounded disturbances cannot wind it
up.  validate_gains certifies the gain set by assembling the comparison
matrices that sandwich the Lyapunov function and its decay rate and
checking their definiteness.

None of the control or update laws reads the true inertia; it enters only
the Lyapunov instrumentation and the plant itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import GainMatrix, bound_constants, error_state
from .so3 import hat, sym_eigvals2, sym_eigvals3

_EYE3 = np.eye(3)


@dataclass(frozen=True)
class Gains:
    """Controller gains.  force=True runs an uncertified gain set anyway."""

    k_R: float
    k_Omega: float
    k_J: float
    c: float
    G: GainMatrix
    force: bool = False

    def __post_init__(self):
        for name in ("k_R", "k_Omega", "k_J", "c"):
            val = getattr(self, name)
            if not (np.isfinite(val) and val > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {val}")
        if not isinstance(self.G, GainMatrix):
            raise TypeError("G must be a GainMatrix")


@dataclass(frozen=True)
class RobustParams:
    """Leakage rate, rejection smoothing, and the disturbance norm bound."""

    sigma: float
    epsilon: float
    delta_bound: float

    def __post_init__(self):
        for name in ("sigma", "epsilon", "delta_bound"):
            val = getattr(self, name)
            if not (np.isfinite(val) and val > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {val}")


@dataclass
class EstimatorState:
    """Symmetric inertia estimate."""

    J_bar: np.ndarray

    def __post_init__(self):
        J = np.array(self.J_bar, dtype=float)
        if J.shape != (3, 3):
            raise ValueError(f"J_bar must be 3x3, got shape {J.shape}")
        if np.linalg.norm(J - J.T, "fro") > 1e-12:
            raise ValueError("J_bar must be symmetric within 1e-12")
        self.J_bar = 0.5 * (J + J.T)

    def resymmetrized(self, J_new) -> "EstimatorState":
        J = np.asarray(J_new, dtype=float)
        return EstimatorState(J_bar=0.5 * (J + J.T))


def c_max(k_R: float, k_Omega: float, G: GainMatrix, lambda_m: float,
          lambda_M: float) -> float:
    """Largest combination weight the stability argument certifies.

    Three ceilings: the first is exactly positive definiteness of the
    lower comparison matrix W11, the second keeps the (2,2) entry of the
    decay matrix W2 positive, the third is exactly det(W2) > 0 (which
    subsumes the second).  So c < c_max iff W11 and W2 are both positive
    definite.
    """
    if lambda_m <= 0.0 or lambda_M < lambda_m:
        raise ValueError("need 0 < lambda_m <= lambda_M")
    bc = bound_constants(G, psi_bar=0.5 * min(G.g1 + G.g2, G.g2 + G.g3,
                                              G.g3 + G.g1))
    tr_g = G.trace
    t1 = np.sqrt(2.0 * bc.b1 * k_R * lambda_m / lambda_M**2)
    t2 = np.sqrt(2.0) * k_Omega / (lambda_M * tr_g)
    t3 = 4.0 * k_R * k_Omega / (
        k_Omega**2 + 2.0 * np.sqrt(2.0) * k_R * lambda_M * tr_g
    )
    return float(min(t1, t2, t3))


def _control_from_errors(es, Omega, J_bar, gains: Gains) -> np.ndarray:
    JbOm = J_bar @ Omega
    return (
        -gains.k_R * es.e_R
        - gains.k_Omega * es.e_Omega
        + np.cross(Omega, JbOm)
        + J_bar @ es.alpha_d
    )


def _update_rate_from_errors(es, Omega, k_J: float) -> np.ndarray:
    # Both groups are symmetric by construction: P + P.T and Q + Q.T.
    P = np.outer(es.alpha_d, es.e_A)
    Q = np.outer(Omega, Omega) @ hat(es.e_A)
    return 0.5 * k_J * (-(P + P.T) + (Q + Q.T))


def _rejection_from_errors(e_A, robust: RobustParams) -> np.ndarray:
    # Continuous saturation: |v| = delta^2 |e_A| / (delta |e_A| + eps) < delta.
    norm = float(np.linalg.norm(e_A))
    return -(robust.delta_bound**2 / (robust.delta_bound * norm + robust.epsilon)) * e_A


def _errors(state, cmd, gains: Gains):
    return error_state(
        state.R, state.Omega, cmd.R_d, cmd.Omega_d, cmd.Omega_d_dot,
        gains.G, gains.c,
    )


def adaptive_control(state, cmd, gains: Gains, est: EstimatorState) -> np.ndarray:
    """u = -k_R e_R - k_Omega e_Omega + Omega x J_bar Omega + J_bar alpha_d."""
    es = _errors(state, cmd, gains)
    return _control_from_errors(es, np.asarray(state.Omega, float), est.J_bar, gains)


def adaptive_update_rate(state, cmd, gains: Gains, est: EstimatorState) -> np.ndarray:
    """Symmetric dJ_bar/dt driven by the combined error e_A.

    (k_J/2) (-alpha_d e_A^T - e_A alpha_d^T
             + Omega Omega^T hat(e_A) - hat(e_A) Omega Omega^T).
    """
    es = _errors(state, cmd, gains)
    return _update_rate_from_errors(es, np.asarray(state.Omega, float), gains.k_J)


def robust_control(state, cmd, gains: Gains, robust: RobustParams,
                   est: EstimatorState) -> np.ndarray:
    """Adaptive law plus the continuous rejection term v(e_A)."""
    es = _errors(state, cmd, gains)
    u = _control_from_errors(es, np.asarray(state.Omega, float), est.J_bar, gains)
    return u + _rejection_from_errors(es.e_A, robust)


def rejection_term(e_A, robust: RobustParams) -> np.ndarray:
    """v = -delta^2 e_A / (delta |e_A| + epsilon); always |v| <= delta."""
    return _rejection_from_errors(np.asarray(e_A, dtype=float), robust)


def robust_update_rate(state, cmd, gains: Gains, robust: RobustParams,
                       est: EstimatorState) -> np.ndarray:
    """Adaptive update with sigma-leakage: rate - k_J sigma J_bar."""
    es = _errors(state, cmd, gains)
    base = _update_rate_from_errors(es, np.asarray(state.Omega, float), gains.k_J)
    return base - gains.k_J * robust.sigma * est.J_bar


def control_and_update(state, cmd, gains: Gains, est: EstimatorState,
                       robust: Optional[RobustParams] = None):
    """Control torque, estimator rate, error state, and rejection term.

    Computes the error state once and assembles everything the closed
    loop needs per evaluation.  With robust parameters the torque gains
    the rejection term and the update gains sigma-leakage; the rejection
    vector is returned (None in the adaptive case) so callers can log it.
    """
    es = _errors(state, cmd, gains)
    Omega = np.asarray(state.Omega, float)
    u = _control_from_errors(es, Omega, est.J_bar, gains)
    rate = _update_rate_from_errors(es, Omega, gains.k_J)
    v = None
    if robust is not None:
        v = _rejection_from_errors(es.e_A, robust)
        u = u + v
        rate = rate - gains.k_J * robust.sigma * est.J_bar
    return u, rate, es, v


def lyapunov_value(state, cmd, gains: Gains, est: EstimatorState,
                   J_true) -> float:
    """Instrumented V; needs the true inertia, so it never feeds control.

    V = 0.5 e_Omega . J e_Omega + k_R Psi + c e_R . J e_Omega
        + |J - J_bar|_F^2 / (2 k_J).
    """
    es = _errors(state, cmd, gains)
    Jm = J_true.matrix if hasattr(J_true, "matrix") else np.asarray(J_true, float)
    J_tilde = Jm - est.J_bar
    JeOm = Jm @ es.e_Omega
    return float(
        0.5 * es.e_Omega @ JeOm
        + gains.k_R * es.psi
        + gains.c * es.e_R @ JeOm
        + np.sum(J_tilde * J_tilde) / (2.0 * gains.k_J)
    )


@dataclass(frozen=True)
class GainReport:
    """Outcome of gain certification.

    Eigenvalues are ascending.  d1/d2 and the W3 eigenvalues are present
    only when robust parameters were supplied.  feasible means every
    required matrix is positive definite and, in the robust case, d1 < d2.
    """

    c_max: float
    b1: float
    b2: float
    psi_bar: float
    w11_eigs: Tuple[float, ...]
    w12_eigs: Tuple[float, ...]
    w2_eigs: Tuple[float, ...]
    w3_eigs: Optional[Tuple[float, ...]]
    d1: Optional[float]
    d2: Optional[float]
    ultimate_bound: Optional[float]
    feasible: bool
    violations: Tuple[str, ...]

    def to_text(self) -> str:
        lines = [
            f"c_max = {self.c_max:.6g}",
            f"b1 = {self.b1:.6g}  b2 = {self.b2:.6g}  psi_bar = {self.psi_bar:.6g}",
            f"W11 eigenvalues: {_fmt(self.w11_eigs)}"
            f" ({_pd_word(self.w11_eigs)})",
            f"W12 eigenvalues: {_fmt(self.w12_eigs)}"
            f" ({_pd_word(self.w12_eigs)})",
            f"W2 eigenvalues:  {_fmt(self.w2_eigs)}"
            f" ({_pd_word(self.w2_eigs)})",
        ]
        if self.w3_eigs is not None:
            lines.append(
                f"W3 eigenvalues:  {_fmt(self.w3_eigs)} ({_pd_word(self.w3_eigs)})"
            )
            lines.append(
                f"d1 = {self.d1:.6g}  d2 = {self.d2:.6g}  "
                f"(d1 < d2: {'yes' if self.d1 < self.d2 else 'no'})"
            )
            lines.append(f"ultimate bound on |z|^2: {self.ultimate_bound:.6g}")
        lines.append(f"feasible: {'yes' if self.feasible else 'no'}")
        for v in self.violations:
            lines.append(f"violated: {v}")
        return "\n".join(lines)

    def to_kv(self) -> str:
        pairs = [
            ("c_max", f"{self.c_max:.17g}"),
            ("b1", f"{self.b1:.17g}"),
            ("b2", f"{self.b2:.17g}"),
            ("psi_bar", f"{self.psi_bar:.17g}"),
            ("w11_eigs", _fmt(self.w11_eigs, sep=" ")),
            ("w12_eigs", _fmt(self.w12_eigs, sep=" ")),
            ("w2_eigs", _fmt(self.w2_eigs, sep=" ")),
        ]
        if self.w3_eigs is not None:
            pairs += [
                ("w3_eigs", _fmt(self.w3_eigs, sep=" ")),
                ("d1", f"{self.d1:.17g}"),
                ("d2", f"{self.d2:.17g}"),
                ("ultimate_bound", f"{self.ultimate_bound:.17g}"),
            ]
        pairs.append(("feasible", "true" if self.feasible else "false"))
        if self.violations:
            pairs.append(("violations", "; ".join(self.violations)))
        return "\n".join(f"{k} = {v}" for k, v in pairs)


def _fmt(vals, sep=", "):
    return sep.join(f"{v:.17g}" for v in vals)


def _pd_word(eigs):
    return "positive definite" if eigs[0] > 0.0 else "indefinite"


def validate_gains(
    gains: Gains,
    inertia_bounds: Tuple[float, float],
    psi_bar: float,
    robust: Optional[RobustParams] = None,
) -> GainReport:
    """Certify a gain set against inertia eigenvalue bounds.

    Builds the comparison matrices

      W11 = [[b1 k_R, c lM / 2, 0], [c lM / 2, lm / 2, 0], [0, 0, 1/(2 k_J)]]
      W12 = same with b2 and lM in place of b1 and lm
      W2  = [[c k_R, -c k_Omega / 2],
             [-c k_Omega / 2, k_Omega - c lM tr(G) / sqrt(2)]]
      W3  = W2 padded with sigma / 2 (robust case)

    and, in the robust case, the attractivity threshold pair
      d1 = lmax(W12) / lmin(W3) * (3 sigma lM^2 / 2 + epsilon)
      d2 = psi_bar / b2 * lmin(W11)
    plus the ultimate bound lmax(W12) / (lmin(W11) lmin(W3)) *
    (3 sigma lM^2 / 2 + epsilon) on |z|^2.
    """
    lm, lM = float(inertia_bounds[0]), float(inertia_bounds[1])
    if not (0.0 < lm <= lM):
        raise ValueError("inertia bounds must satisfy 0 < lambda_m <= lambda_M")
    bc = bound_constants(gains.G, psi_bar)
    tr_g = gains.G.trace
    c = gains.c

    w11 = np.array(
        [
            [bc.b1 * gains.k_R, 0.5 * c * lM, 0.0],
            [0.5 * c * lM, 0.5 * lm, 0.0],
            [0.0, 0.0, 0.5 / gains.k_J],
        ]
    )
    w12 = np.array(
        [
            [bc.b2 * gains.k_R, 0.5 * c * lM, 0.0],
            [0.5 * c * lM, 0.5 * lM, 0.0],
            [0.0, 0.0, 0.5 / gains.k_J],
        ]
    )
    w2 = np.array(
        [
            [c * gains.k_R, -0.5 * c * gains.k_Omega],
            [-0.5 * c * gains.k_Omega, gains.k_Omega - c * lM * tr_g / np.sqrt(2.0)],
        ]
    )
    w11_eigs = tuple(sym_eigvals3(w11))
    w12_eigs = tuple(sym_eigvals3(w12))
    w2_eigs = tuple(sym_eigvals2(w2))

    ceiling = c_max(gains.k_R, gains.k_Omega, gains.G, lm, lM)
    violations = []
    if c >= ceiling:
        violations.append(
            f"c = {c:.6g} exceeds c_max = {ceiling:.6g}"
        )
    if w11_eigs[0] <= 0.0:
        violations.append("W11 is not positive definite")
    if w2_eigs[0] <= 0.0:
        violations.append("W2 is not positive definite")

    w3_eigs = None
    d1 = d2 = ultimate = None
    if robust is not None:
        w3 = np.zeros((3, 3))
        w3[:2, :2] = w2
        w3[2, 2] = 0.5 * robust.sigma
        w3_eigs = tuple(sym_eigvals3(w3))
        if w12_eigs[0] <= 0.0:
            violations.append("W12 is not positive definite")
        if w3_eigs[0] <= 0.0:
            violations.append("W3 is not positive definite")
        drive = 1.5 * robust.sigma * lM**2 + robust.epsilon
        if w3_eigs[0] > 0.0:
            d1 = float(w12_eigs[2] / w3_eigs[0] * drive)
            d2 = float(psi_bar / bc.b2 * w11_eigs[0])
            ultimate = float(w12_eigs[2] / (w11_eigs[0] * w3_eigs[0]) * drive)
            if d1 >= d2:
                violations.append(
                    f"attractivity threshold failed: d1 = {d1:.6g} >= d2 = {d2:.6g}"
                )

    # The c ceiling is a sufficient condition; definiteness (and d1 < d2
    # when robust) is what feasibility actually requires.
    definite = w11_eigs[0] > 0.0 and w2_eigs[0] > 0.0
    if robust is not None:
        definite = definite and w12_eigs[0] > 0.0 and w3_eigs[0] > 0.0
        definite = definite and d1 is not None and d1 < d2
    return GainReport(
        c_max=ceiling,
        b1=bc.b1,
        b2=bc.b2,
        psi_bar=float(psi_bar),
        w11_eigs=w11_eigs,
        w12_eigs=w12_eigs,
        w2_eigs=w2_eigs,
        w3_eigs=w3_eigs,
        d1=d1,
        d2=d2,
        ultimate_bound=ultimate,
        feasible=definite,
        violations=tuple(violations),
    )
