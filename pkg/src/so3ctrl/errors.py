"""Attitude tracking error geometry.

The configuration error function Psi = 0.5 tr[G (I - Rd^T R)] with a
diagonal gain matrix G, its gradient vector e_R, the angular velocity
error e_Omega, the transport matrix E relating their rates, the
feedforward acceleration alpha_d, and the constants that sandwich Psi
between multiples of |e_R|^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .so3 import hat, vee

_EYE3 = np.eye(3)


@dataclass(frozen=True)
class GainMatrix:
    """Diagonal attitude gain matrix diag(g1, g2, g3).

    Entries must be positive and pairwise distinct; distinctness keeps the
    four critical points of Psi nondegenerate.  Test-only oracles that want
    equal gains can pass a raw diagonal matrix to the module functions
    instead.
    """

    g1: float
    g2: float
    g3: float

    def __post_init__(self):
        g = (float(self.g1), float(self.g2), float(self.g3))
        if not all(np.isfinite(g)):
            raise ValueError("gain entries must be finite")
        if min(g) <= 0.0:
            raise ValueError(f"gain entries must be positive, got {g}")
        if g[0] == g[1] or g[1] == g[2] or g[0] == g[2]:
            raise ValueError(f"gain entries must be pairwise distinct, got {g}")

    @property
    def diag(self) -> np.ndarray:
        return np.array([self.g1, self.g2, self.g3], dtype=float)

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diag)

    @property
    def trace(self) -> float:
        return float(self.g1 + self.g2 + self.g3)


def _gain_array(G) -> np.ndarray:
    """Accept a GainMatrix or a raw diagonal 3x3 array."""
    if isinstance(G, GainMatrix):
        return G.matrix
    G = np.asarray(G, dtype=float)
    if G.shape != (3, 3):
        raise ValueError(f"gain matrix must be 3x3, got shape {G.shape}")
    if np.any(G != np.diag(np.diag(G))):
        raise ValueError("gain matrix must be diagonal")
    if np.any(np.diag(G) <= 0.0):
        raise ValueError("gain matrix entries must be positive")
    return G


@dataclass(frozen=True)
class BoundConstants:
    """Constants from the pairwise gain sums and differences.

    h1 and h4 are the smallest and largest pairwise sums, h2 the largest
    squared difference, h3/h5 the largest/smallest squared sums.  b1 bounds
    Psi from below by b1 |e_R|^2 globally; b2 bounds it from above on the
    sublevel set Psi < psi_bar.
    """

    h1: float
    h2: float
    h3: float
    h4: float
    h5: float
    b1: float
    b2: float
    psi_bar: float


def bound_constants(G, psi_bar: float) -> BoundConstants:
    """Sandwich constants for the error function at level psi_bar < h1."""
    g = np.diag(_gain_array(G))
    sums = np.array([g[0] + g[1], g[1] + g[2], g[2] + g[0]])
    diffs = np.array([g[0] - g[1], g[1] - g[2], g[2] - g[0]])
    h1 = float(np.min(sums))
    h2 = float(np.max(diffs**2))
    h3 = float(np.max(sums**2))
    h4 = float(np.max(sums))
    h5 = float(np.min(sums**2))
    psi_bar = float(psi_bar)
    if not 0.0 < psi_bar < h1:
        raise ValueError(
            f"psi_bar must lie in (0, h1) = (0, {h1}), got {psi_bar}"
        )
    b1 = h1 / (h2 + h3)
    b2 = h1 * h4 / (h5 * (h1 - psi_bar))
    return BoundConstants(h1=h1, h2=h2, h3=h3, h4=h4, h5=h5, b1=b1, b2=b2,
                          psi_bar=psi_bar)


def psi(R, R_d, G) -> float:
    """Configuration error 0.5 tr[G (I - Rd^T R)]; zero iff R == Rd."""
    Gm = _gain_array(G)
    R = np.asarray(R, dtype=float)
    R_d = np.asarray(R_d, dtype=float)
    return 0.5 * float(np.trace(Gm @ (_EYE3 - R_d.T @ R)))


def attitude_error_vector(R, R_d, G) -> np.ndarray:
    """Gradient vector e_R = 0.5 vee(G Rd^T R - R^T Rd G)."""
    Gm = _gain_array(G)
    R = np.asarray(R, dtype=float)
    R_d = np.asarray(R_d, dtype=float)
    Q = R_d.T @ R
    return 0.5 * vee(Gm @ Q - Q.T @ Gm)


def angular_velocity_error(R, Omega, R_d, Omega_d) -> np.ndarray:
    """Velocity error e_Omega = Omega - R^T Rd Omega_d (body frame)."""
    R = np.asarray(R, dtype=float)
    R_d = np.asarray(R_d, dtype=float)
    return np.asarray(Omega, dtype=float) - R.T @ (R_d @ np.asarray(Omega_d, float))


def transport_matrix(R, R_d, G) -> np.ndarray:
    """E = 0.5 (tr[R^T Rd G] I - R^T Rd G); satisfies de_R/dt = E e_Omega."""
    Gm = _gain_array(G)
    R = np.asarray(R, dtype=float)
    R_d = np.asarray(R_d, dtype=float)
    P = R.T @ R_d @ Gm
    return 0.5 * (np.trace(P) * _EYE3 - P)


def transport_bound(G) -> float:
    """Uniform spectral-norm bound tr[G] / sqrt(2) on the transport matrix."""
    Gm = _gain_array(G)
    return float(np.trace(Gm)) / np.sqrt(2.0)


def feedforward_acceleration(R, Omega, R_d, Omega_d, Omega_d_dot) -> np.ndarray:
    """alpha_d = -hat(Omega) R^T Rd Omega_d + R^T Rd dOmega_d/dt."""
    R = np.asarray(R, dtype=float)
    R_d = np.asarray(R_d, dtype=float)
    Omega = np.asarray(Omega, dtype=float)
    T = R.T @ R_d
    return -hat(Omega) @ (T @ np.asarray(Omega_d, float)) + T @ np.asarray(
        Omega_d_dot, float
    )


@dataclass(frozen=True)
class ErrorState:
    """All error quantities at one instant, for a combination weight c."""

    psi: float
    e_R: np.ndarray
    e_Omega: np.ndarray
    e_A: np.ndarray
    E: np.ndarray
    alpha_d: np.ndarray


def error_state(R, Omega, R_d, Omega_d, Omega_d_dot, G, c: float) -> ErrorState:
    """Evaluate every error quantity once; e_A = e_Omega + c e_R."""
    e_R = attitude_error_vector(R, R_d, G)
    e_Om = angular_velocity_error(R, Omega, R_d, Omega_d)
    return ErrorState(
        psi=psi(R, R_d, G),
        e_R=e_R,
        e_Omega=e_Om,
        e_A=e_Om + float(c) * e_R,
        E=transport_matrix(R, R_d, G),
        alpha_d=feedforward_acceleration(R, Omega, R_d, Omega_d, Omega_d_dot),
    )
