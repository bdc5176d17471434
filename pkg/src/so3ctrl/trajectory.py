"""Attitude command generation.

Commands are emitted as (R_d, Omega_d, dOmega_d/dt) triples that satisfy
the kinematics dR_d/dt = R_d hat(Omega_d), with R_d mapping body to
inertial coordinates.  The built-in family is a sinusoidal roll/pitch
schedule in 3-2-1 (yaw-pitch-roll) Euler angles with constant yaw; a
finite-difference wrapper turns any smooth R_d(t) into a command source.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .so3 import vee


@dataclass(frozen=True)
class CommandSample:
    """Attitude command at one instant."""

    R_d: np.ndarray
    Omega_d: np.ndarray
    Omega_d_dot: np.ndarray
    t: float


def euler321_to_rotation(phi: float, theta: float, psi: float) -> np.ndarray:
    """R = Rz(psi) Ry(theta) Rx(phi), body to inertial, 3-2-1 order."""
    cphi, sphi = np.cos(phi), np.sin(phi)
    cth, sth = np.cos(theta), np.sin(theta)
    cpsi, spsi = np.cos(psi), np.sin(psi)
    return np.array(
        [
            [cpsi * cth, cpsi * sth * sphi - spsi * cphi, cpsi * sth * cphi + spsi * sphi],
            [spsi * cth, spsi * sth * sphi + cpsi * cphi, spsi * sth * cphi - cpsi * sphi],
            [-sth, cth * sphi, cth * cphi],
        ]
    )


@dataclass(frozen=True)
class EulerCommand:
    """Sinusoidal 3-2-1 Euler schedule with constant yaw.

    phi(t) = amplitude_phi * sin(frequency * t)
    theta(t) = amplitude_theta * cos(frequency * t)
    psi(t) = psi_const

    Body rates follow from the 3-2-1 kinematics with psi_dot = 0:
    Omega = (phi_dot, theta_dot cos(phi), -theta_dot sin(phi)).
    """

    amplitude_phi: float
    amplitude_theta: float
    frequency: float
    psi_const: float = 0.0

    def __post_init__(self):
        vals = (self.amplitude_phi, self.amplitude_theta, self.frequency,
                self.psi_const)
        if not all(np.isfinite(vals)):
            raise ValueError("command parameters must be finite")
        if self.frequency <= 0.0:
            raise ValueError(f"frequency must be positive, got {self.frequency}")

    def sample(self, t: float) -> CommandSample:
        w = self.frequency
        phi = self.amplitude_phi * np.sin(w * t)
        theta = self.amplitude_theta * np.cos(w * t)
        phi_dot = self.amplitude_phi * w * np.cos(w * t)
        theta_dot = -self.amplitude_theta * w * np.sin(w * t)
        phi_ddot = -self.amplitude_phi * w * w * np.sin(w * t)
        theta_ddot = -self.amplitude_theta * w * w * np.cos(w * t)

        cphi, sphi = np.cos(phi), np.sin(phi)
        Omega = np.array([phi_dot, theta_dot * cphi, -theta_dot * sphi])
        Omega_dot = np.array(
            [
                phi_ddot,
                theta_ddot * cphi - theta_dot * phi_dot * sphi,
                -theta_ddot * sphi - theta_dot * phi_dot * cphi,
            ]
        )
        return CommandSample(
            R_d=euler321_to_rotation(phi, theta, self.psi_const),
            Omega_d=Omega,
            Omega_d_dot=Omega_dot,
            t=float(t),
        )

    def __call__(self, t: float) -> CommandSample:
        return self.sample(t)


def benchmark_command() -> EulerCommand:
    """Bundled roll/pitch wobble: 20-degree amplitudes at pi rad/s, zero yaw."""
    return EulerCommand(
        amplitude_phi=np.pi / 9.0,
        amplitude_theta=np.pi / 9.0,
        frequency=np.pi,
        psi_const=0.0,
    )


def numeric_command_wrapper(
    R_d_fn: Callable[[float], np.ndarray], h_fd: float = 1e-5
) -> Callable[[float], CommandSample]:
    """Derive body rates from any smooth R_d(t) by central differences.

    Omega_d is the skew part of R_d^T dR_d/dt; its rate comes from the skew
    part of R_d^T d2R_d/dt2 (the quadratic term is symmetric and drops out).
    Accuracy is O(h_fd^2); R_d_fn must be evaluable at t +/- h_fd.
    """
    if h_fd <= 0.0:
        raise ValueError("h_fd must be positive")

    def command(t: float) -> CommandSample:
        Rm = np.asarray(R_d_fn(t - h_fd), dtype=float)
        R0 = np.asarray(R_d_fn(t), dtype=float)
        Rp = np.asarray(R_d_fn(t + h_fd), dtype=float)
        if not (np.all(np.isfinite(Rm)) and np.all(np.isfinite(R0))
                and np.all(np.isfinite(Rp))):
            raise ValueError(f"command rotation is not finite near t={t}")
        R_dot = (Rp - Rm) / (2.0 * h_fd)
        R_ddot = (Rp - 2.0 * R0 + Rm) / (h_fd * h_fd)
        Omega = vee(R0.T @ R_dot)
        Omega_dot = vee(R0.T @ R_ddot)
        return CommandSample(R_d=R0, Omega_d=Omega, Omega_d_dot=Omega_dot, t=float(t))

    return command
