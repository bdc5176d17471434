"""Seeded random property batteries over the geometric core.

Each battery draws its own generator from (seed, index), evaluates a
vectorized batch, and reports its worst residual, so the CLI can print
one line per property and the test suite can assert on the results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .controllers import EstimatorState, Gains, RobustParams, adaptive_update_rate
from .dynamics import BodyState
from .errors import (
    GainMatrix,
    attitude_error_vector,
    bound_constants,
    transport_bound,
)
from .so3 import exp_so3, log_so3, random_rotation
from .trajectory import CommandSample

_G_DEFAULT = GainMatrix(0.9, 1.0, 1.1)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def _haar(rng, n: int) -> np.ndarray:
    """n rotation matrices from normalized random quaternions."""
    q = rng.normal(size=(n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    w, x, y, z = q.T
    R = np.empty((n, 3, 3))
    R[:, 0, 0] = 1 - 2 * (y * y + z * z)
    R[:, 0, 1] = 2 * (x * y - z * w)
    R[:, 0, 2] = 2 * (x * z + y * w)
    R[:, 1, 0] = 2 * (x * y + z * w)
    R[:, 1, 1] = 1 - 2 * (x * x + z * z)
    R[:, 1, 2] = 2 * (y * z - x * w)
    R[:, 2, 0] = 2 * (x * z - y * w)
    R[:, 2, 1] = 2 * (y * z + x * w)
    R[:, 2, 2] = 1 - 2 * (x * x + y * y)
    return R


def _batch_hat(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    H = np.zeros((n, 3, 3))
    H[:, 0, 1] = -x[:, 2]
    H[:, 0, 2] = x[:, 1]
    H[:, 1, 0] = x[:, 2]
    H[:, 1, 2] = -x[:, 0]
    H[:, 2, 0] = -x[:, 1]
    H[:, 2, 1] = x[:, 0]
    return H


def _batch_vee(M: np.ndarray) -> np.ndarray:
    return np.stack([M[:, 2, 1], M[:, 0, 2], M[:, 1, 0]], axis=1)


def _batch_psi(Q: np.ndarray, g: np.ndarray) -> np.ndarray:
    # Psi = (tr G - sum_i g_i Q_ii) / 2
    return 0.5 * (g.sum() - np.einsum("i,nii->n", g, Q))


def _batch_e_r(Q: np.ndarray, g: np.ndarray) -> np.ndarray:
    M = g[:, None] * Q - np.swapaxes(Q, 1, 2) * g[None, :]
    return 0.5 * _batch_vee(M)


def _fmt(residual: float, tol: float, n: int) -> str:
    return f"max residual {residual:.3e} over {n} samples (tol {tol:.1e})"


def _hat_cross(rng, n: int) -> PropertyResult:
    x = rng.normal(size=(n, 3))
    y = rng.normal(size=(n, 3))
    lhs = np.einsum("nij,nj->ni", _batch_hat(x), y)
    rhs = -np.einsum("nij,nj->ni", _batch_hat(y), x)
    res = float(np.abs(lhs - rhs).max())
    return PropertyResult("hat_cross_antisymmetry", res < 1e-12,
                          _fmt(res, 1e-12, n))


def _hat_trace(rng, n: int) -> PropertyResult:
    x = rng.normal(size=(n, 3))
    A = rng.normal(size=(n, 3, 3))
    lhs = np.einsum("nij,nji->n", A, _batch_hat(x))
    rhs = -np.einsum("ni,ni->n", x, _batch_vee(A - np.swapaxes(A, 1, 2)))
    res = float(np.abs(lhs - rhs).max())
    return PropertyResult("hat_trace_pairing", res < 1e-12, _fmt(res, 1e-12, n))


def _hat_congruence(rng, n: int) -> PropertyResult:
    x = rng.normal(size=(n, 3))
    A = rng.normal(size=(n, 3, 3))
    H = _batch_hat(x)
    lhs = H @ A + np.swapaxes(A, 1, 2) @ H
    tr = np.einsum("nii->n", A)
    mapped = tr[:, None] * x - np.einsum("nij,nj->ni", A, x)
    res = float(np.abs(lhs - _batch_hat(mapped)).max())
    return PropertyResult("hat_congruence", res < 1e-12, _fmt(res, 1e-12, n))


def _hat_conjugation(rng, n: int) -> PropertyResult:
    x = rng.normal(size=(n, 3))
    R = _haar(rng, n)
    lhs = R @ _batch_hat(x) @ np.swapaxes(R, 1, 2)
    rhs = _batch_hat(np.einsum("nij,nj->ni", R, x))
    res = float(np.abs(lhs - rhs).max())
    return PropertyResult("hat_rotation_conjugation", res < 1e-12,
                          _fmt(res, 1e-12, n))


def _exp_log_roundtrip(rng, n: int) -> PropertyResult:
    n = min(n, 20000)  # scalar exp/log; keep the battery quick
    axis = rng.normal(size=(n, 3))
    axis /= np.linalg.norm(axis, axis=1, keepdims=True)
    angles = rng.uniform(1e-12, np.pi - 1e-3, size=n)
    worst = 0.0
    for a, th in zip(axis, angles):
        v = th * a
        err = float(np.abs(log_so3(exp_so3(v)) - v).max())
        if err > worst:
            worst = err
    return PropertyResult("exp_log_roundtrip", worst < 1e-9,
                          _fmt(worst, 1e-9, n))


def _psi_bounds(rng, n: int) -> PropertyResult:
    g = np.array(_G_DEFAULT.diag)
    bc = bound_constants(_G_DEFAULT, psi_bar=0.95)
    Q = np.swapaxes(_haar(rng, n), 1, 2) @ _haar(rng, n)
    psi = _batch_psi(Q, g)
    e_R = _batch_e_r(Q, g)
    er_sq = np.einsum("ni,ni->n", e_R, e_R)
    lower_viol = int(np.count_nonzero(bc.b1 * er_sq > psi + 1e-12))
    near = psi < bc.psi_bar
    upper_viol = int(np.count_nonzero(psi[near] > bc.b2 * er_sq[near] + 1e-12))
    ok = lower_viol == 0 and upper_viol == 0
    detail = (f"{lower_viol} lower / {upper_viol} upper violations over "
              f"{n} pairs ({int(near.sum())} inside psi_bar)")
    return PropertyResult("psi_error_vector_bounds", ok, detail)


def _psi_range(rng, n: int) -> PropertyResult:
    g = np.array(_G_DEFAULT.diag)
    h4 = max(g[0] + g[1], g[1] + g[2], g[2] + g[0])
    Q = _haar(rng, n)
    psi = _batch_psi(Q, g)
    ok = bool(np.all(psi >= -1e-14) and np.all(psi <= h4 + 1e-12))
    return PropertyResult(
        "psi_range", ok,
        f"min {psi.min():.3e}, max {psi.max():.6f} <= h4 = {h4} over {n}")


def _critical_points(rng, n: int) -> PropertyResult:
    g = np.array(_G_DEFAULT.diag)
    R_d = random_rotation(rng)
    worst_crit = 0.0
    # identity and the three half-turns about the principal axes
    crits = [np.eye(3)] + [exp_so3(np.pi * e) for e in np.eye(3)]
    for Qc in crits:
        err = float(np.linalg.norm(attitude_error_vector(R_d @ Qc, R_d, _G_DEFAULT)))
        worst_crit = max(worst_crit, err)
    m = min(n, 1000)
    min_away = np.inf
    made = 0
    while made < m:
        w = rng.normal(size=3)
        w *= rng.uniform(0.01, np.pi - 0.01) / np.linalg.norm(w)
        Q = exp_so3(w)
        if min(np.linalg.norm(w),
               *(np.linalg.norm(log_so3(Qc.T @ Q)) for Qc in crits[1:])) < 0.01:
            continue
        min_away = min(min_away,
                       np.linalg.norm(attitude_error_vector(R_d @ Q, R_d,
                                                            _G_DEFAULT)))
        made += 1
    ok = worst_crit < 1e-14 and min_away > 1e-6
    return PropertyResult(
        "error_vector_critical_points", ok,
        f"critical residual {worst_crit:.2e} (tol 1e-14), "
        f"min |e_R| {min_away:.2e} at {m} points 0.01 away")


def _transport_norm(rng, n: int) -> PropertyResult:
    g = np.array(_G_DEFAULT.diag)
    Q = np.swapaxes(_haar(rng, n), 1, 2) @ _haar(rng, n)
    P = Q * g[None, :]  # Q diag(g): scale columns
    trP = np.einsum("nii->n", P)
    E = 0.5 * (trP[:, None, None] * np.eye(3)[None] - P)
    norms = np.linalg.svd(E, compute_uv=False)[:, 0]
    bound = transport_bound(_G_DEFAULT)
    worst = float(norms.max())
    viol = int(np.count_nonzero(norms > bound + 1e-12))
    return PropertyResult(
        "transport_norm_bound", viol == 0,
        f"{viol} violations, max norm {worst:.6f} <= {bound:.6f} over {n}")


def _update_rate_symmetry(rng, n: int) -> PropertyResult:
    gains = Gains(k_R=0.0424, k_Omega=0.0296, k_J=0.1, c=1.0, G=_G_DEFAULT)
    m = min(n, 1000)
    asym = 0
    for _ in range(m):
        state = BodyState(R=random_rotation(rng), Omega=rng.normal(size=3))
        cmd = CommandSample(R_d=random_rotation(rng),
                            Omega_d=rng.normal(size=3),
                            Omega_d_dot=rng.normal(size=3), t=0.0)
        est = EstimatorState(J_bar=np.diag(rng.uniform(0.001, 0.1, size=3)))
        M = adaptive_update_rate(state, cmd, gains, est)
        if not np.array_equal(M, M.T):
            asym += 1
    return PropertyResult("update_rate_symmetry", asym == 0,
                          f"{asym} asymmetric results over {m} samples "
                          f"(exact comparison)")


def _rejection_bound(rng, n: int) -> PropertyResult:
    rob = RobustParams(sigma=0.01, epsilon=0.002, delta_bound=0.2)
    e = rng.normal(size=(n, 3)) * 10.0 ** rng.uniform(-8, 8, size=(n, 1))
    norms = np.linalg.norm(e, axis=1)
    scale = rob.delta_bound**2 / (rob.delta_bound * norms + rob.epsilon)
    v_norms = scale * norms
    worst = float(v_norms.max())
    ok = bool(np.all(v_norms < rob.delta_bound))
    return PropertyResult(
        "rejection_norm_bound", ok,
        f"max |v| {worst:.12f} < delta = {rob.delta_bound} over {n}")


_BATTERIES = (
    _hat_cross,
    _hat_trace,
    _hat_congruence,
    _hat_conjugation,
    _exp_log_roundtrip,
    _psi_bounds,
    _psi_range,
    _critical_points,
    _transport_norm,
    _update_rate_symmetry,
    _rejection_bound,
)


def run_all(seed: int = 0, cases: int = 100000) -> List[PropertyResult]:
    """Run every battery with independent generators; deterministic."""
    if cases < 1000:
        raise ValueError("cases must be at least 1000")
    return [fn(_rng(seed, i), cases) for i, fn in enumerate(_BATTERIES)]
