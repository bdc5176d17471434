"""Release acceptance suite: every top-level numeric target, one line each.

Run `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL lines.
Each test prints its measured value next to the threshold it must meet,
so a red run tells you how far off the build is, not just that it is.
"""

import time

import numpy as np
import pytest

from so3ctrl.controllers import Gains, RobustParams, validate_gains
from so3ctrl.dynamics import BodyState, InertiaMatrix, benchmark_inertia, \
    step_lgvi, step_rk4_projected
from so3ctrl.errors import (
    GainMatrix,
    angular_velocity_error,
    attitude_error_vector,
    bound_constants,
    feedforward_acceleration,
    psi,
    transport_bound,
    transport_matrix,
)
from so3ctrl.harness import (
    apply_overrides,
    bundled_config_path,
    load_config,
    run_scenario,
    scenario_from_dict,
)
from so3ctrl.properties import _batch_e_r, _batch_psi, _haar
from so3ctrl.so3 import exp_so3, hat, log_so3, random_rotation, \
    rotation_defect, vee
from so3ctrl.trajectory import benchmark_command

G = GainMatrix(0.9, 1.0, 1.1)
BENCHMARK_GAINS = dict(k_R=0.0424, k_Omega=0.0296, k_J=0.1, c=1.0, G=G)
C_MAX_EXPECTED = 1.070756078518795
RUNTIMES = {}


def check(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    print(line)
    assert ok, line


def _run_bundled(case_id, overrides=(), label=None):
    cfg = apply_overrides(load_config(bundled_config_path(case_id)),
                          list(overrides))
    s = scenario_from_dict(cfg)
    t0 = time.perf_counter()
    out = run_scenario(s)
    RUNTIMES[label or case_id] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="module")
def case_i():
    """Undisturbed adaptive run recorded at every integration step."""
    return _run_bundled("adaptive_no_dist", ["record_every=1"], "case_i")


@pytest.fixture(scope="module")
def case_i_rk4():
    return _run_bundled("adaptive_no_dist",
                        ["integrator.method=rk4_projected"], "case_i_rk4")


@pytest.fixture(scope="module")
def case_ii():
    return _run_bundled("adaptive_with_dist")


@pytest.fixture(scope="module")
def case_iii():
    return _run_bundled("robust_with_dist")


def test_hat_identities():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst = {"cross": 0.0, "trace": 0.0, "congruence": 0.0, "conjugation": 0.0}
    for _ in range(1000):
        x = rng.normal(size=3)
        y = rng.normal(size=3)
        A = rng.normal(size=(3, 3))
        R = random_rotation(rng)
        H = hat(x)
        worst["cross"] = max(worst["cross"], np.abs(H @ y + hat(y) @ x).max())
        worst["trace"] = max(
            worst["trace"],
            abs(np.trace(A @ H) + x @ vee(A - A.T)))
        worst["congruence"] = max(
            worst["congruence"],
            np.abs(H @ A + A.T @ H - hat((np.trace(A) * np.eye(3) - A) @ x)).max())
        worst["conjugation"] = max(
            worst["conjugation"], np.abs(R @ H @ R.T - hat(R @ x)).max())
    dt = time.perf_counter() - t0
    res = max(worst.values())
    check("hat-map identities", res < 1e-12 and dt < 1.0,
          f"max residual {res:.3e} < 1e-12 over 4x1000 samples, {dt:.2f}s < 1s")


def test_error_function_bounds():
    rng = np.random.default_rng(102)
    t0 = time.perf_counter()
    n = 100000
    g = G.diag
    bc = bound_constants(G, psi_bar=0.95)
    Q = np.swapaxes(_haar(rng, n), 1, 2) @ _haar(rng, n)
    psis = _batch_psi(Q, g)
    e_R = _batch_e_r(Q, g)
    er_sq = np.einsum("ni,ni->n", e_R, e_R)
    lower = int(np.count_nonzero(bc.b1 * er_sq > psis + 1e-12))
    near = psis < bc.psi_bar
    upper = int(np.count_nonzero(psis[near] > bc.b2 * er_sq[near] + 1e-12))
    dt = time.perf_counter() - t0
    check("error-function sandwich bounds",
          lower == 0 and upper == 0 and dt < 10.0,
          f"{lower} lower / {upper} upper violations on {n} pairs "
          f"({int(near.sum())} below psi_bar), {dt:.2f}s < 10s")


def test_critical_points():
    rng = np.random.default_rng(103)
    crits = [np.eye(3)] + [exp_so3(np.pi * e) for e in np.eye(3)]
    worst_crit = 0.0
    for _ in range(50):
        R_d = random_rotation(rng)
        for Qc in crits:
            worst_crit = max(worst_crit, np.linalg.norm(
                attitude_error_vector(R_d @ Qc, R_d, G)))
    min_away = np.inf
    made = 0
    R_d = random_rotation(rng)
    while made < 1000:
        w = rng.normal(size=3)
        w *= rng.uniform(0.02, np.pi - 0.02) / np.linalg.norm(w)
        Q = exp_so3(w)
        dists = [np.linalg.norm(w)]
        dists += [np.linalg.norm(log_so3(Qc.T @ Q)) for Qc in crits[1:]]
        if min(dists) <= 0.01:
            continue
        min_away = min(min_away, np.linalg.norm(
            attitude_error_vector(R_d @ Q, R_d, G)))
        made += 1
    check("error-vector critical points",
          worst_crit < 1e-14 and min_away > 1e-6,
          f"|e_R| {worst_crit:.2e} < 1e-14 at the four critical rotations, "
          f"min |e_R| {min_away:.2e} > 1e-6 at 1000 points past 0.01 rad")


def test_transport_bound_and_kinematics():
    rng = np.random.default_rng(104)
    n = 100000
    g = G.diag
    Q = np.swapaxes(_haar(rng, n), 1, 2) @ _haar(rng, n)
    P = Q * g[None, :]
    trP = np.einsum("nii->n", P)
    E = 0.5 * (trP[:, None, None] * np.eye(3)[None] - P)
    norms = np.linalg.svd(E, compute_uv=False)[:, 0]
    bound = transport_bound(G)
    viol = int(np.count_nonzero(norms > bound + 1e-12))
    check("transport-matrix norm bound", viol == 0,
          f"{viol} violations of |E| <= {bound:.6f} on {n} samples "
          f"(max {norms.max():.6f})")

    # smooth test motion with exact rates: fixed-axis attitude, bundled command
    axis = np.array([0.36, -0.48, 0.80])
    axis /= np.linalg.norm(axis)
    theta = lambda t: 0.9 * np.sin(1.7 * t) + 0.31 * t
    dtheta = lambda t: 0.9 * 1.7 * np.cos(1.7 * t) + 0.31
    ddtheta = lambda t: -0.9 * 1.7**2 * np.sin(1.7 * t)
    cmd = benchmark_command()

    def quantities(t):
        R = exp_so3(theta(t) * axis)
        Om = dtheta(t) * axis
        c = cmd(t)
        return (psi(R, c.R_d, G),
                attitude_error_vector(R, c.R_d, G),
                angular_velocity_error(R, Om, c.R_d, c.Omega_d))

    def residuals(h):
        worst = np.zeros(3)
        for t in np.linspace(0.3, 8.7, 6):
            p_m, er_m, ew_m = quantities(t - h)
            p_p, er_p, ew_p = quantities(t + h)
            R = exp_so3(theta(t) * axis)
            Om = dtheta(t) * axis
            c = cmd(t)
            e_R = attitude_error_vector(R, c.R_d, G)
            e_W = angular_velocity_error(R, Om, c.R_d, c.Omega_d)
            alpha = feedforward_acceleration(R, Om, c.R_d, c.Omega_d,
                                             c.Omega_d_dot)
            fd = np.array([
                abs((p_p - p_m) / (2 * h) - e_R @ e_W),
                np.abs((er_p - er_m) / (2 * h)
                       - transport_matrix(R, c.R_d, G) @ e_W).max(),
                np.abs((ew_p - ew_m) / (2 * h)
                       - (ddtheta(t) * axis - alpha)).max(),
            ])
            worst = np.maximum(worst, fd)
        return worst

    r1, r2 = residuals(4e-3), residuals(2e-3)
    ratios = r1 / r2
    ok = bool(np.all(ratios > 3.2) and np.all(ratios < 4.8))
    check("kinematic identities converge at order h^2", ok,
          "halving ratios (dPsi/dt, de_R/dt, de_Omega/dt) = "
          + ", ".join(f"{r:.2f}" for r in ratios) + " (expect ~4)")


def test_integrator_suite(case_i, case_i_rk4):
    J = benchmark_inertia()
    t0 = time.perf_counter()
    state = BodyState(R=np.eye(3), Omega=np.array([0.5, -0.3, 0.8]))
    zero = np.zeros(3)
    drift = 0.0
    for _ in range(10000):
        state = step_lgvi(state, zero, zero, J, 1e-3)
        drift = max(drift, rotation_defect(state.R))
    t_drift = time.perf_counter() - t0
    check("variational integrator orthogonality drift",
          drift < 1e-11,
          f"max defect {drift:.3e} < 1e-11 over 10^4 steps")

    t0 = time.perf_counter()
    Jiso = InertiaMatrix(0.02 * np.eye(3))
    R0 = exp_so3(np.array([0.2, -0.1, 0.3]))
    Om0 = np.array([1.1, -0.4, 0.7])
    u_fn = lambda t, st: zero
    d_fn = lambda t, R: zero

    def rk4_error(h):
        st = BodyState(R=R0, Omega=Om0)
        n = round(1.0 / h)
        for k in range(n):
            st = step_rk4_projected(st, k * h, u_fn, d_fn, Jiso, h)
        return np.abs(st.R - R0 @ exp_so3(1.0 * Om0)).max()

    e1, e2 = rk4_error(1e-2), rk4_error(5e-3)
    ratio = e1 / e2
    t_rk4 = time.perf_counter() - t0
    check("projected RK4 order on isotropic free spin",
          12.0 < ratio < 20.0,
          f"halving error ratio {ratio:.1f} (expect ~16), "
          f"errors {e1:.2e} -> {e2:.2e}")

    ts_a, _ = case_i
    ts_b, _ = case_i_rk4
    gap = np.linalg.norm(log_so3(ts_a.R[-1].T @ ts_b.R[-1]))
    check("cross-integrator agreement at t = 10 s",
          gap < 1e-4, f"attitude gap {gap:.3e} rad < 1e-4")

    total = (t_drift + t_rk4 + RUNTIMES["case_i"] + RUNTIMES["case_i_rk4"])
    check("integrator suite runtime", total < 30.0, f"{total:.1f}s < 30s")


def test_scenario_adaptive_tracking(case_i):
    ts, m = case_i
    check("undisturbed adaptive: energy decrease",
          m.v_violations == 0,
          f"{m.v_violations} V increases above 1e-12 across "
          f"{len(ts) - 1} integration steps")
    check("undisturbed adaptive: final attitude error",
          m.final_e_R < 1e-2, f"|e_R(10)| = {m.final_e_R:.3e} < 1e-2")
    check("undisturbed adaptive: final velocity error",
          m.final_e_Omega < 1e-2, f"|e_Omega(10)| = {m.final_e_Omega:.3e} < 1e-2")
    tail = ts.J_bar[ts.t >= 9.0 - 1e-12]
    step_change = np.linalg.norm(np.diff(tail, axis=0), axis=(1, 2)).max()
    check("undisturbed adaptive: estimate settles",
          step_change < 1e-6,
          f"max per-step |dJ_bar|_F {step_change:.3e} < 1e-6 over last second")


def test_scenario_disturbed_adaptive(case_i, case_ii):
    _, m_i = case_i
    _, m_ii = case_ii
    check("disturbed adaptive: energy decrease broken",
          m_ii.v_violations > 0, f"{m_ii.v_violations} V increases recorded")
    ratio = m_ii.final_e_R / m_i.final_e_R
    check("disturbed adaptive: tracking degraded",
          ratio >= 2.0,
          f"final |e_R| {m_ii.final_e_R:.3e} is {ratio:.0f}x the "
          f"undisturbed run's {m_i.final_e_R:.3e} (need >= 2x)")


def test_scenario_robust_adaptive(case_ii, case_iii):
    _, m_ii = case_ii
    _, m_iii = case_iii
    check("robust adaptive: enters the ultimate-bound set",
          np.isfinite(m_iii.ub_entry_time),
          f"|z|^2 <= {m_iii.ultimate_bound:.4g} first at "
          f"t = {m_iii.ub_entry_time:.3g}s")
    check("robust adaptive: remains in the ultimate-bound set",
          m_iii.ub_margin >= 0.0,
          f"worst margin after entry {m_iii.ub_margin:.4g} >= 0")
    check("robust adaptive: beats unmodified adaptive under disturbance",
          m_iii.final_e_R < m_ii.final_e_R,
          f"final |e_R| {m_iii.final_e_R:.3e} < {m_ii.final_e_R:.3e}")
    cap = 10.0 * benchmark_inertia().frobenius
    check("robust adaptive: estimate stays bounded",
          np.isfinite(m_iii.max_J_bar_fro) and m_iii.max_J_bar_fro < cap,
          f"max |J_bar|_F {m_iii.max_J_bar_fro:.3e} < {cap:.3e}")


def test_robust_inequalities_every_step(case_iii):
    _, m = case_iii
    eps, delta = 0.002, 0.2
    check("rejection power bound at every step",
          m.max_e_A_power <= eps + 1e-12,
          f"max e_A . (d + v) = {m.max_e_A_power:.3e} <= {eps} + 1e-12")
    check("rejection magnitude bound at every step",
          m.max_rejection_norm <= delta,
          f"max |v| = {m.max_rejection_norm:.6f} <= {delta}")


def test_gain_validation_report():
    gains = Gains(**BENCHMARK_GAINS)
    J = benchmark_inertia()
    bounds = (J.lambda_min, J.lambda_max)
    rep = validate_gains(gains, bounds, psi_bar=0.95)
    ok = (abs(rep.c_max - C_MAX_EXPECTED) < 1e-12 * C_MAX_EXPECTED
          and rep.feasible
          and rep.w11_eigs[0] > 0 and rep.w12_eigs[0] > 0
          and rep.w2_eigs[0] > 0)
    check("gain certification: nominal report", ok,
          f"c_max = {rep.c_max:.15g}, all of W11/W12/W2 positive definite, "
          f"feasible = {rep.feasible}")

    rob = validate_gains(gains, bounds, psi_bar=0.95,
                         robust=RobustParams(0.01, 0.002, 0.2))
    check("gain certification: robust margins reported",
          rob.d1 is not None and rob.d2 is not None and not rob.feasible,
          f"d1 = {rob.d1:.4g}, d2 = {rob.d2:.4g} -> d1 < d2 is "
          f"{rob.d1 < rob.d2} (reported infeasible)")

    wide = Gains(**{**BENCHMARK_GAINS, "c": 10.0 * rep.c_max}, force=True)
    bad = validate_gains(wide, bounds, psi_bar=0.95)
    check("gain certification: oversized coupling flagged",
          not bad.feasible and min(bad.w11_eigs[0], bad.w12_eigs[0],
                                   bad.w2_eigs[0]) <= 0,
          f"c = 10 c_max gives min eigenvalue "
          f"{min(bad.w11_eigs[0], bad.w12_eigs[0], bad.w2_eigs[0]):.3e}")

    again = validate_gains(gains, bounds, psi_bar=0.95)
    check("gain certification: deterministic",
          rep.to_kv() == again.to_kv(), "identical report on repeat call")


def test_determinism_byte_identical(tmp_path, case_ii, case_iii):
    firsts = {"adaptive_with_dist": case_ii[0], "robust_with_dist": case_iii[0]}
    for case_id in ("adaptive_no_dist", "adaptive_with_dist",
                    "robust_with_dist"):
        if case_id in firsts:
            ts_a = firsts[case_id]
        else:
            ts_a, _ = _run_bundled(case_id, label=case_id + "_det_a")
        ts_b, _ = _run_bundled(case_id, label=case_id + "_det_b")
        pa = tmp_path / f"{case_id}_a.csv"
        pb = tmp_path / f"{case_id}_b.csv"
        ts_a.to_csv(pa)
        ts_b.to_csv(pb)
        same = pa.read_bytes() == pb.read_bytes()
        check(f"determinism: {case_id}", same,
              f"two runs, byte-identical CSV ({pa.stat().st_size} bytes)")
