"""Tests for the random property batteries."""

import numpy as np
import pytest

from so3ctrl.errors import GainMatrix, transport_matrix
from so3ctrl.properties import (
    PropertyResult,
    _batch_e_r,
    _batch_hat,
    _batch_psi,
    _batch_vee,
    _haar,
    run_all,
)
from so3ctrl.errors import attitude_error_vector, psi
from so3ctrl.so3 import hat, rotation_defect, vee

G = GainMatrix(0.9, 1.0, 1.1)


class TestBatchHelpers:
    """The vectorized internals must agree with the scalar module functions."""

    def test_batch_hat_vee_match_scalar(self):
        rng = np.random.default_rng(11)
        x = rng.normal(size=(50, 3))
        H = _batch_hat(x)
        for i in range(50):
            assert np.array_equal(H[i], hat(x[i]))
            assert np.array_equal(_batch_vee(H)[i], vee(hat(x[i])))

    def test_haar_gives_rotations(self):
        rng = np.random.default_rng(12)
        R = _haar(rng, 200)
        for i in range(200):
            assert rotation_defect(R[i]) < 1e-14

    def test_batch_psi_and_e_r_match_scalar(self):
        rng = np.random.default_rng(13)
        g = G.diag
        R = _haar(rng, 40)
        R_d = _haar(rng, 40)
        Q = np.swapaxes(R_d, 1, 2) @ R
        psis = _batch_psi(Q, g)
        ers = _batch_e_r(Q, g)
        for i in range(40):
            assert psis[i] == pytest.approx(psi(R[i], R_d[i], G), abs=1e-13)
            np.testing.assert_allclose(
                ers[i], attitude_error_vector(R[i], R_d[i], G), atol=1e-13
            )

    def test_transport_battery_matrix_matches_module(self):
        # same construction the norm battery uses, P = (R^T R_d) diag(g)
        rng = np.random.default_rng(14)
        g = G.diag
        R = _haar(rng, 20)
        R_d = _haar(rng, 20)
        Q = np.swapaxes(R, 1, 2) @ R_d
        P = Q * g[None, :]
        trP = np.einsum("nii->n", P)
        E = 0.5 * (trP[:, None, None] * np.eye(3)[None] - P)
        for i in range(20):
            np.testing.assert_allclose(
                E[i], transport_matrix(R[i], R_d[i], G), atol=1e-14
            )


class TestRunAll:
    def test_all_pass_at_default_seed(self):
        results = run_all(seed=0, cases=1000)
        assert len(results) >= 10
        for r in results:
            assert isinstance(r, PropertyResult)
            assert r.passed, r.line()

    def test_deterministic(self):
        a = run_all(seed=7, cases=1000)
        b = run_all(seed=7, cases=1000)
        assert [(r.name, r.passed, r.detail) for r in a] == [
            (r.name, r.passed, r.detail) for r in b
        ]

    def test_seed_changes_details(self):
        a = run_all(seed=0, cases=1000)
        b = run_all(seed=1, cases=1000)
        assert [r.detail for r in a] != [r.detail for r in b]

    def test_unique_names(self):
        names = [r.name for r in run_all(seed=0, cases=1000)]
        assert len(names) == len(set(names))

    def test_case_floor_enforced(self):
        with pytest.raises(ValueError, match="at least 1000"):
            run_all(seed=0, cases=999)

    def test_line_format(self):
        r = PropertyResult(name="demo", passed=True, detail="ok")
        assert r.line() == "PASS  demo: ok"
        r = PropertyResult(name="demo", passed=False, detail="bad")
        assert r.line().startswith("FAIL")
