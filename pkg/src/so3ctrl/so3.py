"""Exact small-matrix geometry on the rotation group.

Hat/vee maps between R^3 and skew-symmetric matrices, the Rodrigues
exponential and its inverse, polar projection onto SO(3), and closed-form
eigenvalue routines for 2x2 and 3x3 symmetric matrices.  Rotations are
plain (3, 3) float arrays; all functions are pure.
"""

from __future__ import annotations

import numpy as np

# Orthogonality / determinant tolerance for a matrix to count as a rotation.
ROTATION_TOL = 1e-12
# Largest symmetric-part residual vee() accepts in strict mode.
SKEW_TOL = 1e-10
# Below this angle the exp/log coefficients switch to truncated series.
SMALL_ANGLE = 1e-8

_EYE3 = np.eye(3)


def hat(v) -> np.ndarray:
    """Skew-symmetric matrix such that hat(v) @ w == np.cross(v, w)."""
    x, y, z = np.asarray(v, dtype=float)
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def vee(M, strict: bool = False) -> np.ndarray:
    """Inverse of hat.  Only the skew part of M is read.

    Equivalent to the exact inverse applied to (M - M.T) / 2, so symmetric
    contamination is discarded.  With strict=True a symmetric part larger
    than SKEW_TOL (Frobenius) raises ValueError instead.
    """
    M = np.asarray(M, dtype=float)
    if strict:
        sym = 0.5 * (M + M.T)
        defect = float(np.linalg.norm(sym, "fro"))
        if defect > SKEW_TOL:
            raise ValueError(
                f"matrix is not skew-symmetric: symmetric part has norm {defect:.3e}"
            )
    return 0.5 * np.array(
        [M[2, 1] - M[1, 2], M[0, 2] - M[2, 0], M[1, 0] - M[0, 1]]
    )


def rotation_defect(R) -> float:
    """max(Frobenius distance of R.T @ R from I, |det(R) - 1|)."""
    R = np.asarray(R, dtype=float)
    ortho = float(np.linalg.norm(R.T @ R - _EYE3, "fro"))
    det = abs(float(np.linalg.det(R)) - 1.0)
    return max(ortho, det)


def check_rotation(R, tol: float = ROTATION_TOL) -> np.ndarray:
    """Return R unchanged, raising ValueError if it is not a rotation."""
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3):
        raise ValueError(f"rotation must be 3x3, got shape {R.shape}")
    defect = rotation_defect(R)
    if not np.isfinite(defect) or defect > tol:
        raise ValueError(f"matrix is not a rotation: defect {defect:.3e} > {tol:.1e}")
    return R


def exp_so3(v) -> np.ndarray:
    """Rodrigues exponential of the rotation vector v (angle = |v|)."""
    v = np.asarray(v, dtype=float)
    theta = float(np.linalg.norm(v))
    if theta < SMALL_ANGLE:
        a = 1.0 - theta * theta / 6.0
        b = 0.5 - theta * theta / 24.0
    else:
        a = np.sin(theta) / theta
        half = np.sin(0.5 * theta)
        # (1 - cos t) / t^2 via the half-angle form, stable for small t.
        b = 2.0 * half * half / (theta * theta)
    K = hat(v)
    return _EYE3 + a * K + b * (K @ K)


def log_so3(R) -> np.ndarray:
    """Rotation vector of R with angle in [0, pi].

    At the angle-pi boundary the axis sign is fixed so that the
    largest-magnitude component is positive (first such component wins).
    """
    R = np.asarray(R, dtype=float)
    w = vee(R)  # = sin(theta) * axis
    s = float(np.linalg.norm(w))
    c = 0.5 * (float(np.trace(R)) - 1.0)
    theta = float(np.arctan2(s, c))
    if theta < SMALL_ANGLE:
        return w
    if theta < np.pi - 1e-4:
        return (theta / s) * w
    # Near pi the skew part degenerates; recover the axis from the
    # symmetric part, which equals cos(t) I + (1 - cos(t)) a a^T.
    outer = (0.5 * (R + R.T) - c * _EYE3) / (1.0 - c)
    k = int(np.argmax(np.diag(outer)))
    axis = outer[:, k] / np.sqrt(outer[k, k])
    axis = axis / np.linalg.norm(axis)
    if s > 1e-12:
        if float(np.dot(axis, w)) < 0.0:
            axis = -axis
    else:
        m = int(np.argmax(np.abs(axis)))
        if axis[m] < 0.0:
            axis = -axis
    return theta * axis


def project_to_so3(M) -> np.ndarray:
    """Closest rotation to M in the Frobenius norm (polar factor).

    Requires det(M) > 0 so the polar factor lands on SO(3) rather than
    the reflection component.
    """
    M = np.asarray(M, dtype=float)
    if not np.all(np.isfinite(M)):
        raise ValueError("cannot project a non-finite matrix")
    if float(np.linalg.det(M)) <= 0.0:
        raise ValueError("projection onto SO(3) requires det(M) > 0")
    U, _, Vt = np.linalg.svd(M)
    return U @ Vt


def _det3(S) -> float:
    return float(
        S[0, 0] * (S[1, 1] * S[2, 2] - S[1, 2] * S[2, 1])
        - S[0, 1] * (S[1, 0] * S[2, 2] - S[1, 2] * S[2, 0])
        + S[0, 2] * (S[1, 0] * S[2, 1] - S[1, 1] * S[2, 0])
    )


def sym_eigvals3(S) -> np.ndarray:
    """Eigenvalues of a symmetric 3x3 matrix, ascending.

    Trigonometric solution of the characteristic cubic; no iteration.
    """
    S = np.asarray(S, dtype=float)
    p1 = S[0, 1] ** 2 + S[0, 2] ** 2 + S[1, 2] ** 2
    q = (S[0, 0] + S[1, 1] + S[2, 2]) / 3.0
    if p1 == 0.0:
        return np.sort(np.array([S[0, 0], S[1, 1], S[2, 2]]))
    p2 = (S[0, 0] - q) ** 2 + (S[1, 1] - q) ** 2 + (S[2, 2] - q) ** 2 + 2.0 * p1
    p = np.sqrt(p2 / 6.0)
    B = (S - q * _EYE3) / p
    r = min(1.0, max(-1.0, _det3(B) / 2.0))
    phi = np.arccos(r) / 3.0
    lo = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    hi = q + 2.0 * p * np.cos(phi)
    return np.array([lo, 3.0 * q - lo - hi, hi])


def sym_eigvals2(S) -> np.ndarray:
    """Eigenvalues of a symmetric 2x2 matrix, ascending."""
    S = np.asarray(S, dtype=float)
    mean = 0.5 * (S[0, 0] + S[1, 1])
    radius = np.hypot(0.5 * (S[0, 0] - S[1, 1]), S[0, 1])
    return np.array([mean - radius, mean + radius])


def spectral_norm(M) -> float:
    """Largest singular value of a 3x3 matrix, via the closed-form
    eigenvalues of M.T @ M."""
    M = np.asarray(M, dtype=float)
    top = float(sym_eigvals3(M.T @ M)[-1])
    return float(np.sqrt(max(top, 0.0)))


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Rotation drawn from the uniform (Haar) distribution."""
    q = rng.normal(size=4)
    q = q / np.linalg.norm(q)
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )
