"""Vector kernel: tolerances, ray/sphere hits, Gram matrices, orthogonal fitting.

Points are plain ``numpy`` float arrays; nothing here keeps state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDirection, GeometryError, NoSecondHit

MAX_DIM = 8


@dataclass(frozen=True)
class Tolerance:
    eps_abs: float = 1e-9
    eps_rel: float = 1e-9
    residual_max: float = 1e-7

    def __post_init__(self):
        if min(self.eps_abs, self.eps_rel, self.residual_max) <= 0:
            raise ValueError("tolerances must be positive")

    def scaled(self, scale: float) -> float:
        """Absolute threshold for quantities of magnitude ``scale``."""
        return max(self.eps_abs, self.eps_rel * abs(scale))


DEFAULT_TOL = Tolerance()


def as_vec(x, d: int | None = None) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if d is not None and v.shape[0] != d:
        raise GeometryError(f"expected a {d}-vector, got {v.shape[0]} coordinates")
    if v.shape[0] < 2 or v.shape[0] > MAX_DIM:
        raise GeometryError(f"dimension {v.shape[0]} outside 2..{MAX_DIM}")
    if not np.all(np.isfinite(v)):
        raise GeometryError("non-finite coordinate")
    return v


def unit(u: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    n = np.linalg.norm(u)
    if n < tol.eps_abs:
        raise DegenerateDirection(f"direction norm {n:.3g} below tolerance")
    return u / n


def ray_second_intersection(z, u, r: float, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Point where the ray from ``z`` (on the sphere of radius ``r``) along ``u`` leaves the ball.

    Solving |z + t u|^2 = r^2 with |z| = r gives t = -2 (z.u) / |u|^2.
    """
    z = as_vec(z)
    u = as_vec(u, z.shape[0])
    if abs(np.linalg.norm(z) - r) > tol.scaled(r) * 10:
        raise GeometryError(f"z is not on the sphere of radius {r}")
    uu = u @ u
    if np.sqrt(uu) < tol.eps_abs:
        raise DegenerateDirection("zero direction")
    zu = z @ u
    if zu >= -tol.eps_abs * np.sqrt(uu) * r:
        raise NoSecondHit("ray does not enter the ball")
    t = -2.0 * zu / uu
    p = z + t * u
    # rescale removes rounding drift off the sphere
    return p * (r / np.linalg.norm(p))


def gram_matrix(vectors) -> np.ndarray:
    D = np.atleast_2d(np.asarray(vectors, dtype=float))
    if D.shape[0] == 0:
        raise GeometryError("empty vector list")
    return D @ D.T


def procrustes(A: np.ndarray, B: np.ndarray) -> tuple[np.ndarray, float]:
    """Orthogonal M (reflections allowed) minimising sum |M a_i - b_i|^2, plus the RMS residual.

    Rows of ``A`` and ``B`` are paired vectors.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.shape != B.shape:
        raise GeometryError(f"shape mismatch {A.shape} vs {B.shape}")
    H = B.T @ A
    U, _, Vt = np.linalg.svd(H)
    M = U @ Vt
    diff = A @ M.T - B
    return M, float(np.sqrt(np.mean(np.sum(diff * diff, axis=1))))


def procrustes_batch(A: np.ndarray, B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``procrustes`` over a stack of (m, k, d) problems; returns maps and RMS residuals."""
    H = np.swapaxes(B, 1, 2) @ A
    U, _, Vt = np.linalg.svd(H)
    M = U @ Vt
    diff = A @ np.swapaxes(M, 1, 2) - B
    return M, np.sqrt(np.mean(np.einsum("mij,mij->mi", diff, diff), axis=1))


def orthogonal_fit(pairs, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, float]:
    """Best orthogonal map sending the first unit vector of each pair onto the second."""
    pairs = list(pairs)
    if not pairs:
        raise GeometryError("orthogonal_fit needs at least one pair")
    A = np.array([p[0] for p in pairs], dtype=float)
    B = np.array([p[1] for p in pairs], dtype=float)
    for X in (A, B):
        if np.any(np.abs(np.linalg.norm(X, axis=1) - 1.0) > 1e3 * tol.eps_abs):
            raise GeometryError("orthogonal_fit expects unit vectors")
    return procrustes(A, B)


def is_orthogonal(M, atol: float = 1e-9) -> bool:
    M = np.asarray(M, dtype=float)
    d = M.shape[0]
    return bool(np.max(np.abs(M.T @ M - np.eye(d))) <= atol)


def random_rotation(rng: np.random.Generator, d: int, proper: bool = True) -> np.ndarray:
    """Haar-distributed element of SO(d) (or O(d) when ``proper`` is false)."""
    Q, R = np.linalg.qr(rng.standard_normal((d, d)))
    Q = Q * np.sign(np.diag(R))
    if proper and np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


def sphere_points(rng: np.random.Generator, n: int, d: int, r: float = 1.0) -> np.ndarray:
    X = rng.standard_normal((n, d))
    return r * X / np.linalg.norm(X, axis=1, keepdims=True)


def ball_points(rng: np.random.Generator, n: int, d: int, radius: float) -> np.ndarray:
    dirs = sphere_points(rng, n, d)
    return dirs * (radius * rng.uniform(size=(n, 1)) ** (1.0 / d))
