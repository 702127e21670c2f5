"""Facet-plane traces on the sphere: sign vectors, region sampling, angle charts."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AngleOutOfRange, OnPlane
from .geom import DEFAULT_TOL, Tolerance
from .polytope import Hyperplane, facet_planes
from .scene import Scene

# samples closer than this fraction of r to a facet plane are discarded
REGION_GUARD = 1e-7

_G2 = 1.32471795724474602596  # plastic number: R2 low-discrepancy sequence
_A1, _A2 = 1.0 / _G2, 1.0 / (_G2 * _G2)


SignVector = tuple[int, ...]


def signs_str(s: SignVector) -> str:
    return "".join("+" if v > 0 else "-" for v in s)


@dataclass
class RegionReport:
    sign_vector: SignVector
    representative: np.ndarray
    sample_count: int
    samples: list[np.ndarray] = field(default_factory=list, repr=False)
    first_index: int = 0
    stable_permutation: tuple[tuple[int, int], ...] | None = None


def hyperspherical_point(angles, r: float = 1.0) -> np.ndarray:
    """Point of the sphere of radius ``r`` in E^d for d - 1 hyperspherical angles."""
    phi = np.asarray(angles, dtype=float).reshape(-1)
    if phi.size < 1:
        raise AngleOutOfRange("need at least one angle")
    if np.any(phi[:-1] < 0) or np.any(phi[:-1] > np.pi) or not 0 <= phi[-1] <= 2 * np.pi:
        raise AngleOutOfRange("angles outside [0, pi]^(d-2) x [0, 2 pi]")
    d = phi.size + 1
    x = np.empty(d)
    s = r
    for i in range(d - 1):
        x[i] = s * np.cos(phi[i])
        s *= np.sin(phi[i])
    x[d - 1] = s
    return x


def plane_arrays(planes: list[Hyperplane]) -> tuple[np.ndarray, np.ndarray]:
    return (np.array([p.normal for p in planes]), np.array([p.offset for p in planes]))


def sign_vector(z, planes: list[Hyperplane], tol: Tolerance = DEFAULT_TOL) -> SignVector:
    N, c = plane_arrays(planes)
    s = N @ np.asarray(z, dtype=float) - c
    if np.any(np.abs(s) <= tol.eps_abs):
        raise OnPlane("point lies on a facet plane")
    return tuple(int(v) for v in np.where(s > 0, 1, -1))


def scene_planes(scene: Scene) -> list[Hyperplane]:
    out: list[Hyperplane] = []
    for P in scene.polytopes:
        out.extend(facet_planes(P))
    return out


def sphere_samples(n: int, d: int, r: float, seed: int) -> np.ndarray:
    """Deterministic sphere samples; the first m rows do not depend on ``n``.

    d = 3 uses an area-preserving map of a jittered R2 lattice; other d use
    normalised Gaussians.
    """
    rng = np.random.default_rng(seed)
    if d == 3:
        off = rng.uniform(size=2)
        jit = rng.uniform(-1e-3, 1e-3, size=(n, 2))
        i = np.arange(n) + 0.5
        u = np.mod(off[0] + i * _A1 + jit[:, 0], 1.0)
        v = np.mod(off[1] + i * _A2 + jit[:, 1], 1.0)
        h = 1.0 - 2.0 * u
        rho = np.sqrt(np.clip(1.0 - h * h, 0.0, None))
        ang = 2.0 * np.pi * v
        return r * np.column_stack([rho * np.cos(ang), rho * np.sin(ang), h])
    X = np.array([rng.standard_normal(d) for _ in range(n)]).reshape(n, d)
    return r * X / np.linalg.norm(X, axis=1, keepdims=True)


def sample_regions(scene: Scene, n_samples: int, seed: int,
                   planes: list[Hyperplane] | None = None) -> list[RegionReport]:
    """One report per distinct sign vector seen among seeded sphere samples.

    Reports come back in order of first appearance; the representative is the
    first sample attaining the class.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    planes = scene_planes(scene) if planes is None else planes
    N, c = plane_arrays(planes)
    Z = sphere_samples(n_samples, scene.dim, scene.r, seed)
    S = Z @ N.T - c
    ok = np.all(np.abs(S) > REGION_GUARD * scene.r, axis=1)
    reports: dict[bytes, RegionReport] = {}
    for idx in np.nonzero(ok)[0]:
        key = (S[idx] > 0).tobytes()
        rep = reports.get(key)
        if rep is None:
            sv = tuple(int(v) for v in np.where(S[idx] > 0, 1, -1))
            reports[key] = RegionReport(sv, Z[idx].copy(), 1, [Z[idx].copy()], int(idx))
        else:
            rep.sample_count += 1
            rep.samples.append(Z[idx].copy())
    return list(reports.values())


def region_probes(region: RegionReport, planes: list[Hyperplane], r: float, n: int,
                  rng: np.random.Generator, max_tries: int = 200) -> list[np.ndarray]:
    """``n`` sphere points sharing ``region``'s sign vector.

    Draws from shrinking caps around the representative, the executable stand-in
    for an open cap inside the region. Already-known samples are used first.
    """
    N, c = plane_arrays(planes)
    target = np.array(region.sign_vector) > 0
    out = [s for s in region.samples[:n]]
    z0 = region.representative / r
    d = z0.shape[0]
    radius = 0.2
    tries = 0
    while len(out) < n and tries < max_tries:
        tries += 1
        X = rng.standard_normal((4 * n, d))
        X -= np.outer(X @ z0, z0)
        X *= (radius * rng.uniform(size=(4 * n, 1))) / np.linalg.norm(X, axis=1, keepdims=True)
        Z = z0 + X
        Z = r * Z / np.linalg.norm(Z, axis=1, keepdims=True)
        S = Z @ N.T - c
        good = np.all(np.abs(S) > REGION_GUARD * r, axis=1) & np.all((S > 0) == target, axis=1)
        out.extend(Z[good][: n - len(out)])
        if not good.any():
            radius *= 0.5
    return out
