"""Congruence of support cones and spherical projections under O(d)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ApexMismatch, FitFailed, RadiusMismatch, SearchBudgetExceeded
from .geom import DEFAULT_TOL, Tolerance, gram_matrix, procrustes
from .sightcone import SupportCone
from .sphproj import SphericalPolytope

SEARCH_BUDGET = 100_000


@dataclass(frozen=True)
class CongruenceWitness:
    """``map @ source[i] == target[permutation[i]]`` up to ``residual``."""

    permutation: tuple[int, ...]
    map: np.ndarray
    residual: float

    def inverse(self) -> "CongruenceWitness":
        inv = [0] * len(self.permutation)
        for i, j in enumerate(self.permutation):
            inv[j] = i
        return CongruenceWitness(tuple(inv), self.map.T.copy(), self.residual)


def _gram_permutations(G1: np.ndarray, G2: np.ndarray, atol: float,
                       budget: int) -> Iterator[tuple[int, ...]]:
    k = G1.shape[0]
    rows1 = np.sort(G1, axis=1)
    rows2 = np.sort(G2, axis=1)
    ok = np.all(np.abs(rows1[:, None, :] - rows2[None, :, :]) <= atol, axis=2)
    cand = [np.nonzero(ok[i])[0].tolist() for i in range(k)]
    if any(not c for c in cand):
        return
    g1, g2 = G1.tolist(), G2.tolist()
    assign = [-1] * k
    used = [False] * k
    nodes = 0

    # rows in natural order, so permutations come out lexicographically
    def extend(i: int):
        nonlocal nodes
        if i == k:
            yield tuple(assign)
            return
        row1 = g1[i]
        for j in cand[i]:
            if used[j]:
                continue
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"more than {budget} search nodes")
            row2 = g2[j]
            if any(abs(row1[m] - row2[assign[m]]) > atol for m in range(i)):
                continue
            assign[i], used[j] = j, True
            yield from extend(i + 1)
            assign[i], used[j] = -1, False

    yield from extend(0)


def iter_gram_matches(D1, D2, atol: float = 1e-7,
                      budget: int = SEARCH_BUDGET) -> Iterator[tuple[int, ...]]:
    """Lazily yield permutations sigma with G1[i, j] == G2[sigma(i), sigma(j)]."""
    D1 = np.atleast_2d(np.asarray(D1, dtype=float))
    D2 = np.atleast_2d(np.asarray(D2, dtype=float))
    if D1.shape != D2.shape:
        return iter(())
    return _gram_permutations(gram_matrix(D1), gram_matrix(D2), atol, budget)


def match_by_gram(D1, D2, atol: float = 1e-7, budget: int = SEARCH_BUDGET) -> list[tuple[int, ...]]:
    """All Gram-preserving permutations (row-multiset pruned backtracking)."""
    return list(iter_gram_matches(D1, D2, atol, budget))


def _adjacency_ok(perm, faces_a, faces_b) -> bool:
    target = set(faces_b)
    for i, j in faces_a:
        a, b = perm[i], perm[j]
        if (min(a, b), max(a, b)) not in target:
            return False
    return True


def cone_congruent(A: SupportCone, B: SupportCone, tol: Tolerance = DEFAULT_TOL,
                   budget: int = SEARCH_BUDGET) -> CongruenceWitness | None:
    """Orthogonal map sending A's spanning directions and 2-faces onto B's, if any.

    Raises SearchBudgetExceeded when the permutation search is cut off before a
    verdict; callers treat that as inconclusive.
    """
    if np.linalg.norm(A.apex - B.apex) > tol.scaled(np.linalg.norm(A.apex)):
        raise ApexMismatch("cones have different apexes")
    if A.k != B.k or len(A.faces2) != len(B.faces2):
        return None
    for perm in iter_gram_matches(A.directions, B.directions, tol.residual_max, budget):
        if not _adjacency_ok(perm, A.faces2, B.faces2):
            continue
        M, res = procrustes(A.directions, B.directions[list(perm)])
        if res <= tol.residual_max:
            return CongruenceWitness(perm, M, res)
    return None


def spherical_congruent(S1: SphericalPolytope, S2: SphericalPolytope,
                        tol: Tolerance = DEFAULT_TOL,
                        budget: int = SEARCH_BUDGET) -> CongruenceWitness | None:
    """Origin-fixing orthogonal map carrying S1's vertices and arcs onto S2's.

    The map need not fix either light source.
    """
    if abs(S1.r - S2.r) > tol.scaled(S1.r):
        raise RadiusMismatch("projections live on spheres of different radii")
    if S1.k != S2.k or len(S1.arcs) != len(S2.arcs):
        return None
    r = S1.r
    arcs2 = {(min(a.i, a.j), max(a.i, a.j)): a for a in S2.arcs}
    for perm in iter_gram_matches(S1.vertices / r, S2.vertices / r, tol.residual_max, budget):
        matched = []
        for a in S1.arcs:
            key = (min(perm[a.i], perm[a.j]), max(perm[a.i], perm[a.j]))
            b = arcs2.get(key)
            if b is None or abs(a.radius - b.radius) > tol.residual_max * r:
                break
            matched.append((a, b))
        else:
            src = np.vstack([S1.vertices[list(range(S1.k))]] + [a.center[None] for a, _ in matched]) / r
            dst = np.vstack([S2.vertices[list(perm)]] + [b.center[None] for _, b in matched]) / r
            M, res = procrustes(src, dst)
            if res <= tol.residual_max:
                return CongruenceWitness(perm, M, res)
    return None


class ShapeKind(enum.Enum):
    CIRCULAR = "circular"
    ELLIPTICAL = "elliptical"
    OTHER = "other"


@dataclass(frozen=True)
class ConeShape:
    kind: ShapeKind
    axis_ratio: float
    form: np.ndarray


def fit_cone_form(points, apex) -> tuple[np.ndarray, float]:
    """Symmetric 3x3 form A (unit Frobenius norm) with q^T A q = 0 on the samples.

    Returns the form and the smallest singular value of the design matrix
    (zero for exactly conical samples).
    """
    Q = np.atleast_2d(np.asarray(points, dtype=float)) - np.asarray(apex, dtype=float)
    Q = Q / np.linalg.norm(Q, axis=1, keepdims=True)
    x, y, z = Q.T
    design = np.column_stack([x * x, y * y, z * z, 2 * x * y, 2 * x * z, 2 * y * z])
    _, s, Vt = np.linalg.svd(design)
    a = Vt[-1]
    A = np.array([[a[0], a[3], a[4]], [a[3], a[1], a[5]], [a[4], a[5], a[2]]])
    return A / np.linalg.norm(A), float(s[-1])


def cone_shape_classify(points, apex, atol: float = 1e-9) -> ConeShape:
    """Classify a quadratic cone in E^3 from >= 6 points on its boundary.

    The axis ratio is sqrt(lmax / lmin) over the two eigenvalues of the form that
    share a sign; the odd eigenvector is the cone axis.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[0] < 6 or pts.shape[1] != 3:
        raise FitFailed("need at least 6 points in E^3")
    A, smin = fit_cone_form(pts, apex)
    if smin > 1e-8:
        raise FitFailed(f"samples are not on a quadratic cone (residual {smin:.2e})")
    lam = np.linalg.eigvalsh(A)
    if np.sum(lam > 0) == 1:
        lam = -lam
    pos = lam[lam > 0]
    if pos.size != 2 or np.sum(lam < 0) != 1:
        return ConeShape(ShapeKind.OTHER, float("nan"), A)
    ratio = float(np.sqrt(pos.max() / pos.min()))
    kind = ShapeKind.CIRCULAR if ratio - 1.0 <= atol else ShapeKind.ELLIPTICAL
    return ConeShape(kind, ratio, A)
