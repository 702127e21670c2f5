"""Convex polytopes in vertex/facet/edge form and facet visibility."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import Degenerate, Inside, OnBoundaryPlane
from .geom import DEFAULT_TOL, MAX_DIM, Tolerance, ball_points

# coplanar hull simplices closer than this (in normal angle) form one facet
MERGE_ANGLE = 1e-8


@dataclass(frozen=True)
class Hyperplane:
    """The plane {x : normal . x = offset}."""

    normal: np.ndarray
    offset: float

    def side(self, x) -> float:
        return float(self.normal @ np.asarray(x, dtype=float) - self.offset)


@dataclass(frozen=True, eq=False)
class Polytope:
    """Full-dimensional convex polytope.

    ``vertices`` are the extreme points in lexicographic order. Facet ``k`` is
    ``normals[k] . x <= offsets[k]`` with ``facet_vertices[k]`` the ids on it.
    """

    vertices: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray
    facet_vertices: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    edge_facets: tuple[tuple[int, ...], ...] = field(repr=False)
    # visibility pattern -> horizon vertex cycle; filled by the support-cone code
    horizon_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_facets(self) -> int:
        return self.normals.shape[0]

    @cached_property
    def incidence(self) -> np.ndarray:
        """Boolean vertex-by-facet incidence matrix."""
        inc = np.zeros((self.n_vertices, self.n_facets), dtype=bool)
        for k, ids in enumerate(self.facet_vertices):
            inc[list(ids), k] = True
        return inc

    @cached_property
    def edge_array(self) -> np.ndarray:
        return np.array(self.edges, dtype=int).reshape(-1, 2)

    @cached_property
    def edge_facet_array(self) -> np.ndarray:
        """First two facets of every edge (exactly two when d = 3)."""
        return np.array([fs[:2] for fs in self.edge_facets], dtype=int).reshape(-1, 2)

    def translated(self, t) -> "Polytope":
        return convex_hull(self.vertices + np.asarray(t, dtype=float))

    def transformed(self, M) -> "Polytope":
        return convex_hull(self.vertices @ np.asarray(M, dtype=float).T)

    def same_as(self, other: "Polytope", atol: float = 1e-9) -> bool:
        """Setwise equality of vertex sets (both are lexicographically sorted)."""
        if self.vertices.shape != other.vertices.shape:
            return False
        return bool(np.max(np.abs(self.vertices - other.vertices)) <= atol)

    def to_dict(self) -> dict:
        return {"vertices": self.vertices.tolist()}


def _lexsorted(points: np.ndarray) -> np.ndarray:
    order = np.lexsort(points.T[::-1])
    return points[order]


def _merge_simplices(equations: np.ndarray, tol: float):
    """Group qhull's triangulated facets into distinct planes."""
    normals: list[np.ndarray] = []
    offsets: list[float] = []
    for eq in equations:
        n = eq[:-1] / np.linalg.norm(eq[:-1])
        c = -eq[-1] / np.linalg.norm(eq[:-1])
        for k, (m, b) in enumerate(zip(normals, offsets)):
            if np.linalg.norm(n - m) <= MERGE_ANGLE and abs(c - b) <= tol:
                break
        else:
            normals.append(n)
            offsets.append(c)
    return np.array(normals), np.array(offsets)


def convex_hull(points, d: int | None = None, tol: Tolerance = DEFAULT_TOL) -> Polytope:
    """Hull of ``points`` with merged facets, extreme vertices only, and the edge graph."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if d is None:
        d = pts.shape[1]
    if pts.shape[1] != d or not 2 <= d <= MAX_DIM:
        raise Degenerate(f"points must be {d}-dimensional with 2 <= d <= {MAX_DIM}")
    if pts.shape[0] < d + 1:
        raise Degenerate(f"need at least {d + 1} points, got {pts.shape[0]}")
    scale = float(np.max(np.abs(pts))) or 1.0
    eps = tol.scaled(scale)
    if np.linalg.matrix_rank(pts - pts.mean(axis=0), tol=eps) < d:
        raise Degenerate("points are not full-dimensional")
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise Degenerate(str(exc)) from exc

    normals, offsets = _merge_simplices(hull.equations, eps)
    cand = pts[np.unique(hull.vertices)]
    # a vertex is extreme iff its incident facet normals span R^d
    on = np.abs(cand @ normals.T - offsets) <= eps
    keep = [i for i in range(cand.shape[0])
            if on[i].sum() >= d and np.linalg.matrix_rank(normals[on[i]], tol=1e-9) == d]
    verts = _lexsorted(cand[keep])
    # remove duplicate points
    if verts.shape[0] > 1:
        dup = np.r_[False, np.all(np.abs(np.diff(verts, axis=0)) <= eps, axis=1)]
        verts = verts[~dup]

    inc = np.abs(verts @ normals.T - offsets) <= eps
    facet_vertices = tuple(tuple(int(i) for i in np.nonzero(inc[:, k])[0])
                           for k in range(normals.shape[0]))
    order = sorted(range(len(facet_vertices)), key=lambda k: facet_vertices[k])
    normals, offsets = normals[order], offsets[order]
    facet_vertices = tuple(facet_vertices[k] for k in order)
    inc = inc[:, order]

    edges, edge_facets = [], []
    n = verts.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            common = inc[i] & inc[j]
            if common.sum() < d - 1:
                continue
            if np.linalg.matrix_rank(normals[common], tol=1e-9) == d - 1:
                edges.append((i, j))
                edge_facets.append(tuple(int(k) for k in np.nonzero(common)[0]))
    return Polytope(verts, normals, offsets, facet_vertices, tuple(edges), tuple(edge_facets))


def facet_planes(P: Polytope) -> list[Hyperplane]:
    return [Hyperplane(P.normals[k].copy(), float(P.offsets[k])) for k in range(P.n_facets)]


def facet_slack(z, P: Polytope) -> np.ndarray:
    """Signed values n_F . z - c_F for every facet."""
    return P.normals @ np.asarray(z, dtype=float) - P.offsets


def visible_facets(z, P: Polytope, tol: Tolerance = DEFAULT_TOL) -> frozenset[int]:
    """Facets whose outer side contains ``z``."""
    s = facet_slack(z, P)
    bad = np.nonzero(np.abs(s) <= tol.eps_abs)[0]
    if bad.size:
        raise OnBoundaryPlane(f"z lies on the plane of facet {int(bad[0])}")
    vis = np.nonzero(s > 0)[0]
    if vis.size == 0:
        raise Inside("z is inside the polytope")
    return frozenset(int(k) for k in vis)


def random_polytope(seed: int, d: int, n_points: int, radius_cap: float,
                    tol: Tolerance = DEFAULT_TOL) -> Polytope:
    """Hull of ``n_points`` uniform samples in the ball of radius ``radius_cap``."""
    if n_points < d + 1:
        raise ValueError("need at least d + 1 points")
    rng = np.random.default_rng(seed)
    while True:
        pts = ball_points(rng, n_points, d, radius_cap)
        try:
            return convex_hull(pts, d, tol)
        except Degenerate:
            continue


def cube(half: float = 0.25, d: int = 3, center=None) -> Polytope:
    corners = np.array(np.meshgrid(*[[-half, half]] * d, indexing="ij")).reshape(d, -1).T
    if center is not None:
        corners = corners + np.asarray(center, dtype=float)
    return convex_hull(corners)


def cross_polytope(half: float = 0.3, d: int = 3) -> Polytope:
    eye = np.eye(d) * half
    return convex_hull(np.vstack([eye, -eye]))


def check_polytope(P: Polytope, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    """Invariant violations of ``P`` (empty list when valid)."""
    problems = []
    d = P.dim
    eps = tol.scaled(float(np.max(np.abs(P.vertices))))
    if P.n_vertices < d + 1:
        problems.append("fewer than d+1 vertices")
    if np.any(np.abs(np.linalg.norm(P.normals, axis=1) - 1) > 1e-12):
        problems.append("non-unit facet normal")
    slack = P.vertices @ P.normals.T - P.offsets
    if np.any(slack > eps):
        problems.append("facet plane does not support all vertices")
    for k, ids in enumerate(P.facet_vertices):
        if len(ids) < d:
            problems.append(f"facet {k} has only {len(ids)} vertices")
    for i in range(P.n_vertices):
        on = np.abs(slack[i]) <= eps
        if np.linalg.matrix_rank(P.normals[on], tol=1e-9) < d:
            problems.append(f"vertex {i} is not extreme")
    for (i, j), fs in zip(P.edges, P.edge_facets):
        if not all(i in P.facet_vertices[k] and j in P.facet_vertices[k] for k in fs):
            problems.append(f"edge {(i, j)} inconsistent with facet incidence")
    return problems
