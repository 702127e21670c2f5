"""Support cones of polytopes seen from an exterior light source."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import Inside, RegionBoundary
from .geom import DEFAULT_TOL, Tolerance
from .polytope import Polytope, convex_hull, facet_slack


@dataclass(frozen=True, eq=False)
class SupportCone:
    """Polyhedral cone with apex ``apex`` spanned by unit ``directions``.

    ``boundary_vertex_ids[i]`` is the polytope vertex seen along ``directions[i]``;
    ``faces2`` holds index pairs ``(i, j)``, ``i < j``, spanning 2-faces.
    """

    apex: np.ndarray
    directions: np.ndarray
    boundary_vertex_ids: tuple[int, ...]
    faces2: tuple[tuple[int, int], ...]

    @property
    def k(self) -> int:
        return self.directions.shape[0]

    def to_dict(self) -> dict:
        return {
            "apex": self.apex.tolist(),
            "directions": self.directions.tolist(),
            "boundary_vertex_ids": list(self.boundary_vertex_ids),
            "faces2": [list(f) for f in self.faces2],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SupportCone":
        dirs = np.asarray(data["directions"], dtype=float)
        dirs = dirs / np.linalg.norm(dirs, axis=1, keepdims=True)
        ids = data.get("boundary_vertex_ids") or list(range(dirs.shape[0]))
        return cls(np.asarray(data["apex"], dtype=float), dirs, tuple(ids),
                   tuple(sorted(tuple(sorted(f)) for f in data["faces2"])))


def _triple(A: np.ndarray, B: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Row-wise det[a, b, c] in E^3 (np.cross is slow on tiny arrays)."""
    return (A[:, 0] * (B[:, 1] * C[:, 2] - B[:, 2] * C[:, 1])
            - A[:, 1] * (B[:, 0] * C[:, 2] - B[:, 2] * C[:, 0])
            + A[:, 2] * (B[:, 0] * C[:, 1] - B[:, 1] * C[:, 0]))


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def _classify(z: np.ndarray, P: Polytope, tol: Tolerance) -> np.ndarray:
    s = facet_slack(z, P)
    if np.any(np.abs(s) <= tol.eps_abs):
        raise RegionBoundary("light source lies on a facet plane")
    vis = s > 0
    if not vis.any():
        raise Inside("light source is inside the polytope")
    return vis


def silhouette_candidates(z, P: Polytope, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Vertex ids incident to both a visible and an invisible facet."""
    z = np.asarray(z, dtype=float)
    vis = _classify(z, P, tol)
    inc = P.incidence
    return np.nonzero(inc[:, vis].any(axis=1) & inc[:, ~vis].any(axis=1))[0]


def _horizon_cycle(P: Polytope, vis: np.ndarray) -> tuple[int, ...]:
    """Silhouette edges of a 3-polytope walked as one cycle from the smallest id."""
    ef = P.edge_facet_array
    horizon = P.edge_array[vis[ef[:, 0]] != vis[ef[:, 1]]].tolist()
    nbrs: dict[int, list[int]] = {}
    for i, j in horizon:
        nbrs.setdefault(i, []).append(j)
        nbrs.setdefault(j, []).append(i)
    start = min(nbrs)
    cycle = [start]
    prev, cur = -1, start
    for _ in range(len(horizon) - 1):
        a, b = nbrs[cur]
        nxt = b if a == prev else a
        cycle.append(nxt)
        prev, cur = cur, nxt
    return tuple(cycle)


def _cone_3d(z: np.ndarray, P: Polytope, vis: np.ndarray, tol: Tolerance) -> SupportCone:
    key = vis.tobytes()
    cycle = P.horizon_cache.get(key)
    if cycle is None:
        cycle = _horizon_cycle(P, vis)
        if len(P.horizon_cache) < 4096:
            P.horizon_cache[key] = cycle
    cycle = list(cycle)
    U = P.vertices[cycle] - z
    U /= np.sqrt(np.einsum("ij,ij->i", U, U))[:, None]
    # drop flat silhouette vertices: direction coplanar with both neighbours
    while len(cycle) > 3:
        k = len(cycle)
        idx = np.arange(k)
        dets = _triple(U[idx - 1], U, U[(idx + 1) % k])
        flat = np.nonzero(np.abs(dets) <= tol.eps_abs)[0]
        if flat.size == 0:
            break
        drop = int(flat[0])
        cycle.pop(drop)
        U = np.delete(U, drop, axis=0)

    # counterclockwise as seen from z looking towards the body (axis -z)
    if _triple(U[:1], U[1:2], z[None])[0] < 0:
        cycle = [cycle[0]] + cycle[:0:-1]
        U = np.vstack([U[:1], U[:0:-1]])
    s = cycle.index(min(cycle))
    if s:
        cycle = cycle[s:] + cycle[:s]
        U = np.roll(U, -s, axis=0)
    k = len(cycle)
    faces2 = tuple((i, i + 1) for i in range(k - 1)) + ((0, k - 1),)
    return SupportCone(z.copy(), U, tuple(cycle), tuple(sorted(faces2)))


def support_cones_batch(Z, P: Polytope, tol: Tolerance = DEFAULT_TOL):
    """Support cones of a 3-polytope from many light sources sharing one structure.

    Returns ``(boundary_vertex_ids, directions, faces2)`` with ``directions`` of
    shape (m, k, 3), or None when the sources disagree on visibility, flat
    vertices or orientation (callers then fall back to ``support_cone``).
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=float))
    if P.dim != 3:
        return None
    S = Z @ P.normals.T - P.offsets
    if np.any(np.abs(S) <= tol.eps_abs):
        return None
    vis = S > 0
    if not vis[0].any() or np.any(vis != vis[0]):
        return None
    key = vis[0].tobytes()
    cycle = P.horizon_cache.get(key)
    if cycle is None:
        cycle = _horizon_cycle(P, vis[0])
        if len(P.horizon_cache) < 4096:
            P.horizon_cache[key] = cycle
    cycle = list(cycle)
    U = P.vertices[cycle][None, :, :] - Z[:, None, :]
    U /= np.sqrt(np.einsum("mij,mij->mi", U, U))[:, :, None]
    if len(cycle) > 3:
        A, B, C = np.roll(U, 1, axis=1), U, np.roll(U, -1, axis=1)
        dets = np.einsum("mij,mij->mi", A, np.cross(B, C))
        if np.any(np.abs(dets) <= tol.eps_abs):
            return None
    orient = np.einsum("mj,mj->m", U[:, 0], np.cross(U[:, 1], Z))
    if np.any(orient < 0) and np.any(orient >= 0):
        return None
    if orient[0] < 0:
        order = [0] + list(range(len(cycle) - 1, 0, -1))
        cycle = [cycle[i] for i in order]
        U = U[:, order]
    s = cycle.index(min(cycle))
    if s:
        cycle = cycle[s:] + cycle[:s]
        U = np.roll(U, -s, axis=1)
    k = len(cycle)
    faces2 = tuple(sorted(tuple((i, i + 1) for i in range(k - 1)) + ((0, k - 1),)))
    return tuple(cycle), U, faces2


def _cone_hull(z: np.ndarray, P: Polytope, ids: np.ndarray, tol: Tolerance) -> SupportCone:
    d = P.dim
    U = P.vertices[ids] - z
    U /= np.linalg.norm(U, axis=1, keepdims=True)
    axis = -z / np.linalg.norm(z)
    if d == 2:
        ang = np.arctan2(U @ np.array([-axis[1], axis[0]]), U @ axis)
        keep = [int(np.argmin(ang)), int(np.argmax(ang))]
        keep.sort(key=lambda i: ids[i])
        return SupportCone(z.copy(), U[keep], tuple(int(ids[i]) for i in keep), ((0, 1),))
    # central cross-section {x : x . axis = 1}; every vertex direction has u . axis > 0
    basis = np.linalg.svd(np.eye(d) - np.outer(axis, axis))[0][:, : d - 1]
    section = (U / (U @ axis)[:, None]) @ basis
    H = convex_hull(section, d - 1, tol)
    # map lexsorted hull vertices back onto candidate rows
    rows = [int(np.argmin(np.linalg.norm(section - h, axis=1))) for h in H.vertices]
    order = sorted(range(len(rows)), key=lambda m: ids[rows[m]])
    pos = {m: n for n, m in enumerate(order)}
    faces2 = tuple(sorted(_pair(pos[a], pos[b]) for a, b in H.edges))
    sel = [rows[m] for m in order]
    return SupportCone(z.copy(), U[sel], tuple(int(ids[i]) for i in sel), faces2)


def support_cone(z, P: Polytope, tol: Tolerance = DEFAULT_TOL, method: str = "auto") -> SupportCone:
    """The cone C(z, P) with apex ``z`` through the shadow-boundary vertices.

    ``method="auto"`` walks the horizon cycle for d = 3 and intersects the cone
    with a hyperplane otherwise; ``"hull"`` forces the cross-section route.
    """
    z = np.asarray(z, dtype=float)
    vis = _classify(z, P, tol)
    if method == "auto" and P.dim == 3:
        return _cone_3d(z, P, vis, tol)
    inc = P.incidence
    ids = np.nonzero(inc[:, vis].any(axis=1) & inc[:, ~vis].any(axis=1))[0]
    cone = _cone_hull(z, P, ids, tol)
    # d=3 keeps the cyclic ordering convention whichever route built the cone
    return _reorder_cycle(cone, z) if P.dim == 3 else cone


def _reorder_cycle(cone: SupportCone, z: np.ndarray) -> SupportCone:
    nbrs: dict[int, list[int]] = {}
    for i, j in cone.faces2:
        nbrs.setdefault(i, []).append(j)
        nbrs.setdefault(j, []).append(i)
    ids = cone.boundary_vertex_ids
    start = int(np.argmin(ids))
    cyc, prev, cur = [start], None, start
    while len(cyc) < cone.k:
        a, b = nbrs[cur]
        nxt = b if a == prev else a
        cyc.append(nxt)
        prev, cur = cur, nxt
    U = cone.directions[cyc]
    if _triple(U[:1], U[1:2], z[None])[0] < 0:
        cyc = [cyc[0]] + cyc[:0:-1]
        U = cone.directions[cyc]
    k = len(cyc)
    faces2 = tuple(sorted(_pair(i, (i + 1) % k) for i in range(k)))
    return SupportCone(cone.apex, U, tuple(ids[c] for c in cyc), faces2)


def shadow_boundary(z, P: Polytope, tol: Tolerance = DEFAULT_TOL) -> frozenset[int]:
    return frozenset(support_cone(z, P, tol).boundary_vertex_ids)


def extreme_vertex_ids_lp(z, P: Polytope, tol: Tolerance = DEFAULT_TOL) -> frozenset[int]:
    """Vertices whose direction from ``z`` is an extreme ray, by one LP per vertex.

    Independent of facet visibility: u_i is extreme iff u_i = sum_j lam_j u_j,
    lam >= 0 (j != i) is infeasible.
    """
    z = np.asarray(z, dtype=float)
    _classify(z, P, tol)
    U = P.vertices - z
    U /= np.linalg.norm(U, axis=1, keepdims=True)
    out = []
    n = U.shape[0]
    for i in range(n):
        others = np.delete(U, i, axis=0)
        res = linprog(np.zeros(n - 1), A_eq=others.T, b_eq=U[i],
                      bounds=[(0, None)] * (n - 1), method="highs")
        if res.status == 2:
            out.append(i)
    return frozenset(out)


def in_cone(u, cone: SupportCone, atol: float = 1e-9) -> bool:
    """Conical-hull membership of direction ``u`` by an LP."""
    D = cone.directions
    res = linprog(np.zeros(D.shape[0]), A_eq=D.T, b_eq=np.asarray(u, dtype=float),
                  bounds=[(0, None)] * D.shape[0], method="highs",
                  options={"primal_feasibility_tolerance": atol})
    return res.status == 0
