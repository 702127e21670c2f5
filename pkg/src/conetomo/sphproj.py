"""Spherical projections: boundary vertices and circle arcs on the enclosing sphere."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Collinear, DegenerateVertex, GeometryError, InteriorPoint, NotACap
from .geom import DEFAULT_TOL, Tolerance
from .polytope import Polytope
from .scene import Ball
from .sightcone import SupportCone, support_cone

_COS_CLAMP = 1.0 - 1e-14


@dataclass(frozen=True)
class Arc:
    i: int
    j: int
    center: np.ndarray
    radius: float


@dataclass(frozen=True, eq=False)
class SphericalPolytope:
    r: float
    vertices: np.ndarray
    arcs: tuple[Arc, ...]
    source_apex: np.ndarray | None = None

    @property
    def k(self) -> int:
        return self.vertices.shape[0]

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "vertices": self.vertices.tolist(),
            "arcs": [{"i": a.i, "j": a.j, "center": a.center.tolist(), "radius": a.radius}
                     for a in self.arcs],
            "source_apex": None if self.source_apex is None else self.source_apex.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SphericalPolytope":
        arcs = tuple(Arc(int(a["i"]), int(a["j"]), np.asarray(a["center"], dtype=float),
                         float(a["radius"])) for a in data["arcs"])
        apex = data.get("source_apex")
        return cls(float(data["r"]), np.asarray(data["vertices"], dtype=float), arcs,
                   None if apex is None else np.asarray(apex, dtype=float))

    def arc_points(self, arc: Arc, n: int = 64) -> np.ndarray:
        """``n + 1`` points along ``arc`` from vertex ``i`` to vertex ``j``.

        The arc runs the short way round its circle.
        """
        c = arc.center
        a = self.vertices[arc.i] - c
        b = self.vertices[arc.j] - c
        e1 = a / np.linalg.norm(a)
        w = b - (b @ e1) * e1
        if np.linalg.norm(w) < 1e-15:
            raise GeometryError("arc endpoints are antipodal on their circle")
        e2 = w / np.linalg.norm(w)
        theta = np.arctan2(b @ e2, b @ e1)
        t = np.linspace(0.0, theta, n + 1)[:, None]
        return c + arc.radius * (np.cos(t) * e1 + np.sin(t) * e2)


@dataclass(frozen=True)
class SphericalCap:
    center_dir: np.ndarray
    angular_radius: float

    def __post_init__(self):
        if not 0 < self.angular_radius < np.pi:
            raise GeometryError("angular radius must lie in (0, pi)")

    def contains(self, p, r: float = 1.0) -> bool:
        p = np.asarray(p, dtype=float) / r
        return bool(np.arccos(np.clip(p @ self.center_dir, -1, 1)) <= self.angular_radius)


def arc_circle(z, x, y, r: float, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, float]:
    """Circle cut from the sphere of radius ``r`` by the 2-flat through ``z``, ``x``, ``y``."""
    z, x, y = (np.asarray(v, dtype=float) for v in (z, x, y))
    Q, R = np.linalg.qr(np.column_stack([x - z, y - z]))
    scale = max(np.linalg.norm(x - z), np.linalg.norm(y - z), 1.0)
    if abs(R[1, 1]) <= tol.scaled(scale) or abs(R[0, 0]) <= tol.eps_abs:
        raise Collinear("points are collinear")
    foot = z - Q @ (Q.T @ z)
    rad2 = r * r - foot @ foot
    if rad2 <= 0:
        raise GeometryError("plane misses the sphere")
    return foot, float(np.sqrt(rad2))


def angle(z, x, y, tol: Tolerance = DEFAULT_TOL) -> float:
    """Angle xzy in [0, pi) from the cosine formula."""
    z, x, y = (np.asarray(v, dtype=float) for v in (z, x, y))
    a, b = z - x, z - y
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na <= tol.eps_abs or nb <= tol.eps_abs:
        raise DegenerateVertex("z coincides with a segment endpoint")
    c = (a @ b) / (na * nb)
    if c < -_COS_CLAMP:
        seg = y - x
        t = np.clip((z - x) @ seg / (seg @ seg), 0.0, 1.0)
        if np.linalg.norm(x + t * seg - z) <= tol.scaled(np.linalg.norm(seg)):
            raise InteriorPoint("z lies inside the segment")
    if abs(c) > _COS_CLAMP:
        c = np.sign(c)
    return float(np.arccos(c))


def _arc_circles(z: np.ndarray, X: np.ndarray, Y: np.ndarray, r: float,
                 tol: Tolerance) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise ``arc_circle`` for many (x, y) pairs sharing the point ``z``."""
    A = X - z
    A /= np.sqrt(np.einsum("ij,ij->i", A, A))[:, None]
    B = Y - z
    B -= np.einsum("ij,ij->i", B, A)[:, None] * A
    nb = np.sqrt(np.einsum("ij,ij->i", B, B))
    if np.any(nb <= tol.eps_abs):
        raise Collinear("light source is collinear with a silhouette edge")
    B /= nb[:, None]
    feet = z - (A @ z)[:, None] * A - (B @ z)[:, None] * B
    return feet, np.sqrt(r * r - np.einsum("ij,ij->i", feet, feet))


def projection_batch(Z: np.ndarray, U: np.ndarray, X: np.ndarray, Y: np.ndarray, r: float,
                     tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vertices, arc centers and arc radii for stacked cones.

    ``Z`` is (m, d), ``U`` the (m, k, d) unit directions and ``X``, ``Y`` the
    (f, d) arc endpoints on the polytope.
    """
    Zb = Z[:, None, :]
    verts = Zb - 2.0 * np.einsum("mkj,mj->mk", U, Z)[:, :, None] * U
    verts *= r / np.sqrt(np.einsum("mkj,mkj->mk", verts, verts))[:, :, None]
    if np.min(np.linalg.norm(verts - Zb, axis=2)) <= tol.scaled(r):
        raise GeometryError("projection vertex collapses onto the light source")
    A = X[None] - Zb
    A /= np.sqrt(np.einsum("mfj,mfj->mf", A, A))[:, :, None]
    B = Y[None] - Zb
    B -= np.einsum("mfj,mfj->mf", B, A)[:, :, None] * A
    nb = np.sqrt(np.einsum("mfj,mfj->mf", B, B))
    if np.any(nb <= tol.eps_abs):
        raise Collinear("light source is collinear with a silhouette edge")
    B /= nb[:, :, None]
    feet = (Zb - np.einsum("mfj,mj->mf", A, Z)[:, :, None] * A
            - np.einsum("mfj,mj->mf", B, Z)[:, :, None] * B)
    return verts, feet, np.sqrt(r * r - np.einsum("mfj,mfj->mf", feet, feet))


def projection_from_cone(cone: SupportCone, P: Polytope, r: float,
                         tol: Tolerance = DEFAULT_TOL) -> SphericalPolytope:
    z = cone.apex
    U = cone.directions
    # second hit of each unit ray: t = -2 z.u
    verts = z - 2.0 * (U @ z)[:, None] * U
    verts *= r / np.sqrt(np.einsum("ij,ij->i", verts, verts))[:, None]
    if np.min(np.linalg.norm(verts - z, axis=1)) <= tol.scaled(r):
        raise GeometryError("projection vertex collapses onto the light source")
    ids = np.asarray(cone.boundary_vertex_ids)
    F = np.asarray(cone.faces2)
    centers, radii = _arc_circles(z, P.vertices[ids[F[:, 0]]], P.vertices[ids[F[:, 1]]], r, tol)
    arcs = tuple(Arc(int(i), int(j), centers[m], float(radii[m]))
                 for m, (i, j) in enumerate(cone.faces2))
    return SphericalPolytope(r, verts, arcs, z.copy())


def spherical_projection(z, P: Polytope, r: float, tol: Tolerance = DEFAULT_TOL) -> SphericalPolytope:
    """P_z as vertices on the sphere plus the arcs joining adjacent ones."""
    z = np.asarray(z, dtype=float)
    if abs(np.linalg.norm(z) - r) > 10 * tol.scaled(r):
        raise GeometryError("light source is not on the sphere")
    return projection_from_cone(support_cone(z, P, tol), P, r, tol)


def ball_sight_angle(z, B: Ball) -> tuple[np.ndarray, float]:
    """Axis and half-angle of the circular cone from ``z`` tangent to ``B``."""
    z = np.asarray(z, dtype=float)
    w = B.center - z
    dist = np.linalg.norm(w)
    if dist <= B.radius:
        raise InteriorPoint("light source inside the ball")
    return w / dist, float(np.arcsin(B.radius / dist))


def ball_cap(z, B: Ball, r: float, tol: Tolerance = DEFAULT_TOL) -> SphericalCap:
    """The projection of ``B`` from ``z`` as a cap on the sphere.

    This is a cap only when the ball center lies on the diameter through ``z``;
    then the central angular radius is twice the tangent half-angle.
    """
    z = np.asarray(z, dtype=float)
    axis, beta = ball_sight_angle(z, B)
    zn = z / np.linalg.norm(z)
    off = axis - (axis @ -zn) * -zn
    if np.linalg.norm(off) > 1e3 * tol.eps_abs:
        raise NotACap("ball center is off the diameter through z; projection is not a cap")
    return SphericalCap(-zn, 2.0 * beta)


def segment_hits_ball(p, z, B: Ball) -> bool:
    """Whether segment pz meets ``B`` (distance from the center to the segment)."""
    p, z = np.asarray(p, dtype=float), np.asarray(z, dtype=float)
    seg = p - z
    t = np.clip((B.center - z) @ seg / (seg @ seg), 0.0, 1.0)
    return bool(np.linalg.norm(z + t * seg - B.center) <= B.radius)
