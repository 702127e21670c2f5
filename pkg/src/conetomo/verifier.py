"""Pairwise verification of bodies from light sources on the enclosing sphere.

A ``Distinct`` verdict always carries a light source ``z`` at which the cones (or
projections) of the two bodies fail to be congruent. ``Equal`` means every
sampled light source passed *and* a vertex-level comparison along the stable
edge correspondences agreed; no finite sample can certify more than that.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from .arrangement import (REGION_GUARD, RegionReport, plane_arrays, region_probes,
                          sample_regions, scene_planes, signs_str, sphere_samples)
from .congruence import (CongruenceWitness, ShapeKind, cone_congruent, cone_shape_classify,
                         spherical_congruent)
from .errors import (DegenerateSegment, GeometryError, NoConvergence, SearchBudgetExceeded,
                     UnstableRegion)
from .geom import DEFAULT_TOL, Tolerance, procrustes_batch
from .polytope import Polytope
from .scene import Ball, Scene
from .sightcone import SupportCone, support_cone, support_cones_batch
from .sphproj import (arc_circle, ball_cap, ball_sight_angle, projection_batch,
                      projection_from_cone)

log = logging.getLogger(__name__)

MODES = ("cones", "projections")
# vertices closer than this fraction of r count as coinciding
VERTEX_MATCH = 1e-7


class VerdictKind(enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    kind: VerdictKind
    witness: np.ndarray | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "verdict": self.kind.value,
            "witness": None if self.witness is None else self.witness.tolist(),
            "regions": self.detail.get("regions", []),
            "max_residual": self.detail.get("max_residual", 0.0),
        }
        for key, val in self.detail.items():
            if key not in out:
                out[key] = val
        return out


# ---------------------------------------------------------------------------
# single light source


@dataclass
class _Match:
    witness: CongruenceWitness | None
    ids_p: tuple[int, ...]
    ids_q: tuple[int, ...]
    faces_p: tuple[tuple[int, int], ...]


def _match_at(P: Polytope, Q: Polytope, z: np.ndarray, mode: str, r: float,
              tol: Tolerance) -> _Match:
    cp = support_cone(z, P, tol)
    cq = cp if Q is P else support_cone(z, Q, tol)
    if mode == "cones":
        w = cone_congruent(cp, cq, tol)
    elif mode == "projections":
        w = spherical_congruent(projection_from_cone(cp, P, r, tol),
                                projection_from_cone(cq, Q, r, tol), tol)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return _Match(w, cp.boundary_vertex_ids, cq.boundary_vertex_ids, cp.faces2)


def congruent_at(P: Polytope, Q: Polytope, z, mode: str = "cones", r: float = 1.0,
                 tol: Tolerance = DEFAULT_TOL) -> CongruenceWitness | None:
    """Congruence witness of the two bodies' cones (or projections) seen from ``z``."""
    return _match_at(P, Q, np.asarray(z, dtype=float), mode, r, tol).witness


def _vertex_map(m: _Match) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((m.ids_p[i], m.ids_q[j]) for i, j in enumerate(m.witness.permutation)))


# ---------------------------------------------------------------------------
# edge correspondence and equality


def _correspond_batch(P, Q, probes, mode, r, tol):
    """Fast path of ``_correspond`` for d = 3: reuse the first probe's permutation.

    Returns None whenever anything is irregular; the caller then redoes the
    probes one at a time, so the result never depends on taking this path.
    """
    Z = np.asarray(probes, dtype=float)
    bp = support_cones_batch(Z, P, tol)
    bq = bp if Q is P else support_cones_batch(Z, Q, tol)
    if bp is None or bq is None:
        return None
    ids_p, UP, faces_p = bp
    ids_q, UQ, faces_q = bq
    if len(ids_p) != len(ids_q):
        return None
    m0 = _match_at(P, Q, Z[0], mode, r, tol)
    if m0.witness is None or m0.ids_p != ids_p or m0.ids_q != ids_q:
        return None
    perm = list(m0.witness.permutation)
    src, dst = UP, UQ[:, perm]
    if mode == "projections":
        Fp, Fq = np.asarray(faces_p), np.asarray(faces_q)
        vp, cp, rp = projection_batch(Z, UP, P.vertices[np.asarray(ids_p)[Fp[:, 0]]],
                                      P.vertices[np.asarray(ids_p)[Fp[:, 1]]], r, tol)
        vq, cq, rq = projection_batch(Z, UQ, Q.vertices[np.asarray(ids_q)[Fq[:, 0]]],
                                      Q.vertices[np.asarray(ids_q)[Fq[:, 1]]], r, tol)
        where = {f: n for n, f in enumerate(faces_q)}
        partner = [where[(min(perm[i], perm[j]), max(perm[i], perm[j]))] for i, j in faces_p]
        if np.any(np.abs(rp - rq[:, partner]) > tol.residual_max * r):
            return None
        src = np.concatenate([vp, cp], axis=1) / r
        dst = np.concatenate([vq[:, perm], cq[:, partner]], axis=1) / r
        gp, gq = vp / r, vq[:, perm] / r
    else:
        gp, gq = src, dst
    G1 = gp @ np.swapaxes(gp, 1, 2)
    G2 = gq @ np.swapaxes(gq, 1, 2)
    if np.any(np.abs(G1 - G2) > tol.residual_max):
        return None
    _, res = procrustes_batch(src, dst)
    if np.any(res > tol.residual_max):
        return None
    faces = {(ids_p[i], ids_p[j]) for i, j in faces_p}
    return _vertex_map(m0), faces, None, float(res.max())


def _correspond(P, Q, probes, mode, r, tol):
    """Stable vertex map over ``probes``; returns (map, faces, failing z, max residual)."""
    if P.dim == 3 and len(probes) > 1:
        fast = _correspond_batch(P, Q, probes, mode, r, tol)
        if fast is not None:
            return fast
    stable = None
    faces: set[tuple[int, int]] = set()
    worst = 0.0
    for z in probes:
        m = _match_at(P, Q, z, mode, r, tol)
        if m.witness is None:
            return None, faces, z, worst
        worst = max(worst, m.witness.residual)
        vmap = _vertex_map(m)
        if stable is None:
            stable = vmap
        elif vmap != stable:
            raise UnstableRegion("vertex correspondence changes inside one region")
        faces.update((m.ids_p[i], m.ids_p[j]) for i, j in m.faces_p)
    return stable, faces, None, worst


def edge_correspondence(P: Polytope, Q: Polytope, region: RegionReport, n_probe: int = 20,
                        seed: int = 0, mode: str = "cones", r: float = 1.0,
                        tol: Tolerance = DEFAULT_TOL) -> tuple[tuple[int, int], ...] | None:
    """Vertex pairing (P id, Q id) accepted at ``n_probe`` light sources in ``region``.

    None when congruence fails at some probe; UnstableRegion when it holds but
    the accepted pairing is not the same throughout.
    """
    planes = scene_planes(Scene(r, (P, Q)))
    probes = region_probes(region, planes, r, n_probe, np.random.default_rng(seed))
    vmap, _, bad, _ = _correspond(P, Q, probes, mode, r, tol)
    if bad is not None:
        return None
    region.stable_permutation = vmap
    return vmap


def _edge_light_source(P: Polytope, e: int, r: float, planes, rng) -> np.ndarray:
    """A light source on the sphere that sees edge ``e`` of P on the silhouette."""
    a, b = P.edges[e]
    f1, f2 = P.edge_facets[e][:2]
    w = P.normals[f1] - P.normals[f2]
    w /= np.linalg.norm(w)
    m = 0.5 * (P.vertices[a] + P.vertices[b])
    mw = m @ w
    t = -mw + np.sqrt(mw * mw + r * r - m @ m)
    z = m + t * w
    N, c = plane_arrays(planes)
    for _ in range(100):
        if np.all(np.abs(N @ z - c) > REGION_GUARD * r * 10):
            break
        # nudge off an accidental plane trace, staying near the wedge
        z = z + 1e-4 * r * rng.standard_normal(z.shape[0])
        z *= r / np.linalg.norm(z)
    return z


@dataclass
class _EqualityRun:
    equal: bool
    failing_z: np.ndarray | None
    regions: list[dict]
    matched_edges: list[tuple[tuple[int, int], tuple[int, int]]]
    max_deviation: float
    max_residual: float
    notes: list[str]


def _equality_run(P, Q, regions, planes, mode, r, n_probe, seed, tol) -> _EqualityRun:
    rng = np.random.default_rng([seed, 7])
    run = _EqualityRun(True, None, [], [], 0.0, 0.0, [])
    if P.n_vertices != Q.n_vertices or len(P.edges) != len(Q.edges):
        run.equal = False
        run.notes.append(f"combinatorics differ: {P.n_vertices}/{len(P.edges)} vs "
                         f"{Q.n_vertices}/{len(Q.edges)} vertices/edges")
    q_edges = set(Q.edges)
    seen_p: set[tuple[int, int]] = set()
    seen_q: set[tuple[int, int]] = set()
    done: set[tuple[int, ...]] = set()

    def analyse(region: RegionReport) -> bool:
        done.add(region.sign_vector)
        probes = region_probes(region, planes, r, n_probe, rng)
        vmap, faces, bad, worst = _correspond(P, Q, probes, mode, r, tol)
        if bad is not None:
            run.failing_z = np.asarray(bad)
            run.equal = False
            return False
        run.max_residual = max(run.max_residual, worst)
        region.stable_permutation = vmap
        pair = dict(vmap)
        for a, b in faces:
            pa, pb = pair[a], pair[b]
            qe = (min(pa, pb), max(pa, pb))
            pe = (min(a, b), max(a, b))
            dev = max(np.linalg.norm(P.vertices[a] - Q.vertices[pa]),
                      np.linalg.norm(P.vertices[b] - Q.vertices[pb]))
            run.max_deviation = max(run.max_deviation, float(dev))
            if pe not in seen_p:
                run.matched_edges.append((pe, qe))
            seen_p.add(pe)
            seen_q.add(qe)
            if qe not in q_edges or dev > VERTEX_MATCH * r:
                run.equal = False
        run.regions.append({"signs": signs_str(region.sign_vector),
                            "permutation": [list(p) for p in vmap], "residual": worst})
        return True

    for reg in regions:
        if not analyse(reg):
            return run
    # light sources aimed at edges no sampled region put on the silhouette
    for body, seen in ((P, seen_p), (Q, seen_q)):
        for e, edge in enumerate(body.edges):
            if edge in seen:
                continue
            z = _edge_light_source(body, e, r, planes, rng)
            N, c = plane_arrays(planes)
            s = N @ z - c
            sv = tuple(int(v) for v in np.where(s > 0, 1, -1))
            if sv in done:
                continue
            if not analyse(RegionReport(sv, z, 1, [z])):
                return run
    missing = (len(P.edges) - len(seen_p)) + (len(Q.edges) - len(seen_q))
    if missing:
        run.equal = False
        run.notes.append(f"{missing} edges never appeared on a silhouette")
    return run


def decide_equality(P: Polytope, Q: Polytope, seed: int = 0, mode: str = "cones",
                    r: float = 1.0, n_samples: int = 500, n_probe: int = 20,
                    tol: Tolerance = DEFAULT_TOL) -> tuple[bool, dict]:
    """Whether every P-edge is matched to a Q-edge with coinciding endpoints."""
    scene = Scene(r, (P, Q))
    planes = scene_planes(scene)
    regions = sample_regions(scene, n_samples, seed, planes)
    run = _equality_run(P, Q, regions, planes, mode, r, n_probe, seed, tol)
    report = {
        "matched_edges": [[list(p), list(q)] for p, q in run.matched_edges],
        "max_deviation": run.max_deviation,
        "regions": run.regions,
        "notes": run.notes,
    }
    if run.failing_z is not None:
        report["failing_z"] = run.failing_z.tolist()
    return run.equal, report


def verify_pair(P: Polytope, Q: Polytope, mode: str = "cones", n_samples: int = 500,
                seed: int = 0, r: float = 1.0, tol: Tolerance = DEFAULT_TOL,
                max_samples: int = 5000, n_probe: int = 20) -> Verdict:
    """Equal / Distinct / Inconclusive verdict for two polytopes in one scene."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    scene = Scene(r, (P, Q))
    planes = scene_planes(scene)
    N, c = plane_arrays(planes)
    stages = [n_samples] + ([max_samples] if max_samples > n_samples else [])
    checked: set[tuple[int, ...]] = set()
    max_res = 0.0
    n_checked = 0
    last: _EqualityRun | None = None

    def distinct(z, why):
        return Verdict(VerdictKind.DISTINCT, np.asarray(z, dtype=float),
                       {"max_residual": max_res, "samples_checked": n_checked, "reason": why})

    try:
        for stage, n in enumerate(stages):
            regions = sample_regions(scene, n, seed, planes)
            for reg in regions:
                if reg.sign_vector in checked:
                    continue
                checked.add(reg.sign_vector)
                n_checked += 1
                w = congruent_at(P, Q, reg.representative, mode, r, tol)
                if w is None:
                    return distinct(reg.representative, "region representative")
                max_res = max(max_res, w.residual)
            extra = sphere_samples(max(n // 10, 1), scene.dim, r, seed + 1 + stage)
            for z in extra:
                if np.any(np.abs(N @ z - c) <= REGION_GUARD * r):
                    continue
                n_checked += 1
                w = congruent_at(P, Q, z, mode, r, tol)
                if w is None:
                    return distinct(z, "random light source")
                max_res = max(max_res, w.residual)
            last = _equality_run(P, Q, regions, planes, mode, r, n_probe, seed + stage, tol)
            if last.failing_z is not None:
                return distinct(last.failing_z, "region probe")
            max_res = max(max_res, last.max_residual)
            if last.equal:
                return Verdict(VerdictKind.EQUAL, None, {
                    "regions": last.regions, "max_residual": max_res,
                    "samples_checked": n_checked, "max_deviation": last.max_deviation})
            log.info("stage %d: congruent everywhere sampled but vertices differ", stage)
    except (UnstableRegion, SearchBudgetExceeded, GeometryError) as exc:
        return Verdict(VerdictKind.INCONCLUSIVE, None,
                       {"max_residual": max_res, "samples_checked": n_checked,
                        "reason": f"{type(exc).__name__}: {exc}"})
    detail = {"max_residual": max_res, "samples_checked": n_checked,
              "reason": "no witness found within the sample budget"}
    if last is not None:
        detail["regions"] = last.regions
        detail["notes"] = last.notes
    return Verdict(VerdictKind.INCONCLUSIVE, None, detail)


# ---------------------------------------------------------------------------
# balls


def center_line_poles(K: Ball, L: Ball, r: float) -> tuple[np.ndarray, np.ndarray]:
    """Where the line through both centers meets the sphere.

    Coinciding centers use the diameter through the common center (or e_1 when
    that center is the origin).
    """
    d = K.center - L.center
    if np.linalg.norm(d) <= 1e-12 * r:
        d = K.center.copy()
        if np.linalg.norm(d) <= 1e-12 * r:
            d = np.eye(K.center.shape[0])[0]
    u = d / np.linalg.norm(d)
    p = K.center
    b = p @ u
    disc = np.sqrt(b * b - (p @ p - r * r))
    return p + (-b + disc) * u, p + (-b - disc) * u


def verify_balls(K: Ball, L: Ball, r: float, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Compare the two balls' sight cones from the poles of their center line.

    From a pole both tangent cones share the center line as axis, so their
    projections are nested; different half-angles there rule out congruence.
    Equal half-angles at both poles force equal radii and centers.
    """
    Scene(r, (), (K, L))
    poles = center_line_poles(K, L, r)
    rows = []
    witness = None
    for z in poles:
        _, bk = ball_sight_angle(z, K)
        _, bl = ball_sight_angle(z, L)
        row = {"pole": z.tolist(), "half_angle_K": bk, "half_angle_L": bl}
        try:
            row["cap_K"] = ball_cap(z, K, r).angular_radius
            row["cap_L"] = ball_cap(z, L, r).angular_radius
        except GeometryError:
            pass
        rows.append(row)
        if witness is None and abs(bk - bl) > tol.residual_max:
            witness = z
    detail = {"poles": rows, "max_residual": 0.0}
    if witness is not None:
        return Verdict(VerdictKind.DISTINCT, witness, detail)
    return Verdict(VerdictKind.EQUAL, None, detail)


# ---------------------------------------------------------------------------
# recovering a segment from the angles it subtends on a circle


@dataclass(frozen=True)
class AngleSample:
    z: np.ndarray
    alpha: float


def _subtended(params: np.ndarray, Z: np.ndarray, jac: bool = False, signed: bool = False):
    x, y = params[:2], params[2:]
    a, b = x - Z, y - Z
    ta = np.arctan2(a[:, 1], a[:, 0])
    tb = np.arctan2(b[:, 1], b[:, 0])
    delta = np.mod(tb - ta + np.pi, 2 * np.pi) - np.pi
    alpha = delta if signed else np.abs(delta)
    if not jac:
        return alpha
    sgn = 1.0 if signed else np.where(delta >= 0, 1.0, -1.0)[:, None]
    da = np.column_stack([-a[:, 1], a[:, 0]]) / np.sum(a * a, axis=1, keepdims=True)
    db = np.column_stack([-b[:, 1], b[:, 0]]) / np.sum(b * b, axis=1, keepdims=True)
    return alpha, np.hstack([-sgn * da, sgn * db])


def segment_objective(params, Z, alpha) -> tuple[float, np.ndarray]:
    """Half the summed squared angle misfit and its gradient in (x, y)."""
    model, J = _subtended(np.asarray(params, dtype=float), np.asarray(Z, dtype=float), jac=True)
    res = model - np.asarray(alpha, dtype=float)
    return 0.5 * float(res @ res), J.T @ res


def _levenberg_marquardt(p0, Z, alpha, max_iter=200, step_tol=1e-12, signs=None):
    # with fixed per-sample signs the model is the signed angle, smooth on the open disk
    signed = signs is not None
    if signed:
        alpha = signs * alpha
    p = p0.copy()
    model, J = _subtended(p, Z, jac=True, signed=signed)
    res = model - alpha
    cost = res @ res
    lam = 1e-3
    for _ in range(max_iter):
        A = J.T @ J
        g = J.T @ res
        try:
            step = np.linalg.solve(A + lam * (np.diag(np.diag(A)) + 1e-12 * np.eye(4)), -g)
        except np.linalg.LinAlgError:
            lam *= 10
            continue
        trial = p + step
        m2, J2 = _subtended(trial, Z, jac=True, signed=signed)
        r2 = m2 - alpha
        c2 = r2 @ r2
        if np.isfinite(c2) and c2 < cost:
            p, res, J, cost = trial, r2, J2, c2
            lam = max(lam / 3, 1e-12)
            if np.linalg.norm(step) < step_tol:
                break
        else:
            lam *= 4
            if lam > 1e12:
                break
    return p, float(cost)


def _pool_angles(pool: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """Subtended angles for many candidate (x, y) rows at once: shape (n_pool, n_samples)."""
    a = pool[:, None, 0:2] - Z[None]
    b = pool[:, None, 2:4] - Z[None]
    delta = np.arctan2(b[..., 1], b[..., 0]) - np.arctan2(a[..., 1], a[..., 0])
    return np.abs(np.mod(delta + np.pi, 2 * np.pi) - np.pi)


def _polish_signed(best, Z, alpha, r):
    """Refit with fixed angle signs to escape the kink where a sample angle crosses zero.

    Signs are taken from the current fit, and also with the sign of the smallest
    angle flipped (a neighbouring side assignment of the sample points).
    """
    p = best[0]
    delta = _subtended(p, Z, signed=True)
    base = np.where(delta >= 0, 1.0, -1.0)
    variants = [base]
    flip = base.copy()
    flip[np.argmin(alpha)] *= -1
    variants.append(flip)
    for signs in variants:
        q, _ = _levenberg_marquardt(p, Z, alpha, signs=signs)
        if not np.all(np.isfinite(q)) or np.max(np.abs(q)) > 10 * r:
            continue
        res = _subtended(q, Z) - alpha
        cost = float(res @ res)
        if cost < best[1]:
            best = (q, cost)
    return best


def recover_segment(samples: list[AngleSample], circle=None, n_starts: int = 16,
                    seed: int = 0, n_pool: int = 4096) -> tuple[np.ndarray, np.ndarray, float]:
    """Endpoints {x, y} of a segment from the angles it subtends at circle points.

    ``circle`` is ``(basis, r)`` with ``basis`` a 2 x d orthonormal frame of the
    plane; ``None`` means the samples are already planar. Returns the endpoints
    (lexicographically ordered, in ambient coordinates) and the RMS angle residual.

    The solver starts from the ``n_starts`` lowest-misfit points of ``n_pool``
    uniform candidate pairs in the disk; the global basin is narrow, so purely
    random starts miss it for some segments. A final signed-angle refit removes
    stalls at samples nearly collinear with the segment.
    """
    if len(samples) < 8:
        raise ValueError("need at least 8 angle samples")
    Z = np.array([s.z for s in samples], dtype=float)
    alpha = np.array([s.alpha for s in samples], dtype=float)
    if circle is None:
        basis, r = np.eye(2), float(np.mean(np.linalg.norm(Z, axis=1)))
    else:
        basis, r = np.asarray(circle[0], dtype=float), float(circle[1])
    Z2 = Z @ basis.T
    if np.all(np.abs(alpha) <= 1e-12):
        raise DegenerateSegment("all angles vanish; only a point subtends zero angle everywhere")
    rng = np.random.default_rng(seed)
    # uniform candidates in the disk, screened by misfit; the best n_starts seed the solver
    rad = r * np.sqrt(rng.uniform(size=(n_pool, 2)))
    th = rng.uniform(0, 2 * np.pi, size=(n_pool, 2))
    pool = np.column_stack([rad[:, 0] * np.cos(th[:, 0]), rad[:, 0] * np.sin(th[:, 0]),
                            rad[:, 1] * np.cos(th[:, 1]), rad[:, 1] * np.sin(th[:, 1])])
    misfit = np.sum((_pool_angles(pool, Z2) - alpha) ** 2, axis=1)
    best = None
    for p0 in pool[np.argsort(misfit)[:n_starts]]:
        p, cost = _levenberg_marquardt(p0, Z2, alpha)
        if not np.all(np.isfinite(p)) or np.max(np.abs(p)) > 10 * r:
            continue
        if best is None or cost < best[1]:
            best = (p, cost)
    if best is None:
        raise NoConvergence("every multistart diverged")
    best = _polish_signed(best, Z2, alpha, r)
    p, cost = best
    x2, y2 = p[:2], p[2:]
    if np.linalg.norm(x2 - y2) <= 1e-6 * r:
        raise DegenerateSegment("best fit collapses the segment to a point")
    x, y = x2 @ basis, y2 @ basis
    if tuple(y) < tuple(x):
        x, y = y, x
    return x, y, float(np.sqrt(cost / len(samples)))


def simulate_angles(x, y, Z) -> np.ndarray:
    """Angles subtended by segment xy at each row of ``Z`` (cosine formula)."""
    x, y, Z = (np.asarray(v, dtype=float) for v in (x, y, Z))
    a, b = Z - x, Z - y
    c = np.sum(a * b, axis=1) / (np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1))
    return np.arccos(np.clip(c, -1.0, 1.0))


# ---------------------------------------------------------------------------
# fixed counterexample: congruent circles, non-congruent cones


def _remark_circles(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Samples of S_1 (z = -1) and S_2 (z = x - 1) on the unit sphere centred (0, 0, -1)."""
    t = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    s1 = np.column_stack([np.cos(t), np.sin(t), -np.ones_like(t)])
    ea = np.array([1.0, 0.0, 1.0]) / np.sqrt(2.0)
    eb = np.array([0.0, 1.0, 0.0])
    s2 = np.array([0.0, 0.0, -1.0]) + np.cos(t)[:, None] * ea + np.sin(t)[:, None] * eb
    return s1, s2


def sampled_cone(apex, boundary_points) -> SupportCone:
    """Polyhedral cone through cyclically ordered boundary samples of a smooth cone."""
    apex = np.asarray(apex, dtype=float)
    U = np.asarray(boundary_points, dtype=float) - apex
    U /= np.linalg.norm(U, axis=1, keepdims=True)
    k = U.shape[0]
    faces = tuple(sorted((min(i, (i + 1) % k), max(i, (i + 1) % k)) for i in range(k)))
    return SupportCone(apex, U, tuple(range(k)), faces)


def counterexample_report(n: int = 24) -> dict:
    """Congruent circles S_1, S_2 whose cones from the origin are not congruent."""
    s1, s2 = _remark_circles(n)
    shift = np.array([0.0, 0.0, 1.0])  # moves the sphere centre to the origin
    m = n // 3
    _, rad1 = arc_circle(s1[0] + shift, s1[m] + shift, s1[2 * m] + shift, 1.0)
    _, rad2 = arc_circle(s2[0] + shift, s2[m] + shift, s2[2 * m] + shift, 1.0)
    apex = np.zeros(3)
    shape1 = cone_shape_classify(s1, apex)
    shape2 = cone_shape_classify(s2, apex)
    w = cone_congruent(sampled_cone(apex, s1), sampled_cone(apex, s2))
    return {
        "sphere": {"center": [0.0, 0.0, -1.0], "radius": 1.0},
        "radius_S1": rad1,
        "radius_S2": rad2,
        "circles_congruent": bool(abs(rad1 - rad2) <= 1e-9),
        "cone_C1": {"kind": shape1.kind.value, "axis_ratio": shape1.axis_ratio},
        "cone_C2": {"kind": shape2.kind.value, "axis_ratio": shape2.axis_ratio},
        "cones_congruent": w is not None,
        "c2_is_elliptical": shape2.kind is ShapeKind.ELLIPTICAL,
    }
