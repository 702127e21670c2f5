import numpy as np
import pytest
from hypothesis import given, strategies as st

from conetomo.errors import Collinear, DegenerateVertex, GeometryError, InteriorPoint, NotACap
from conetomo.geom import random_rotation, ray_second_intersection, sphere_points
from conetomo.polytope import random_polytope
from conetomo.scene import Ball
from conetomo.sightcone import support_cone
from conetomo.sphproj import (SphericalCap, SphericalPolytope, angle, arc_circle, ball_cap,
                              ball_sight_angle, projection_batch, segment_hits_ball,
                              spherical_projection)

from oracles import cap_radius_by_bisection, cube_pole_vertices, segment_meets_ball


def _light_sources(P, n, seed):
    Z = sphere_points(np.random.default_rng(seed), n, P.dim)
    return Z[np.all(np.abs(Z @ P.normals.T - P.offsets) > 1e-6, axis=1)]


def test_cube_from_pole(cube3):
    S = spherical_projection([0, 0, 1.0], cube3, 1.0)
    assert S.k == 4 and len(S.arcs) == 4
    expected = cube_pole_vertices()
    got = S.vertices[np.lexsort(S.vertices.T[::-1])]
    assert np.max(np.abs(got - expected)) <= 1e-12
    assert np.max(np.abs(np.linalg.norm(S.vertices, axis=1) - 1)) <= 1e-12
    # the oracle values solve the sphere equation exactly: 36+36+49 = 121
    assert np.allclose(np.sum(expected**2, axis=1), 1.0, atol=1e-15)


def test_vertices_on_sphere_and_match_cone():
    for seed in range(20):
        P = random_polytope(seed, 3, 12, 0.8)
        for z in _light_sources(P, 4, seed):
            S = spherical_projection(z, P, 1.0)
            cone = support_cone(z, P)
            assert np.max(np.abs(np.linalg.norm(S.vertices, axis=1) - 1)) <= 1e-12
            hits = np.array([ray_second_intersection(z, u, 1.0) for u in cone.directions])
            assert np.allclose(S.vertices, hits, atol=1e-12)
            for a in S.arcs:
                for v in (S.vertices[a.i], S.vertices[a.j]):
                    assert abs(np.linalg.norm(v - a.center) - a.radius) <= 1e-10
                assert 0 < a.radius <= 1.0 + 1e-12


def test_rotation_equivariance():
    rng = np.random.default_rng(4)
    for seed in range(10):
        P = random_polytope(seed, 3, 12, 0.8)
        R = random_rotation(rng, 3)
        z = _light_sources(P, 1, seed)[0]
        S = spherical_projection(z, P, 1.0)
        T = spherical_projection(R @ z, P.transformed(R), 1.0)
        a = S.vertices @ R.T
        assert S.k == T.k
        for v in a:
            assert np.min(np.linalg.norm(T.vertices - v, axis=1)) <= 1e-12
        assert sorted(x.radius for x in S.arcs) == pytest.approx(sorted(x.radius for x in T.arcs))


def test_scaled_sphere():
    P = random_polytope(1, 3, 10, 1.6)
    z = _light_sources(P, 1, 1)[0] * 2.0
    S = spherical_projection(z, P, 2.0)
    assert np.allclose(np.linalg.norm(S.vertices, axis=1), 2.0)


def test_light_source_off_sphere(cube3):
    with pytest.raises(GeometryError):
        spherical_projection([0, 0, 0.9], cube3, 1.0)


def test_angle_arc_link():
    # inscribed angle: the chord between the images of x and y is 2 rho sin(angle xzy)
    for seed in range(10):
        P = random_polytope(seed, 3, 12, 0.8)
        z = _light_sources(P, 1, seed)[0]
        S = spherical_projection(z, P, 1.0)
        cone = support_cone(z, P)
        for a in S.arcs:
            x = P.vertices[cone.boundary_vertex_ids[a.i]]
            y = P.vertices[cone.boundary_vertex_ids[a.j]]
            chord = np.linalg.norm(S.vertices[a.i] - S.vertices[a.j])
            assert chord == pytest.approx(2 * a.radius * np.sin(angle(z, x, y)), abs=1e-12)


def test_projection_batch_matches():
    P = random_polytope(6, 3, 12, 0.8)
    z = _light_sources(P, 1, 2)[0]
    cone = support_cone(z, P)
    S = spherical_projection(z, P, 1.0)
    ids = np.asarray(cone.boundary_vertex_ids)
    F = np.asarray(cone.faces2)
    V, C, rad = projection_batch(z[None], cone.directions[None], P.vertices[ids[F[:, 0]]],
                                 P.vertices[ids[F[:, 1]]], 1.0)
    assert np.allclose(V[0], S.vertices)
    assert np.allclose(C[0], [a.center for a in S.arcs])
    assert np.allclose(rad[0], [a.radius for a in S.arcs])


def test_round_trip_and_arc_points():
    P = random_polytope(2, 3, 10, 0.8)
    z = _light_sources(P, 1, 0)[0]
    S = spherical_projection(z, P, 1.0)
    back = SphericalPolytope.from_dict(S.to_dict())
    assert np.allclose(back.vertices, S.vertices) and len(back.arcs) == len(S.arcs)
    for a in S.arcs:
        pts = S.arc_points(a, 64)
        assert pts.shape == (65, 3)
        assert np.allclose(pts[0], S.vertices[a.i]) and np.allclose(pts[-1], S.vertices[a.j])
        assert np.allclose(np.linalg.norm(pts, axis=1), 1.0)
        assert np.allclose(np.linalg.norm(pts - a.center, axis=1), a.radius)
        # 64 chords keep the sagitta below 1e-3 r
        theta = 2 * np.arcsin(np.linalg.norm(pts[1] - pts[0]) / (2 * a.radius))
        assert a.radius * (1 - np.cos(theta / 2)) < 1e-3


# circles

def test_arc_circle_great_circle():
    c, rad = arc_circle([0, 0, 1.0], [0.3, 0, 0], [0.2, 0, -0.4], 1.0)
    assert np.allclose(c, 0) and rad == pytest.approx(1.0)


def test_arc_circle_plane_half():
    z = np.array([np.sqrt(0.75), 0, 0.5])
    c, rad = arc_circle(z, [0.1, 0.2, 0.5], [-0.3, 0.1, 0.5], 1.0)
    assert np.allclose(c, [0, 0, 0.5]) and rad == pytest.approx(np.sqrt(3) / 2)


def test_arc_circle_remark_plane():
    # sphere centred (0,0,-1), plane w = x - 1; shift by +e3 to centre it at the origin
    shift = np.array([0, 0, 1.0])
    pts = [np.array([x, y, x - 1]) + shift for x, y in [(0, 1), (np.sqrt(0.5), 0), (0, -1)]]
    assert all(abs(np.linalg.norm(p) - 1) < 1e-12 for p in pts)
    c, rad = arc_circle(*pts, 1.0)
    assert abs(rad - 1.0) <= 1e-12 and np.allclose(c, 0)


def test_arc_circle_collinear():
    with pytest.raises(Collinear):
        arc_circle([0, 0, 1.0], [0, 0, 0.5], [0, 0, 0.0], 1.0)


# angles

def test_angle_collinear_outside_is_zero():
    assert angle([1.0, 0], [0.2, 0], [-0.3, 0]) == 0.0


def test_angle_sixty_degrees():
    r = 1.0
    a = r / np.sqrt(3)
    assert angle([0, r], [a, 0], [-a, 0]) == pytest.approx(np.pi / 3, abs=1e-14)
    cos = (r * r - a * a) / (r * r + a * a)
    assert np.cos(angle([0, r], [a, 0], [-a, 0])) == pytest.approx(cos)


def test_angle_errors():
    with pytest.raises(DegenerateVertex):
        angle([0.2, 0], [0.2, 0], [-0.3, 0])
    with pytest.raises(InteriorPoint):
        angle([0.0, 0], [0.2, 0], [-0.3, 0])


def test_angle_symmetry_randomised():
    rng = np.random.default_rng(0)
    Z, X, Y = (rng.standard_normal((10_000, 3)) for _ in range(3))
    for z, x, y in zip(Z, X, Y):
        a = angle(z, x, y)
        assert a == angle(z, y, x)
        assert 0 <= a < np.pi


@given(st.floats(0.01, 3.0), st.floats(0.0, 2 * np.pi))
def test_angle_in_range(t, phi):
    z = np.array([np.cos(phi), np.sin(phi)]) * 2
    assert 0 <= angle(z, [t * 0.1, 0], [-0.2, t * 0.05]) < np.pi


# balls

def test_ball_cap_example():
    cap = ball_cap([0, 0, 1.0], Ball(np.zeros(3), 0.5), 1.0)
    assert np.allclose(cap.center_dir, [0, 0, -1])
    assert cap.angular_radius == pytest.approx(np.pi / 3, abs=1e-12)
    oracle = cap_radius_by_bisection(np.array([0, 0, 1.0]), np.zeros(3), 0.5)
    assert abs(oracle - cap.angular_radius) <= 1e-9


def test_ball_cap_membership_oracle():
    rng = np.random.default_rng(5)
    z = np.array([0, 0, 1.0])
    B = Ball([0, 0, -0.2], 0.35)
    cap = ball_cap(z, B, 1.0)
    mismatches = 0
    for p in sphere_points(rng, 10_000, 3):
        truth = segment_meets_ball(p, z, B.center, B.radius)
        mismatches += cap.contains(p) != truth
        mismatches += segment_hits_ball(p, z, B) != truth
    assert mismatches == 0


def test_ball_cap_on_axis_matches_bisection():
    for c, rho in [(-0.3, 0.2), (0.4, 0.3), (0.0, 0.7)]:
        z = np.array([0, 0, 1.0])
        cap = ball_cap(z, Ball([0, 0, c], rho), 1.0)
        oracle = cap_radius_by_bisection(z, np.array([0, 0, c]), rho)
        assert abs(cap.angular_radius - oracle) <= 1e-6


def test_ball_cap_off_axis_is_not_a_cap():
    z = np.array([0, 0, 1.0])
    B = Ball([0.3, 0, 0], 0.2)
    with pytest.raises(NotACap):
        ball_cap(z, B, 1.0)
    # the projected boundary leaves every plane: fit a plane to bisected boundary points
    axis, beta = ball_sight_angle(z, B)
    e1 = np.cross(axis, [0, 1.0, 0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    pts = []
    for t in np.linspace(0, 2 * np.pi, 12, endpoint=False):
        u = np.cos(beta) * axis + np.sin(beta) * (np.cos(t) * e1 + np.sin(t) * e2)
        pts.append(ray_second_intersection(z, u, 1.0))
    pts = np.array(pts)
    s = np.linalg.svd(pts - pts.mean(axis=0), compute_uv=False)
    assert s[-1] > 1e-3


def test_equal_balls_equal_caps():
    z = np.array([0, 0.6, 0.8])
    a = ball_cap(z, Ball(z * -0.3, 0.2), 1.0)
    b = ball_cap(z, Ball(z * -0.3, 0.2), 1.0)
    assert np.allclose(a.center_dir, b.center_dir) and a.angular_radius == b.angular_radius


def test_cap_validation():
    with pytest.raises(GeometryError):
        SphericalCap(np.array([0, 0, 1.0]), 0.0)
    with pytest.raises(InteriorPoint):
        ball_sight_angle([0, 0, 1.0], Ball([0, 0, 0.5], 0.6))
