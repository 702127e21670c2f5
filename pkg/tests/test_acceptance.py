"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import time

import numpy as np
import pytest

from conetomo.arrangement import region_probes, sample_regions, scene_planes
from conetomo.congruence import ShapeKind, cone_congruent, cone_shape_classify
from conetomo.geom import random_rotation, sphere_points
from conetomo.polytope import cube, random_polytope
from conetomo.scene import Ball, Scene
from conetomo.sightcone import extreme_vertex_ids_lp, shadow_boundary, support_cone
from conetomo.sphproj import arc_circle, spherical_projection
from conetomo.verifier import (AngleSample, VerdictKind, _remark_circles, center_line_poles,
                               congruent_at, recover_segment, sampled_cone, simulate_angles,
                               verify_balls, verify_pair)

from oracles import cap_radius_by_bisection, cube_pole_vertices, remark_cone_form_sympy

MODES = ("cones", "projections")
R = 1.0


def report(capsys, n, ok, text):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {text}")
    assert ok, text


# corpora shared by criteria 1-4

@pytest.fixture(scope="module")
def self_corpus():
    scenes = [random_polytope(seed, 3, 10, 0.8) for seed in range(50)]
    t0 = time.perf_counter()
    verdicts = {mode: [verify_pair(P, P, mode, seed=s) for s, P in enumerate(scenes)]
                for mode in MODES}
    return verdicts, time.perf_counter() - t0


@pytest.fixture(scope="module")
def translate_corpus():
    pairs = []
    for s in range(50):
        P = random_polytope(1000 + s, 3, 10, 0.8)
        rng = np.random.default_rng([s, 2])
        t = rng.standard_normal(3)
        t *= rng.uniform(0.02, 0.05) * R / np.linalg.norm(t)
        pairs.append((P, P.translated(t), t))
    verdicts = {mode: [verify_pair(P, Q, mode, seed=s, max_samples=5000)
                       for s, (P, Q, _) in enumerate(pairs)] for mode in MODES}
    return pairs, verdicts


@pytest.fixture(scope="module")
def rotate_corpus():
    pairs = []
    for s in range(25):
        P = random_polytope(2000 + s, 3, 10, 0.8)
        rho = random_rotation(np.random.default_rng([s, 3]), 3)
        pairs.append((P, P.transformed(rho)))
    verdicts = {mode: [verify_pair(P, Q, mode, seed=s) for s, (P, Q) in enumerate(pairs)]
                for mode in MODES}
    return pairs, verdicts


def test_criterion_1_self_congruence(self_corpus, capsys):
    verdicts, elapsed = self_corpus
    kinds = [v.kind for mode in MODES for v in verdicts[mode]]
    worst = max(v.detail["max_residual"] for mode in MODES for v in verdicts[mode])
    ok = all(k is VerdictKind.EQUAL for k in kinds) and worst <= 1e-9 and elapsed < 30.0
    report(capsys, 1, ok, f"{sum(k is VerdictKind.EQUAL for k in kinds)}/100 Equal, "
                          f"max residual {worst:.1e}, {elapsed:.1f} s")


def test_criterion_2_translate_discrimination(translate_corpus, capsys):
    pairs, verdicts = translate_corpus
    assert all(np.linalg.norm(t) >= 0.02 * R for _, _, t in pairs)
    assert all(Scene(R, (P, Q)) for P, Q, _ in pairs)
    lines, ok = [], True
    for mode in MODES:
        vs = verdicts[mode]
        n_distinct = sum(v.kind is VerdictKind.DISTINCT for v in vs)
        n_equal = sum(v.kind is VerdictKind.EQUAL for v in vs)
        samples_ok = all(v.detail["samples_checked"] <= 5000 for v in vs)
        refail = all(congruent_at(P, Q, v.witness, mode) is None
                     for (P, Q, _), v in zip(pairs, vs) if v.kind is VerdictKind.DISTINCT)
        ok &= n_distinct >= 0.95 * len(vs) and n_equal == 0 and samples_ok and refail
        lines.append(f"{mode}: {n_distinct}/50 Distinct, {n_equal} Equal, witnesses re-fail={refail}")
    report(capsys, 2, ok, "; ".join(lines))


def test_criterion_3_rotate_discrimination(rotate_corpus, capsys):
    pairs, verdicts = rotate_corpus
    assert all(not P.same_as(Q) for P, Q in pairs)
    n_equal = sum(v.kind is VerdictKind.EQUAL for mode in MODES for v in verdicts[mode])
    report(capsys, 3, n_equal == 0, f"{n_equal} Equal verdicts over 25 pairs x 2 modes")


def test_criterion_4_mode_agreement(self_corpus, translate_corpus, rotate_corpus, capsys):
    disagreements = 0
    for verdicts in (self_corpus[0], translate_corpus[1], rotate_corpus[1]):
        disagreements += sum(a.kind is not b.kind
                             for a, b in zip(verdicts["cones"], verdicts["projections"]))
    report(capsys, 4, disagreements == 0, f"{disagreements} verdict disagreements over 125 pairs")


def test_criterion_5_ball_proposition(capsys):
    centers = [-0.2, -0.1, 0.0, 0.1, 0.2]
    radii = [0.2, 0.25, 0.3, 0.25, 0.2]
    balls = [Ball(np.array([c, 0.0, 0.0]), rho) for c, rho in zip(centers, radii)]
    diag_ok, pole_ok, cap_err, n_caps = True, True, 0.0, 0
    for i, K in enumerate(balls):
        for j, L in enumerate(balls):
            v = verify_balls(K, L, R)
            diag_ok &= (v.kind is VerdictKind.EQUAL) == (i == j)
            poles = center_line_poles(K, L, R)
            if v.kind is VerdictKind.DISTINCT:
                pole_ok &= any(np.allclose(v.witness, p, atol=1e-12) for p in poles)
            for row, z in zip(v.detail["poles"], poles):
                for key, B in (("cap_K", K), ("cap_L", L)):
                    if key in row:
                        oracle = cap_radius_by_bisection(z, B.center, B.radius, R)
                        cap_err = max(cap_err, abs(row[key] - oracle))
                        n_caps += 1
    ok = diag_ok and pole_ok and n_caps > 0 and cap_err <= 1e-6
    report(capsys, 5, ok, f"Equal exactly on diagonal={diag_ok}, witnesses at poles={pole_ok}, "
                          f"{n_caps} caps within {cap_err:.1e} of the bisection oracle")


def test_criterion_6_remark_counterexample(capsys):
    _, exact = remark_cone_form_sympy()
    s1, s2 = _remark_circles(24)
    shift = np.array([0.0, 0.0, 1.0])
    _, rad2 = arc_circle(s2[0] + shift, s2[8] + shift, s2[16] + shift, 1.0)
    shape = cone_shape_classify(s2, np.zeros(3))
    w = cone_congruent(sampled_cone(np.zeros(3), s1), sampled_cone(np.zeros(3), s2))
    ok = (abs(rad2 - 1) <= 1e-9 and shape.kind is ShapeKind.ELLIPTICAL
          and abs(shape.axis_ratio - float(exact)) <= 1e-9 and w is None)
    report(capsys, 6, ok, f"radius(S_2)={rad2:.12f}, axis_ratio={shape.axis_ratio:.12f} "
                          f"(exact {exact}), cones congruent={w is not None}")


def _instances(d, n, seed):
    rng = np.random.default_rng(seed)
    out = []
    s = 0
    while len(out) < n:
        P = random_polytope(seed * 1000 + s, d, 8 + 2 * d, 0.8)
        s += 1
        z = sphere_points(rng, 1, d)[0]
        if np.all(np.abs(P.normals @ z - P.offsets) > 1e-6):
            out.append((P, z))
    return out


def test_criterion_7_silhouette_oracle(capsys):
    mismatches = 0
    for d, n in ((3, 100), (4, 50)):
        for P, z in _instances(d, n, d):
            cone = support_cone(z, P)
            lp = sorted(extreme_vertex_ids_lp(z, P))
            U = P.vertices[lp] - z
            U /= np.linalg.norm(U, axis=1, keepdims=True)
            mine = cone.directions[np.argsort(cone.boundary_vertex_ids)]
            if sorted(cone.boundary_vertex_ids) != lp or not np.allclose(mine, U, atol=1e-14):
                mismatches += 1
    report(capsys, 7, mismatches == 0, f"{mismatches} mismatches over 100 d=3 + 50 d=4 instances")


def test_criterion_8_region_coherence(capsys):
    violations = classes = 0
    for s in range(20):
        P = random_polytope(3000 + s, 3, 10, 0.8)
        Q = P.translated(np.random.default_rng(s).uniform(-0.03, 0.03, 3))
        scene = Scene(R, (P, Q))
        planes = scene_planes(scene)
        rng = np.random.default_rng([s, 8])
        for reg in sample_regions(scene, 500, seed=s):
            classes += 1
            probes = region_probes(reg, planes, R, 20, rng)
            assert len(probes) >= 20
            for body in (P, Q):
                base = shadow_boundary(probes[0], body)
                violations += sum(shadow_boundary(z, body) != base for z in probes[1:])
    report(capsys, 8, violations == 0, f"{violations} violations over {classes} sign classes")


def test_criterion_9_segment_recovery(capsys):
    worst = [0.0, 0.0]
    for s in range(100):
        rng = np.random.default_rng([s, 9])
        rad = 0.95 * np.sqrt(rng.uniform(size=2))
        ang = rng.uniform(0, 2 * np.pi, 2)
        x, y = (np.array([rad[k] * np.cos(ang[k]), rad[k] * np.sin(ang[k])]) for k in range(2))
        th = rng.uniform(0, 2 * np.pi, 20)
        Z = np.column_stack([np.cos(th), np.sin(th)])
        exact = simulate_angles(x, y, Z)
        for k, alpha in enumerate((exact, exact + 1e-8 * rng.standard_normal(20))):
            a, b, _ = recover_segment([AngleSample(z, v) for z, v in zip(Z, alpha)], seed=s)
            err = min(max(np.linalg.norm(a - x), np.linalg.norm(b - y)),
                      max(np.linalg.norm(a - y), np.linalg.norm(b - x)))
            worst[k] = max(worst[k], err)
    ok = worst[0] <= 1e-6 and worst[1] <= 1e-4
    report(capsys, 9, ok, f"max endpoint error {worst[0]:.1e} exact, {worst[1]:.1e} with noise 1e-8")


def test_criterion_10_cube_from_pole(capsys):
    S = spherical_projection([0, 0, 1.0], cube(0.25), 1.0)
    got = S.vertices[np.lexsort(S.vertices.T[::-1])]
    expected = cube_pole_vertices()
    err = float(np.max(np.abs(got - expected)))
    sphere = float(np.max(np.abs(np.sum(expected**2, axis=1) - 1)))
    report(capsys, 10, err <= 1e-12 and sphere <= 1e-15,
           f"max vertex error {err:.1e}, oracle sphere-equation error {sphere:.1e}")
