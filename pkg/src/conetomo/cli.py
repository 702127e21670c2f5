"""Command-line front end.

Exit codes: 0 equal/success, 2 distinct, 3 inconclusive, 1 error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .congruence import cone_congruent, spherical_congruent
from .errors import GeometryError
from .geom import DEFAULT_TOL, Tolerance, random_rotation
from .polytope import Polytope, random_polytope
from .scene import Scene, load_scene
from .sightcone import SupportCone, support_cone
from .sphproj import SphericalPolytope, spherical_projection
from .verifier import (AngleSample, VerdictKind, counterexample_report, recover_segment,
                       verify_balls, verify_pair)

EXIT_OK, EXIT_ERROR, EXIT_DISTINCT, EXIT_INCONCLUSIVE = 0, 1, 2, 3
ARC_SEGMENTS = 64

_EXIT = {VerdictKind.EQUAL: EXIT_OK, VerdictKind.DISTINCT: EXIT_DISTINCT,
         VerdictKind.INCONCLUSIVE: EXIT_INCONCLUSIVE}


class CliError(Exception):
    pass


def _vector(text: str) -> np.ndarray:
    try:
        v = np.array([float(t) for t in text.split(",")])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}") from exc
    if not np.all(np.isfinite(v)):
        raise argparse.ArgumentTypeError("vector entries must be finite")
    return v


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _seed(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("seed must be unsigned")
    return n


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conetomo",
                                     description="Support cones, spherical projections and "
                                                 "congruence-based equality checks.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scene=True, out=True, tol=True):
        if scene:
            p.add_argument("--scene", type=Path, required=True)
        if out:
            p.add_argument("--out", type=Path, help="write here instead of stdout")
        if tol:
            p.add_argument("--tol", type=_positive_float,
                           help="residual bound for congruence (default 1e-7)")

    p = sub.add_parser("gen", help="random scene")
    common(p, scene=False, tol=False)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--points", type=_positive_int, default=10)
    p.add_argument("--radius-cap", type=_positive_float, default=0.8)
    p.add_argument("--r", type=_positive_float, default=1.0)
    p.add_argument("--pair", choices=["none", "same", "translate", "rotate"], default="same",
                   help="what the second polytope is")
    p.add_argument("--shift", type=_positive_float, default=0.05,
                   help="translation length for --pair translate, as a fraction of r")

    p = sub.add_parser("cone", help="support cone at z")
    common(p)
    p.add_argument("--z", type=_vector, required=True)
    p.add_argument("--index", type=int, default=0, help="which polytope of the scene")

    p = sub.add_parser("project", help="spherical projection at z")
    common(p)
    p.add_argument("--z", type=_vector, required=True)
    p.add_argument("--index", type=int, default=0)

    p = sub.add_parser("congruent", help="congruence of two cones or projections")
    common(p, scene=False)
    p.add_argument("files", nargs="*", type=Path, help="two cone or projection JSON files")
    p.add_argument("--scene", type=Path, help="compare the scene's two polytopes at --z instead")
    p.add_argument("--z", type=_vector)
    p.add_argument("--mode", choices=["cones", "projections"], default="cones")

    p = sub.add_parser("verify", help="Equal / Distinct / Inconclusive for two polytopes")
    common(p)
    p.add_argument("--mode", choices=["cones", "projections"], default="cones")
    p.add_argument("--samples", type=_positive_int, default=500)
    p.add_argument("--max-samples", type=_positive_int, default=5000)
    p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("balls", help="compare the scene's two balls from the center-line poles")
    common(p)

    p = sub.add_parser("recover", help="segment from an angle CSV (zx,zy,alpha)")
    common(p, scene=False, tol=False)
    p.add_argument("csv", type=Path)
    p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("counterexample", help="congruent circles with non-congruent cones")
    common(p, scene=False, tol=False)

    p = sub.add_parser("export-obj", help="polytopes, cone wireframes and projection arcs as OBJ")
    common(p, tol=False)
    p.add_argument("--z", type=_vector, help="also export cones and projections from here")
    return parser


# ---------------------------------------------------------------------------


def _tolerance(args) -> Tolerance:
    if getattr(args, "tol", None) is None:
        return DEFAULT_TOL
    return Tolerance(DEFAULT_TOL.eps_abs, DEFAULT_TOL.eps_rel, args.tol)


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)


def _scene(args) -> Scene:
    return load_scene(args.scene)


def _polytope(scene: Scene, index: int) -> Polytope:
    if not 0 <= index < len(scene.polytopes):
        raise CliError(f"scene has no polytope {index}")
    return scene.polytopes[index]


def _light(scene: Scene, z: np.ndarray) -> np.ndarray:
    if z.shape[0] != scene.dim:
        raise CliError(f"--z must have {scene.dim} coordinates")
    if abs(np.linalg.norm(z) - scene.r) > 1e-6 * scene.r:
        raise CliError(f"--z must lie on the sphere of radius {scene.r}")
    return z * (scene.r / np.linalg.norm(z))


def _two_polytopes(scene: Scene) -> tuple[Polytope, Polytope]:
    if len(scene.polytopes) != 2:
        raise CliError("scene must contain exactly two polytopes")
    return scene.polytopes


def cmd_gen(args) -> int:
    P = random_polytope(args.seed, args.dim, args.points, args.radius_cap * args.r)
    bodies = [P]
    rng = np.random.default_rng([args.seed, 1])
    if args.pair == "same":
        bodies.append(P)
    elif args.pair == "translate":
        t = rng.standard_normal(args.dim)
        bodies.append(P.translated(args.shift * args.r * t / np.linalg.norm(t)))
    elif args.pair == "rotate":
        bodies.append(P.transformed(random_rotation(rng, args.dim)))
    _emit(args, Scene(args.r, tuple(bodies)).to_dict())
    return EXIT_OK


def cmd_cone(args) -> int:
    scene = _scene(args)
    P = _polytope(scene, args.index)
    _emit(args, support_cone(_light(scene, args.z), P, _tolerance(args)).to_dict())
    return EXIT_OK


def cmd_project(args) -> int:
    scene = _scene(args)
    P = _polytope(scene, args.index)
    S = spherical_projection(_light(scene, args.z), P, scene.r, _tolerance(args))
    _emit(args, S.to_dict())
    return EXIT_OK


def _load_shape(path: Path):
    data = json.loads(path.read_text())
    if "arcs" in data:
        return SphericalPolytope.from_dict(data)
    if "apex" in data:
        return SupportCone.from_dict(data)
    raise CliError(f"{path} is neither a cone nor a projection")


def cmd_congruent(args) -> int:
    tol = _tolerance(args)
    if args.scene is not None:
        if args.z is None:
            raise CliError("--scene needs --z")
        scene = _scene(args)
        P, Q = _two_polytopes(scene)
        z = _light(scene, args.z)
        if args.mode == "cones":
            a, b = support_cone(z, P, tol), support_cone(z, Q, tol)
        else:
            a, b = spherical_projection(z, P, scene.r, tol), spherical_projection(z, Q, scene.r, tol)
    elif len(args.files) == 2:
        a, b = (_load_shape(f) for f in args.files)
    else:
        raise CliError("give two JSON files or --scene with --z")
    if type(a) is not type(b):
        raise CliError("cannot compare a cone with a projection")
    w = cone_congruent(a, b, tol) if isinstance(a, SupportCone) else spherical_congruent(a, b, tol)
    out = {"congruent": w is not None}
    if w is not None:
        out.update(permutation=list(w.permutation), map=w.map.tolist(), residual=w.residual)
    _emit(args, out)
    return EXIT_OK if w is not None else EXIT_DISTINCT


def cmd_verify(args) -> int:
    scene = _scene(args)
    P, Q = _two_polytopes(scene)
    v = verify_pair(P, Q, args.mode, n_samples=args.samples, seed=args.seed, r=scene.r,
                    tol=_tolerance(args), max_samples=args.max_samples)
    _emit(args, v.to_dict())
    return _EXIT[v.kind]


def cmd_balls(args) -> int:
    scene = _scene(args)
    if len(scene.balls) != 2:
        raise CliError("scene must contain exactly two balls")
    v = verify_balls(scene.balls[0], scene.balls[1], scene.r, _tolerance(args))
    _emit(args, v.to_dict())
    return _EXIT[v.kind]


def read_angle_csv(path: Path) -> list[AngleSample]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or set(reader.fieldnames) != {"zx", "zy", "alpha"}:
            raise CliError("angle CSV needs the header zx,zy,alpha")
        out = []
        for row in reader:
            alpha = float(row["alpha"])
            if not 0 <= alpha < np.pi:
                raise CliError(f"angle {alpha} outside [0, pi)")
            out.append(AngleSample(np.array([float(row["zx"]), float(row["zy"])]), alpha))
    return out


def cmd_recover(args) -> int:
    x, y, rms = recover_segment(read_angle_csv(args.csv), seed=args.seed)
    _emit(args, {"x": x.tolist(), "y": y.tolist(), "rms_residual": rms})
    return EXIT_OK


def cmd_counterexample(args) -> int:
    _emit(args, counterexample_report())
    return EXIT_OK


def _facet_cycle(P: Polytope, k: int) -> list[int]:
    ids = list(P.facet_vertices[k])
    pts = P.vertices[ids]
    c = pts.mean(axis=0)
    n = P.normals[k]
    e1 = pts[0] - c
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    ang = np.arctan2((pts - c) @ e2, (pts - c) @ e1)
    return [ids[m] for m in np.argsort(ang)]


def obj_text(scene: Scene, z: np.ndarray | None = None) -> str:
    """Wavefront OBJ: facets as faces, cone spans and projection arcs as polylines."""
    if scene.dim != 3:
        raise CliError("OBJ export needs a 3-dimensional scene")
    lines = ["# conetomo export"]
    base = 0

    def vertex_block(points):
        nonlocal base
        lines.extend("v {:.12g} {:.12g} {:.12g}".format(*p) for p in points)
        start = base + 1
        base += len(points)
        return start

    for n, P in enumerate(scene.polytopes):
        lines.append(f"o polytope_{n}")
        s = vertex_block(P.vertices)
        for k in range(P.n_facets):
            lines.append("f " + " ".join(str(s + i) for i in _facet_cycle(P, k)))
    if z is None:
        return "\n".join(lines) + "\n"
    for n, P in enumerate(scene.polytopes):
        cone = support_cone(z, P)
        lines.append(f"o cone_{n}")
        s = vertex_block(np.vstack([z[None], P.vertices[list(cone.boundary_vertex_ids)]]))
        lines.extend(f"l {s} {s + 1 + i}" for i in range(cone.k))
        S = spherical_projection(z, P, scene.r)
        lines.append(f"o projection_{n}")
        for arc in S.arcs:
            s = vertex_block(S.arc_points(arc, ARC_SEGMENTS))
            lines.append("l " + " ".join(str(s + i) for i in range(ARC_SEGMENTS + 1)))
    return "\n".join(lines) + "\n"


def cmd_export_obj(args) -> int:
    scene = _scene(args)
    z = None if args.z is None else _light(scene, args.z)
    _emit(args, obj_text(scene, z))
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen, "cone": cmd_cone, "project": cmd_project, "congruent": cmd_congruent,
    "verify": cmd_verify, "balls": cmd_balls, "recover": cmd_recover,
    "counterexample": cmd_counterexample, "export-obj": cmd_export_obj,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; 2 means Distinct here
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (CliError, GeometryError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"conetomo {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
