"""Support cones and spherical projections of convex bodies, with a verifier that
tells two bodies apart from the cones they cast at light sources on a sphere."""

from .congruence import (CongruenceWitness, ConeShape, ShapeKind, cone_congruent,
                         cone_shape_classify, spherical_congruent)
from .errors import GeometryError
from .geom import DEFAULT_TOL, Tolerance
from .polytope import Polytope, convex_hull, cube, random_polytope
from .scene import Ball, Scene, load_scene, save_scene
from .sightcone import SupportCone, support_cone
from .sphproj import SphericalPolytope, spherical_projection
from .verifier import (Verdict, VerdictKind, counterexample_report, decide_equality,
                       recover_segment, verify_balls, verify_pair)

__version__ = "0.1.0"

__all__ = [
    "Ball", "CongruenceWitness", "ConeShape", "DEFAULT_TOL", "GeometryError", "Polytope",
    "Scene", "ShapeKind", "SphericalPolytope", "SupportCone", "Tolerance", "Verdict",
    "VerdictKind", "cone_congruent", "cone_shape_classify", "convex_hull",
    "counterexample_report", "cube", "decide_equality", "load_scene", "random_polytope",
    "recover_segment", "save_scene", "spherical_congruent", "spherical_projection",
    "support_cone", "verify_balls", "verify_pair",
]
