"""Scenes: an enclosing sphere plus the bodies strictly inside it, and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import SceneError
from .polytope import Polytope, convex_hull

# bodies must stay this fraction of r away from the sphere
INTERIOR_MARGIN = 1e-6


@dataclass(frozen=True)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        if not self.radius > 0:
            raise SceneError("ball radius must be positive")

    def contains(self, x) -> bool:
        return bool(np.linalg.norm(np.asarray(x, dtype=float) - self.center) <= self.radius)

    def to_dict(self) -> dict:
        return {"center": self.center.tolist(), "radius": self.radius}


@dataclass(frozen=True)
class Scene:
    r: float
    polytopes: tuple[Polytope, ...] = ()
    balls: tuple[Ball, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "polytopes", tuple(self.polytopes))
        object.__setattr__(self, "balls", tuple(self.balls))
        if not self.r > 0:
            raise SceneError("sphere radius must be positive")
        limit = self.r * (1 - INTERIOR_MARGIN)
        dims = {P.dim for P in self.polytopes} | {b.center.shape[0] for b in self.balls}
        if len(dims) > 1:
            raise SceneError(f"bodies of mixed dimensions {sorted(dims)}")
        for k, P in enumerate(self.polytopes):
            if np.max(np.linalg.norm(P.vertices, axis=1)) > limit:
                raise SceneError(f"polytope {k} is not strictly inside the sphere")
        for k, b in enumerate(self.balls):
            if np.linalg.norm(b.center) + b.radius > limit:
                raise SceneError(f"ball {k} is not strictly inside the sphere")

    @property
    def dim(self) -> int:
        if self.polytopes:
            return self.polytopes[0].dim
        if self.balls:
            return self.balls[0].center.shape[0]
        return 3

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "polytopes": [P.to_dict() for P in self.polytopes],
            "balls": [b.to_dict() for b in self.balls],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scene":
        try:
            r = float(data["r"])
            polys = [convex_hull(np.asarray(p["vertices"], dtype=float))
                     for p in data.get("polytopes", [])]
            balls = [Ball(np.asarray(b["center"], dtype=float), float(b["radius"]))
                     for b in data.get("balls", [])]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SceneError):
                raise
            raise SceneError(f"malformed scene: {exc}") from exc
        return cls(r, tuple(polys), tuple(balls))


def load_scene(path) -> Scene:
    with open(Path(path)) as fh:
        return Scene.from_dict(json.load(fh))


def save_scene(scene: Scene, path) -> None:
    Path(path).write_text(json.dumps(scene.to_dict(), indent=2) + "\n")
