"""Closed-form distances on the flat torus R^2/Z^2 and the unit sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _wrap(x: float) -> float:
    # into [-1/2, 1/2)
    return (x + 0.5) % 1.0 - 0.5


@dataclass(frozen=True)
class TorusPoint:
    """Point of the unit square torus; coordinates are wrapped into [-1/2, 1/2)."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", _wrap(float(self.x)))
        object.__setattr__(self, "y", _wrap(float(self.y)))


def torus_distance(p1: TorusPoint, p2: TorusPoint) -> float:
    dx = 0.5 - abs(0.5 - abs(p1.x - p2.x))
    dy = 0.5 - abs(0.5 - abs(p1.y - p2.y))
    return math.sqrt(dx * dx + dy * dy)


def torus_lattice_distance(p1: TorusPoint, p2: TorusPoint) -> float:
    """Minimum Euclidean distance over the nine neighbouring lattice images."""
    return min(math.hypot(p1.x - p2.x - m, p1.y - p2.y - n) for m in (-1, 0, 1) for n in (-1, 0, 1))


def sphere_distance(p1, p2, tol: float = 1e-12) -> float:
    """Great-circle distance between unit vectors, atan2(|p1 x p2|, p1 . p2)."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    for p in (p1, p2):
        if p.shape != (3,) or abs(np.linalg.norm(p) - 1.0) > tol:
            raise ValueError(f"{p!r} is not a unit 3-vector")
    return float(math.atan2(np.linalg.norm(np.cross(p1, p2)), float(np.dot(p1, p2))))
