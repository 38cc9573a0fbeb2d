"""Quotient distances delta*(z, w) = min over the group of delta(z, g w).

Two exact methods are provided: a finite minimum over the patch T^k* and a
depth-first search of the tessellation pruned by distance to polygons. A
brute-force minimum over a word ball serves as a slow reference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutsidePatchError, PolygonError, ResourceLimitError
from .hyperbolic import DEFAULT_TOL, hyperbolic_distance
from ._search import search
from .isometry import IDENTITY, Isometry, IsometryArray, word_ball
from .surface import FundamentalPolygon, SurfaceModel

TIE_TOL = 1e-12
MAX_STEPS = 10**8
VARIANTS = ("corrected", "strict")


@dataclass(frozen=True)
class DistanceResult:
    """``candidates_evaluated`` counts point-to-polygon or point-to-image
    distance evaluations; ``polygons_examined`` counts polygons visited."""

    distance: float
    minimizer: Isometry
    polygons_examined: int
    candidates_evaluated: int


def _check_in_polygon(polygon: FundamentalPolygon, *points, tol: float = 1e-9):
    for z in points:
        if not abs(z) < 1.0:
            raise ValueError(f"point {z!r} is not strictly inside the unit disk")
        if not polygon.contains(z, tol=tol):
            raise OutsidePatchError(f"point {z!r} lies outside the fundamental polygon; reduce it first")


def min_over(z, w, elements: IsometryArray) -> DistanceResult:
    """min over g in ``elements`` of delta(z, g w); the earliest near-tie wins."""
    z, w = complex(z), complex(w)
    d = hyperbolic_distance(z, elements.apply(w))
    d = np.atleast_1d(d)
    i = int(np.argmax(d <= d.min() + TIE_TOL))
    return DistanceResult(float(d[i]), elements[i], len(elements), len(elements))


def distance_formula(z, w, surface: SurfaceModel, k: int | None = None) -> DistanceResult:
    """Finite formula: min over T^k (k defaults to k*)."""
    if k is None:
        k = surface.k_star
        if k is None:
            raise PolygonError("k* is unavailable for this polygon; pass k or use distance_algorithm")
    z, w = complex(z), complex(w)
    _check_in_polygon(surface.polygon, z, w)
    return min_over(z, w, surface.patch(k))


def dist_point_to_polygon(z, g: Isometry, polygon: FundamentalPolygon) -> float:
    """delta(z, gP): zero for the identity, else distance to the nearest side of gP."""
    if g.isclose(IDENTITY, 1e-12):
        return 0.0
    return float(polygon.boundary_distance(np.asarray(g.inverse()(complex(z)))))


def distance_algorithm(z, w, surface: SurfaceModel, variant: str = "corrected",
                       bound: float | None = None, tol: float = DEFAULT_TOL,
                       max_steps: int = MAX_STEPS) -> DistanceResult:
    """Depth-first tessellation search.

    A stack of group elements starts at the identity. Popping g records
    delta(z, g w) and pushes each child g g_i whose polygon is farther from z
    than gP but closer than the bound B (default: the surface diameter).

    ``variant="strict"`` uses the strict rule delta(z, gP) < delta(z, g g_i P) < B
    with no memory of visited polygons; "greater" means greater by more than
    ``tol``, since rounding noise in long products would otherwise make tied
    polygons look increasing and the search could circle a vertex. At a
    tessellation vertex nearest to z the fan of polygons around it all tie,
    so the strict rule can fail to reach the minimizing polygon.

    ``variant="corrected"`` (default) allows ties within ``tol``, visits each
    group element once, and shrinks B to the best distance found so far.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    z, w = complex(z), complex(w)
    _check_in_polygon(surface.polygon, z, w)
    B = surface.diameter_used if bound is None else float(bound)
    gens = surface.generator_array
    p, rot, r, lam_p = surface.polygon._frames
    best, a, c, steps, evaluated, overflow = search(
        z, w, gens.a, gens.c, p, rot, r, lam_p, B, float(tol), variant == "corrected", int(max_steps))
    if overflow:
        raise ResourceLimitError(f"search exceeded {max_steps} steps")
    return DistanceResult(float(best), Isometry(a, c), int(steps), int(evaluated))


def brute_force_oracle(z, w, surface: SurfaceModel, radius: int, cap: int | None = None) -> float:
    """min over all words of length <= radius in the side pairings of delta(z, g w)."""
    key = (radius, cap)
    ball = surface._balls.get(key)
    if ball is None:
        ball = word_ball(surface.generator_array, radius, cap=cap or surface.cap)
        surface._balls[key] = ball
    return min_over(z, w, ball).distance


def reduce_to_fundamental(z, surface: SurfaceModel, k: int | None = None) -> tuple[complex, Isometry]:
    """(z', g) with z' = g z in P, searching T^k shell by shell (k defaults to k*, or 2).

    Boundary points resolve to the first element found in patch order.
    """
    z = complex(z)
    if not abs(z) < 1.0:
        raise ValueError(f"point {z!r} is not strictly inside the unit disk")
    k = k if k is not None else (surface.k_star or 2)
    for j in range(k + 1):
        sh = surface.shell(j)
        imgs = sh.apply(z)
        inside = np.atleast_1d(surface.polygon.contains(imgs, tol=1e-12))
        if inside.any():
            i = int(np.argmax(inside))
            return complex(imgs[i]), sh[i]
    raise OutsidePatchError(f"point {z!r} is not covered by the T^{k} patch")
