"""Generalized Bolza surfaces: the regular 4g-gon with angles pi/2g and
opposite sides glued."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distance import DistanceResult, min_over
from .errors import GeodistError
from .isometry import Isometry, inverse
from .surface import FundamentalPolygon, SidePairing, SurfaceModel, build_surface


def _cot(x: float) -> float:
    return 1.0 / math.tan(x)


def _check_genus(g: int):
    if int(g) != g or g < 2:
        raise ValueError(f"genus must be an integer >= 2, got {g!r}")


@dataclass(frozen=True)
class BolzaParams:
    """Closed-form constants of S_g.

    ``diameter_D`` is the classical closed form arccosh(cot(pi/4g)), which
    equals half the side length. ``surface_diameter`` is the largest
    quotient distance actually attained, the circumradius R: every point is
    within R of the centre orbit and the vertex orbit sits exactly at R.
    """

    genus: int
    radius_R: float
    side_length_s: float
    diameter_D: float
    surface_diameter: float
    k_star: int
    k_min_known: int | None


def bolza_params(g: int) -> BolzaParams:
    _check_genus(g)
    t = _cot(math.pi / (4 * g))
    R = math.acosh(t * t)
    s = 2.0 * math.acosh(t)
    return BolzaParams(
        genus=g,
        radius_R=R,
        side_length_s=s,
        diameter_D=math.acosh(t),
        surface_diameter=R,
        k_star=bolza_k_star(g),
        k_min_known=1 if g == 2 else None,
    )


def bolza_k_star(g: int) -> int:
    """floor(1 + arccosh(cot(pi/4g)) / arccosh(2 cos(pi/2g)))."""
    _check_genus(g)
    num = math.acosh(_cot(math.pi / (4 * g)))
    den = math.acosh(2.0 * math.cos(math.pi / (2 * g)))
    return int(math.floor(1.0 + num / den))


def bolza_vertices(g: int) -> np.ndarray:
    _check_genus(g)
    R = bolza_params(g).radius_R
    k = np.arange(4 * g)
    return math.tanh(R / 2) * np.exp(1j * (k - 0.5) * np.pi / (2 * g))


def bolza_generators(g: int) -> list[Isometry]:
    """gamma_k for k = 0..2g-1; gamma_k maps side k + 2g onto side k."""
    _check_genus(g)
    th = math.tanh(bolza_params(g).side_length_s / 2)
    return [Isometry.normalized(1.0, th * np.exp(-1j * k * np.pi / (2 * g))) for k in range(2 * g)]


def bolza_polygon(g: int) -> FundamentalPolygon:
    n = 4 * g
    pairing = []
    for k, gam in enumerate(bolza_generators(g)):
        pairing.append(SidePairing(k + 2 * g, k, gam))
        pairing.append(SidePairing(k, k + 2 * g, inverse(gam)))
    assert len(pairing) == n
    return FundamentalPolygon(tuple(bolza_vertices(g)), tuple(pairing))


def build_bolza(g: int, **kwargs) -> SurfaceModel:
    """Bolza surface of genus g with the search bound set to the surface diameter R."""
    p = bolza_params(g)
    return build_surface(bolza_polygon(g), surface_diameter_override=p.surface_diameter,
                         name=f"bolza:{g}", **kwargs)


def bolza_fast_path_g2(z, w, surface: SurfaceModel) -> DistanceResult:
    """Minimum over T alone, which is exact on the genus-2 surface."""
    if surface.n_sides != 8 or not surface.name.startswith("bolza:2"):
        raise GeodistError("the T-only fast path is valid for the genus-2 Bolza surface only")
    return min_over(z, w, surface.neighbor_set_T)
