"""Exact geodesic distances on compact hyperbolic quotient surfaces."""

from .baselines import TorusPoint, sphere_distance, torus_distance
from .bolza import BolzaParams, bolza_fast_path_g2, bolza_k_star, bolza_params, build_bolza
from .distance import (
    DistanceResult,
    brute_force_oracle,
    dist_point_to_polygon,
    distance_algorithm,
    distance_formula,
    reduce_to_fundamental,
)
from .errors import GeodistError, OutsidePatchError, PolygonError, ResourceLimitError
from .hyperbolic import (
    GeodesicSegment,
    hyperbolic_distance,
    point_to_segment_distance,
    segment_midpoint,
    segment_to_segment_distance,
)
from .isometry import Isometry, IsometryArray, apply, canonical_key, compose, inverse, word_ball
from .surface import (
    FundamentalPolygon,
    SidePairing,
    SurfaceModel,
    build_surface,
    compute_k_star,
    compute_neighbor_set_T,
    min_midpoint_adjacent_distance,
    min_nonadjacent_side_distance,
    polygon_diameter,
    sample_in_polygon,
)

__version__ = "0.1.0"
