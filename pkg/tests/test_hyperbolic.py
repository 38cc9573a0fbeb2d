import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from geodist.hyperbolic import (
    GeodesicSegment,
    hyperbolic_distance,
    point_to_segment_distance,
    segment_midpoint,
    segment_to_segment_distance,
    segments_min_distance,
)
from geodist.bolza import bolza_polygon

import oracles
from conftest import disk_points, isometries


def test_distance_examples():
    assert hyperbolic_distance(0, 0) == 0.0
    assert hyperbolic_distance(0, 0.5) == pytest.approx(oracles.LN3, abs=1e-15)
    assert hyperbolic_distance(0, 0.5j) == pytest.approx(hyperbolic_distance(0, 0.5), abs=1e-15)


def test_distance_matches_integrated_metric():
    for x in (0.1, 0.5, 0.9, 0.999):
        assert hyperbolic_distance(0, x) == pytest.approx(float(oracles.integrate_ds_on_diameter(x)), rel=1e-14)


@given(disk_points(), disk_points())
def test_distance_matches_high_precision(p, q):
    assert hyperbolic_distance(p, q) == pytest.approx(float(oracles.mp_distance(p, q)), rel=1e-12, abs=1e-15)


def test_distance_small_separation_has_no_cancellation():
    p = 0.3 + 0.2j
    q = p + 1e-13
    ref = float(oracles.mp_distance(p, q))
    assert hyperbolic_distance(p, q) == pytest.approx(ref, rel=1e-10)


def test_distance_rejects_outside_points():
    with pytest.raises(ValueError):
        hyperbolic_distance(0, 1.0)
    with pytest.raises(ValueError):
        hyperbolic_distance(1.2j, 0)


def test_distance_vectorized():
    z = np.array([0, 0.5, 0.5j])
    np.testing.assert_allclose(hyperbolic_distance(0, z), [0, oracles.LN3, oracles.LN3], atol=1e-15)


@given(disk_points(), disk_points(), disk_points())
def test_metric_axioms(a, b, c):
    dab = hyperbolic_distance(a, b)
    assert dab >= 0
    assert abs(dab - hyperbolic_distance(b, a)) < 1e-12
    assert hyperbolic_distance(a, c) <= dab + hyperbolic_distance(b, c) + 1e-12
    assert hyperbolic_distance(a, a) == 0


@given(isometries(), disk_points(), disk_points())
def test_isometry_invariance(g, p, q):
    assert abs(hyperbolic_distance(g(p), g(q)) - hyperbolic_distance(p, q)) < 1e-10 * max(1, hyperbolic_distance(p, q))


def test_segment_rejects_degenerate():
    with pytest.raises(ValueError):
        GeodesicSegment(0.2, 0.2)
    with pytest.raises(ValueError):
        GeodesicSegment(0.2, 1.0)


def test_segment_point_at_and_length():
    s = GeodesicSegment(-0.3 + 0.1j, 0.4 + 0.5j)
    assert s.point_at(0.0) == pytest.approx(s.p, abs=1e-15)
    assert s.point_at(s.length) == pytest.approx(s.q, abs=1e-12)
    m = s.point_at(0.3)
    assert hyperbolic_distance(s.p, m) == pytest.approx(0.3, abs=1e-12)


def test_point_to_segment_examples():
    s = GeodesicSegment(0.5, 0.5j)
    assert point_to_segment_distance(0, s) <= oracles.LN3
    assert point_to_segment_distance(0.5, s) == 0.0
    assert point_to_segment_distance(s.point_at(0.4), s) < 1e-12
    d = GeodesicSegment(-0.5j, 0.5j)
    assert point_to_segment_distance(0.3, d) == pytest.approx(2 * math.atanh(0.3), abs=1e-15)


def test_point_to_segment_against_dense_sampling(rng):
    for _ in range(40):
        p, q, z = (complex(*rng.uniform(-0.65, 0.65, 2)) for _ in range(3))
        ref = oracles.grid_point_segment(z, p, q, n=200001)
        got = point_to_segment_distance(z, GeodesicSegment(p, q))
        assert got <= ref + 1e-12
        assert got == pytest.approx(ref, abs=1e-9)


@given(disk_points(), disk_points(0.8), disk_points(0.8))
def test_point_to_segment_bounded_by_endpoints(z, p, q):
    if abs(p - q) < 1e-6:
        return
    s = GeodesicSegment(p, q)
    assert point_to_segment_distance(z, s) <= min(hyperbolic_distance(z, p), hyperbolic_distance(z, q)) + 1e-12


@given(isometries(), disk_points(0.8), disk_points(0.8), disk_points(0.8))
def test_point_to_segment_isometry_invariant(g, z, p, q):
    if hyperbolic_distance(p, q) < 1e-3:
        return
    d0 = point_to_segment_distance(z, GeodesicSegment(p, q))
    d1 = point_to_segment_distance(g(z), GeodesicSegment(g(p), g(q)))
    assert abs(d0 - d1) < 1e-9 * max(1.0, d0)


def test_segment_to_segment_examples():
    s = GeodesicSegment(0.1, 0.4j)
    t = GeodesicSegment(0.4j, -0.3 - 0.2j)
    assert segment_to_segment_distance(s, t) < 1e-14
    assert segment_to_segment_distance(s, s) < 1e-14
    crossing = GeodesicSegment(-0.3, 0.3), GeodesicSegment(-0.3j, 0.3j)
    assert segment_to_segment_distance(*crossing) < 1e-12


def test_segment_to_segment_bolza_opposite_sides():
    sides = bolza_polygon(2).sides
    s1, s2 = sides[0], sides[4]
    got = segment_to_segment_distance(s1, s2)
    ref = oracles.grid_segment_segment((s1.p, s1.q), (s2.p, s2.q))
    assert got > 0
    assert got == pytest.approx(ref, abs=1e-9)


def test_segment_to_segment_against_grid(rng):
    for _ in range(50):
        p1, q1, p2, q2 = (complex(*rng.uniform(-0.6, 0.6, 2)) for _ in range(4))
        s1, s2 = GeodesicSegment(p1, q1), GeodesicSegment(p2, q2)
        ref = oracles.grid_segment_segment((p1, q1), (p2, q2))
        got = segment_to_segment_distance(s1, s2)
        assert got == pytest.approx(ref, abs=1e-7)
        assert segment_to_segment_distance(s2, s1) == pytest.approx(got, abs=1e-9)


def test_batched_segment_distances_match_scalar(rng):
    segs = [GeodesicSegment(*(complex(*rng.uniform(-0.6, 0.6, 2)) for _ in range(2))) for _ in range(20)]
    got = segments_min_distance(segs[:10], segs[10:])
    for a, b, d in zip(segs[:10], segs[10:], got):
        assert d == pytest.approx(segment_to_segment_distance(a, b), abs=1e-10)


def test_midpoint_examples():
    assert abs(segment_midpoint(GeodesicSegment(-0.4, 0.4))) < 1e-15
    m = segment_midpoint(GeodesicSegment(0, 0.5))
    assert m == pytest.approx(math.tanh(math.log(3) / 4), abs=1e-15)
    assert 2 * math.atanh(m.real) == pytest.approx(math.log(3) / 2, abs=1e-12)


@given(isometries(), disk_points(0.8), disk_points(0.8))
def test_midpoint_equidistant_and_equivariant(g, p, q):
    if hyperbolic_distance(p, q) < 1e-3:
        return
    s = GeodesicSegment(p, q)
    m = segment_midpoint(s)
    assert abs(hyperbolic_distance(p, m) - hyperbolic_distance(m, q)) < 1e-12 * max(1, s.length)
    assert abs(segment_midpoint(GeodesicSegment(g(p), g(q))) - g(m)) < 1e-12
