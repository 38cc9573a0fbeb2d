import json

import numpy as np
import pytest

from geodist.bolza import bolza_polygon, bolza_vertices
from geodist.errors import GeodistError, PolygonError
from geodist.surface_file import load_surface, polygon_from_dict, polygon_to_dict, save_surface


def test_round_trip(tmp_path, bolza2):
    path = tmp_path / "b2.json"
    save_surface(bolza2, path)
    s = load_surface(path)
    assert s.name == "bolza:2"
    assert s.surface_diameter_override == bolza2.surface_diameter_override
    assert np.allclose(s.polygon.vertices, bolza2.polygon.vertices, atol=0)
    assert len(s.neighbor_set_T) == 49
    assert s.k_star == bolza2.k_star


def test_generators_optional():
    doc = polygon_to_dict(bolza_polygon(3))
    del doc["generators"]
    poly, diameter, name = polygon_from_dict(doc)
    assert diameter is None and name == "custom"
    ref = bolza_polygon(3)
    for a, b in zip(poly.pairing, ref.pairing):
        assert (a.source, a.target) == (b.source, b.target)
        assert a.generator.isclose(b.generator, 1e-9)


def test_one_entry_per_glued_pair():
    doc = polygon_to_dict(bolza_polygon(2))
    assert len(doc["pairing"]) == 4 and len(doc["generators"]) == 4


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("vertices"),
    lambda d: d.update(pairing=[[0, 99]]),
    lambda d: d.update(vertices=[[0.1, 0.2, 0.3]] * 8),
    lambda d: d.update(generators=d["generators"][:2]),
    lambda d: d["generators"][0][1].__setitem__(0, d["generators"][0][1][0] + 1e-3),
])
def test_corrupted_descriptions(mutate):
    doc = polygon_to_dict(bolza_polygon(2))
    mutate(doc)
    with pytest.raises(PolygonError):
        polygon_from_dict(doc)


def test_bad_files(tmp_path):
    with pytest.raises(GeodistError):
        load_surface(tmp_path / "missing.json")
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(PolygonError):
        load_surface(p)
    p.write_text(json.dumps([1, 2]))
    with pytest.raises(PolygonError):
        load_surface(p)


def test_vertex_only_description(tmp_path):
    v = bolza_vertices(2)
    doc = {"vertices": [[z.real, z.imag] for z in v], "pairing": [[k + 4, k] for k in range(4)], "diameter": 2.0}
    p = tmp_path / "v.json"
    p.write_text(json.dumps(doc))
    s = load_surface(p)
    assert s.diameter_used == 2.0 and len(s.neighbor_set_T) == 49
