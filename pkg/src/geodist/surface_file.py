"""JSON surface descriptions.

Format::

    {
      "name": "optional label",
      "vertices": [[re, im], ...],          # counterclockwise
      "pairing": [[i, j], ...],             # one entry per glued pair of sides
      "generators": [[[re_a, im_a], [re_c, im_c]], ...],   # optional
      "diameter": 2.44                      # optional surface diameter
    }

generators[k], when present, maps side pairing[k][0] onto side
pairing[k][1]; otherwise the gluing maps are built from the vertex positions.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import GeodistError, PolygonError
from .isometry import DEFAULT_CAP, Isometry
from .surface import FundamentalPolygon, SurfaceModel, build_surface


def _pair(x, what: str) -> tuple[float, float]:
    if not (isinstance(x, (list, tuple)) and len(x) == 2):
        raise PolygonError(f"{what} must be a [re, im] pair, got {x!r}")
    return float(x[0]), float(x[1])


def polygon_from_dict(doc: dict) -> tuple[FundamentalPolygon, float | None, str]:
    try:
        verts = [complex(*_pair(v, "vertex")) for v in doc["vertices"]]
        pairs = [(int(i), int(j)) for i, j in doc["pairing"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise PolygonError(f"malformed surface description: {exc}") from exc
    n = len(verts)
    if any(not (0 <= i < n and 0 <= j < n) for i, j in pairs):
        raise PolygonError("pairing refers to a side index outside the polygon")
    gens = None
    if doc.get("generators") is not None:
        raw = doc["generators"]
        if len(raw) != len(pairs):
            raise PolygonError("need exactly one generator per pairing entry")
        try:
            gens = [Isometry.normalized(complex(*_pair(a, "a")), complex(*_pair(c, "c"))) for a, c in raw]
        except (TypeError, ValueError) as exc:
            raise PolygonError(f"malformed generator: {exc}") from exc
    diameter = doc.get("diameter")
    poly = FundamentalPolygon.from_index_pairs(verts, pairs, gens)
    return poly, (None if diameter is None else float(diameter)), str(doc.get("name", "custom"))


def polygon_to_dict(polygon: FundamentalPolygon, diameter: float | None = None, name: str | None = None) -> dict:
    seen = set()
    pairs, gens = [], []
    for sp in polygon.pairing:
        if (sp.target, sp.source) in seen:
            continue
        seen.add((sp.source, sp.target))
        pairs.append([sp.source, sp.target])
        g = sp.generator
        gens.append([[g.a.real, g.a.imag], [g.c.real, g.c.imag]])
    doc = {
        "vertices": [[v.real, v.imag] for v in polygon.vertices],
        "pairing": pairs,
        "generators": gens,
    }
    if name is not None:
        doc["name"] = name
    if diameter is not None:
        doc["diameter"] = diameter
    return doc


def load_surface(path, cap: int = DEFAULT_CAP) -> SurfaceModel:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise GeodistError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PolygonError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise PolygonError(f"{path}: expected a JSON object")
    poly, diameter, name = polygon_from_dict(doc)
    return build_surface(poly, surface_diameter_override=diameter, name=name, cap=cap)


def save_surface(surface: SurfaceModel, path) -> None:
    doc = polygon_to_dict(surface.polygon, surface.surface_diameter_override, surface.name)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
