"""Fundamental polygons, their tessellation neighbours, and the shell constants.

A quotient surface is described by a convex polygon P (counterclockwise
vertices in the disk) and side-pairing isometries. From it we derive

* ``T``: the elements mapping P to itself or to a polygon sharing a side or a
  vertex with P;
* ``T^k``: products of at most k elements of T (the k-th tessellation patch);
* the constants delta (nearest non-adjacent sides), epsilon (side midpoint to
  adjacent side), diam(P), and the shell-count bound
  k* = floor(1 + D / min(delta, 2 epsilon)).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import PolygonError, ResourceLimitError
from .hyperbolic import (
    DEFAULT_TOL,
    GeodesicSegment,
    framed_sinh2_half,
    hyperbolic_distance,
    point_to_segment_distance,
    segment_midpoint,
    segments_min_distance,
    sinh2_half_to_distance,
    to_origin,
)
from .isometry import (
    DEFAULT_CAP,
    KEY_TOL,
    Isometry,
    IsometryArray,
    compose,
    difference,
    inverse,
)

VERTEX_TOL = 1e-7
PAIRING_TOL = 1e-9
_CHUNK = 2_000_000


@dataclass(frozen=True)
class SidePairing:
    """``generator`` maps side ``source`` of P onto side ``target``."""

    source: int
    target: int
    generator: Isometry


def isometry_moving_origin_to(p: complex) -> Isometry:
    """The transvection z -> (z + p) / (1 + conj(p) z)."""
    return Isometry.normalized(1.0, complex(p).conjugate())


def rotation(theta: float) -> Isometry:
    return Isometry(complex(math.cos(theta / 2), math.sin(theta / 2)), 0.0)


def _side_frame_isometry(p: complex, q: complex) -> Isometry:
    # sends p -> 0 and q -> positive real axis
    t = inverse(isometry_moving_origin_to(p))
    qq = t(q)
    return compose(rotation(-math.atan2(qq.imag, qq.real)), t)


def pairing_isometry(src: tuple[complex, complex], dst: tuple[complex, complex]) -> Isometry:
    """Orientation-preserving isometry with src[0] -> dst[1] and src[1] -> dst[0].

    This is the gluing map of a side pairing: the image of P lands on the far
    side of the target side.
    """
    p, q = src
    p2, q2 = dst
    l1 = hyperbolic_distance(p, q)
    l2 = hyperbolic_distance(p2, q2)
    if abs(l1 - l2) > 1e-7 * max(1.0, l1):
        raise PolygonError(f"paired sides have different lengths ({l1:.12g} vs {l2:.12g})")
    f1 = _side_frame_isometry(p, q)
    f2 = _side_frame_isometry(q2, p2)
    return compose(inverse(f2), f1)


@dataclass(frozen=True)
class FundamentalPolygon:
    """Convex polygon with counterclockwise ``vertices`` and side pairings.

    Side i runs from vertices[i] to vertices[i + 1].
    """

    vertices: tuple[complex, ...]
    pairing: tuple[SidePairing, ...]
    tol: float = PAIRING_TOL

    def __post_init__(self):
        verts = tuple(complex(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "pairing", tuple(sorted(self.pairing, key=lambda sp: sp.source)))
        n = len(verts)
        if n < 3:
            raise PolygonError("a polygon needs at least 3 vertices")
        if any(not abs(v) < 1.0 for v in verts):
            raise PolygonError("vertices must lie strictly inside the unit disk (no ideal vertices)")
        self._check_convex()
        self._check_pairing()

    @classmethod
    def from_index_pairs(cls, vertices: Sequence[complex], pairs: Sequence[tuple[int, int]],
                         generators: Sequence[Isometry] | None = None) -> "FundamentalPolygon":
        """Build from side index pairs (i, j), one per glued pair of sides.

        When ``generators`` is given, generators[k] must map side pairs[k][0]
        onto side pairs[k][1]; otherwise the maps are constructed from the
        vertex positions. Inverse pairings are added automatically.
        """
        verts = [complex(v) for v in vertices]
        n = len(verts)
        out = []
        for k, (i, j) in enumerate(pairs):
            if generators is not None:
                g = generators[k]
            else:
                g = pairing_isometry((verts[i], verts[(i + 1) % n]), (verts[j], verts[(j + 1) % n]))
            out.append(SidePairing(i, j, g))
            if i != j:
                out.append(SidePairing(j, i, inverse(g)))
        return cls(tuple(verts), tuple(out))

    @property
    def n_sides(self) -> int:
        return len(self.vertices)

    @cached_property
    def sides(self) -> tuple[GeodesicSegment, ...]:
        v = self.vertices
        return tuple(GeodesicSegment(v[i], v[(i + 1) % len(v)]) for i in range(len(v)))

    @property
    def generators(self) -> tuple[Isometry, ...]:
        """g_i for i = 0..N-1, where g_i is the pairing with source side i."""
        return tuple(sp.generator for sp in self.pairing)

    @cached_property
    def _frames(self):
        fr = [s.frame for s in self.sides]
        p = np.array([f[0] for f in fr])
        rot = np.array([f[1] for f in fr])
        r = np.array([f[2] for f in fr])
        return p, rot, r, 1.0 - np.abs(p) ** 2

    def boundary_sinh2_half(self, u, lam=None):
        """sinh^2(d / 2) for d the distance from each point of u to the boundary of P."""
        u = np.asarray(u, dtype=complex)
        if lam is None:
            lam = 1.0 - np.abs(u) ** 2
        p, rot, r, lam_p = self._frames
        h = framed_sinh2_half(u[..., None], np.asarray(lam)[..., None], p, rot, r, lam_p)
        return h.min(axis=-1)

    def boundary_distance(self, u, lam=None):
        """Distance from each point of u to the nearest side of P.

        ``lam`` may carry 1 - |u|^2 when the caller has it more accurately.
        """
        return sinh2_half_to_distance(self.boundary_sinh2_half(u, lam))

    def side_coordinates(self, z):
        """Im of z in each side frame; positive means the interior side."""
        z = np.asarray(z, dtype=complex)
        p, rot, _, _ = self._frames
        w = rot * (z[..., None] - p) / (1.0 - np.conj(p) * z[..., None])
        return w.imag

    def contains(self, z, tol: float = 1e-12):
        """Point-in-polygon test by side orientation; boundary counts as inside."""
        z = np.asarray(z, dtype=complex)
        out = np.all(self.side_coordinates(z) >= -tol, axis=-1) & (np.abs(z) < 1.0)
        return bool(out) if out.ndim == 0 else out

    @cached_property
    def interior_angles(self) -> np.ndarray:
        v = self.vertices
        n = len(v)
        out = []
        for i in range(n):
            prev = to_origin(v[i], v[i - 1])
            nxt = to_origin(v[i], v[(i + 1) % n])
            out.append(math.atan2((nxt.conjugate() * prev).imag, (nxt.conjugate() * prev).real))
        return np.array(out)

    @cached_property
    def center(self) -> complex:
        """Reference interior point (Euclidean vertex mean) used for bounding balls."""
        return complex(np.mean(self.vertices))

    @cached_property
    def circumradius(self) -> float:
        """Radius of a hyperbolic ball about :attr:`center` containing P."""
        return float(np.max(hyperbolic_distance(self.center, np.array(self.vertices))))

    def _check_convex(self):
        angles = self.interior_angles
        if np.any(angles <= 0) or np.any(angles >= math.pi):
            raise PolygonError("polygon is not strictly convex with counterclockwise vertices")
        im = self.side_coordinates(np.array(self.vertices))
        if np.any(im < -1e-12):
            raise PolygonError("polygon is not convex: a vertex lies outside a side's half-plane")

    def _check_pairing(self):
        n = self.n_sides
        sources = [sp.source for sp in self.pairing]
        if sorted(sources) != list(range(n)):
            raise PolygonError("every side must be the source of exactly one pairing")
        by_source = {sp.source: sp for sp in self.pairing}
        for sp in self.pairing:
            back = by_source[sp.target]
            if back.target != sp.source or not compose(sp.generator, back.generator).isclose(Isometry.identity(), 1e-7):
                raise PolygonError(f"pairings of sides {sp.source} and {sp.target} are not mutually inverse")
            src = self.sides[sp.source]
            dst = self.sides[sp.target]
            img = sorted([sp.generator(src.p), sp.generator(src.q)], key=lambda z: (round(z.real, 6), z.imag))
            tgt = sorted([dst.p, dst.q], key=lambda z: (round(z.real, 6), z.imag))
            mism = min(
                max(abs(img[0] - tgt[0]), abs(img[1] - tgt[1])),
                max(abs(img[0] - tgt[1]), abs(img[1] - tgt[0])),
            )
            if mism > self.tol:
                raise PolygonError(
                    f"generator for side {sp.source} -> {sp.target} misses the target endpoints by {mism:.3g}")


# ---------------------------------------------------------------------------
# geometric constants


def min_nonadjacent_side_distance(polygon: FundamentalPolygon) -> float:
    """delta: minimum distance between two sides of P sharing no vertex."""
    n = polygon.n_sides
    if n < 5:
        raise PolygonError(f"a {n}-gon has too few non-adjacent side pairs for the shell bound")
    pairs = [(i, j) for i in range(n) for j in range(i + 2, n) if not (i == 0 and j == n - 1)]
    s = polygon.sides
    d = segments_min_distance([s[i] for i, _ in pairs], [s[j] for _, j in pairs])
    return float(d.min())


def min_midpoint_adjacent_distance(polygon: FundamentalPolygon) -> float:
    """epsilon: minimum distance from a side midpoint to either neighbouring side."""
    s = polygon.sides
    n = len(s)
    best = math.inf
    for k in range(n):
        m = segment_midpoint(s[k])
        best = min(best, point_to_segment_distance(m, s[k - 1]), point_to_segment_distance(m, s[(k + 1) % n]))
    return float(best)


def polygon_diameter(polygon: FundamentalPolygon) -> float:
    v = np.array(polygon.vertices)
    return float(hyperbolic_distance(v[:, None], v[None, :]).max())


def k_star_from(diameter: float, shell_bound: float) -> int:
    return max(1, int(math.floor(1.0 + diameter / shell_bound)))


# ---------------------------------------------------------------------------
# neighbour set and tessellation patches


def _touching(polygon: FundamentalPolygon, cand: IsometryArray, vertex_tol: float) -> np.ndarray:
    """Mask of candidates g for which gP shares a vertex or boundary point with P."""
    m = len(cand)
    out = np.zeros(m, dtype=bool)
    if m == 0:
        return out
    c = polygon.center
    reach = 2.0 * polygon.circumradius + 1e-6
    near = np.nonzero(hyperbolic_distance(c, cand.apply(c)) <= reach)[0]
    if len(near) == 0:
        return out
    verts = np.array(polygon.vertices)
    sub = cand[near]
    imgs = (sub.a[:, None] * verts[None, :] + np.conj(sub.c)[:, None]) / (
        sub.c[:, None] * verts[None, :] + np.conj(sub.a)[:, None])
    tree = cKDTree(np.stack([verts.real, verts.imag], axis=1))
    dist, _ = tree.query(np.stack([imgs.real.ravel(), imgs.imag.ravel()], axis=1), k=1)
    shared = (dist.reshape(imgs.shape) < vertex_tol).any(axis=1)
    out[near[shared]] = True
    rest = near[~shared]
    if len(rest):
        # touching without a shared vertex means a vertex of one polygon lies
        # on a side of the other
        sub = cand[rest]
        imgs = (sub.a[:, None] * verts[None, :] + np.conj(sub.c)[:, None]) / (
            sub.c[:, None] * verts[None, :] + np.conj(sub.a)[:, None])
        pre = (np.conj(sub.a)[:, None] * verts[None, :] - np.conj(sub.c)[:, None]) / (
            -sub.c[:, None] * verts[None, :] + sub.a[:, None])
        near_closure = (polygon.side_coordinates(imgs).min(axis=-1) > -1e-6).any(axis=1)
        near_closure |= (polygon.side_coordinates(pre).min(axis=-1) > -1e-6).any(axis=1)
        if near_closure.any():
            rest = rest[near_closure]
            d1 = polygon.boundary_distance(imgs[near_closure]).min(axis=1)
            d2 = polygon.boundary_distance(pre[near_closure]).min(axis=1)
            out[rest[np.minimum(d1, d2) < vertex_tol]] = True
    return out


def compute_neighbor_set_T(polygon: FundamentalPolygon, generators: Sequence[Isometry] | None = None,
                           vertex_tol: float = VERTEX_TOL, cap: int = DEFAULT_CAP) -> IsometryArray:
    """Breadth-first search over generator words, keeping g with gP touching P.

    Returns the identity first, then the kept elements in discovery order.
    """
    gens = IsometryArray.from_isometries(generators if generators is not None else polygon.generators)
    kept = IsometryArray([1.0], [0.0])
    frontier = kept
    while len(frontier):
        cand = frontier.products(gens).unique(KEY_TOL)
        # rejected elements are cheap to re-test, so only kept ones are tracked
        cand = cand[_touching(polygon, cand, vertex_tol)]
        frontier = difference(cand, kept)
        kept = kept.concat(frontier)
        if len(kept) > cap:
            raise ResourceLimitError(f"neighbour search exceeded {cap} elements; check the pairing data")
    return kept


def sample_in_polygon(polygon: FundamentalPolygon, n: int, rng: np.random.Generator) -> np.ndarray:
    """n points distributed by hyperbolic area restricted to P (rejection sampling)."""
    rho_max = polygon.circumradius
    c = polygon.center
    out: list[np.ndarray] = []
    got = 0
    while got < n:
        m = max(64, 4 * (n - got))
        rho = np.arccosh(1.0 + rng.random(m) * (math.cosh(rho_max) - 1.0))
        theta = rng.random(m) * 2.0 * math.pi
        z0 = np.tanh(rho / 2.0) * np.exp(1j * theta)
        z = (z0 + c) / (1.0 + np.conj(c) * z0)
        z = z[polygon.contains(z, tol=0.0)]
        out.append(z)
        got += len(z)
    return np.concatenate(out)[:n]


@dataclass(frozen=True, eq=False)
class SurfaceModel:
    """A fundamental polygon together with its cached geometric constants.

    ``delta_min``/``k_star`` are None for polygons with fewer than five
    sides, where the shell bound is unavailable (the search still works).
    """

    polygon: FundamentalPolygon
    generators: tuple[Isometry, ...]
    neighbor_set_T: IsometryArray
    delta_min: float | None
    epsilon_min: float
    shell_crossing_lower_bound: float | None
    polygon_diameter: float
    k_star: int | None
    surface_diameter_override: float | None = None
    name: str = "custom"
    cap: int = DEFAULT_CAP
    tol: float = DEFAULT_TOL
    _patches: list = field(default_factory=list, repr=False)
    _balls: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def diameter_used(self) -> float:
        """D in the k* bound and the default search bound."""
        if self.surface_diameter_override is not None:
            return self.surface_diameter_override
        return self.polygon_diameter

    @property
    def n_sides(self) -> int:
        return self.polygon.n_sides

    @cached_property
    def generator_array(self) -> IsometryArray:
        return IsometryArray.from_isometries(self.generators)

    def patch(self, k: int) -> IsometryArray:
        """T^k as a deduplicated array ordered by shell (identity first)."""
        if k < 0:
            raise ValueError("k must be >= 0")
        with self._lock:
            if not self._patches:
                self._patches.append(IsometryArray([1.0], [0.0]))
                self._patches.append(self.neighbor_set_T)
            while len(self._patches) <= k:
                self._patches.append(self._grow(self._patches[-1], self._patches[-2]))
            return self._patches[k]

    def shell(self, k: int) -> IsometryArray:
        """T^k minus T^(k-1); shell(0) is the identity alone."""
        cur = self.patch(k)
        if k == 0:
            return cur
        return cur[len(self.patch(k - 1)):]

    def _grow(self, cur: IsometryArray, prev: IsometryArray) -> IsometryArray:
        frontier = cur[len(prev):]
        T = self.neighbor_set_T
        need = len(frontier) * len(T)
        if need > self.cap:
            k = len(self._patches)
            raise ResourceLimitError(
                f"T^{k} needs {need} products (cap {self.cap}); "
                f"|T|^k estimate {float(len(T)) ** k:.3g}")
        step = max(1, _CHUNK // max(1, len(T)))
        new = IsometryArray([], [])
        for i in range(0, len(frontier), step):
            part = difference(frontier[i:i + step].products(T).unique(), cur)
            new = difference(part, new).concat(new) if len(new) else part
            if len(cur) + len(new) > self.cap:
                raise ResourceLimitError(f"T^{len(self._patches)} exceeds {self.cap} elements")
        return cur.concat(new)


def compute_k_star(surface: SurfaceModel, use_override: bool = True) -> int:
    if surface.shell_crossing_lower_bound is None:
        raise PolygonError("k* is unavailable for polygons with fewer than five sides")
    d = surface.diameter_used if use_override else surface.polygon_diameter
    return k_star_from(d, surface.shell_crossing_lower_bound)


def build_surface(polygon: FundamentalPolygon, surface_diameter_override: float | None = None,
                  name: str = "custom", cap: int = DEFAULT_CAP, tol: float = DEFAULT_TOL) -> SurfaceModel:
    diam = polygon_diameter(polygon)
    eps = min_midpoint_adjacent_distance(polygon)
    if polygon.n_sides >= 5:
        delta = min_nonadjacent_side_distance(polygon)
        bound = min(delta, 2.0 * eps)
    else:
        delta = bound = None
    for label, val in (("epsilon", eps), ("diam(P)", diam), ("delta", delta)):
        if val is not None and not (math.isfinite(val) and val > 0):
            raise PolygonError(f"{label} = {val!r} is not a positive finite length")
    if surface_diameter_override is not None:
        if not (0 < surface_diameter_override <= diam + 1e-12):
            raise PolygonError("surface diameter override must lie in (0, diam(P)]")
    used = surface_diameter_override if surface_diameter_override is not None else diam
    k_star = k_star_from(used, bound) if bound is not None else None
    T = compute_neighbor_set_T(polygon, cap=cap)
    return SurfaceModel(
        polygon=polygon,
        generators=polygon.generators,
        neighbor_set_T=T,
        delta_min=delta,
        epsilon_min=eps,
        shell_crossing_lower_bound=bound,
        polygon_diameter=diam,
        k_star=k_star,
        surface_diameter_override=surface_diameter_override,
        name=name,
        cap=cap,
        tol=tol,
    )
