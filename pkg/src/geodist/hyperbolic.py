"""Poincare disk primitives: distances, geodesic segments, midpoints.

Points are plain Python complex numbers (or numpy complex arrays for the
vectorized helpers) with modulus strictly below one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

#: geometric coincidence tolerance, in hyperbolic length
DEFAULT_TOL = 1e-9


def as_disk_point(z) -> complex:
    z = complex(z)
    if not abs(z) < 1.0:
        raise ValueError(f"point {z!r} is not strictly inside the unit disk")
    return z


def _check_inside(*zs):
    for z in zs:
        if np.any(np.abs(z) >= 1.0):
            raise ValueError("points must lie strictly inside the unit disk")


def hyperbolic_distance(p, q):
    """Poincare-disk distance between p and q (scalars or broadcastable arrays).

    Uses delta = 2 asinh(|p - q| / sqrt((1 - |p|^2)(1 - |q|^2))), which is the
    arccosh form rewritten through cosh(x) = 1 + 2 sinh^2(x/2); it has no
    cancellation for nearby points.
    """
    _check_inside(p, q)
    num = np.abs(np.subtract(p, q))
    den = np.sqrt((1.0 - np.abs(p) ** 2) * (1.0 - np.abs(q) ** 2))
    out = 2.0 * np.arcsinh(num / den)
    if np.ndim(out) == 0:
        return float(out)
    return out


def _dist_scalar(p: complex, q: complex) -> float:
    return 2.0 * math.asinh(abs(p - q) / math.sqrt((1.0 - abs(p) ** 2) * (1.0 - abs(q) ** 2)))


def to_origin(p: complex, z):
    """Disk automorphism sending p to 0, applied to z."""
    return (z - p) / (1.0 - p.conjugate() * z)


def from_origin(p: complex, z):
    """Inverse of :func:`to_origin`."""
    return (z + p) / (1.0 + p.conjugate() * z)


@dataclass(frozen=True)
class GeodesicSegment:
    """Geodesic arc between two distinct disk points."""

    p: complex
    q: complex

    def __post_init__(self):
        p, q = as_disk_point(self.p), as_disk_point(self.q)
        if abs(p - q) <= 1e-14:
            raise ValueError("degenerate geodesic segment (p == q)")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def length(self) -> float:
        return _dist_scalar(self.p, self.q)

    @property
    def frame(self) -> tuple[complex, complex, float]:
        """(p, rot, r): z -> rot * to_origin(p, z) maps the segment onto [0, r]."""
        qq = to_origin(self.p, self.q)
        return self.p, qq.conjugate() / abs(qq), abs(qq)

    def point_at(self, t):
        """Point at hyperbolic arclength t from p (t may be an array)."""
        p, rot, _ = self.frame
        x = np.tanh(np.asarray(t, dtype=float) / 2.0)
        out = from_origin(p, x / rot)
        if np.ndim(out) == 0:
            return complex(out)
        return out

    def reversed(self) -> "GeodesicSegment":
        return GeodesicSegment(self.q, self.p)


def framed_sinh2_half(u, lam, p, rot, r, lam_p=None):
    """sinh^2(d / 2) for the distance d from points u to sides given by frames.

    Each side is conjugated onto [0, r] of the real diameter by
    w = rot * (u - p) / (1 - conj(p) u). The foot of the perpendicular lies in
    [0, r] iff Re w >= 0 and Re w (1 + r^2) <= r (1 + |w|^2); then
    sinh(d) = 2 |Im w| / (1 - |w|^2). Otherwise the nearest point is the
    endpoint 0 or r. ``lam`` is 1 - |u|^2, supplied by the caller because it
    can be tracked more accurately than recomputed near the boundary; all
    arguments broadcast against u.
    """
    if lam_p is None:
        lam_p = 1.0 - np.abs(p) ** 2
    den = 1.0 - np.conj(p) * u
    w = rot * (u - p) / den
    # 1 - |w|^2 from the conformal factor of the conjugation
    lam_w = lam * lam_p / (den.real ** 2 + den.imag ** 2)
    m2 = w.real ** 2 + w.imag ** 2
    x = 2.0 * np.abs(w.imag) / lam_w
    perp = x * x / (2.0 * (np.sqrt(1.0 + x * x) + 1.0))
    to_p = m2 / lam_w
    to_q = ((w.real - r) ** 2 + w.imag ** 2) / (lam_w * (1.0 - r * r))
    before = w.real < 0.0
    after = w.real * (1.0 + r * r) > r * (1.0 + m2)
    return np.where(before, to_p, np.where(after, to_q, perp))


def sinh2_half_to_distance(h):
    return 2.0 * np.arcsinh(np.sqrt(h))


def framed_distance(u, lam, p, rot, r):
    """Distance from points u to sides given by frames; see :func:`framed_sinh2_half`."""
    return sinh2_half_to_distance(framed_sinh2_half(u, lam, p, rot, r))


def point_to_segment_distance(z, s: GeodesicSegment):
    """Minimum hyperbolic distance from z (scalar or array) to the segment s.

    The segment is conjugated onto [0, r] of the real diameter; there the
    foot of the perpendicular is explicit and the distance to the full
    geodesic is asinh(2|Im w| / (1 - |w|^2)). Outside [0, r] the nearest
    point is an endpoint.
    """
    _check_inside(z)
    p, rot, r = s.frame
    z = np.asarray(z, dtype=complex)
    out = framed_distance(z, 1.0 - np.abs(z) ** 2, p, rot, r)
    if out.ndim == 0:
        return float(out)
    return out


def segment_midpoint(s: GeodesicSegment) -> complex:
    p, rot, r = s.frame
    half = math.tanh(math.atanh(r) / 2.0)
    return complex(from_origin(p, half / rot))


def _golden_min(f, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200):
    a, b = lo, hi
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
    t = 0.5 * (a + b)
    return t, f(t)


def segment_to_segment_distance(s1: GeodesicSegment, s2: GeodesicSegment, tol: float = 1e-12) -> float:
    """Minimum distance between two geodesic segments.

    Golden-section search on t -> d(s1(t), s2) over the arclength of s1; the
    function is convex along a geodesic, so the search is exact up to tol.
    """
    length = s1.length

    def f(t):
        return point_to_segment_distance(s1.point_at(t), s2)

    _, best = _golden_min(f, 0.0, length, tol=tol)
    return float(min(best, f(0.0), f(length)))


def segments_min_distance(s1s, s2s, tol: float = 1e-12) -> np.ndarray:
    """Batched :func:`segment_to_segment_distance` over paired lists.

    Runs the same golden-section iteration on all pairs at once.
    """
    s1s, s2s = list(s1s), list(s2s)
    if not s1s:
        return np.zeros(0)
    fr1 = [s.frame for s in s1s]
    fr2 = [s.frame for s in s2s]
    p1 = np.array([f[0] for f in fr1])
    rot1 = np.array([f[1] for f in fr1])
    L = np.array([s.length for s in s1s])
    p2 = np.array([f[0] for f in fr2])
    rot2 = np.array([f[1] for f in fr2])
    r2 = np.array([f[2] for f in fr2])

    def f(t):
        u = from_origin(p1, np.tanh(t / 2.0) / rot1)
        return framed_distance(u, 1.0 - np.abs(u) ** 2, p2, rot2, r2)

    a = np.zeros_like(L)
    b = L.copy()
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    n_iter = int(math.ceil(math.log(max(L.max(), tol) / tol) / -math.log(GOLDEN))) + 2
    for _ in range(max(n_iter, 1)):
        left = f1 <= f2
        # left: keep [a, x2]; right: keep [x1, b]
        b = np.where(left, x2, b)
        a = np.where(left, a, x1)
        nx1 = np.where(left, b - GOLDEN * (b - a), x2)
        nx2 = np.where(left, x1, a + GOLDEN * (b - a))
        nf1 = np.where(left, np.nan, f2)
        nf2 = np.where(left, f1, np.nan)
        fx = f(np.where(left, nx1, nx2))
        f1 = np.where(left, fx, nf1)
        f2 = np.where(left, nf2, fx)
        x1, x2 = nx1, nx2
    mid = f(0.5 * (a + b))
    return np.minimum.reduce([mid, f(np.zeros_like(L)), f(L)])
