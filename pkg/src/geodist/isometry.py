"""PSU(1,1) isometries of the Poincare disk.

An element is stored as the pair (a, c) of the matrix [[a, conj(c)], [c, conj(a)]]
with |a|^2 - |c|^2 = 1, acting by z -> (a z + conj(c)) / (c z + conj(a)).
(a, c) and (-a, -c) are the same isometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .errors import ResourceLimitError

KEY_TOL = 1e-6
DEFAULT_CAP = 10**7


@dataclass(frozen=True, eq=False)
class Isometry:
    a: complex
    c: complex

    def __post_init__(self):
        a, c = complex(self.a), complex(self.c)
        det = abs(a) ** 2 - abs(c) ** 2
        # |a|^2 - |c|^2 cancels, so its rounding error grows like |a|^2
        if not abs(det - 1.0) < 1e-9 * max(1.0, abs(a) ** 2):
            raise ValueError(f"|a|^2 - |c|^2 = {det!r}, expected 1 (use Isometry.normalized)")
        s = math.sqrt(det)
        object.__setattr__(self, "a", a / s)
        object.__setattr__(self, "c", c / s)

    @classmethod
    def normalized(cls, a, c) -> "Isometry":
        """Projective input: rescale (a, c) so that |a|^2 - |c|^2 = 1."""
        det = abs(a) ** 2 - abs(c) ** 2
        if det <= 0:
            raise ValueError("matrix does not preserve the unit disk")
        s = math.sqrt(det)
        return cls(complex(a) / s, complex(c) / s)

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(1.0, 0.0)

    @property
    def determinant(self) -> float:
        return abs(self.a) ** 2 - abs(self.c) ** 2

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.c.conjugate()], [self.c, self.a.conjugate()]])

    def __call__(self, z):
        return apply(self, z)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return compose(self, other)

    def inverse(self) -> "Isometry":
        return inverse(self)

    def key(self, tol: float = KEY_TOL) -> tuple[int, int, int, int]:
        return canonical_key(self, tol)

    def isclose(self, other: "Isometry", tol: float = 1e-9) -> bool:
        d1 = abs(self.a - other.a) + abs(self.c - other.c)
        d2 = abs(self.a + other.a) + abs(self.c + other.c)
        return min(d1, d2) <= tol * max(1.0, abs(self.a))

    def __repr__(self):
        return f"Isometry(a={self.a:.12g}, c={self.c:.12g})"


IDENTITY = Isometry(1.0, 0.0)


def apply(g: Isometry, z):
    return (g.a * z + g.c.conjugate()) / (g.c * z + g.a.conjugate())


def _compose_raw(a1, c1, a2, c2):
    a = a1 * a2 + np.conj(c1) * c2
    c = c1 * a2 + np.conj(a1) * c2
    s = np.sqrt(np.abs(np.abs(a) ** 2 - np.abs(c) ** 2))
    return a / s, c / s


def compose(g1: Isometry, g2: Isometry) -> Isometry:
    """g1 @ g2, i.e. z -> g1(g2(z)), renormalized to unit determinant."""
    a = g1.a * g2.a + g1.c.conjugate() * g2.c
    c = g1.c * g2.a + g1.a.conjugate() * g2.c
    return Isometry.normalized(a, c)


def inverse(g: Isometry) -> Isometry:
    return Isometry(g.a.conjugate(), -g.c)


def _key_rows(v: np.ndarray, tol: float) -> np.ndarray:
    big = np.abs(v) > tol
    first = np.argmax(big, axis=1)
    sign = np.sign(v[np.arange(len(v)), first])
    sign[~big.any(axis=1)] = 1.0
    return np.round(v * sign[:, None] / tol).astype(np.int64)


def scaled_key_rows(a: np.ndarray, c: np.ndarray, tol: float = KEY_TOL) -> np.ndarray:
    """Like canonical keys, but on a grid of pitch tol * 2^e with 2^e >= max(1, |a|).

    Rounding noise grows with the entries, while distinct elements differ by
    an amount comparable to |a|, so a relative pitch separates them at every
    scale. The exponent e is the first key component.
    """
    e = np.ceil(np.log2(np.maximum(1.0, np.abs(a))))
    pitch = tol * np.exp2(e)
    rows = _key_rows(_entries(a, c) / pitch[:, None], 1.0)
    return np.column_stack([e.astype(np.int64), rows])


def canonical_key(g: Isometry, tol: float = KEY_TOL) -> tuple[int, int, int, int]:
    """Hashable key identifying g up to sign and numerical noise below tol.

    Entries are rounded to an absolute grid, so for elements with large
    entries :func:`unique_indices` is the reliable comparison.
    """
    v = np.array([[g.a.real, g.a.imag, g.c.real, g.c.imag]])
    return tuple(int(x) for x in _key_rows(v, tol)[0])


def _entries(a: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.stack([a.real, a.imag, c.real, c.imag], axis=-1)


class IsometryArray:
    """An ordered collection of isometries held as two complex arrays."""

    def __init__(self, a, c):
        self.a = np.asarray(a, dtype=complex).reshape(-1)
        self.c = np.asarray(c, dtype=complex).reshape(-1)
        if self.a.shape != self.c.shape:
            raise ValueError("a and c must have the same length")

    @classmethod
    def from_isometries(cls, gs: Iterable[Isometry]) -> "IsometryArray":
        gs = list(gs)
        return cls([g.a for g in gs], [g.c for g in gs])

    def __len__(self):
        return len(self.a)

    def __getitem__(self, i):
        if isinstance(i, (int, np.integer)):
            return Isometry(self.a[i], self.c[i])
        return IsometryArray(self.a[i], self.c[i])

    def __iter__(self):
        for a, c in zip(self.a, self.c):
            yield Isometry(a, c)

    def apply(self, z):
        """Images of the point z under every element (array of len(self))."""
        return (self.a * z + np.conj(self.c)) / (self.c * z + np.conj(self.a))

    def inverses(self) -> "IsometryArray":
        return IsometryArray(np.conj(self.a), -self.c)

    def products(self, other: "IsometryArray") -> "IsometryArray":
        """All products s @ o for s in self, o in other (row-major)."""
        a, c = _compose_raw(self.a[:, None], self.c[:, None], other.a[None, :], other.c[None, :])
        return IsometryArray(a.ravel(), c.ravel())

    def keys(self, tol: float = KEY_TOL) -> np.ndarray:
        return _key_rows(_entries(self.a, self.c), tol)

    def concat(self, other: "IsometryArray") -> "IsometryArray":
        return IsometryArray(np.concatenate([self.a, other.a]), np.concatenate([self.c, other.c]))

    def unique(self, tol: float = KEY_TOL) -> "IsometryArray":
        return self[unique_indices(self.a, self.c, tol)]

    def contains(self, g: Isometry, tol: float = KEY_TOL) -> bool:
        return bool(len(self) and (_match_mask(self, IsometryArray([g.a], [g.c]), tol)).any())

    def __repr__(self):
        return f"IsometryArray(n={len(self)})"


def _scale(a: np.ndarray) -> np.ndarray:
    return np.maximum(1.0, np.abs(a))


def unique_indices(a: np.ndarray, c: np.ndarray, tol: float = KEY_TOL) -> np.ndarray:
    """Indices of the first representative of each isometry, in input order.

    Two entries are merged when (a, c) or (-a, -c) of one lies within
    tol * max(1, |a|) (max-norm) of the other. Rounding noise in a product
    grows with the size of its entries, hence the relative tolerance.
    Clustering with a k-d tree rather than rounding to a grid avoids
    splitting a cluster that straddles a grid line.
    """
    n = len(a)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    a, c = np.asarray(a), np.asarray(c)
    v = _entries(a, c)
    vv = np.vstack([v, -v])
    tree = cKDTree(vv)
    sc = _scale(a)
    pairs = tree.query_pairs(r=tol * sc.max(), p=np.inf, output_type="ndarray")
    if len(pairs) == 0:
        return np.arange(n)
    gap = np.abs(vv[pairs[:, 0]] - vv[pairs[:, 1]]).max(axis=1)
    i, j = pairs[:, 0] % n, pairs[:, 1] % n
    keep = (i != j) & (gap <= tol * np.maximum(sc[i], sc[j]))
    graph = coo_matrix((np.ones(keep.sum()), (i[keep], j[keep])), shape=(n, n))
    _, labels = connected_components(graph, directed=False)
    _, first = np.unique(labels, return_index=True)
    return np.sort(first)


def _match_mask(known: IsometryArray, query: IsometryArray, tol: float) -> np.ndarray:
    """Boolean mask over query: element already present in known."""
    if len(known) == 0 or len(query) == 0:
        return np.zeros(len(query), dtype=bool)
    kv = _entries(known.a, known.c)
    tree = cKDTree(np.vstack([kv, -kv]))
    sq = _scale(query.a)
    dist, _ = tree.query(_entries(query.a, query.c), k=1, p=np.inf, distance_upper_bound=tol * sq.max())
    return dist <= tol * sq


def difference(new: IsometryArray, known: IsometryArray, tol: float = KEY_TOL) -> IsometryArray:
    """Elements of new that do not occur in known."""
    return new[~_match_mask(known, new, tol)]


def close_under_inverses(gens: Sequence[Isometry], tol: float = KEY_TOL) -> IsometryArray:
    arr = IsometryArray.from_isometries(gens)
    return arr.concat(arr.inverses()).unique(tol)


def word_ball(generators: Sequence[Isometry] | IsometryArray, radius: int,
              cap: int = DEFAULT_CAP, tol: float = KEY_TOL) -> IsometryArray:
    """All products of at most ``radius`` generators, deduplicated, identity first.

    The generator list must already be closed under inverses.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    gens = generators if isinstance(generators, IsometryArray) else IsometryArray.from_isometries(generators)
    ball = IsometryArray([1.0], [0.0])
    frontier = ball
    for _ in range(radius):
        if len(frontier) * len(gens) > cap:
            raise ResourceLimitError(
                f"word ball would need {len(frontier) * len(gens)} products (cap {cap})")
        cand = frontier.products(gens).unique(tol)
        frontier = difference(cand, ball, tol)
        if len(frontier) == 0:
            break
        ball = ball.concat(frontier)
        if len(ball) > cap:
            raise ResourceLimitError(f"word ball exceeds {cap} elements")
    return ball
