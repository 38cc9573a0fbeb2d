"""Reference computations independent of the library code paths.

Frozen values at the bottom were produced by these oracles (mpmath at 50
digits) and are checked against them in test_oracles.py.
"""

import itertools
import math

import mpmath as mp
import numpy as np

mp.mp.dps = 50


def mp_distance(p, q):
    """arccosh(1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2))) at 50 digits."""
    p, q = mp.mpc(p), mp.mpc(q)
    return mp.acosh(1 + 2 * abs(p - q) ** 2 / ((1 - abs(p) ** 2) * (1 - abs(q) ** 2)))


def integrate_ds_on_diameter(x):
    """Length of [0, x] under ds = 2|dz| / (1 - |z|^2) by quadrature."""
    return mp.quad(lambda t: 2 / (1 - t * t), [0, x])


def geodesic_points(p, q, n):
    """n points along the geodesic p -> q via the explicit boost to the origin."""
    p, q = complex(p), complex(q)
    qq = (q - p) / (1 - p.conjugate() * q)
    t = np.linspace(0.0, 1.0, n)
    # geodesic from 0 to qq is the radial segment, parametrized by hyperbolic length
    L = 2 * math.atanh(abs(qq))
    rad = np.tanh(t * L / 2) * qq / abs(qq)
    return (rad + p) / (1 + p.conjugate() * rad)


def np_distance(p, q):
    p, q = np.asarray(p), np.asarray(q)
    return np.arccosh(1 + 2 * np.abs(p - q) ** 2 / ((1 - np.abs(p) ** 2) * (1 - np.abs(q) ** 2)))


def grid_point_segment(z, p, q, n=20001):
    return float(np_distance(z, geodesic_points(p, q, n)).min())


def grid_segment_segment(s1, s2, n=200, refine=3):
    """Grid minimization over both arclength parameters with local refinement."""
    p1, q1 = s1
    p2, q2 = s2
    L1 = float(mp_distance(p1, q1))
    L2 = float(mp_distance(p2, q2))

    def pts(p, q, L, a, b, m):
        t = np.linspace(a, b, m) / L
        return geodesic_points_param(p, q, t)

    lo1, hi1, lo2, hi2 = 0.0, L1, 0.0, L2
    best = math.inf
    for _ in range(refine + 1):
        x = pts(p1, q1, L1, lo1, hi1, n)
        y = pts(p2, q2, L2, lo2, hi2, n)
        d = np_distance(x[:, None], y[None, :])
        i, j = np.unravel_index(np.argmin(d), d.shape)
        best = min(best, float(d[i, j]))
        h1 = (hi1 - lo1) / (n - 1) * 2
        h2 = (hi2 - lo2) / (n - 1) * 2
        t1 = lo1 + i * (hi1 - lo1) / (n - 1)
        t2 = lo2 + j * (hi2 - lo2) / (n - 1)
        lo1, hi1 = max(0.0, t1 - h1), min(L1, t1 + h1)
        lo2, hi2 = max(0.0, t2 - h2), min(L2, t2 + h2)
    return best


def geodesic_points_param(p, q, t):
    p, q = complex(p), complex(q)
    qq = (q - p) / (1 - p.conjugate() * q)
    L = 2 * math.atanh(abs(qq))
    rad = np.tanh(np.asarray(t) * L / 2) * qq / abs(qq)
    return (rad + p) / (1 + p.conjugate() * rad)


def torus_nine_images(p, q):
    return min(math.hypot(p[0] - q[0] - m, p[1] - q[1] - n) for m, n in itertools.product((-1, 0, 1), repeat=2))


def mobius(a, c, z):
    return (a * z + np.conj(c)) / (c * z + np.conj(a))


def bolza_T_by_word_ball(g, radius):
    """T from all generator words of length <= radius, filtered by shared vertices.

    Uses only the closed-form vertices/generators and brute-force matrix
    products (no library code), deduplicated by the image of the centre.
    """
    R = math.acosh(1 / math.tan(math.pi / (4 * g)) ** 2)
    s = 2 * math.acosh(1 / math.tan(math.pi / (4 * g)))
    verts = np.tanh(R / 2) * np.exp(1j * (np.arange(4 * g) - 0.5) * np.pi / (2 * g))
    gens = []
    for k in range(2 * g):
        a, c = 1.0 + 0j, math.tanh(s / 2) * np.exp(-1j * k * np.pi / (2 * g))
        n = math.sqrt(abs(a) ** 2 - abs(c) ** 2)
        gens += [(a / n, c / n), (np.conj(a / n), -c / n)]
    elems = {0j: (1.0 + 0j, 0j)}
    frontier = [(1.0 + 0j, 0j)]
    for _ in range(radius):
        nxt = []
        for a1, c1 in frontier:
            for a2, c2 in gens:
                a = a1 * a2 + np.conj(c1) * c2
                c = c1 * a2 + np.conj(a1) * c2
                key = complex(np.round(mobius(a, c, 0.0), 9))
                if key not in elems:
                    elems[key] = (a, c)
                    nxt.append((a, c))
        frontier = nxt
    kept = []
    for a, c in elems.values():
        img = mobius(a, c, verts)
        if np.min(np.abs(img[:, None] - verts[None, :])) < 1e-7:
            kept.append((a, c))
    return kept


# frozen oracle values (mpmath, 50 digits, rounded to 17 significant)
LN3 = 1.0986122886681097
BOLZA2_GAMMA0_AT_0 = 0.91017972112445468         # tanh(arccosh(1 + sqrt 2))
BOLZA2_DELTA = 2.2567679299326022                # 2 arccosh(2 cos^2(pi/8))
BOLZA2_EPSILON = 1.2242262238390379              # asinh(sinh(s/2) sin(pi/4))
BOLZA2_DIAM_P = 4.8969048953561516               # 2 arccosh(3 + 2 sqrt 2)
BOLZA2_R = 2.4484524476780758                    # arccosh(3 + 2 sqrt 2)
BOLZA2_D_CLOSED_FORM = 1.5285709194809982        # arccosh(cot(pi/8))
