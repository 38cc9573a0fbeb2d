"""Compiled inner loop of the depth-first tessellation search."""

from __future__ import annotations

import math

import numpy as np
from numba import njit, types
from numba.typed import Dict

from .isometry import KEY_TOL

_KEY = types.UniTuple(types.int64, 5)


@njit(cache=True)
def _side_h(u, lam, p, rot, r, lam_p):
    # sinh^2(d/2) from u to the side framed as [0, r]; mirrors framed_sinh2_half
    den = 1.0 - p.conjugate() * u
    w = rot * (u - p) / den
    lam_w = lam * lam_p / (den.real * den.real + den.imag * den.imag)
    m2 = w.real * w.real + w.imag * w.imag
    if w.real < 0.0:
        return m2 / lam_w
    if w.real * (1.0 + r * r) > r * (1.0 + m2):
        dx = w.real - r
        return (dx * dx + w.imag * w.imag) / (lam_w * (1.0 - r * r))
    x = 2.0 * abs(w.imag) / lam_w
    return x * x / (2.0 * (math.sqrt(1.0 + x * x) + 1.0))


@njit(cache=True)
def _key(a, c):
    e = math.ceil(math.log2(max(1.0, abs(a))))
    pitch = KEY_TOL * 2.0 ** e
    v = np.array([a.real, a.imag, c.real, c.imag]) / pitch
    sign = 1.0
    for x in v:
        if abs(x) > 1.0:
            sign = 1.0 if x > 0 else -1.0
            break
    return (np.int64(e), np.int64(np.rint(sign * v[0])), np.int64(np.rint(sign * v[1])),
            np.int64(np.rint(sign * v[2])), np.int64(np.rint(sign * v[3])))


@njit(cache=True)
def search(z, w, ga, gc, p, rot, r, lam_p, bound, tol, corrected, max_steps):
    """Returns (best, a, c, steps, evaluated, overflow)."""
    n_gen = ga.shape[0]
    n_side = p.shape[0]
    lam_z = 1.0 - (z.real * z.real + z.imag * z.imag)
    lam_w = 1.0 - (w.real * w.real + w.imag * w.imag)
    best = 2.0 * math.asinh(abs(z - w) / math.sqrt(lam_z * lam_w))
    best_a = 1.0 + 0j
    best_c = 0j
    seen = Dict.empty(key_type=_KEY, value_type=types.boolean)
    if corrected:
        seen[_key(1.0 + 0j, 0j)] = True
    sa = [1.0 + 0j]
    sc = [0j]
    sd = [0.0]
    steps = 0
    evaluated = 0
    while len(sa) > 0:
        a = sa.pop()
        c = sc.pop()
        d_parent = sd.pop()
        steps += 1
        if steps > max_steps:
            return best, best_a, best_c, steps, evaluated, True
        if steps > 1:
            gw = (a * w + c.conjugate()) / (c * w + a.conjugate())
            lam_gw = 1.0 - (gw.real * gw.real + gw.imag * gw.imag)
            d = 2.0 * math.asinh(abs(z - gw) / math.sqrt(lam_z * lam_gw))
            evaluated += 1
            if d < best - 1e-12:
                best = d
                best_a = a
                best_c = c
        den = a - c * z
        u = (a.conjugate() * z - c.conjugate()) / den
        lam_u = lam_z / (den.real * den.real + den.imag * den.imag)
        limit = min(bound, best) if corrected else bound
        for i in range(n_gen):
            den_i = ga[i] - gc[i] * u
            ui = (ga[i].conjugate() * u - gc[i].conjugate()) / den_i
            lam_i = lam_u / (den_i.real * den_i.real + den_i.imag * den_i.imag)
            h = np.inf
            for j in range(n_side):
                hj = _side_h(ui, lam_i, p[j], rot[j], r[j], lam_p[j])
                if hj < h:
                    h = hj
            dc = 2.0 * math.asinh(math.sqrt(h))
            evaluated += 1
            if corrected:
                ok = dc > d_parent - tol and dc < limit
            else:
                ok = dc > d_parent + tol and dc < limit
            if not ok:
                continue
            na = a * ga[i] + c.conjugate() * gc[i]
            nc = c * ga[i] + a.conjugate() * gc[i]
            s = math.sqrt(abs(abs(na) ** 2 - abs(nc) ** 2))
            na /= s
            nc /= s
            if corrected:
                k = _key(na, nc)
                if k in seen:
                    continue
                seen[k] = True
            sa.append(na)
            sc.append(nc)
            sd.append(dc)
    return best, best_a, best_c, steps, evaluated, False
