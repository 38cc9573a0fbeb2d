"""geodist command line: dist, info, bench, verify, export."""

from __future__ import annotations

import argparse
import csv
import math
import re
import sys
import time
from dataclasses import dataclass

import numpy as np

from .baselines import TorusPoint, sphere_distance, torus_distance, torus_lattice_distance
from .bolza import bolza_params, build_bolza
from .distance import (
    brute_force_oracle,
    distance_algorithm,
    distance_formula,
    reduce_to_fundamental,
)
from .errors import GeodistError
from .hyperbolic import DEFAULT_TOL
from .surface import SurfaceModel, sample_in_polygon
from .surface_file import load_surface

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2
_NEG_NUMBER = re.compile(r"^-\.?\d")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class BenchRecord:
    genus: int
    method: str
    mean_runtime_s: float
    polygons_examined: float
    pairs: int


# ---------------------------------------------------------------------------
# argument helpers


def parse_coords(text: str, n: int) -> tuple[float, ...]:
    try:
        vals = tuple(float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse coordinates {text!r}") from None
    if len(vals) != n or not all(math.isfinite(v) for v in vals):
        raise UsageError(f"expected {n} comma-separated numbers, got {text!r}")
    return vals


def open_surface(spec: str):
    """'torus', 'sphere', a SurfaceModel for 'bolza:<g>', or one loaded from a file."""
    if spec in ("torus", "sphere"):
        return spec
    if spec.startswith("bolza:"):
        try:
            g = int(spec.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad genus in {spec!r}") from None
        if g < 2:
            raise UsageError("Bolza genus must be >= 2")
        return build_bolza(g)
    return load_surface(spec)


def _hyperbolic(spec: str, surface) -> SurfaceModel:
    if isinstance(surface, str):
        raise UsageError(f"command needs a hyperbolic surface, got {spec!r}")
    return surface


def _fmt(x: float) -> str:
    return f"{x:.15g}"


# ---------------------------------------------------------------------------
# commands


def cmd_dist(args, out) -> int:
    surface = open_surface(args.surface)
    if surface == "torus":
        p, q = (TorusPoint(*parse_coords(t, 2)) for t in (args.z, args.w))
        print(f"distance: {_fmt(torus_distance(p, q))}", file=out)
        return EXIT_OK
    if surface == "sphere":
        p, q = (parse_coords(t, 3) for t in (args.z, args.w))
        print(f"distance: {_fmt(sphere_distance(p, q))}", file=out)
        return EXIT_OK
    z, w = (complex(*parse_coords(t, 2)) for t in (args.z, args.w))
    for label, pt in (("z", z), ("w", w)):
        if not abs(pt) < 1.0:
            raise UsageError(f"{label} = {pt} is not inside the unit disk")
    z2, gz = reduce_to_fundamental(z, surface)
    w2, gw = reduce_to_fundamental(w, surface)
    if z2 != z or w2 != w:
        print(f"reduced: z -> {_fmt(z2.real)},{_fmt(z2.imag)}  w -> {_fmt(w2.real)},{_fmt(w2.imag)}", file=out)
    methods = ["formula", "algorithm"] if args.method == "both" else [args.method]
    values = []
    for m in methods:
        if m == "formula":
            res = distance_formula(z2, w2, surface)
        else:
            res = distance_algorithm(z2, w2, surface, variant=args.variant, tol=args.tol)
        values.append(res.distance)
        g = res.minimizer
        print(f"{m}: distance: {_fmt(res.distance)}", file=out)
        print(f"{m}: minimizer: a={_fmt(g.a.real)}{g.a.imag:+.15g}j c={_fmt(g.c.real)}{g.c.imag:+.15g}j", file=out)
        print(f"{m}: polygons_examined: {res.polygons_examined} candidates_evaluated: {res.candidates_evaluated}",
              file=out)
    if len(values) == 2:
        diff = abs(values[0] - values[1])
        print(f"difference: {diff:.3g}", file=out)
        if diff > 1e-9:
            print("methods disagree", file=sys.stderr)
            return EXIT_DATA
    return EXIT_OK


def cmd_info(args, out) -> int:
    surface = open_surface(args.surface)
    if surface == "torus":
        print("surface: torus\nmodel: flat square torus R^2/Z^2\nconstants: none (closed-form distance)", file=out)
        return EXIT_OK
    if surface == "sphere":
        print("surface: sphere\nmodel: unit sphere\nconstants: none (closed-form distance)", file=out)
        return EXIT_OK
    rows = [
        ("surface", surface.name),
        ("sides", surface.n_sides),
        ("delta", surface.delta_min),
        ("epsilon", surface.epsilon_min),
        ("shell_bound", surface.shell_crossing_lower_bound),
        ("diam_P", surface.polygon_diameter),
        ("surface_diameter", surface.surface_diameter_override),
        ("k_star", surface.k_star),
        ("T_size", len(surface.neighbor_set_T)),
    ]
    if surface.name.startswith("bolza:"):
        p = bolza_params(int(surface.name.split(":")[1]))
        rows += [
            ("genus", p.genus),
            ("R", p.radius_R),
            ("cosh_R", math.cosh(p.radius_R)),
            ("s", p.side_length_s),
            ("D_closed_form", p.diameter_D),
            ("k_star_closed_form", p.k_star),
        ]
    for key, val in rows:
        if isinstance(val, float):
            val = _fmt(val)
        print(f"{key}: {'n/a' if val is None else val}", file=out)
    return EXIT_OK


def loglog_slope(gs, ts) -> float | None:
    if len(set(gs)) < 2:
        return None
    return float(np.polyfit(np.log(gs), np.log(ts), 1)[0])


def run_bench(g_min: int, g_max: int, pairs: int, seed: int, methods=("algorithm",),
              variant: str = "strict", genera=None, log=None) -> list[BenchRecord]:
    """Mean per-query runtime on Bolza surfaces; setup and caches are excluded."""
    records = []
    for g in genera if genera is not None else range(g_min, g_max + 1):
        surface = build_bolza(g)
        rng = np.random.default_rng([seed, g])
        zs = sample_in_polygon(surface.polygon, pairs, rng)
        ws = sample_in_polygon(surface.polygon, pairs, rng)
        for m in methods:
            if m == "formula":
                surface.patch(surface.k_star)
                run = lambda z, w: distance_formula(z, w, surface)  # noqa: E731
            else:
                run = lambda z, w: distance_algorithm(z, w, surface, variant=variant)  # noqa: E731
            run(zs[0], ws[0])  # untimed: loads the compiled kernel and fills caches
            total, examined = 0.0, 0
            for z, w in zip(zs, ws):
                t0 = time.perf_counter()
                res = run(z, w)
                total += time.perf_counter() - t0
                examined += res.polygons_examined
            rec = BenchRecord(g, m, total / pairs, examined / pairs, pairs)
            records.append(rec)
            if log is not None:
                print(f"g={g} {m}: {rec.mean_runtime_s:.4g} s, {rec.polygons_examined:.1f} polygons", file=log, flush=True)
    return records


def write_bench_csv(records, fh) -> None:
    wr = csv.writer(fh, lineterminator="\n")
    wr.writerow(["genus", "method", "mean_runtime_s", "polygons_examined", "pairs"])
    for r in records:
        wr.writerow([r.genus, r.method, f"{r.mean_runtime_s:.6g}", f"{r.polygons_examined:.6g}", r.pairs])


def cmd_bench(args, out) -> int:
    if not 2 <= args.g_min <= args.g_max:
        raise UsageError("need 2 <= g-min <= g-max")
    if args.pairs < 1:
        raise UsageError("need at least one pair")
    methods = ["formula", "algorithm"] if args.method == "both" else [args.method]
    fh = None
    if args.out:
        try:
            fh = open(args.out, "w", newline="")
        except OSError as exc:
            raise GeodistError(f"cannot write {args.out}: {exc}") from exc
    try:
        records = run_bench(args.g_min, args.g_max, args.pairs, args.seed, methods, args.variant, log=sys.stderr)
        write_bench_csv(records, fh or out)
    finally:
        if fh is not None:
            fh.close()
    for m in methods:
        rs = [r for r in records if r.method == m]
        slope = loglog_slope([r.genus for r in rs], [r.mean_runtime_s for r in rs])
        print(f"slope[{m}]: {'n/a' if slope is None else f'{slope:.3f}'}", file=out)
        print(f"# {m}: genus, sides N, polygons_examined, polygons/N", file=out)
        for r in rs:
            print(f"# {r.genus} {4 * r.genus} {r.polygons_examined:.1f} {r.polygons_examined / (4 * r.genus):.2f}",
                  file=out)
    return EXIT_OK


def _verify_hyperbolic(surface: SurfaceModel, n: int, seed: int, tol: float):
    rng = np.random.default_rng(seed)
    pts = sample_in_polygon(surface.polygon, 3 * n, rng).reshape(3, n)
    formula_ok = surface.k_star is not None

    def dist(z, w):
        if formula_ok:
            return distance_formula(z, w, surface).distance
        return distance_algorithm(z, w, surface).distance

    x, y, z = pts
    dxy = np.array([dist(a, b) for a, b in zip(x, y)])
    dyx = np.array([dist(b, a) for a, b in zip(x, y)])
    dyz = np.array([dist(a, b) for a, b in zip(y, z)])
    dxz = np.array([dist(a, b) for a, b in zip(x, z)])
    dxx = np.array([dist(a, a) for a in x])
    yield "identity", float(np.abs(dxx).max()) <= tol, f"max d(x,x) = {np.abs(dxx).max():.3g}"
    yield "symmetry", float(np.abs(dxy - dyx).max()) < tol, f"max asym = {np.abs(dxy - dyx).max():.3g}"
    gap = float((dxz - dxy - dyz).max())
    yield "triangle", gap <= tol, f"max excess = {gap:.3g}"

    gens = surface.generators
    orbit = []
    for i, (a, b) in enumerate(zip(x, y)):
        b2, _ = reduce_to_fundamental(gens[i % len(gens)](b), surface)
        orbit.append(abs(dist(a, b2) - dxy[i]))
    yield "orbit invariance", max(orbit) < tol, f"max change = {max(orbit):.3g}"

    alg = np.array([distance_algorithm(a, b, surface, tol=tol).distance for a, b in zip(x, y)])
    if formula_ok:
        diff = float(np.abs(alg - dxy).max())
        yield "formula = algorithm", diff < tol, f"max diff = {diff:.3g}"
    radius = 4 if surface.n_sides <= 8 else 2
    m = min(n, 50)
    orc = np.array([brute_force_oracle(a, b, surface, radius) for a, b in zip(x[:m], y[:m])])
    excess = float((alg[:m] - orc).max())
    yield f"algorithm <= word-ball oracle (radius {radius})", excess <= tol, f"max excess = {excess:.3g}"


def _verify_torus(n: int, seed: int):
    rng = np.random.default_rng(seed)
    xy = rng.uniform(-0.5, 0.5, size=(3, n, 2))
    P = [[TorusPoint(*p) for p in row] for row in xy]
    d = np.array([torus_distance(a, b) for a, b in zip(P[0], P[1])])
    lat = np.array([torus_lattice_distance(a, b) for a, b in zip(P[0], P[1])])
    yield "closed form = lattice oracle", float(np.abs(d - lat).max()) <= 1e-14, f"max diff = {np.abs(d - lat).max():.3g}"
    yz = np.array([torus_distance(a, b) for a, b in zip(P[1], P[2])])
    xz = np.array([torus_distance(a, b) for a, b in zip(P[0], P[2])])
    yield "triangle", float((xz - d - yz).max()) <= 1e-12, ""


def _verify_sphere(n: int, seed: int):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(3, n, 3))
    v /= np.linalg.norm(v, axis=-1, keepdims=True)
    e = np.eye(3)
    exact = [abs(sphere_distance(e[0], e[0])), abs(sphere_distance(e[0], e[1]) - math.pi / 2),
             abs(sphere_distance(e[0], -e[0]) - math.pi)]
    yield "examples 0, pi/2, pi", max(exact) <= 1e-12, ""
    d = np.array([sphere_distance(a, b) for a, b in zip(v[0], v[1])])
    yz = np.array([sphere_distance(a, b) for a, b in zip(v[1], v[2])])
    xz = np.array([sphere_distance(a, b) for a, b in zip(v[0], v[2])])
    yield "triangle", float((xz - d - yz).max()) <= 1e-12, ""


def cmd_verify(args, out) -> int:
    surface = open_surface(args.surface)
    if args.samples < 1:
        raise UsageError("need at least one sample")
    if surface == "torus":
        checks = _verify_torus(args.samples, args.seed)
    elif surface == "sphere":
        checks = _verify_sphere(args.samples, args.seed)
    else:
        checks = _verify_hyperbolic(surface, args.samples, args.seed, args.tol)
    failed = 0
    for name, ok, detail in checks:
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else ""), file=out)
    print("verify: " + ("pass" if not failed else f"{failed} check(s) failed"), file=out)
    return EXIT_OK if not failed else EXIT_DATA


def write_export_csv(surface: SurfaceModel, k: int, fh) -> int:
    patch = surface.patch(k)
    bounds = [len(surface.patch(j)) for j in range(k + 1)]
    verts = np.array(surface.polygon.vertices)
    wr = csv.writer(fh, lineterminator="\n")
    head = ["shell", "a_re", "a_im", "c_re", "c_im"]
    for i in range(len(verts)):
        head += [f"v{i}_re", f"v{i}_im"]
    wr.writerow(head)
    shell = 0
    for idx, g in enumerate(patch):
        while idx >= bounds[shell]:
            shell += 1
        img = g(verts)
        row = [shell] + [f"{x:.17g}" for x in (g.a.real, g.a.imag, g.c.real, g.c.imag)]
        for p in img:
            row += [f"{p.real:.17g}", f"{p.imag:.17g}"]
        wr.writerow(row)
    return len(patch)


def cmd_export(args, out) -> int:
    surface = _hyperbolic(args.surface, open_surface(args.surface))
    if args.k < 0:
        raise UsageError("k must be >= 0")
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                n = write_export_csv(surface, args.k, fh)
        except OSError as exc:
            raise GeodistError(f"cannot write {args.out}: {exc}") from exc
        print(f"wrote {n} polygons to {args.out}", file=out)
    else:
        write_export_csv(surface, args.k, out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geodist", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        # let "-0.4,0" through as a positional value
        p._negative_number_matcher = _NEG_NUMBER
        return p

    surf_help = "bolza:<g>, torus, sphere, or a surface JSON file"
    p = add("dist", "distance between two points")
    p.add_argument("surface", help=surf_help)
    p.add_argument("z", help="re,im (x,y on the torus; x,y,z on the sphere)")
    p.add_argument("w")
    p.add_argument("--method", choices=["formula", "algorithm", "both"], default="algorithm")
    p.add_argument("--variant", choices=["corrected", "strict"], default="corrected")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_dist)

    p = add("info", "print surface constants")
    p.add_argument("surface", help=surf_help)
    p.set_defaults(func=cmd_info)

    p = add("bench", "runtime scaling on Bolza surfaces")
    p.add_argument("--g-min", type=int, default=2)
    p.add_argument("--g-max", type=int, default=22)
    p.add_argument("--pairs", "--samples", dest="pairs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=["formula", "algorithm", "both"], default="algorithm")
    p.add_argument("--variant", choices=["corrected", "strict"], default="strict")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_bench)

    p = add("verify", "run invariant checks on a surface")
    p.add_argument("surface", help=surf_help)
    p.add_argument("--samples", "--pairs", dest="samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_verify)

    p = add("export", "write the T^k patch as CSV")
    p.add_argument("surface", help=surf_help)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"geodist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GeodistError, ValueError) as exc:
        print(f"geodist: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
