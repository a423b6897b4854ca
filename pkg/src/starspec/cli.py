"""Command line front end.

Every subcommand writes one document, either JSON tagged with the schema
``starlike-spectral/1`` or CSV, to ``--out`` (default stdout).  Exit codes:
0 success, 2 invalid input, 3 reproduction or verification failure, 4
internal solver failure.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .errors import InvalidArgument, ReproductionFailure, StarspecError, Unsupported, VerificationFailure

SCHEMA = "starlike-spectral/1"

# (module, operation) reported with failures of each subcommand
CONTEXT = {
    "factors": ("geometric_factors", "factor_set"),
    "homeo": ("sphere_homeomorphism", "build_map"),
    "ball-spectrum": ("ball_spectrum", "ball_spectrum"),
    "bounds": ("bound_engine", "dirichlet_bound"),
    "sloshing": ("bound_engine", "sloshing_bound"),
    "perturb": ("bound_engine", "perturb_ball_expansion"),
    "verify": ("verify_solver", "verify_inequalities"),
    "mc": ("verify_solver", "mc_check"),
    "table1": ("cli", "run_table1"),
    "fig1": ("cli", "run_fig1"),
    "suite": ("cli", "run_suite"),
}


class CommandFailed(VerificationFailure):
    """A command produced its output but the checks it ran did not pass."""


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def _flatten(d, prefix=""):
    out = []
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.extend(_flatten(v, key + "."))
        else:
            out.append((key, json.dumps(v) if isinstance(v, list) else v))
    return out


def render(command, result, fmt, rows=None):
    """Serialize a result; ``rows`` (list of dicts) is the CSV table if given."""
    result = _plain(result)
    if fmt == "json":
        doc = {"schema": SCHEMA, "command": command, "result": result}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    if rows is not None:
        rows = _plain(rows)
        fields = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    else:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(_flatten(result))
    return buf.getvalue()


def _emit(args, result, rows=None):
    text = render(args.command, result, args.format, rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _domain(args):
    from .domain import load_domain

    if not getattr(args, "domain", None):
        raise InvalidArgument("--domain is required")
    return load_domain(args.domain)


def _floats(text):
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError as exc:
        raise InvalidArgument(f"expected a comma-separated list of numbers, got {text!r}") from exc


def _report_rows(reports):
    keys = ("functional", "bc", "n", "direction", "factor", "factor_value", "bound_value",
            "normalized_lhs", "margin", "error_estimate", "verdict")
    return [{k: r[k] for k in keys} for r in reports]


# ---------------------------------------------------------------------------
# subcommands


def cmd_factors(args):
    from .factors import factor_set, g0_boundary, origin_scan

    dom = _domain(args)
    if args.scan:
        with open(args.scan) as fh:
            grid = json.load(fh)
        if "xs" in grid:
            xs, ys = grid["xs"], grid["ys"]
        else:
            step = float(grid["step"])
            xs = np.arange(grid["xmin"], grid["xmax"] + 0.5 * step, step)
            ys = np.arange(grid["ymin"], grid["ymax"] + 0.5 * step, step)
        rows = origin_scan(dom, np.round(xs, 12), np.round(ys, 12))
        _emit(args, {"rows": rows}, rows)
        return 0
    f = factor_set(dom, args.map)
    res = f.to_dict()
    res["g0_boundary"] = g0_boundary(dom)
    _emit(args, res)
    return 0


def cmd_homeo(args):
    from .homeo import LatLongMap, build_map

    dom = _domain(args)
    spec = args.kind if args.kind != "latlong" else f"latlong:{args.north}"
    h = build_map(dom, spec)
    res = {"map": h.label}
    if args.check or not args.dump:
        rng = np.random.default_rng(args.seed)
        z = rng.standard_normal((1000, dom.dim))
        z /= np.linalg.norm(z, axis=1)[:, None]
        res["jacobian_defect"] = h.jacobian_defect(dom)
        res["round_trip"] = float(np.max(np.abs(h.evaluate(h.invert(z)) - z)))
        if isinstance(h, LatLongMap):
            res["endpoint_defect"] = h.endpoint_defect
    if args.dump:
        if isinstance(h, LatLongMap):
            fl = h.grid_fields()
            t1 = np.broadcast_to(np.arccos(h._gx)[:, None], fl["g"].shape)
            t2 = np.broadcast_to(h.theta2[None, :], fl["g"].shape)
            cols = {"theta1": t1, "theta2": t2, "f": fl["f"], "g": fl["g"], "jac": fl["jac"], "hs2": fl["hs2"]}
        else:
            nodes, _ = h.construction_grid()
            if dom.dim == 2:
                t = np.arctan2(nodes[:, 1], nodes[:, 0])
                cols = {"theta": t, "H": np.arctan2(*h.evaluate(nodes)[:, ::-1].T)}
            else:
                cols = {"x": nodes[:, 0], "y": nodes[:, 1], "z": nodes[:, 2]}
            cols.update(jac=h.jacobian(nodes), hs2=h.hs2(nodes))
        flat = {k: np.ravel(v) for k, v in cols.items()}
        with open(args.dump, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(list(flat))
            for row in zip(*flat.values()):
                w.writerow([repr(float(v)) for v in row])
        res["dump"] = args.dump
    _emit(args, res)
    return 0


def cmd_ball(args):
    from .ball import ball_spectrum

    sp = ball_spectrum(args.bc, args.dim, args.n, args.hbar, args.sigma, alpha=args.alpha)
    rows = [{"index": i + 1, "value": m.value, "angular_index": m.angular_index, "radial_index": m.radial_index,
             "multiplicity": m.multiplicity, "alpha": m.angular_fraction if args.alpha else None}
            for i, m in enumerate(sp.modes)]
    _emit(args, {"boundary_condition": sp.boundary_condition.label(), "dim": args.dim, "modes": rows}, rows)
    return 0


def _spectrum(args, dom, bc, n, hbar=1.0, sigma=0.0):
    from .fem import laplace_eigs_2d

    return laplace_eigs_2d(dom, bc, n, args.resolution, hbar=hbar, sigma=sigma)


def cmd_bounds(args):
    from .bounds import (check_robin_parameters, dirichlet_bound, improved_dirichlet_bound, neumann_bound,
                         robin_bounds, robin_first_bound, robin_parameters)
    from .factors import factor_set

    if args.bc == "robin":
        check_robin_parameters(args.hbar, args.sigma)
    dom = _domain(args)
    f = factor_set(dom, args.map)
    reps = []
    if args.bc == "robin":
        if args.functional == "robin_first":
            sp = None
            if args.verify:
                h, s = robin_parameters(f, args.hbar, args.sigma, first=True)
                sp = _spectrum(args, dom, "robin", 1, h, s)
            reps.append(robin_first_bound(f, args.hbar, args.sigma, sp))
        else:
            sp = None
            if args.verify:
                h, s = robin_parameters(f, args.hbar, args.sigma, first=False)
                sp = _spectrum(args, dom, "robin", args.n, h, s)
            reps.append(robin_bounds(f, args.hbar, args.sigma, args.n, args.functional, sp))
    else:
        sp = _spectrum(args, dom, args.bc, max(args.n, 2)) if args.verify else None
        if args.bc == "dirichlet":
            reps.append(dirichlet_bound(f, args.functional, args.n, sp))
        else:
            reps.append(neumann_bound(f, args.functional, args.n, sp))
        if args.improved:
            reps.append(improved_dirichlet_bound(f, args.n, sp, bc=args.bc))
    out = [r.to_dict() for r in reps]
    _emit(args, {"factors": f.to_dict(), "reports": out}, _report_rows(out))
    return _verdict(out)


def _verdict(reports):
    bad = [r["functional"] for r in reports if r.get("verdict") == "FAIL"]
    if bad:
        raise CommandFailed("bound check failed for " + ", ".join(bad))
    return 0


def cmd_sloshing(args):
    from .bounds import sloshing_bound
    from .factors import factor_set

    dom = _domain(args)
    f = factor_set(dom)
    kind = args.kind.upper()
    sp = _spectrum(args, dom, "neumann" if kind == "N" else "dirichlet", args.n) if args.verify else None
    rep = sloshing_bound(f, args.n, args.L, sp, kind)
    out = [rep.to_dict()]
    _emit(args, {"factors": f.to_dict(), "reports": out}, _report_rows(out))
    return _verdict(out)


def cmd_perturb(args):
    from .bounds import parse_harmonic_profile, perturb_ball_expansion, perturb_disk_bounds

    eps = _floats(args.eps)
    if args.dim == 2:
        res = perturb_ball_expansion(args.profile, eps, dim=2)
        res["disk_bounds"] = [dict(eps=e, **perturb_disk_bounds(args.profile, e)) for e in eps]
    else:
        res = perturb_ball_expansion(parse_harmonic_profile(args.profile), eps, dim=3)
    res["profile"] = args.profile
    _emit(args, res)
    return 0


def cmd_verify(args):
    from .bounds import check_robin_parameters
    from .verify import verify_inequalities

    if args.bc == "robin":
        check_robin_parameters(args.hbar, args.sigma)
    dom = _domain(args)
    reps = verify_inequalities(dom, args.map, args.bc, args.n, args.resolution,
                               hbar=args.hbar, sigma=args.sigma,
                               sloshing_depths=_floats(args.sloshing) if args.sloshing else ())
    out = [r.to_dict() for r in reps]
    _emit(args, {"reports": out, "passed": all(r["verdict"] == "PASS" for r in out)}, _report_rows(out))
    return _verdict(out)


def _mc_weight(name, h):
    if name == "one":
        return lambda xi: np.ones(len(xi))
    if name == "zero":
        return lambda xi: np.zeros(len(xi))
    if name == "inverse-jacobian":
        return lambda xi: 1.0 / h.jacobian(xi)
    raise InvalidArgument(f"unknown weight {name!r}")


def cmd_mc(args):
    from . import montecarlo as mc
    from .homeo import LinearMap, build_map

    rng = np.random.default_rng(args.seed)
    d = args.dim
    if args.check == "haar":
        U = mc.haar_orthogonal_sample(d, args.samples, rng)
        det = np.linalg.det(U)
        res = {"mean_max_entry": float(np.max(np.abs(U.mean(0)))),
               "column_norm_defect": float(np.max(np.abs(np.linalg.norm(U, axis=1) - 1))),
               "positive_determinant_fraction": float(np.mean(det > 0))}
    elif args.check == "traceav":
        M = np.diag(np.arange(1.0, d + 1)) if args.matrix is None else np.array(json.loads(args.matrix), float)
        est = mc.mc_conjugation_average(M, args.samples, rng)
        res = {"matrix": M, "estimate": est, "expected": np.trace(M) / len(M) * np.eye(len(M)),
               "deviation": float(np.max(np.abs(est - np.trace(M) / len(M) * np.eye(len(M)))))}
    elif args.check == "q23":
        if args.domain:
            dom = _domain(args)
            d = dom.dim
            h = build_map(dom, args.map)
        else:
            h = LinearMap.identity(d)
        zeta = np.eye(d)[-1] if args.zeta is None else np.array(_floats(args.zeta))
        r = mc.mc_q23_check(h, _mc_weight(args.weight, h), zeta, args.samples, rng, tol=args.tol)
        res = {k: v for k, v in r.items()}
        res["map"] = h.label
    elif args.check == "orbital":
        from .domain import real_sph_harm

        if d == 3:
            def f(x):
                return real_sph_harm(2, 0, x) + real_sph_harm(1, 1, x)
        else:
            def f(x):
                return x[:, 0] ** 2 + x[:, 1]
        zeta = np.eye(d)[-1]
        o, s, b = mc.orbital_spatial_check(f, zeta, d, args.samples, rng)
        res = {"orbital": o, "spatial": s, "bound": b}
    else:
        raise InvalidArgument(f"unknown check {args.check!r}")
    res.update(check=args.check, dim=d, samples=args.samples, seed=args.seed)
    _emit(args, res)
    return 0


def cmd_table1(args):
    from .reproduce import run_table1

    res = run_table1(strict=False)
    res.pop("seconds")  # keep reports byte-identical between runs
    _emit(args, res, res["rows"])
    if res["failures"]:
        raise ReproductionFailure("cells outside tolerance: " + "; ".join(res["failures"]))
    return 0


def cmd_fig1(args):
    from .reproduce import run_fig1

    res = run_fig1(step=args.step)
    _emit(args, res, res["rows"])
    s = res["summary"]
    if s["negative"] == 0:
        raise ReproductionFailure("no origin with G0 < G1 was found")
    if s["centre_gap"] >= 1e-6:
        raise ReproductionFailure(f"centre factors differ by {s['centre_gap']:.3g}")
    return 0


def cmd_suite(args):
    from .reproduce import RunConfig, run_suite

    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    if args.n is not None:
        cfg["n"] = args.n
    cfg.setdefault("seed", args.seed)
    try:
        config = RunConfig(**cfg)
    except TypeError as exc:
        raise InvalidArgument(f"bad suite configuration: {exc}") from exc
    status, bundle = run_suite(config)
    rows = [dict(domain=e["domain"], **r) for e in bundle["domains"] for r in _report_rows(e["reports"])]
    _emit(args, bundle, rows)
    if status:
        raise CommandFailed("some bounds failed")
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="starspec", description="Geometric factors and eigenvalue bounds "
                                "for starlike domains.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    def dom(sp, required=True):
        sp.add_argument("--domain", required=required, help="domain specification JSON file")

    def robin(sp):
        sp.add_argument("--hbar", type=float, default=1.0)
        sp.add_argument("--sigma", type=float, default=1.0)

    s = add("factors", cmd_factors, "G0, G1, G_Robin of a domain")
    dom(s)
    s.add_argument("--map", default=None, help="circle | linear | latlong:<a|b|c>")
    s.add_argument("--scan", help="JSON grid of origins {xs, ys} or {xmin, xmax, ymin, ymax, step}")

    s = add("homeo", cmd_homeo, "build and check a sphere map")
    dom(s)
    s.add_argument("--kind", default="auto", choices=("auto", "circle", "linear", "latlong"))
    s.add_argument("--north", default="c", choices=("a", "b", "c"))
    s.add_argument("--check", action="store_true")
    s.add_argument("--dump", help="CSV file for the map on its construction grid")

    s = add("ball-spectrum", cmd_ball, "disk and ball eigenvalues")
    s.add_argument("--bc", default="dirichlet", choices=("dirichlet", "neumann", "robin"))
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("-n", type=int, default=10)
    s.add_argument("--alpha", action="store_true", help="include angular energy fractions")
    s.add_argument("--hbar", type=float, default=1.0)
    s.add_argument("--sigma", type=float, default=0.0)

    s = add("bounds", cmd_bounds, "bound values, optionally checked against computed spectra")
    dom(s)
    s.add_argument("--bc", default="dirichlet", choices=("dirichlet", "neumann", "robin"))
    s.add_argument("--functional", default="sum")
    s.add_argument("-n", type=int, default=10)
    s.add_argument("--map", default=None)
    s.add_argument("--improved", action="store_true")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--resolution", type=float, default=2e4)
    robin(s)

    s = add("sloshing", cmd_sloshing, "sloshing eigenvalue sum bound")
    dom(s)
    s.add_argument("-L", type=float, default=1.0)
    s.add_argument("-n", type=int, default=8)
    s.add_argument("--kind", default="N", choices=("N", "D", "n", "d"))
    s.add_argument("--verify", action="store_true")
    s.add_argument("--resolution", type=float, default=2e4)

    s = add("perturb", cmd_perturb, "expansion of G0 for near-round domains")
    s.add_argument("--profile", default="cos:3", help="'cos:3', '0.5*sin:2+cos:1'; in 3D 'Y:2:0+0.3*Y:1:1'")
    s.add_argument("--eps", default="0.01,0.02,0.04")
    s.add_argument("--dim", type=int, default=2, choices=(2, 3))

    s = add("verify", cmd_verify, "check every bound family against computed spectra")
    dom(s)
    s.add_argument("--bc", default="dirichlet", choices=("dirichlet", "neumann", "robin"))
    s.add_argument("-n", type=int, default=10)
    s.add_argument("--resolution", type=float, default=2e4)
    s.add_argument("--map", default=None)
    s.add_argument("--sloshing", help="comma-separated depths (Neumann only)")
    robin(s)

    s = add("mc", cmd_mc, "Monte Carlo checks of orthogonal-group averages")
    s.add_argument("--check", required=True, choices=("traceav", "q23", "haar", "orbital"))
    s.add_argument("--dim", type=int, default=3, choices=(2, 3))
    s.add_argument("--samples", type=int, default=100000)
    s.add_argument("--matrix", help="JSON symmetric matrix for traceav")
    dom(s, required=False)
    s.add_argument("--map", default=None)
    s.add_argument("--weight", default="one", choices=("one", "zero", "inverse-jacobian"))
    s.add_argument("--zeta", help="comma-separated direction")
    s.add_argument("--tol", type=float, default=None)

    add("table1", cmd_table1, "G1 of four ellipsoids against reference values")

    s = add("fig1", cmd_fig1, "sign of G0 - G1 over origins of the (3,1) ellipse")
    s.add_argument("--step", type=float, default=0.05)

    s = add("suite", cmd_suite, "factors, bounds and verification over a domain suite")
    s.add_argument("--config", help="JSON RunConfig")
    s.add_argument("-n", type=int, default=None)
    return p


def _context(args):
    module, op = CONTEXT.get(args.command, ("cli", args.command))
    bc = getattr(args, "bc", None)
    if args.command == "bounds" and bc != "dirichlet":
        op = "robin_bounds" if bc == "robin" else "neumann_bound"
    return module, op


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StarspecError as exc:
        module, op = exc.context or _context(args)
        msg = f"starspec {args.command}: {module}.{op}: {type(exc).__name__}: {exc}"
        if isinstance(exc, Unsupported) and "negative" in str(exc).lower():
            msg += "\nhint: negative Robin parameters are outside the scope of these bounds"
        print(msg, file=sys.stderr)
        return exc.exit_code
    except (OSError, json.JSONDecodeError) as exc:
        module, op = _context(args)
        print(f"starspec {args.command}: {module}.{op}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
