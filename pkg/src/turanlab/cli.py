"""Command-line harness: certify, bounds, norms, estimate, verify,
report.

Exit codes: 0 success, 1 falsification (a checked inequality failed or
a containment witness was found), 2 usage or parse errors.  All float
output uses repr, so reports round-trip bit for bit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

from . import __version__
from .bounds import comparison_bounds, erod_constants, theta0
from .certify import CertifyError, certify, circularity_radius
from .corpus import ParseError, ValidationError, bundled_names, \
    load_domain_spec
from .geometry import GeometryError, summarize_geometry
from .norms import RootPolynomial, lq_norm, ratio, sup_norm
from .oscillation import SearchConfig, estimate_oscillation, \
    upper_bound_witness
from .verify import run_suites


def _parse_q(text: str) -> float:
    if text.lower() in ("inf", "infinity", "sup"):
        return math.inf
    try:
        q = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid q: {text!r}")
    if q < 1:
        raise argparse.ArgumentTypeError("q must be >= 1 or inf")
    return q


def _load(source: str):
    try:
        return load_domain_spec(source)
    except (ParseError, ValidationError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _parse_roots(text: str) -> RootPolynomial:
    path = Path(text)
    if path.is_file():
        raw = path.read_text()
    else:
        raw = text
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        print(f"error: roots: invalid JSON: {exc}", file=sys.stderr)
        raise SystemExit(2)
    if not isinstance(data, list) or not data:
        print("error: roots: expected a non-empty JSON array",
              file=sys.stderr)
        raise SystemExit(2)
    roots = []
    for i, item in enumerate(data):
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            roots.append(complex(item))
        elif (isinstance(item, list) and len(item) == 2
              and all(isinstance(t, (int, float)) and not isinstance(t, bool)
                      for t in item)):
            roots.append(complex(item[0], item[1]))
        else:
            print(f"error: roots[{i}]: expected a number or [re, im]",
                  file=sys.stderr)
            raise SystemExit(2)
    return RootPolynomial(roots)


def _print_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _jfloat(x: float):
    # json has no inf/nan literals; keep the document valid
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, float) and math.isnan(x):
        return None
    return x


# -------------------------------------------------------------- subcommands

def cmd_certify(args) -> int:
    name, td = _load(args.spec)
    out = {"domain": name, "delta_mode": args.delta_mode}
    try:
        cert = certify(td, delta_mode=args.delta_mode,
                       fekete_m=args.fekete_m, seed=args.seed)
    except CertifyError as exc:
        out.update(status="rejected", error=type(exc).__name__,
                   reason=str(exc))
        _print_json(out)
        return 0
    out.update(
        status=cert.status, k=cert.k, d=cert.d,
        delta=cert.delta_cap, kappa=_jfloat(cert.kappa), xi=cert.xi,
        delta_small=cert.delta_small, lambdas=list(cert.lambdas),
        delta_bracket=list(cert.delta_bracket),
        circularity_radius=circularity_radius(cert),
    )
    ec = erod_constants(cert)
    out["constants"] = {
        "theta": ec.theta, "theta0": theta0(cert), "eta": ec.eta,
        "n0": ec.n0, "r_k": ec.r_k, "c_k": ec.c_k,
    }
    _print_json(out)
    return 0


def cmd_bounds(args) -> int:
    name, td = _load(args.spec)
    g = summarize_geometry(td.boundary, fekete_m=args.fekete_m,
                           seed=args.seed)
    R = args.R
    cert = None
    if R is None:
        try:
            cert = certify(td)
        except CertifyError:
            cert = None
        if cert is not None and not td.straight_indices():
            R = circularity_radius(cert)
    rows = comparison_bounds(g, args.n, R=R)
    out = {
        "domain": name, "n": args.n,
        "geometry": {
            "diameter": g.diameter, "width": g.width,
            "perimeter": g.perimeter, "depth": g.depth,
            "transfinite_bracket": [g.transfinite_lower,
                                    g.transfinite_upper],
        },
        "R": _jfloat(R) if R is not None else None,
        "bounds": [
            {"name": r.name, "value": _jfloat(r.value),
             "applicable": r.applicable, "kind": r.kind, "note": r.note}
            for r in rows
        ],
    }
    if cert is not None:
        ec = erod_constants(cert)
        out["certified"] = {"c_k": ec.c_k, "master_lower_bound":
                            ec.c_k * args.n}
    _print_json(out)
    return 0


def cmd_norms(args) -> int:
    name, td = _load(args.spec)
    p = _parse_roots(args.roots)
    b = td.boundary
    if math.isinf(args.q):
        np_, nd = sup_norm(p, b), sup_norm(p, b, deriv=True)
    else:
        np_, nd = lq_norm(p, b, args.q), lq_norm(p, b, args.q, deriv=True)
    _print_json({
        "domain": name, "n": p.degree, "q": _jfloat(args.q),
        "norm": {"value": np_.value, "error_estimate": np_.error_estimate,
                 "converged": np_.converged},
        "norm_derivative": {"value": nd.value,
                            "error_estimate": nd.error_estimate,
                            "converged": nd.converged},
        "ratio": nd.value / np_.value,
    })
    return 0


def cmd_estimate(args) -> int:
    name, td = _load(args.spec)
    cfg = SearchConfig(n=args.n, q=args.q, budget=args.budget,
                       restarts=args.restarts, seed=args.seed,
                       method=args.method)
    t0 = time.perf_counter()
    res = estimate_oscillation(td.boundary, cfg)
    wall = time.perf_counter() - t0
    _print_json({
        "domain": name, "n": args.n, "q": _jfloat(args.q),
        "seed": args.seed, "budget": args.budget,
        "restarts": args.restarts, "method": args.method,
        "best_ratio": res.best_ratio, "evaluations": res.evaluations,
        "converged": res.converged,
        "witness_roots": [[z.real, z.imag] for z in res.witness.roots],
        "wall_s": wall,
    })
    return 0


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def cmd_verify(args) -> int:
    name, td = _load(args.spec)
    rows, skipped = run_suites(name, td, n=args.n, q=args.q,
                               trials=args.trials, seed=args.seed,
                               suites=args.suites)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["domain", "suite", "case_id", "n", "q", "lhs",
                     "rhs", "margin", "pass", "seed"])
    for r in rows:
        writer.writerow([
            r.domain, r.suite, r.case_id, r.n, _csv_cell(float(r.q)),
            _csv_cell(r.lhs), _csv_cell(r.rhs), _csv_cell(r.margin),
            _csv_cell(r.passed), r.seed,
        ])
    text = buf.getvalue()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    failed = [r for r in rows if not r.passed]
    print(f"{len(rows)} checks, {len(failed)} failed"
          + (f", skipped suites: {', '.join(skipped)}" if skipped else ""),
          file=sys.stderr)
    for r in failed:
        print(f"FALSIFIED {r.suite}/{r.case_id}: lhs={r.lhs!r} "
              f"rhs={r.rhs!r} margin={r.margin!r} (n={r.n}, q={r.q}, "
              f"seed={r.seed})", file=sys.stderr)
    return 1 if failed else 0


def cmd_report(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    records = []

    def add(domain: str, command: str, params: dict, results: dict,
            errors: dict, wall: float) -> None:
        records.append({
            "domain": domain, "command": command, "parameters": params,
            "results": results, "error_estimates": errors,
            "wall_s": wall, "version": __version__, "seed": args.seed,
        })

    for nm in bundled_names():
        _, td = _load(nm)
        t0 = time.perf_counter()
        g = summarize_geometry(td.boundary, fekete_m=16, seed=args.seed)
        add(nm, "geometry", {"fekete_m": 16},
            {"diameter": g.diameter, "width": g.width,
             "perimeter": g.perimeter, "depth": g.depth,
             "transfinite_lower": g.transfinite_lower,
             "transfinite_upper": g.transfinite_upper},
            {"diameter": 1e-9 * g.diameter, "width": 1e-9 * g.width},
            time.perf_counter() - t0)

        t0 = time.perf_counter()
        try:
            cert = certify(td, seed=args.seed)
            ec = erod_constants(cert)
            res = {"status": cert.status, "d": cert.d,
                   "delta": cert.delta_cap,
                   "kappa": _jfloat(cert.kappa), "xi": cert.xi,
                   "delta_small": cert.delta_small, "c_k": ec.c_k,
                   "r_k": ec.r_k, "n0": ec.n0}
        except CertifyError as exc:
            cert = None
            res = {"status": "rejected", "error": type(exc).__name__}
        add(nm, "certify", {"delta_mode": "certified"}, res, {},
            time.perf_counter() - t0)

        t0 = time.perf_counter()
        w = upper_bound_witness(td.boundary, 8, 2.0, seed=args.seed)
        add(nm, "witness", {"n": 8, "q": 2},
            {"best_ratio": w.best_ratio, "target": 15.0 * 8 / g.diameter,
             "family": w.family, "converged": w.converged},
            {"best_ratio": 1e-8 * w.best_ratio},
            time.perf_counter() - t0)

    if args.format == "json":
        (outdir / "report.json").write_text(
            json.dumps(records, indent=2, default=_jfloat) + "\n")
    else:
        with (outdir / "report.csv").open("w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["domain", "command", "parameters", "field",
                             "value", "error_estimate", "wall_s",
                             "version", "seed"])
            for rec in records:
                for field, value in rec["results"].items():
                    writer.writerow([
                        rec["domain"], rec["command"],
                        json.dumps(rec["parameters"]), field,
                        _csv_cell(value),
                        _csv_cell(rec["error_estimates"].get(field, "")),
                        _csv_cell(rec["wall_s"]), rec["version"],
                        rec["seed"],
                    ])
    print(f"wrote report.{args.format} for {len(bundled_names())} domains "
          f"to {outdir}", file=sys.stderr)
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="turanlab",
        description="Laboratory for inverse Markov factors of convex "
                    "plane domains: certification, explicit bounds, "
                    "boundary norms, and ratio optimization.")
    ap.add_argument("--version", action="version",
                    version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def spec_arg(p):
        p.add_argument("spec", help="domain JSON file or bundled name "
                       f"({', '.join(bundled_names())})")

    p = sub.add_parser("certify", help="decide the domain class and "
                       "print the certificate")
    spec_arg(p)
    p.add_argument("--delta-mode", choices=("certified", "plausible"),
                   default="certified")
    p.add_argument("--fekete-m", type=int, default=48)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("bounds", help="geometry summary and the "
                       "comparison-bound table")
    spec_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--R", type=float, default=None,
                   help="circularity radius when known")
    p.add_argument("--fekete-m", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("norms", help="boundary norms of a root "
                       "polynomial")
    spec_arg(p)
    p.add_argument("--roots", required=True,
                   help="JSON file or inline JSON: [[re,im], ...]")
    p.add_argument("--q", type=_parse_q, required=True,
                   help="1, 2, 4, or inf")
    p.set_defaults(fn=cmd_norms)

    p = sub.add_parser("estimate", help="minimize the derivative-to-"
                       "function norm ratio over root placements")
    spec_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=_parse_q, required=True)
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("nelder-mead",
                                        "random-perturbation"),
                   default="nelder-mead")
    p.set_defaults(fn=cmd_estimate)

    p = sub.add_parser("verify", help="run the property suites, emit "
                       "CSV rows, exit 1 on any falsification")
    spec_arg(p)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--q", type=_parse_q, default=2.0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="CSV output path")
    p.add_argument("--suites", nargs="*", default=None,
                   help="subset of suites to run")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("report", help="standard battery over the "
                       "bundled corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
