"""Property suites: every module invariant expressed as a checked row.

Each row records one inequality check as (lhs, rhs, margin, pass);
margin is the signed slack of the check (nonnegative means pass), so a
falsification is immediately visible and replayable from the recorded
domain, seed and case id.  Trials are deterministic per spawned
sub-seed and collected in submission order, so repeated runs with one
seed produce identical rows bit for bit, threaded or not.
"""

from __future__ import annotations

import math
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .bounds import classify_segment_alternative, comparison_bounds, \
    erod_constants, nikolskii_bound, theta0, trapezoid
from .certify import CertifyError, ECertificate, Tag, TaggedDecomposition, \
    certify, check_partial_r_circular, circularity_radius, convexify
from .geometry import diameter, sample_params, summarize_geometry, \
    transfinite_diameter
from .norms import RootPolynomial, _adaptive_log_integral, \
    _log_abs_on_boundary, _piece_spans, h_set, lq_norm, ratio, \
    riemann_lq_norm, sup_norm
from .oscillation import SearchConfig, bounding_box, estimate_oscillation, \
    random_poly, worker_count


@dataclass(frozen=True)
class VerifyRow:
    domain: str
    suite: str
    case_id: str
    n: int
    q: float
    lhs: float
    rhs: float
    margin: float
    passed: bool
    seed: int


@dataclass
class _Ctx:
    name: str
    td: TaggedDecomposition
    n: int
    q: float
    trials: int
    seed: int
    cert: ECertificate | None


def _row(ctx: _Ctx, suite: str, case_id: str, lhs: float, rhs: float,
         margin: float, n: int | None = None,
         q: float | None = None) -> VerifyRow:
    return VerifyRow(
        domain=ctx.name, suite=suite, case_id=case_id,
        n=ctx.n if n is None else n, q=ctx.q if q is None else q,
        lhs=float(lhs), rhs=float(rhs), margin=float(margin),
        passed=bool(margin >= 0.0), seed=ctx.seed)


def _pmap(fn, items):
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _trial_seeds(ctx: _Ctx, label: str, count: int):
    # fold the suite label into the entropy (stable hash, so runs are
    # reproducible across processes) to keep suites independent
    base = np.random.SeedSequence([ctx.seed, zlib.crc32(label.encode())])
    return base.spawn(count)


def _random_polys(ctx: _Ctx, label: str, count: int, n: int | None = None):
    seeds = _trial_seeds(ctx, label, count)
    deg = ctx.n if n is None else n
    return _pmap(lambda s: random_poly(ctx.td.boundary, deg, s), seeds)


# ------------------------------------------------------------------ suites

def geometry_suite(ctx: _Ctx) -> list[VerifyRow]:
    b = ctx.td.boundary
    rows = []
    turning = sum(b.outer_angles)
    for piece, tag in zip(b.pieces, ctx.td.tags):
        if tag is Tag.CURVED:
            turning += piece.end_angle - piece.start_angle
    rows.append(_row(ctx, "geometry", "turning-2pi",
                     turning, 2.0 * math.pi,
                     1e-9 - abs(turning - 2.0 * math.pi)))
    d = diameter(b)
    rows.append(_row(ctx, "geometry", "perimeter-le-2pid",
                     b.total_length, 2.0 * math.pi * d,
                     2.0 * math.pi * d - b.total_length))
    g = summarize_geometry(ctx.td.boundary, fekete_m=16, seed=ctx.seed)
    rows.append(_row(ctx, "geometry", "width-le-diameter",
                     g.width, g.diameter, g.diameter - g.width))
    est = {m: transfinite_diameter(b, m=m, seed=ctx.seed).fekete_estimate
           for m in (8, 16, 32, 48)}
    rows.append(_row(ctx, "geometry", "fekete-ge-quarter-d",
                     est[48], d / 4.0, est[48] - d / 4.0))
    for lo, hi in ((8, 16), (16, 32), (32, 48)):
        rows.append(_row(ctx, "geometry", f"fekete-monotone-{lo}-{hi}",
                         est[hi], est[lo], est[lo] - est[hi] + 1e-12))

    # unit-speed parametrization and inward/outward membership
    rng = np.random.default_rng(ctx.seed)
    L = b.total_length
    eps = 1e-5 * L
    speed_min = math.inf
    inward_ok = 1.0
    outward_ok = 1.0
    for _ in range(max(ctx.trials, 8)):
        j = int(rng.integers(0, b.k))
        plen = b.pieces[j].length
        local = rng.uniform(0.0, max(plen - eps, plen * 0.5))
        s = b.vertex_params[j] + local
        chord = abs(b.point_at(s + min(eps, plen - local)) - b.point_at(s))
        speed_min = min(speed_min, chord / min(eps, plen - local))
        am, ap = b.tangent_angles(s)
        nrm = 0.5 * (am + ap) + 0.5 * math.pi
        normal = complex(math.cos(nrm), math.sin(nrm))
        z = b.point_at(s)
        if not b.contains(z + 1e-6 * normal):
            inward_ok = 0.0
        if b.contains(z - 1e-6 * normal, tol=1e-9):
            outward_ok = 0.0
    rows.append(_row(ctx, "geometry", "unit-speed",
                     speed_min, 1.0 - 1e-6, speed_min - (1.0 - 1e-6)))
    rows.append(_row(ctx, "geometry", "contains-inward",
                     inward_ok, 1.0, inward_ok - 1.0))
    rows.append(_row(ctx, "geometry", "contains-outward",
                     outward_ok, 1.0, outward_ok - 1.0))
    return rows


def certify_suite(ctx: _Ctx) -> list[VerifyRow]:
    cert = ctx.cert
    rows = []
    b = ctx.td.boundary
    d = cert.d
    curve, kstar = convexify(ctx.td, cert)
    expect = min(cert.kappa, 2.0 * math.sin(cert.xi) / cert.delta_cap)
    rows.append(_row(ctx, "certify", "kappastar-formula",
                     kstar, expect, -abs(kstar - expect)))
    tie = min(abs(kstar - cert.kappa),
              abs(kstar - 2.0 * math.sin(cert.xi) / cert.delta_cap))
    rows.append(_row(ctx, "certify", "kappastar-attained",
                     tie, 0.0, 1e-15 - tie))
    # the convexified curve must contain every input boundary point
    params = sample_params(b, 512)
    worst = max(float(curve.signed_distance(z))
                for z in b.points_at(params))
    rows.append(_row(ctx, "certify", "convexify-contains",
                     worst, 1e-9 * d, 1e-9 * d - worst))
    same = all(curve.pieces[j] == b.pieces[j]
               for j in ctx.td.curved_indices())
    rows.append(_row(ctx, "certify", "curved-preserved",
                     1.0 if same else 0.0, 1.0,
                     0.0 if same else -1.0))
    rep = check_partial_r_circular(ctx.td, cert, samples=256)
    rows.append(_row(ctx, "certify", "partial-circularity",
                     rep.max_violation, 1e-9 * d,
                     1e-9 * d - rep.max_violation))
    return rows


def corner_monotone_suite(ctx: _Ctx) -> list[VerifyRow]:
    """Certifiability is monotone in cut depth for chord-truncated disks:
    walking from shallow to deep cuts, successes form a prefix (once the
    chord grows past the core width, certification fails and stays
    failed), and the shallowest cut always certifies."""
    from .corpus import truncated_disk
    outcomes = []
    for cut in (0.99, 0.97, 0.95, 0.9, 0.8, 0.6):
        try:
            certify(truncated_disk(cut), fekete_m=8)
            outcomes.append(True)
        except CertifyError:
            outcomes.append(False)
    first_fail = outcomes.index(False) if False in outcomes else len(outcomes)
    prefix = all(outcomes[:first_fail]) and not any(outcomes[first_fail:])
    ok = 1.0 if (prefix and outcomes[0]) else 0.0
    return [_row(ctx, "certify", "corner-monotone", ok, 1.0, ok - 1.0)]


def quadrature_suite(ctx: _Ctx) -> list[VerifyRow]:
    cases = min(ctx.trials, 50)
    polys = _random_polys(ctx, "quadrature", cases)

    def check(args):
        i, p = args
        a = lq_norm(p, ctx.td.boundary, ctx.q).value
        o = riemann_lq_norm(p, ctx.td.boundary, ctx.q)
        rel = abs(a - o) / o
        return _row(ctx, "quadrature-oracle", f"case-{i}",
                    rel, 1e-6, 1e-6 - rel)

    return _pmap(check, list(enumerate(polys)))


def nikolskii_suite(ctx: _Ctx) -> list[VerifyRow]:
    d = diameter(ctx.td.boundary)
    polys = _random_polys(ctx, "nikolskii", ctx.trials)

    def check(args):
        i, p = args
        lq = lq_norm(p, ctx.td.boundary, ctx.q).value
        sup = sup_norm(p, ctx.td.boundary).value
        rhs = nikolskii_bound(d, ctx.q, p.degree) * sup
        return _row(ctx, "nikolskii", f"case-{i}", lq, rhs, lq - rhs)

    return _pmap(check, list(enumerate(polys)))


def hset_suite(ctx: _Ctx) -> list[VerifyRow]:
    polys = _random_polys(ctx, "hset", ctx.trials)
    b = ctx.td.boundary
    L = b.total_length

    def check(args):
        i, p = args
        rep = h_set(p, b, ctx.q)
        rows = [_row(ctx, "hset", f"mass-{i}", rep.mass_fraction,
                     0.5 - 1e-9, rep.mass_fraction - (0.5 - 1e-9))]
        # every point of H obeys the level bound with the q=1 constant
        cap = math.log(16.0 * math.pi) + 2.0 * math.log(p.degree) + 1e-9
        worst = -math.inf
        for s0, s1 in rep.intervals:
            ss = np.linspace(s0, s1, 32) % L
            f = _log_abs_on_boundary(p, b, ss, False)
            worst = max(worst, float(
                (math.log(rep.sup) - f).max()))
        if math.isfinite(worst):
            rows.append(_row(ctx, "hset", f"level-{i}", worst, cap,
                             cap - worst))
        return rows

    return [r for rs in _pmap(check, list(enumerate(polys))) for r in rs]


def transfinite_bound_suite(ctx: _Ctx) -> list[VerifyRow]:
    """sup |p| on the boundary is at least (certified Delta)^n, for
    monic p with roots anywhere in the plane."""
    if ctx.cert is not None:
        delta_lo = ctx.cert.delta_bracket[0]
    else:
        b = ctx.td.boundary
        delta_lo = max(diameter(b) / 4.0,
                       transfinite_diameter(b, m=8, seed=ctx.seed).lower)
    x0, x1, y0, y1 = bounding_box(ctx.td.boundary)
    w = max(x1 - x0, y1 - y0)
    seeds = _trial_seeds(ctx, "transfinite", ctx.trials)

    def check(args):
        i, s = args
        rng = np.random.default_rng(s)
        # roots in a box twice the domain size: inside and outside mix
        roots = (rng.uniform(x0 - w / 2, x1 + w / 2, ctx.n)
                 + 1j * rng.uniform(y0 - w / 2, y1 + w / 2, ctx.n))
        p = RootPolynomial(roots)
        sup = sup_norm(p, ctx.td.boundary).value
        lhs = math.log(sup)
        rhs = ctx.n * math.log(delta_lo)
        return _row(ctx, "transfinite-bound", f"case-{i}",
                    lhs, rhs, lhs - rhs)

    return _pmap(check, list(enumerate(seeds)))


def gabriel_suite(ctx: _Ctx) -> list[VerifyRow]:
    d = diameter(ctx.td.boundary)
    polys = _random_polys(ctx, "gabriel", ctx.trials)

    def check(args):
        i, p = args
        r = ratio(p, ctx.td.boundary, ctx.q, rel_tol=1e-7)
        rhs = 0.022 / d
        return _row(ctx, "gabriel", f"case-{i}", r, rhs, r - rhs)

    return _pmap(check, list(enumerate(polys)))


def pointwise_circular_suite(ctx: _Ctx) -> list[VerifyRow]:
    """All-curved certified domains: |p'/p| >= n/(2 R_K) everywhere on
    the boundary (sampled; samples within 1e-12 d of a root skipped)."""
    cert = ctx.cert
    b = ctx.td.boundary
    rk = circularity_radius(cert)
    rhs = ctx.n / (2.0 * rk)
    params = sample_params(b, 256, include_vertices=False)
    pts = b.points_at(params)
    polys = _random_polys(ctx, "pointwise", ctx.trials)

    def check(args):
        i, p = args
        s, dmin = _kernels.recip_sum(pts, p.roots_array)
        keep = dmin > 1e-12 * cert.d
        lhs = float(np.abs(s[keep]).min()) if keep.any() else math.inf
        return _row(ctx, "pointwise-circular", f"case-{i}",
                    lhs, rhs, lhs - rhs)

    return _pmap(check, list(enumerate(polys)))


def master_bound_suite(ctx: _Ctx) -> list[VerifyRow]:
    """Certified-domain lower bound: ratio >= c_K n for roots in K."""
    cert = ctx.cert
    ec = erod_constants(cert)
    rhs = ec.c_k * ctx.n
    polys = _random_polys(ctx, "master", ctx.trials)

    def check(args):
        i, p = args
        r = ratio(p, ctx.td.boundary, ctx.q, rel_tol=1e-7)
        return _row(ctx, "master-bound", f"random-{i}", r, rhs, r - rhs)

    rows = _pmap(check, list(enumerate(polys)))
    est = estimate_oscillation(ctx.td.boundary, SearchConfig(
        n=ctx.n, q=ctx.q, budget=4000, restarts=4, seed=ctx.seed))
    rows.append(_row(ctx, "master-bound", "optimizer",
                     est.best_ratio, rhs, est.best_ratio - rhs))
    return rows


def alternative_suite(ctx: _Ctx) -> list[VerifyRow]:
    """The straight-piece alternative never fails both branches."""
    cert = ctx.cert
    straight = ctx.td.straight_indices()
    polys = _random_polys(ctx, "alternative", ctx.trials)

    def check(args):
        i, p = args
        out = []
        for j in straight:
            rep = classify_segment_alternative(p, ctx.td, cert, j)
            ok = 1.0 if (rep.holds_i or rep.holds_ii) else 0.0
            out.append(_row(ctx, "segment-alternative",
                            f"case-{i}-piece-{j}", ok, 1.0, ok - 1.0))
        return out

    return [r for rs in _pmap(check, list(enumerate(polys))) for r in rs]


def trapezoid_suite(ctx: _Ctx) -> list[VerifyRow]:
    """diam B(theta) < Delta - delta/2 up to the angle budget."""
    cert = ctx.cert
    dc, dl = cert.delta_cap, cert.delta_small
    a = 0.5 * (dc - dl)
    t0 = theta0(cert)
    worst = -math.inf
    for frac in np.linspace(0.05, 0.999, 16):
        tb = trapezoid(a, cert.xi, float(frac * t0))
        worst = max(worst, tb.diam)
    rhs = dc - 0.5 * dl
    return [_row(ctx, "trapezoid", "diam-grid", worst, rhs, rhs - worst)]


def erod_suite(ctx: _Ctx) -> list[VerifyRow]:
    cert = ctx.cert
    ec = erod_constants(cert)
    t0 = theta0(cert)
    rows = [
        _row(ctx, "erod-consistency", "theta-lt-theta0",
             ec.theta, t0, t0 - ec.theta),
        _row(ctx, "erod-consistency", "ck-le-xi-term", ec.c_k,
             0.009 * (cert.delta_small / cert.delta_cap) ** 2
             * cert.xi / cert.d,
             0.009 * (cert.delta_small / cert.delta_cap) ** 2
             * cert.xi / cert.d - ec.c_k),
    ]
    if math.isfinite(cert.kappa):
        rows.append(_row(ctx, "erod-consistency", "ck-le-kappa4",
                         ec.c_k, cert.kappa / 4.0,
                         cert.kappa / 4.0 - ec.c_k))
    return rows


def assembly_suite(ctx: _Ctx) -> list[VerifyRow]:
    """Mass on the failing straight pieces is at most half the total
    once n >= n0.  Needs a small delta/Delta certificate to be within
    reach; empty when ctx.n < n0."""
    cert = ctx.cert
    ec = erod_constants(cert)
    if ctx.n < ec.n0:
        return []
    b = ctx.td.boundary
    polys = _random_polys(ctx, "assembly", max(2, ctx.trials // 4))
    # adversarial configuration: all roots on the straight piece, where
    # branch (i) fails by symmetry at the midpoint
    extra = []
    for j in ctx.td.straight_indices():
        piece = b.pieces[j]
        half = [piece.start] * (ctx.n // 2) \
            + [piece.end] * (ctx.n - ctx.n // 2)
        extra.append(RootPolynomial(half))

    def check(args):
        i, p = args
        spans = []
        for j in ctx.td.straight_indices():
            rep = classify_segment_alternative(p, ctx.td, cert, j)
            if not rep.holds_i:
                spans.append((b.vertex_params[j], b.pieces[j].length))
        if not spans:
            return _row(ctx, "assembly-tail", f"case-{i}-empty",
                        0.0, 0.5, 0.5)
        pre = np.sort(sample_params(b, max(512, 16 * p.degree)))
        scale = float(np.max(_log_abs_on_boundary(p, b, pre, False)))
        full = _adaptive_log_integral(p, b, ctx.q, False, _piece_spans(b),
                                      scale, 1e-9, 16)
        part = _adaptive_log_integral(p, b, ctx.q, False, spans,
                                      scale, 1e-9, 16)
        frac = part.integral / full.integral
        return _row(ctx, "assembly-tail", f"case-{i}",
                    frac, 0.5, 0.5 - frac)

    return _pmap(check, list(enumerate(polys + extra)))


def sandwich_suite(ctx: _Ctx) -> list[VerifyRow]:
    """c_K n <= bestRatio <= 15 n / d, and bestRatio dominates every
    applicable comparison bound."""
    cert = ctx.cert
    ec = erod_constants(cert)
    b = ctx.td.boundary
    est = estimate_oscillation(b, SearchConfig(
        n=ctx.n, q=ctx.q, budget=6000, restarts=4, seed=ctx.seed))
    d = cert.d
    rows = [
        _row(ctx, "sandwich", "lower", est.best_ratio, ec.c_k * ctx.n,
             est.best_ratio - ec.c_k * ctx.n),
        _row(ctx, "sandwich", "upper", est.best_ratio, 15.0 * ctx.n / d,
             15.0 * ctx.n / d - est.best_ratio),
        _row(ctx, "sandwich", "trace-monotone",
             1.0 if all(x >= y for x, y in
                        zip(est.trace, est.trace[1:])) else 0.0,
             1.0, 0.0 if all(x >= y for x, y in
                             zip(est.trace, est.trace[1:])) else -1.0),
    ]
    all_curved = not ctx.td.straight_indices()
    R = circularity_radius(cert) if all_curved else None
    g = summarize_geometry(ctx.td.boundary, fekete_m=8, seed=ctx.seed)
    for br in comparison_bounds(g, ctx.n, R=R):
        if br.kind != "lower" or not br.applicable:
            continue
        rows.append(_row(ctx, "sandwich", f"dominates-{br.name}",
                         est.best_ratio, br.value,
                         est.best_ratio - br.value))
    return rows


def reproducibility_suite(ctx: _Ctx) -> list[VerifyRow]:
    cfg = SearchConfig(n=min(ctx.n, 4), q=ctx.q, budget=800, restarts=2,
                       seed=ctx.seed)
    a = estimate_oscillation(ctx.td.boundary, cfg)
    bres = estimate_oscillation(ctx.td.boundary, cfg)
    same = (a.best_ratio == bres.best_ratio
            and a.witness.roots == bres.witness.roots
            and a.trace == bres.trace)
    return [_row(ctx, "reproducibility", "estimate-bitwise",
                 1.0 if same else 0.0, 1.0, 0.0 if same else -1.0)]


def run_suites(name: str, td: TaggedDecomposition, n: int = 8,
               q: float = 2.0, trials: int = 20, seed: int = 0,
               suites: list[str] | None = None
               ) -> tuple[list[VerifyRow], list[str]]:
    """Run every applicable suite; returns (rows, skipped suite names)."""
    try:
        cert = certify(td)
    except CertifyError:
        cert = None
    ctx = _Ctx(name=name, td=td, n=n, q=q, trials=trials, seed=seed,
               cert=cert)
    catalog: list[tuple[str, bool, object]] = [
        ("geometry", True, geometry_suite),
        ("certify", cert is not None, certify_suite),
        ("corner-monotone", name == "truncated_disk",
         corner_monotone_suite),
        ("quadrature-oracle", True, quadrature_suite),
        ("nikolskii", True, nikolskii_suite),
        ("hset", True, hset_suite),
        ("transfinite-bound", True, transfinite_bound_suite),
        ("gabriel", True, gabriel_suite),
        ("pointwise-circular",
         cert is not None and not td.straight_indices(),
         pointwise_circular_suite),
        ("master-bound", cert is not None, master_bound_suite),
        ("segment-alternative",
         cert is not None and bool(td.straight_indices()),
         alternative_suite),
        ("trapezoid", cert is not None, trapezoid_suite),
        ("erod-consistency", cert is not None, erod_suite),
        ("assembly-tail", cert is not None, assembly_suite),
        ("sandwich", cert is not None, sandwich_suite),
        ("reproducibility", True, reproducibility_suite),
    ]
    if suites is not None:
        unknown = set(suites) - {nm for nm, _, _ in catalog}
        if unknown:
            raise ValueError(f"unknown suites: {sorted(unknown)}")
        catalog = [(nm, app, fn) for nm, app, fn in catalog
                   if nm in suites]
    rows: list[VerifyRow] = []
    skipped: list[str] = []
    for nm, applicable, fn in catalog:
        if not applicable:
            skipped.append(nm)
            continue
        rows.extend(fn(ctx))
    return rows, skipped
