"""Boundary norms of root-form polynomials.

Polynomials are monic and stored by their roots, p(z) = prod (z - r_j).
All evaluation is done in log space through the backend kernels, so
degrees in the hundreds neither overflow nor underflow: integrands are
formed as exp(q * (log|p| - M)) against a global scale M taken from a
sup grid, and the returned norm is exp(M + log(I) / q).

The L^q integral uses composite 16-node Gauss-Legendre panels refined
by bisection, whole levels at a time so every level is one batched
kernel call.  A panel is accepted when the two-half estimate agrees
with its parent to rel_tol plus a per-length share of the running
total; panels still open at max_depth are kept with their current
value and the report is flagged not converged instead of raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .geometry import ConvexBoundary, _golden_minimize, sample_params

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


class AtRoot(ZeroDivisionError):
    """The logarithmic derivative was requested at a root."""


@dataclass(frozen=True)
class RootPolynomial:
    """Monic polynomial given by its root multiset."""

    roots: tuple[complex, ...]

    def __init__(self, roots):
        object.__setattr__(self, "roots", tuple(complex(r) for r in roots))
        if not self.roots:
            raise ValueError("need at least one root")

    @property
    def degree(self) -> int:
        return len(self.roots)

    @cached_property
    def roots_array(self) -> np.ndarray:
        return np.asarray(self.roots, dtype=np.complex128)

    def shifted(self, w: complex) -> "RootPolynomial":
        return RootPolynomial(tuple(r + w for r in self.roots))


@dataclass(frozen=True)
class NormReport:
    value: float
    error_estimate: float
    argmax_param: float
    quadrature_nodes: int
    converged: bool = True

    def __float__(self) -> float:
        return self.value


def _eval_many(p: RootPolynomial, z) -> tuple[np.ndarray, np.ndarray]:
    arr = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    return _kernels.poly_eval(arr, p.roots_array)


def evaluate(p: RootPolynomial, z):
    """p(z) and p'(z); scalar in, scalar pair out."""
    vals, dvals = _eval_many(p, z)
    if np.isscalar(z) or np.asarray(z).shape == ():
        return complex(vals[0]), complex(dvals[0])
    return vals, dvals


def log_derivative(p: RootPolynomial, z):
    """p'(z)/p(z) = sum 1/(z - r_j); AtRoot on an exact root hit."""
    arr = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    s, dmin = _kernels.recip_sum(arr, p.roots_array)
    if (dmin == 0.0).any():
        raise AtRoot("logarithmic derivative at a root of p")
    if np.isscalar(z) or np.asarray(z).shape == ():
        return complex(s[0])
    return s


def _log_abs_on_boundary(p: RootPolynomial, b: ConvexBoundary,
                         params: np.ndarray, deriv: bool) -> np.ndarray:
    pts = b.points_at(params)
    logp, logdp = _kernels.poly_log_eval(pts, p.roots_array)
    return logdp if deriv else logp


def sup_norm(p: RootPolynomial, b: ConvexBoundary,
             deriv: bool = False, grid: int | None = None) -> NormReport:
    """Supremum of |p| (or |p'|) over the boundary.

    Grid maximum followed by golden-section refinement in the bracket
    of the best grid point.  The convexity of the domain does not make
    log|p| unimodal globally, only locally; the grid is sized with the
    degree so the bracket isolates the true peak in practice.
    """
    n = p.degree
    if grid is None:
        grid = max(1024, 32 * n)
    params = np.sort(sample_params(b, grid, include_vertices=True))
    f = _log_abs_on_boundary(p, b, params, deriv)
    i = int(np.argmax(f))
    L = b.total_length
    lo = params[i - 1] if i > 0 else params[-1] - L
    hi = params[i + 1] if i + 1 < len(params) else params[0] + L

    def neg(s: float) -> float:
        val = _log_abs_on_boundary(p, b, np.array([s % L]), deriv)
        return -float(val[0])

    s_best, neg_best = _golden_minimize(neg, float(lo), float(hi), iters=80)
    f_best = max(-neg_best, float(f[i]))
    if not math.isfinite(f_best):
        # boundary hits a root everywhere on the grid (cannot happen for
        # nonzero p, but keep the report well defined)
        return NormReport(0.0, 0.0, float(params[i]), len(params))
    value = math.exp(f_best)
    gap = abs(f_best - float(f[i]))
    return NormReport(
        value=value,
        error_estimate=value * max(gap, np.spacing(1.0)),
        argmax_param=float(s_best % L),
        quadrature_nodes=len(params) + 2 + 80,
    )


# ------------------------------------------------------- adaptive L^q core

@dataclass
class _Quadrature:
    integral: float
    error: float
    nodes: int
    converged: bool
    levels: int = 0


def _panel_values(p, b, a, h, q, deriv, scale):
    """Gauss-Legendre 16 estimates for panels [a_i, a_i + h_i]."""
    s = (a[:, None] + 0.5 * h[:, None] * (_GL_X[None, :] + 1.0)).ravel()
    f = _log_abs_on_boundary(p, b, s, deriv)
    g = np.exp(q * (f - scale)).reshape(len(a), 16)
    return (g @ _GL_W) * (0.5 * h)


def _adaptive_log_integral(p: RootPolynomial, b: ConvexBoundary, q: float,
                           deriv: bool, spans, scale: float,
                           rel_tol: float, max_depth: int) -> _Quadrature:
    """integral over the given spans of exp(q (log|.| - scale)) ds.

    spans: iterable of (start_param, length) in boundary arc length.
    """
    n = p.degree
    L = b.total_length
    starts, lens = [], []
    for a0, ln in spans:
        if ln <= 0.0:
            continue
        m = max(4, math.ceil(4.0 * max(8, n) * ln / L))
        edges = a0 + ln * np.arange(m + 1) / m
        starts.append(edges[:-1])
        lens.append(np.full(m, ln / m))
    if not starts:
        return _Quadrature(0.0, 0.0, 0, True)
    a = np.concatenate(starts)
    h = np.concatenate(lens)
    I = _panel_values(p, b, a, h, q, deriv, scale)
    nodes = 16 * len(a)
    total = float(I.sum())
    acc = 0.0
    acc_c = 0.0          # Kahan compensation
    err_acc = 0.0
    converged = True
    level = 0
    while len(a) and level < max_depth:
        level += 1
        half = 0.5 * h
        ca = np.concatenate([a, a + half])
        ch = np.concatenate([half, half])
        cI = _panel_values(p, b, ca, ch, q, deriv, scale)
        nodes += 16 * len(ca)
        m = len(a)
        pair = cI[:m] + cI[m:]
        err = np.abs(pair - I)
        budget = rel_tol * max(acc + float(np.abs(I).sum()), 1e-300)
        ok = err <= rel_tol * np.abs(pair) + budget * (h / L)
        for v in pair[ok]:
            y = float(v) - acc_c
            t = acc + y
            acc_c = (t - acc) - y
            acc = t
        err_acc += float(err[ok].sum())
        keep = ~ok
        a = np.concatenate([a[keep], (a + half)[keep]])
        h = np.concatenate([half[keep], half[keep]])
        I = np.concatenate([cI[:m][keep], cI[m:][keep]])
    if len(a):
        converged = False
        acc += float(I.sum())
        err_acc += float(np.abs(I).sum()) * rel_tol * 100
    total = acc
    return _Quadrature(total, err_acc, nodes, converged, level)


def _piece_spans(b: ConvexBoundary):
    return [(b.vertex_params[j], b.pieces[j].length) for j in range(b.k)]


def lq_norm(p: RootPolynomial, b: ConvexBoundary, q: float,
            deriv: bool = False, rel_tol: float = 1e-9,
            max_depth: int = 16) -> NormReport:
    """(integral over the boundary of |p|^q ds)^(1/q), arc length
    measure, no normalization."""
    if not q > 0 or not math.isfinite(q):
        raise ValueError("q must be finite and positive; use sup_norm "
                         "for the uniform norm")
    n = p.degree
    pre = np.sort(sample_params(b, max(512, 16 * n), include_vertices=True))
    f = _log_abs_on_boundary(p, b, pre, deriv)
    i = int(np.argmax(f))
    scale = float(f[i])
    if not math.isfinite(scale):
        return NormReport(0.0, 0.0, float(pre[i]), len(pre))
    quad = _adaptive_log_integral(p, b, q, deriv, _piece_spans(b),
                                  scale, rel_tol, max_depth)
    value = math.exp(scale + math.log(quad.integral) / q)
    rel = quad.error / quad.integral if quad.integral > 0 else 0.0
    return NormReport(
        value=value,
        error_estimate=value * rel / q,
        argmax_param=float(pre[i]),
        quadrature_nodes=quad.nodes + len(pre),
        converged=quad.converged,
    )


def ratio(p: RootPolynomial, b: ConvexBoundary, q: float,
          rel_tol: float = 1e-9) -> float:
    """The inverse Markov quotient ||p'|| / ||p|| in L^q (q = inf for
    the sup norm)."""
    if math.isinf(q):
        return sup_norm(p, b, deriv=True).value / sup_norm(p, b).value
    num = lq_norm(p, b, q, deriv=True, rel_tol=rel_tol)
    den = lq_norm(p, b, q, deriv=False, rel_tol=rel_tol)
    return num.value / den.value


def riemann_lq_norm(p: RootPolynomial, b: ConvexBoundary, q: float,
                    deriv: bool = False, points: int = 1 << 20) -> float:
    """Midpoint-rule oracle for the L^q norm, direct (non log space)
    accumulation; reliable for degree * q up to a few hundred."""
    L = b.total_length
    s = (np.arange(points) + 0.5) * (L / points)
    pts = b.points_at(s)
    sp, sd = _kernels.riemann_pow_sums(pts, p.roots_array, float(q))
    total = sd if deriv else sp
    return (total * (L / points)) ** (1.0 / q)


# ------------------------------------------------------------------ H-sets

@dataclass(frozen=True)
class HSetReport:
    """High-level set H = {zeta on the boundary : |p(zeta)| >= T} with
    T = c n^(-2/q) sup|p|, c = (8 pi (q+1))^(-1/q).

    mass_fraction is the share of the full integral of |p|^q carried
    by H; the design guarantee is mass_fraction >= 1/2."""

    threshold: float
    intervals: tuple[tuple[float, float], ...]
    measure: float
    mass_fraction: float
    sup: float
    converged: bool


def hset_constant(q: float) -> float:
    return (8.0 * math.pi * (q + 1.0)) ** (-1.0 / q)


def _bisect_crossing(fun, s_lo, s_hi, f_lo, f_hi, tol):
    # f_lo and f_hi straddle zero; shrinks the bracket to tol and
    # returns the endpoint on the nonnegative side.  Biasing inward
    # keeps reported interval endpoints inside the level set no matter
    # how steep log|p| is at the crossing (the slope is unbounded when
    # a root sits near the boundary), at the cost of undershooting the
    # true crossing by at most tol.
    while s_hi - s_lo > tol:
        mid = 0.5 * (s_lo + s_hi)
        fm = fun(mid)
        if (f_lo <= 0.0) == (fm <= 0.0):
            s_lo, f_lo = mid, fm
        else:
            s_hi, f_hi = mid, fm
    if f_lo >= 0.0:
        return s_lo
    if f_hi >= 0.0:
        return s_hi
    return s_lo if f_lo >= f_hi else s_hi


def h_set(p: RootPolynomial, b: ConvexBoundary, q: float,
          grid: int | None = None) -> HSetReport:
    """Locate H and integrate its share of the |p|^q mass."""
    n = p.degree
    if grid is None:
        grid = max(4096, 64 * n)
    sup = sup_norm(p, b)
    log_t = math.log(hset_constant(q)) - (2.0 / q) * math.log(max(n, 1)) \
        + math.log(sup.value)
    L = b.total_length
    params = np.sort(np.unique(np.concatenate([
        sample_params(b, grid, include_vertices=True),
        np.array([sup.argmax_param]),
    ])))
    f = _log_abs_on_boundary(p, b, params, False) - log_t

    def fun(s: float) -> float:
        v = _log_abs_on_boundary(p, b, np.array([s % L]), False)
        return float(v[0]) - log_t

    above = f >= 0.0
    tol = 1e-12 * L
    if above.all():
        intervals = ((0.0, L),)
    elif not above.any():
        # cannot happen (the sup point is in H); guard for degenerate input
        intervals = ()
    else:
        # Roll so the walk starts outside H and unwrap the rolled tail by
        # +L: the walk coordinates are then strictly increasing, every
        # bisection happens between adjacent grid points, and segment
        # endpoints come out ordered (s1 > s0) even when H wraps.
        start = int(np.argmin(above))
        idx = np.concatenate([np.arange(start, len(params)),
                              np.arange(0, start)])
        ps = np.concatenate([params[start:], params[:start] + L])
        fs = f[idx]
        ab = above[idx]
        segs = []
        open_at = None
        for k in range(1, len(ps)):
            if ab[k] == ab[k - 1]:
                continue
            s_cross = _bisect_crossing(fun, float(ps[k - 1]), float(ps[k]),
                                       float(fs[k - 1]), float(fs[k]), tol)
            if ab[k]:
                open_at = s_cross
            else:
                segs.append((open_at, s_cross))
                open_at = None
        if open_at is not None:
            # H continues to the end of the walk; close in the final gap
            # back to the (below-threshold) roll point.
            close_at = _bisect_crossing(
                fun, float(ps[-1]), float(ps[0] + L),
                float(fs[-1]), float(fs[0]), tol)
            segs.append((open_at, close_at))
        intervals = tuple((s0 % L, s0 % L + (s1 - s0)) for s0, s1 in segs)

    measure = sum(s1 - s0 for s0, s1 in intervals)

    # shared-scale integration so the ratio is coherent
    pre = np.sort(sample_params(b, max(512, 16 * n), include_vertices=True))
    scale = float(np.max(_log_abs_on_boundary(p, b, pre, False)))
    full = _adaptive_log_integral(p, b, q, False, _piece_spans(b),
                                  scale, 1e-10, 16)
    spans = []
    vparams = np.asarray(b.vertex_params)
    for s0, s1 in intervals:
        # split at interior vertices so panels stay smooth
        cuts = [s0]
        for off in (0.0, L):
            for v in vparams + off:
                if s0 < v < s1:
                    cuts.append(float(v))
        cuts.append(s1)
        cuts.sort()
        spans.extend((cuts[i], cuts[i + 1] - cuts[i])
                     for i in range(len(cuts) - 1))
    part = _adaptive_log_integral(p, b, q, False, spans,
                                  scale, 1e-10, 16)
    mass = part.integral / full.integral if full.integral > 0 else 0.0
    return HSetReport(
        threshold=math.exp(log_t),
        intervals=intervals,
        measure=measure,
        mass_fraction=mass,
        sup=sup.value,
        converged=full.converged and part.converged,
    )
