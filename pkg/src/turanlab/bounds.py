"""Explicit constants, the corner trapezoid, the straight-piece
alternative, and the comparison-bound table.

Everything here is plain arithmetic on certificates and geometry
summaries; the only numerics are the point samples used to classify a
straight piece.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .certify import ECertificate, Tag, TaggedDecomposition, \
    circularity_radius
from .geometry import GeometrySummary
from .norms import RootPolynomial, sup_norm


class DegenerateAngles(ValueError):
    """Trapezoid angles must satisfy 0 < theta < xi <= pi/2."""


class NotStraight(ValueError):
    """Segment classification asked for a non-straight piece."""


@dataclass(frozen=True)
class ErodConstants:
    """Derived constants of a certificate.

    theta = delta xi / (2 pi Delta)   (strictly below the corner budget
                                       theta0 = delta xi / (4 Delta))
    eta   = delta / (8 Delta)
    n0    = ceil(100 (Delta/delta)^2) (degree from which the straight
                                       pieces carry little mass)
    r_k   = max(1/kappa, Delta/(2 sin xi))
    c_k   = min(kappa/4, 0.00022 (delta/Delta)^2 / d,
                0.009 (delta/Delta)^2 xi / d)
    """

    theta: float
    eta: float
    n0: int
    r_k: float
    c_k: float


def theta0(cert: ECertificate) -> float:
    """Largest trapezoid angle for which the diameter bound holds."""
    return cert.delta_small * cert.xi / (4.0 * cert.delta_cap)


def erod_constants(cert: ECertificate) -> ErodConstants:
    dl, dc, xi, d = cert.delta_small, cert.delta_cap, cert.xi, cert.d
    ratio2 = (dl / dc) ** 2
    terms = [0.00022 * ratio2 / d, 0.009 * ratio2 * xi / d]
    if math.isfinite(cert.kappa):
        terms.append(cert.kappa / 4.0)
    return ErodConstants(
        theta=dl * xi / (2.0 * math.pi * dc),
        eta=dl / (8.0 * dc),
        # guard the ceiling against float noise when the ratio is exact
        n0=math.ceil(100.0 * (dc / dl) ** 2 * (1.0 - 1e-12)),
        r_k=circularity_radius(cert),
        c_k=min(terms),
    )


@dataclass(frozen=True)
class TrapezoidB:
    """Isosceles trapezoid erected over a straight piece: base 2a, legs
    b at angle xi, top c at angle theta from the base line, height v,
    half top-projection u."""

    a: float
    xi: float
    theta: float
    u: float
    v: float
    b: float
    c: float
    diam: float


def trapezoid(a: float, xi: float, theta: float) -> TrapezoidB:
    if not (0.0 < theta < xi <= 0.5 * math.pi):
        raise DegenerateAngles(
            f"need 0 < theta < xi <= pi/2, got theta={theta}, xi={xi}")
    if a <= 0.0:
        raise ValueError("half-length a must be positive")
    sin_xi = math.sin(xi)
    c = 2.0 * a * sin_xi / math.sin(xi - theta)
    u = 0.5 * c * math.sin(xi + theta) / sin_xi
    v = c * math.sin(theta)
    b = v / sin_xi
    alt = c * math.cos(theta) - a
    if abs(u - alt) > 1e-12 * max(1.0, abs(u)):
        raise AssertionError(
            f"trapezoid side relations inconsistent: u={u}, c cos(theta)"
            f" - a={alt}")
    return TrapezoidB(a=a, xi=xi, theta=theta, u=u, v=v, b=b, c=c,
                      diam=max(2.0 * u, c))


@dataclass(frozen=True)
class BoundRow:
    """One entry of the comparison table: a lower bound on the ratio
    ||p'||/||p|| for degree-n root-in-domain polynomials, or the upper
    target used by the witness search."""

    name: str
    value: float
    applicable: bool
    kind: str           # "lower" or "target"
    note: str


def comparison_bounds(g: GeometrySummary, n: int,
                      R: float | None = None) -> list[BoundRow]:
    """Known ratio bounds in terms of coarse geometry.

    R is the circularity radius when one is known (pass 1/kappa for a
    domain certified through a curvature bound); the tangent-disk row
    is marked not applicable without it.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    d, w, h = g.diameter, g.width, g.depth
    rows = [
        BoundRow("circular", n / (2.0 * R) if R else math.nan,
                 R is not None, "lower",
                 "pointwise tangent-disk bound n/(2R)"),
        BoundRow("width", 0.0003 * w / (d * d) * n, True, "lower",
                 "width-based bound 0.0003 (w/d^2) n"),
        BoundRow("depth", h ** 4 / (3000.0 * d ** 5) * n, h > 0.0,
                 "lower", "depth-based bound (h^4/(3000 d^5)) n"),
        BoundRow("gabriel", 0.022 / d, True, "lower",
                 "derivative-mass bound 0.022/d, degree-free"),
        BoundRow("target-upper", 15.0 * n / d, True, "upper",
                 "witness search target 15 n / d"),
    ]
    return rows


@dataclass(frozen=True)
class AlternativeReport:
    """Outcome of the straight-piece alternative for one polynomial.

    Either the logarithmic derivative is large on the whole piece
    (holds_i) or the polynomial is uniformly tiny there (holds_ii);
    both may hold, but never neither."""

    holds_i: bool
    holds_ii: bool
    threshold_i: float
    threshold_ii: float
    min_log_deriv: float
    max_abs_p: float
    witness_i: complex
    witness_ii: complex
    samples: int
    excluded: int


def classify_segment_alternative(p: RootPolynomial,
                                 td: TaggedDecomposition,
                                 cert: ECertificate,
                                 piece_index: int,
                                 samples: int = 256) -> AlternativeReport:
    """Check the two branches on a sampled straight piece.

    Branch (i): |p'/p| > eta sin(theta) n / d at every sample.
    Branch (ii): |p| <= exp(-2 eta n) sup|p| at every sample, with the
    computed sup norm (harder than the transfinite lower bound).
    Samples closer than 1e-12 d to a root are excluded and counted.
    """
    if td.tags[piece_index] is not Tag.STRAIGHT:
        raise NotStraight(f"piece {piece_index} is not tagged straight")
    if samples < 64:
        raise ValueError("need at least 64 samples")
    piece = td.boundary.pieces[piece_index]
    ec = erod_constants(cert)
    n = p.degree
    thr_i = ec.eta * math.sin(ec.theta) * n / cert.d
    sup = sup_norm(p, td.boundary).value
    log_thr_ii = -2.0 * ec.eta * n + math.log(sup)

    local = np.linspace(0.0, piece.length, samples)
    pts = piece.points_local(local)
    recip, dmin = _kernels.recip_sum(pts, p.roots_array)
    logp, _ = _kernels.poly_log_eval(pts, p.roots_array)
    keep = dmin > 1e-12 * cert.d
    excluded = int((~keep).sum())
    if not keep.any():
        # every sample sits on a root: |p| = 0 on the piece, branch (ii)
        return AlternativeReport(
            holds_i=False, holds_ii=True, threshold_i=thr_i,
            threshold_ii=math.exp(log_thr_ii), min_log_deriv=0.0,
            max_abs_p=0.0, witness_i=complex(pts[0]),
            witness_ii=complex(pts[0]), samples=0, excluded=excluded)

    mag = np.abs(recip[keep])
    lp = logp[keep]
    kept_pts = pts[keep]
    i_min = int(np.argmin(mag))
    i_max = int(np.argmax(lp))
    return AlternativeReport(
        holds_i=bool((mag > thr_i).all()),
        holds_ii=bool((lp <= log_thr_ii).all()),
        threshold_i=thr_i,
        threshold_ii=math.exp(log_thr_ii),
        min_log_deriv=float(mag[i_min]),
        max_abs_p=float(np.exp(lp[i_max])),
        witness_i=complex(kept_pts[i_min]),
        witness_ii=complex(kept_pts[i_max]),
        samples=int(keep.sum()),
        excluded=excluded,
    )


def nikolskii_bound(d: float, q: float, n: int) -> float:
    """Factor bounding ||p||_q from below by ||p||_inf: the q-norm of a
    degree-n root-in-domain polynomial is at least
    (d/(2(q+1)))^(1/q) n^(-2/q) times its sup norm."""
    if q < 1:
        raise ValueError("q must be at least 1")
    if n < 1:
        raise ValueError("degree must be at least 1")
    return (d / (2.0 * (q + 1.0))) ** (1.0 / q) * float(n) ** (-2.0 / q)
