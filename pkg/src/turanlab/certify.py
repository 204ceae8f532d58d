"""Certification of tagged convex boundaries for the generalized smooth
plus piecewise-linear domain class.

A tagged decomposition labels each boundary piece ``curved`` (a circular
arc, curvature 1/radius) or ``straight`` (a segment).  A certificate
records the parameter tuple (k, d, Delta, kappa, xi, delta):

    kappa  = least curvature over curved pieces (+inf if none),
    xi     = min over vertices touching a straight piece of
             outer_angle / lambda, capped at pi/2, where lambda counts
             the straight pieces among the two incident ones,
    Delta  = transfinite diameter value used (see below),
    delta  = min(Delta - longest straight piece, Delta / 2).

Delta handling: the true transfinite diameter is only bracketed, so two
certificate grades exist.  ``certified`` uses the guaranteed lower
bound max(d/4, largest inscribed disk radius); by monotonicity of the
logarithmic capacity this underestimates Delta, which only shrinks
delta/Delta, so every constant derived from a certified tuple is a
valid (weaker) bound.  ``plausible`` uses the Fekete upper estimate
min(delta_m, d/2) and is not a proof.

Convexification replaces each straight piece by a circular arc through
its endpoints bulging away from the domain with radius
|chord| / (2 sin xi), so the tangent-chord angle is exactly xi at both
ends; the outer angle budget Omega >= lambda * xi guarantees the result
is convex again with every piece of curvature at least
kappa_star = min(kappa, 2 sin(xi) / Delta).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    CircularArc,
    ConvexBoundary,
    GeometryError,
    Segment,
    build_boundary,
    diameter,
    inradius,
    transfinite_diameter,
)


class CertifyError(ValueError):
    """Base class for certification failures."""


class NoStraightCornerAngle(CertifyError):
    """A vertex incident to a straight piece has zero outer angle."""


class StraightTooLong(CertifyError):
    """A straight piece is at least as long as the usable transfinite
    diameter value, so no positive delta exists."""


class AllDegenerate(CertifyError):
    """The decomposition is one straight piece (no closed region)."""


class ConvexificationNotConvex(RuntimeError):
    """Internal invariant breach: the convexified curve failed validation."""


class ViolationFound(RuntimeError):
    """A tangent disk failed to contain the domain; carries a report."""

    def __init__(self, report):
        super().__init__(
            f"containment violated by {report.max_violation:.3e} "
            f"at boundary point {report.witness}"
        )
        self.report = report


class Tag(enum.Enum):
    STRAIGHT = "straight"
    CURVED = "curved"


@dataclass(frozen=True)
class TaggedDecomposition:
    """Boundary plus per-piece tags, checked for kind/tag agreement."""

    boundary: ConvexBoundary
    tags: tuple[Tag, ...]

    def __post_init__(self):
        if len(self.tags) != self.boundary.k:
            raise ValueError("one tag per piece required")
        for j, (piece, tag) in enumerate(zip(self.boundary.pieces, self.tags)):
            if tag is Tag.STRAIGHT and not isinstance(piece, Segment):
                raise ValueError(f"piece {j} tagged straight but is an arc")
            if tag is Tag.CURVED and not isinstance(piece, CircularArc):
                raise ValueError(f"piece {j} tagged curved but is a segment")

    def straight_indices(self) -> tuple[int, ...]:
        return tuple(j for j, t in enumerate(self.tags) if t is Tag.STRAIGHT)

    def curved_indices(self) -> tuple[int, ...]:
        return tuple(j for j, t in enumerate(self.tags) if t is Tag.CURVED)


@dataclass(frozen=True)
class ECertificate:
    """Parameter tuple of a certified domain decomposition."""

    k: int
    d: float
    delta_cap: float            # Delta, the transfinite-diameter value used
    kappa: float                # may be math.inf for all-straight boundaries
    xi: float
    delta_small: float          # delta
    lambdas: tuple[int, ...]
    status: str                 # "certified" or "plausible"
    delta_bracket: tuple[float, float]

    def __post_init__(self):
        if not 0.0 < self.delta_cap <= self.d / 2 * (1 + 1e-12):
            raise CertifyError(f"Delta = {self.delta_cap} outside (0, d/2]")
        if not 0.0 < self.delta_small <= self.delta_cap / 2 * (1 + 1e-12):
            raise CertifyError(
                f"delta = {self.delta_small} outside (0, Delta/2]")
        if not 0.0 < self.xi <= math.pi / 2 + 1e-12:
            raise CertifyError(f"xi = {self.xi} outside (0, pi/2]")
        if not self.kappa > 0.0:
            raise CertifyError("kappa must be positive")


def lambdas_of(td: TaggedDecomposition) -> tuple[int, ...]:
    """Number of straight pieces among the two incident to each vertex."""
    k = td.boundary.k
    out = []
    for j in range(k):
        lam = 0
        if td.tags[(j - 1) % k] is Tag.STRAIGHT:
            lam += 1
        if td.tags[j] is Tag.STRAIGHT:
            lam += 1
        out.append(lam)
    return tuple(out)


def certify(td: TaggedDecomposition, delta_mode: str = "certified",
            fekete_m: int = 48, seed: int = 0) -> ECertificate:
    """Derive the certificate tuple or raise a specific failure.

    delta_mode selects the Delta grade: "certified" (sound lower bound
    max(d/4, inscribed-disk radius)) or "plausible" (Fekete upper
    estimate clipped to d/2).
    """
    if delta_mode not in ("certified", "plausible"):
        raise ValueError(f"unknown delta_mode {delta_mode!r}")
    b = td.boundary
    k = b.k
    if k == 1 and td.tags[0] is Tag.STRAIGHT:
        raise AllDegenerate("a single straight piece bounds no region")

    lams = lambdas_of(td)
    for j in range(k):
        if lams[j] >= 1 and b.outer_angles[j] <= 1e-12:
            raise NoStraightCornerAngle(
                f"vertex {j} touches a straight piece but has zero "
                "outer angle")

    curved = [b.pieces[j] for j in td.curved_indices()]
    kappa = min((1.0 / p.radius for p in curved), default=math.inf)

    xi = math.pi / 2
    for j in range(k):
        if lams[j] >= 1:
            xi = min(xi, b.outer_angles[j] / lams[j])

    d = diameter(b)
    bracket = transfinite_diameter(b, m=fekete_m, seed=seed)
    rho, _ = inradius(b)
    lower = max(d / 4.0, rho)
    if delta_mode == "certified":
        delta_cap = lower
    else:
        delta_cap = bracket.upper

    straight = [b.pieces[j] for j in td.straight_indices()]
    longest = max((p.length for p in straight), default=0.0)
    if longest >= delta_cap:
        raise StraightTooLong(
            f"straight piece of length {longest} is not shorter than "
            f"Delta = {delta_cap} ({delta_mode})")
    delta_prime = delta_cap - longest if straight else math.inf
    delta_small = min(delta_prime, delta_cap / 2.0)

    return ECertificate(
        k=k, d=d, delta_cap=delta_cap, kappa=kappa, xi=xi,
        delta_small=delta_small, lambdas=lams, status=delta_mode,
        delta_bracket=(lower, bracket.upper),
    )


def circularity_radius(cert: ECertificate) -> float:
    """Radius R such that the domain admits internally tangent disks of
    radius R along curved pieces: max(1/kappa, Delta / (2 sin xi))."""
    inv_kappa = 0.0 if math.isinf(cert.kappa) else 1.0 / cert.kappa
    return max(inv_kappa, cert.delta_cap / (2.0 * math.sin(cert.xi)))


def convexify_at_angle(td: TaggedDecomposition,
                       xi: float) -> ConvexBoundary:
    """Replace straight pieces by outward-bulging arcs meeting their
    chords at angle xi; curved pieces are kept verbatim."""
    if not 0.0 < xi <= math.pi / 2 + 1e-12:
        raise ValueError(f"xi = {xi} outside (0, pi/2]")
    sin_xi = math.sin(xi)
    new_pieces = []
    for piece, tag in zip(td.boundary.pieces, td.tags):
        if tag is Tag.CURVED:
            new_pieces.append(piece)
            continue
        a, bpt = piece.start, piece.end
        chord = abs(bpt - a)
        radius = chord / (2.0 * sin_xi)
        theta_ab = math.atan2((bpt - a).imag, (bpt - a).real)
        # center sits inward of the chord, at distance radius*cos(xi)
        center = a + radius * complex(
            math.cos(theta_ab - xi + 0.5 * math.pi),
            math.sin(theta_ab - xi + 0.5 * math.pi),
        )
        if abs(abs(center - bpt) - radius) > 1e-9 * radius:
            raise ConvexificationNotConvex(
                "replacement arc endpoints inconsistent")
        start_angle = math.atan2((a - center).imag, (a - center).real)
        new_pieces.append(CircularArc(
            center=center, radius=radius,
            start_angle=start_angle, end_angle=start_angle + 2.0 * xi,
        ))
    try:
        return build_boundary(new_pieces)
    except GeometryError as exc:
        raise ConvexificationNotConvex(str(exc)) from exc


def convexify(td: TaggedDecomposition,
              cert: ECertificate) -> tuple[ConvexBoundary, float]:
    """Convexify at the certified angle and bound the curvature from
    below.  Returns (new boundary, kappa_star)."""
    curve = convexify_at_angle(td, cert.xi)
    kappa_star = min(cert.kappa, 2.0 * math.sin(cert.xi) / cert.delta_cap)
    for piece in curve.pieces:
        if 1.0 / piece.radius < kappa_star - 1e-12:
            raise ConvexificationNotConvex(
                f"piece curvature {1.0 / piece.radius} below kappa_star "
                f"{kappa_star}")
    return curve, kappa_star


@dataclass(frozen=True)
class CircularityReport:
    radius: float
    samples: int
    max_violation: float
    witness: complex | None


def _inward_normal(b: ConvexBoundary, s: float) -> complex:
    am, ap = b.tangent_angles(s)
    a = 0.5 * (am + ap) + 0.5 * math.pi
    return complex(math.cos(a), math.sin(a))


def _max_overhang(b: ConvexBoundary, center: complex, R: float) -> float:
    worst = 0.0
    for piece in b.pieces:
        worst = max(worst, piece.farthest_from(center) - R)
    return worst


def check_partial_r_circular(td: TaggedDecomposition, cert: ECertificate,
                             R: float | None = None,
                             samples: int = 256) -> CircularityReport:
    """Verify that the disk of radius R tangent from inside at each
    sampled point of each curved piece contains the whole domain.

    R defaults to circularity_radius(cert).  Raises ViolationFound when
    the worst overhang exceeds 1e-9 * d.
    """
    b = td.boundary
    if R is None:
        R = circularity_radius(cert)
    worst = 0.0
    witness = None
    for j in td.curved_indices():
        piece = b.pieces[j]
        # use the arc's own inward normal (center - point)/radius: at the
        # two endpoints this is the one-sided limit along the curved piece,
        # which is the normal the containment statement refers to
        for s in np.linspace(0.0, piece.length, samples):
            z = piece.point_local(float(s))
            center = z + R * (piece.center - z) / piece.radius
            over = _max_overhang(b, center, R)
            if over > worst:
                worst = over
                witness = z
    report = CircularityReport(radius=R, samples=samples,
                               max_violation=worst, witness=witness)
    if worst > 1e-9 * cert.d:
        raise ViolationFound(report)
    return report


def check_r_circular(b: ConvexBoundary, R: float,
                     samples: int = 512) -> bool:
    """True when tangent disks of radius R at every sampled boundary
    point (all pieces, vertices skipped) contain the domain."""
    d = diameter(b)
    for j, piece in enumerate(b.pieces):
        s0 = b.vertex_params[j]
        npts = max(8, int(round(samples * piece.length / b.total_length)))
        step = piece.length / npts
        for s in s0 + step * (np.arange(npts) + 0.5):
            z = b.point_at(float(s))
            center = z + R * _inward_normal(b, float(s))
            if _max_overhang(b, center, R) > 1e-9 * d:
                return False
    return True
