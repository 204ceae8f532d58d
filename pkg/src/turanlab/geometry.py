"""Convex plane boundaries built from line segments and circular arcs.

A boundary is a closed counterclockwise chain of pieces with an
arc-length parametrization.  Points are complex numbers (x + iy).
The tangent direction, lifted to a continuous angle function, is
nondecreasing along a convex boundary and gains exactly 2*pi per
revolution; the jump at a vertex is the outer angle there.

Global measurements provided here: perimeter, diameter and width via
the support function, boundary depth (least maximal normal chord),
point membership via the nearest-boundary-point sign test, the largest
inscribed disk, and a Fekete-point bracket for the transfinite
diameter.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._kernels import pairwise_log_sum, sum_log_dists

TWO_PI = 2.0 * math.pi


class GeometryError(ValueError):
    """Base class for boundary construction and validation failures."""


class NotClosed(GeometryError):
    """Consecutive pieces do not meet within tolerance."""


class NotConvex(GeometryError):
    """Tangent angle decreases somewhere, total turning is not 2*pi,
    the orientation is clockwise, or the enclosed area vanishes."""


class DegeneratePiece(GeometryError):
    """A piece has zero length, nonpositive radius, or an invalid sweep."""


def as_complex(p) -> complex:
    """Coerce a point given as complex or an (x, y) pair."""
    if isinstance(p, complex):
        return p
    if isinstance(p, (int, float)):
        return complex(p, 0.0)
    x, y = p
    return complex(float(x), float(y))


def _wrap_pi(x: float) -> float:
    """Reduce an angle difference to [-pi, pi]."""
    return math.remainder(x, TWO_PI)


@dataclass(frozen=True)
class Segment:
    """Directed straight piece from ``start`` to ``end``."""

    start: complex
    end: complex

    def __post_init__(self):
        object.__setattr__(self, "start", as_complex(self.start))
        object.__setattr__(self, "end", as_complex(self.end))
        d = self.end - self.start
        if not (math.isfinite(d.real) and math.isfinite(d.imag)):
            raise DegeneratePiece("segment endpoints must be finite")
        if abs(d) == 0.0:
            raise DegeneratePiece("segment has zero length")

    @cached_property
    def length(self) -> float:
        return abs(self.end - self.start)

    @cached_property
    def direction(self) -> complex:
        return (self.end - self.start) / self.length

    @property
    def start_point(self) -> complex:
        return self.start

    @property
    def end_point(self) -> complex:
        return self.end

    @cached_property
    def start_tangent(self) -> float:
        d = self.direction
        return math.atan2(d.imag, d.real)

    @property
    def turn(self) -> float:
        return 0.0

    def turn_at(self, s: float) -> float:
        return 0.0

    def point_local(self, s: float) -> complex:
        return self.start + self.direction * s

    def points_local(self, s: np.ndarray) -> np.ndarray:
        return self.start + self.direction * s

    def support(self, ca: float, sa: float) -> float:
        da = self.start.real * ca + self.start.imag * sa
        db = self.end.real * ca + self.end.imag * sa
        return da if da > db else db

    def support_arr(self, ca: np.ndarray, sa: np.ndarray) -> np.ndarray:
        da = self.start.real * ca + self.start.imag * sa
        db = self.end.real * ca + self.end.imag * sa
        return np.maximum(da, db)

    def nearest(self, z: complex) -> tuple[float, complex, float]:
        """Return (s_local, point, distance) of the closest piece point."""
        t = ((z - self.start) * self.direction.conjugate()).real
        t = min(max(t, 0.0), self.length)
        p = self.start + self.direction * t
        return t, p, abs(z - p)

    def farthest_from(self, c: complex) -> float:
        return max(abs(self.start - c), abs(self.end - c))

    def ray_hits(self, o: complex, v: complex) -> list[float]:
        e = self.end - self.start
        denom = v.real * e.imag - v.imag * e.real
        if denom == 0.0:
            return []
        w = self.start - o
        t = (w.real * e.imag - w.imag * e.real) / denom
        u = (w.real * v.imag - w.imag * v.real) / denom
        if -1e-12 <= u <= 1.0 + 1e-12:
            return [t]
        return []


@dataclass(frozen=True)
class CircularArc:
    """Counterclockwise arc of the circle |z - center| = radius from
    ``start_angle`` to ``end_angle`` (strictly increasing, sweep < 2*pi)."""

    center: complex
    radius: float
    start_angle: float
    end_angle: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "start_angle", float(self.start_angle))
        object.__setattr__(self, "end_angle", float(self.end_angle))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise DegeneratePiece("arc radius must be positive and finite")
        sweep = self.end_angle - self.start_angle
        if not (0.0 < sweep < TWO_PI):
            raise DegeneratePiece(
                f"arc sweep must lie in (0, 2*pi), got {sweep!r}"
            )

    @property
    def sweep(self) -> float:
        return self.end_angle - self.start_angle

    @cached_property
    def length(self) -> float:
        return self.radius * self.sweep

    @cached_property
    def start_point(self) -> complex:
        return self.center + self.radius * complex(
            math.cos(self.start_angle), math.sin(self.start_angle)
        )

    @cached_property
    def end_point(self) -> complex:
        return self.center + self.radius * complex(
            math.cos(self.end_angle), math.sin(self.end_angle)
        )

    @property
    def start_tangent(self) -> float:
        return _wrap_pi(self.start_angle + 0.5 * math.pi)

    @property
    def turn(self) -> float:
        return self.sweep

    def turn_at(self, s: float) -> float:
        return s / self.radius

    def point_local(self, s: float) -> complex:
        a = self.start_angle + s / self.radius
        return self.center + self.radius * complex(math.cos(a), math.sin(a))

    def points_local(self, s: np.ndarray) -> np.ndarray:
        a = self.start_angle + s / self.radius
        return self.center + self.radius * np.exp(1j * a)

    def _angle_in(self, ang: float, tol: float = 1e-12) -> bool:
        return (ang - self.start_angle) % TWO_PI <= self.sweep + tol

    def support(self, ca: float, sa: float) -> float:
        ang = math.atan2(sa, ca)
        base = self.center.real * ca + self.center.imag * sa
        if self._angle_in(ang):
            return base + self.radius
        a = self.start_point
        b = self.end_point
        return max(a.real * ca + a.imag * sa, b.real * ca + b.imag * sa)

    def support_arr(self, ca: np.ndarray, sa: np.ndarray) -> np.ndarray:
        ang = np.arctan2(sa, ca)
        inside = (ang - self.start_angle) % TWO_PI <= self.sweep + 1e-12
        base = self.center.real * ca + self.center.imag * sa
        a = self.start_point
        b = self.end_point
        ends = np.maximum(a.real * ca + a.imag * sa, b.real * ca + b.imag * sa)
        return np.where(inside, base + self.radius, ends)

    def nearest(self, z: complex) -> tuple[float, complex, float]:
        vec = z - self.center
        r = abs(vec)
        if r == 0.0:
            p = self.start_point
            return 0.0, p, self.radius
        ang = math.atan2(vec.imag, vec.real)
        if self._angle_in(ang):
            s = ((ang - self.start_angle) % TWO_PI) * self.radius
            s = min(s, self.length)
            p = self.center + self.radius * (vec / r)
            return s, p, abs(r - self.radius)
        a = self.start_point
        b = self.end_point
        da = abs(z - a)
        db = abs(z - b)
        if da <= db:
            return 0.0, a, da
        return self.length, b, db

    def farthest_from(self, c: complex) -> float:
        vec = self.center - c
        r = abs(vec)
        best = max(abs(self.start_point - c), abs(self.end_point - c))
        if r == 0.0:
            return max(best, self.radius)
        ang = math.atan2(vec.imag, vec.real)
        if self._angle_in(ang):
            best = max(best, r + self.radius)
        return best

    def ray_hits(self, o: complex, v: complex) -> list[float]:
        w = o - self.center
        b = w.real * v.real + w.imag * v.imag
        c = (w.real * w.real + w.imag * w.imag) - self.radius * self.radius
        disc = b * b - c
        if disc < 0.0:
            return []
        sq = math.sqrt(disc)
        out = []
        for t in (-b - sq, -b + sq):
            p = o + v * t
            ang = math.atan2(p.imag - self.center.imag, p.real - self.center.real)
            if self._angle_in(ang):
                out.append(t)
        return out


BoundaryPiece = Segment | CircularArc


@dataclass(frozen=True)
class ConvexBoundary:
    """Validated closed convex chain.  Construct with build_boundary()."""

    pieces: tuple[BoundaryPiece, ...]
    vertex_params: tuple[float, ...]
    total_length: float
    lifted_starts: tuple[float, ...]
    outer_angles: tuple[float, ...]

    @property
    def k(self) -> int:
        return len(self.pieces)

    @cached_property
    def vertices(self) -> tuple[complex, ...]:
        return tuple(p.start_point for p in self.pieces)

    def _locate(self, s: float) -> tuple[int, float]:
        s = s % self.total_length
        idx = bisect_right(self.vertex_params, s) - 1
        if idx < 0:
            idx = 0
        local = s - self.vertex_params[idx]
        local = min(max(local, 0.0), self.pieces[idx].length)
        return idx, local

    def point_at(self, s: float) -> complex:
        idx, local = self._locate(s)
        return self.pieces[idx].point_local(local)

    def points_at(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=np.float64) % self.total_length
        idx = np.searchsorted(self.vertex_params, s, side="right") - 1
        idx = np.clip(idx, 0, self.k - 1)
        out = np.empty(s.shape, dtype=np.complex128)
        vp = np.asarray(self.vertex_params)
        for j in range(self.k):
            mask = idx == j
            if mask.any():
                local = np.clip(s[mask] - vp[j], 0.0, self.pieces[j].length)
                out[mask] = self.pieces[j].points_local(local)
        return out

    def tangent_angles(self, s: float) -> tuple[float, float]:
        """One-sided lifted tangent angles (alpha_minus, alpha_plus) at s.

        They agree in piece interiors; at a vertex the gap is the outer
        angle.  At s = 0 the incoming angle is taken one outer angle
        below the starting lift.
        """
        idx, local = self._locate(s)
        tol = 1e-12 * self.total_length
        piece = self.pieces[idx]
        if local < tol:
            ap = self.lifted_starts[idx]
            return ap - self.outer_angles[idx], ap
        if piece.length - local < tol:
            nxt = (idx + 1) % self.k
            if nxt == 0:
                am = self.lifted_starts[idx] + piece.turn
                return am, am + self.outer_angles[0]
            ap = self.lifted_starts[nxt]
            return ap - self.outer_angles[nxt], ap
        a = self.lifted_starts[idx] + piece.turn_at(local)
        return a, a

    def outer_angle(self, j: int) -> float:
        """Outer angle at vertex j (start point of piece j, 0-based)."""
        return self.outer_angles[j % self.k]

    def support(self, phi: float) -> float:
        ca = math.cos(phi)
        sa = math.sin(phi)
        return max(p.support(ca, sa) for p in self.pieces)

    def support_width(self, phi: float) -> float:
        return self.support(phi) + self.support(phi + math.pi)

    def nearest_boundary(self, z) -> tuple[float, complex, float]:
        """Global nearest boundary point: (param, point, distance)."""
        z = as_complex(z)
        best = None
        for j, piece in enumerate(self.pieces):
            sl, p, d = piece.nearest(z)
            if best is None or d < best[2]:
                best = (self.vertex_params[j] + sl, p, d)
        return best

    def signed_distance(self, z) -> float:
        """Negative inside, positive outside, zero on the boundary."""
        z = as_complex(z)
        s, p, d = self.nearest_boundary(z)
        if d == 0.0:
            return 0.0
        am, ap = self.tangent_angles(s)
        bis = 0.5 * (am + ap) - 0.5 * math.pi
        w = complex(math.cos(bis), math.sin(bis))
        inward = (z - p) * w.conjugate()
        return d if inward.real > 0.0 else -d

    def contains(self, z, tol: float = 1e-9) -> bool:
        return self.signed_distance(z) <= tol


def build_boundary(pieces) -> ConvexBoundary:
    """Validate a piece chain and assemble a ConvexBoundary.

    Checks, in order: piece degeneracy (delegated to the piece types),
    closure of consecutive endpoints (tolerance 1e-12 of the total
    length), nondecreasing lifted tangent angle with total increase
    exactly 2*pi (tolerance 1e-9), and positive enclosed area.
    """
    pieces = tuple(pieces)
    if not pieces:
        raise DegeneratePiece("boundary needs at least one piece")
    total = sum(p.length for p in pieces)
    tol_close = 1e-12 * total
    k = len(pieces)
    for j in range(k):
        a = pieces[j].end_point
        b = pieces[(j + 1) % k].start_point
        if abs(a - b) > tol_close:
            raise NotClosed(
                f"piece {j} ends at {a}, piece {(j + 1) % k} starts at {b}"
            )

    lifted = [0.0] * k
    outer = [0.0] * k
    lifted[0] = pieces[0].start_tangent
    for j in range(1, k):
        prev_end = lifted[j - 1] + pieces[j - 1].turn
        jump = _wrap_pi(pieces[j].start_tangent - prev_end)
        if jump < -1e-9:
            raise NotConvex(f"tangent angle decreases at vertex {j}")
        if jump >= math.pi - 1e-9:
            raise NotConvex(f"cusp (outer angle >= pi) at vertex {j}")
        outer[j] = max(jump, 0.0)
        lifted[j] = prev_end + outer[j]
    last_end = lifted[k - 1] + pieces[k - 1].turn
    jump = _wrap_pi(pieces[0].start_tangent - last_end)
    if jump < -1e-9:
        raise NotConvex("tangent angle decreases at vertex 0")
    if jump >= math.pi - 1e-9:
        raise NotConvex("cusp (outer angle >= pi) at vertex 0")
    outer[0] = max(jump, 0.0)
    turning = last_end + outer[0] - lifted[0]
    if abs(turning - TWO_PI) > 1e-9:
        raise NotConvex(
            f"total tangent turning is {turning!r}, expected 2*pi "
            "(clockwise or non-convex chain)"
        )

    area = 0.0
    for p in pieces:
        if isinstance(p, Segment):
            a, b = p.start, p.end
            area += 0.5 * (a.real * b.imag - b.real * a.imag)
        else:
            a0, a1 = p.start_angle, p.end_angle
            cx, cy, r = p.center.real, p.center.imag, p.radius
            area += 0.5 * (
                r * r * p.sweep
                + r * (cx * (math.sin(a1) - math.sin(a0))
                       + cy * (math.cos(a0) - math.cos(a1)))
            )
    if area <= 1e-12 * total * total:
        raise NotConvex("boundary encloses no area")

    vparams = []
    acc = 0.0
    for p in pieces:
        vparams.append(acc)
        acc += p.length
    return ConvexBoundary(
        pieces=pieces,
        vertex_params=tuple(vparams),
        total_length=acc,
        lifted_starts=tuple(lifted),
        outer_angles=tuple(outer),
    )


# ---- global measurements ----


def perimeter(b: ConvexBoundary) -> float:
    return b.total_length


def _golden_minimize(f, lo: float, hi: float, iters: int = 60):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = f(c)
    fd = f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    if fc < fd:
        return c, fc
    return d, fd


def _support_width_grid(b: ConvexBoundary, grid: int = 2048):
    phis = np.arange(grid) * (math.pi / grid)
    ca = np.cos(phis)
    sa = np.sin(phis)
    h = np.full(grid, -np.inf)
    hop = np.full(grid, -np.inf)
    for p in b.pieces:
        h = np.maximum(h, p.support_arr(ca, sa))
        hop = np.maximum(hop, p.support_arr(-ca, -sa))
    return phis, h + hop


def diameter(b: ConvexBoundary, grid: int = 2048) -> float:
    """Largest distance between two boundary points.

    Candidates: all vertex pairs, plus the maximum of the support width
    over a direction grid with golden-section refinement (captures
    arc-to-arc antipodal pairs).
    """
    verts = b.vertices
    best = 0.0
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            best = max(best, abs(verts[i] - verts[j]))
    phis, w = _support_width_grid(b, grid)
    i = int(np.argmax(w))
    h = math.pi / grid
    x, fx = _golden_minimize(lambda t: -b.support_width(t),
                             phis[i] - h, phis[i] + h)
    return max(best, float(w[i]), -fx)


def width(b: ConvexBoundary, grid: int = 2048) -> float:
    """Smallest support width over all directions."""
    phis, w = _support_width_grid(b, grid)
    i = int(np.argmin(w))
    h = math.pi / grid
    x, fx = _golden_minimize(b.support_width, phis[i] - h, phis[i] + h)
    return min(float(w[i]), fx)


def _chord_length(b: ConvexBoundary, origin: complex, direction: complex,
                  eps: float) -> float:
    best = math.inf
    for piece in b.pieces:
        for t in piece.ray_hits(origin, direction):
            if t > eps and t < best:
                best = t
    return best if math.isfinite(best) else 0.0


def depth(b: ConvexBoundary, samples: int = 2048, cone_dirs: int = 64) -> float:
    """Least over boundary points of the longest inward normal chord.

    At smooth points the normal is unique; at vertices the inward
    normal cone is searched with ``cone_dirs`` directions.  The result
    is a sampled infimum: values at or below the resolution
    4 * perimeter / samples are reported as exactly 0.
    """
    L = b.total_length
    eps = 1e-9 * L
    params = np.arange(samples) * (L / samples)
    params = np.unique(np.concatenate([params, np.asarray(b.vertex_params)]))
    worst = math.inf
    for s in params:
        am, ap = b.tangent_angles(float(s))
        origin = b.point_at(float(s))
        if ap - am <= 1e-12:
            angles = (am + 0.5 * math.pi,)
        else:
            angles = np.linspace(am, ap, cone_dirs) + 0.5 * math.pi
        best = 0.0
        for a in np.atleast_1d(angles):
            v = complex(math.cos(a), math.sin(a))
            best = max(best, _chord_length(b, origin, v, eps))
        worst = min(worst, best)
    resolution = 4.0 * L / samples
    return 0.0 if worst <= resolution else worst


def contains(b: ConvexBoundary, z, tol: float = 1e-9) -> bool:
    return b.contains(z, tol)


def inradius(b: ConvexBoundary) -> tuple[float, complex]:
    """Radius and center of the largest inscribed disk.

    The distance to the boundary is concave on a convex region, so a
    derivative-free simplex from the vertex centroid converges to the
    global optimum.  The returned radius is verified as an exact lower
    bound (it is the distance from the returned center to the nearest
    boundary point).
    """
    from scipy.optimize import minimize

    verts = b.vertices
    x0 = np.array([
        sum(v.real for v in verts) / len(verts),
        sum(v.imag for v in verts) / len(verts),
    ])

    def f(xy):
        return b.signed_distance(complex(xy[0], xy[1]))

    res = minimize(f, x0, method="Nelder-Mead",
                   options=dict(xatol=1e-12, fatol=1e-12, maxiter=4000))
    center = complex(res.x[0], res.x[1])
    rho = -b.signed_distance(center)
    if rho <= 0.0:
        raise GeometryError("no inscribed disk found (degenerate region?)")
    return rho, center


@dataclass(frozen=True)
class TransfiniteBracket:
    """Bracket for the transfinite diameter from an m-point Fekete search.

    ``fekete_estimate`` is the geometric mean of the pairwise distances
    of the best point configuration found, a valid upper estimate of
    the transfinite diameter (m-th diameters decrease to it).  The
    certified bracket uses only d/4 from below and d/2 from above.
    """

    lower: float
    upper: float
    fekete_estimate: float
    converged: bool
    points: tuple[complex, ...]


def transfinite_diameter(b: ConvexBoundary, m: int = 48, restarts: int = 4,
                         seed: int = 0, max_sweeps: int = 400,
                         coarse: int = 96) -> TransfiniteBracket:
    """Maximize the pairwise distance product of m boundary points.

    Multi-start cyclic coordinate ascent: each point in turn is moved
    to the best position on a coarse parameter grid and refined by
    golden section.  Estimate: (max product)^(1/C(m,2)).
    """
    if m < 2:
        raise ValueError("need at least two points")
    L = b.total_length
    d = diameter(b)
    rng_master = np.random.SeedSequence(seed)
    seeds = rng_master.spawn(max(restarts, 1))

    best_F = -math.inf
    best_pts = None
    any_converged = False
    equi = np.arange(m) * (L / m)
    for r in range(max(restarts, 1)):
        rng = np.random.default_rng(seeds[r])
        if r == 0:
            params = equi.copy()
        elif r == 1:
            params = (equi + rng.uniform(0, L / m)) % L
        else:
            params = np.sort(rng.uniform(0.0, L, size=m))
        pts = b.points_at(params)
        F = pairwise_log_sum(pts)
        converged = False
        coarse_grid = np.arange(coarse) * (L / coarse) + (L / (2 * coarse))
        zoom_offsets = np.linspace(-1.0, 1.0, 17)
        for _ in range(max_sweeps):
            moved = False
            for i in range(m):
                others = np.delete(pts, i)
                cands = np.concatenate([coarse_grid, [params[i]]])
                vals = sum_log_dists(b.points_at(cands), others)
                j = int(np.argmax(vals))
                s_best, v_best = cands[j], vals[j]
                v_current = vals[-1]
                # Batched zoom: successively finer grids around the best
                # candidate (each level includes its own center, so the
                # running best never decreases).
                h = L / coarse
                for _level in range(3):
                    local = s_best + zoom_offsets * h
                    lvals = sum_log_dists(b.points_at(local % L), others)
                    k = int(np.argmax(lvals))
                    if lvals[k] > v_best:
                        s_best, v_best = local[k], lvals[k]
                    h /= 8.0
                if v_best > v_current + 1e-11 * max(1.0, abs(v_current)):
                    params[i] = s_best % L
                    pts[i] = b.point_at(params[i])
                    moved = True
            newF = pairwise_log_sum(pts)
            if not moved or newF - F <= 1e-10 * max(1.0, abs(newF)):
                F = max(F, newF)
                converged = True
                break
            F = newF
        any_converged = any_converged or converged
        if F > best_F:
            best_F = F
            best_pts = pts.copy()

    pairs = m * (m - 1) / 2.0
    delta_m = math.exp(best_F / pairs) if math.isfinite(best_F) else 0.0
    lower = d / 4.0
    upper = min(max(delta_m, lower), d / 2.0)
    ok = any_converged and delta_m >= lower * (1.0 - 1e-9)
    return TransfiniteBracket(
        lower=lower,
        upper=upper,
        fekete_estimate=delta_m,
        converged=ok,
        points=tuple(complex(z) for z in best_pts),
    )


@dataclass(frozen=True)
class GeometrySummary:
    """Global measurements of one convex boundary."""

    diameter: float
    width: float
    perimeter: float
    depth: float
    transfinite_lower: float
    transfinite_upper: float


def summarize_geometry(b: ConvexBoundary, fekete_m: int = 48, seed: int = 0,
                       depth_samples: int = 2048) -> GeometrySummary:
    d = diameter(b)
    w = width(b)
    L = perimeter(b)
    h = depth(b, samples=depth_samples)
    br = transfinite_diameter(b, m=fekete_m, seed=seed)
    g = GeometrySummary(
        diameter=d, width=w, perimeter=L, depth=h,
        transfinite_lower=br.lower, transfinite_upper=br.upper,
    )
    if not (0.0 < w <= d * (1.0 + 1e-9)):
        raise GeometryError(f"width/diameter inconsistent: {w} vs {d}")
    if L > TWO_PI * d * (1.0 + 1e-9):
        raise GeometryError(f"perimeter {L} exceeds 2*pi*diameter {d}")
    if h > d * (1.0 + 1e-9):
        raise GeometryError(f"depth {h} exceeds diameter {d}")
    if not (g.transfinite_lower <= g.transfinite_upper <= d / 2 * (1 + 1e-12)):
        raise GeometryError("transfinite bracket out of order")
    return g


def sample_params(b: ConvexBoundary, total: int,
                  include_vertices: bool = True) -> np.ndarray:
    """Arc-length parameters distributed over pieces proportionally to
    length, optionally including every piece endpoint."""
    out = []
    L = b.total_length
    for j, p in enumerate(b.pieces):
        npts = max(8, int(round(total * p.length / L)))
        s0 = b.vertex_params[j]
        if include_vertices:
            # right endpoint omitted: the next piece supplies it
            out.append(np.linspace(s0, s0 + p.length, npts + 1)[:-1])
        else:
            step = p.length / npts
            out.append(s0 + step * (np.arange(npts) + 0.5))
    return np.unique(np.concatenate(out) % L)
