"""Geometry primitives against closed forms and polygon vertex oracles."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turanlab import (
    CircularArc,
    GeometryError,
    Segment,
    build_boundary,
    depth,
    diameter,
    inradius,
    perimeter,
    transfinite_diameter,
    width,
)
from turanlab.geometry import sample_params


def _polygon_vertices(td):
    return [p.start for p in td.boundary.pieces]


def _polygon_diameter(vertices):
    return max(
        abs(a - b) for i, a in enumerate(vertices) for b in vertices[i + 1:]
    )


def _polygon_width(vertices):
    """Min over edges of the farthest vertex distance to the edge line."""
    k = len(vertices)
    best = math.inf
    for i in range(k):
        a, b = vertices[i], vertices[(i + 1) % k]
        u = (b - a) / abs(b - a)
        h = max(abs(((v - a) / u).imag) for v in vertices)
        best = min(best, h)
    return best


def _regular_polygon(k, circumradius=1.0):
    verts = [
        circumradius * cmath.exp(2j * math.pi * j / k) for j in range(k)
    ]
    pieces = [Segment(verts[j], verts[(j + 1) % k]) for j in range(k)]
    return build_boundary(pieces)


class TestClosedForms:
    def test_disk(self, disk):
        b = disk.boundary
        assert diameter(b) == pytest.approx(2.0, abs=1e-9)
        assert width(b) == pytest.approx(2.0, abs=1e-9)
        assert perimeter(b) == pytest.approx(2.0 * math.pi, rel=1e-12)
        assert depth(b) == pytest.approx(2.0, abs=1e-6)
        rho, center = inradius(b)
        assert rho == pytest.approx(1.0, abs=1e-9)
        assert abs(center) < 1e-9

    def test_heptagon(self, heptagon):
        b = heptagon.boundary
        verts = _polygon_vertices(heptagon)
        assert len(verts) == 7
        # unit side length
        assert perimeter(b) == pytest.approx(7.0, rel=1e-12)
        # longest diagonal of the regular 7-gon with unit side
        d_exact = math.sin(3 * math.pi / 7) / math.sin(math.pi / 7)
        assert _polygon_diameter(verts) == pytest.approx(d_exact, rel=1e-12)
        assert diameter(b) == pytest.approx(d_exact, rel=1e-9)
        # width = apothem + circumradius
        apothem = 1.0 / (2.0 * math.tan(math.pi / 7))
        circum = 1.0 / (2.0 * math.sin(math.pi / 7))
        assert width(b) == pytest.approx(apothem + circum, rel=1e-9)
        assert width(b) == pytest.approx(_polygon_width(verts), rel=1e-9)
        rho, _ = inradius(b)
        assert rho == pytest.approx(apothem, rel=1e-9)
        for ang in b.outer_angles:
            assert ang == pytest.approx(2.0 * math.pi / 7, rel=1e-12)

    def test_square(self, square):
        b = square.boundary
        assert diameter(b) == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-9)
        assert width(b) == pytest.approx(2.0, abs=1e-9)
        assert perimeter(b) == 8.0
        assert depth(b) == pytest.approx(2.0, abs=1e-6)
        assert b.vertex_params == (0.0, 2.0, 4.0, 6.0)
        # walk starts at (1,-1); s=5 is the midpoint of the left side
        assert b.point_at(5.0) == pytest.approx(-1.0 + 0.0j, abs=1e-12)
        assert b.point_at(13.0) == pytest.approx(-1.0 + 0.0j, abs=1e-12)
        for ang in b.outer_angles:
            assert ang == pytest.approx(math.pi / 2, rel=1e-12)

    def test_triangle(self, triangle):
        b = triangle.boundary
        assert diameter(b) == pytest.approx(1.0, rel=1e-9)
        assert width(b) == pytest.approx(math.sqrt(3.0) / 2.0, rel=1e-9)
        rho, _ = inradius(b)
        assert rho == pytest.approx(1.0 / (2.0 * math.sqrt(3.0)), rel=1e-9)
        # a polygon corner admits no positive-length normal chord
        assert depth(b) == 0.0

    def test_stadium(self, stadium):
        b = stadium.boundary
        assert diameter(b) == pytest.approx(4.0, rel=1e-9)
        assert width(b) == pytest.approx(2.0, abs=1e-9)
        assert perimeter(b) == pytest.approx(4.0 + 2.0 * math.pi, rel=1e-12)
        # the straight-curved junctions are tangent: zero outer angles
        assert max(abs(a) for a in b.outer_angles) < 1e-12

    def test_truncated_disk(self, truncated_disk):
        b = truncated_disk.boundary
        cut = 0.95
        half_chord = math.sqrt(1.0 - cut * cut)
        theta_c = math.acos(cut)
        assert diameter(b) == pytest.approx(2.0, rel=1e-9)
        assert width(b) == pytest.approx(1.0 + cut, rel=1e-9)
        assert perimeter(b) == pytest.approx(
            (2.0 * math.pi - 2.0 * theta_c) + 2.0 * half_chord, rel=1e-12
        )
        rho, _ = inradius(b)
        assert rho == pytest.approx((1.0 + cut) / 2.0, rel=1e-9)


class TestBoundaryBasics:
    def test_support_disk(self, disk):
        b = disk.boundary
        for t in np.linspace(0.0, 2.0 * math.pi, 17):
            assert b.support(float(t)) == pytest.approx(1.0, abs=1e-12)

    def test_support_square(self, square):
        b = square.boundary
        assert b.support(0.0) == pytest.approx(1.0, abs=1e-12)
        assert b.support(math.pi / 4) == pytest.approx(
            math.sqrt(2.0), rel=1e-12
        )

    def test_contains_and_nearest(self, disk):
        b = disk.boundary
        assert b.contains(0.0)
        assert b.contains(0.99)
        assert not b.contains(1.5 + 0.0j)
        _, point, dist = b.nearest_boundary(1.5 + 0.0j)
        assert point == pytest.approx(1.0 + 0.0j, abs=1e-9)
        assert dist == pytest.approx(0.5, abs=1e-9)

    def test_signed_distance_sign(self, disk):
        b = disk.boundary
        assert b.signed_distance(0.0) < 0.0
        assert b.signed_distance(2.0) > 0.0
        assert abs(b.signed_distance(1.0 + 0.0j)) < 1e-12

    def test_point_at_wraps(self, heptagon):
        b = heptagon.boundary
        L = b.total_length
        for s in (0.3, 2.7, 6.9):
            assert b.point_at(s + L) == pytest.approx(b.point_at(s), abs=1e-12)

    def test_unit_speed(self, truncated_disk):
        b = truncated_disk.boundary
        eps = 1e-7
        for s in (0.5, 2.0, 5.9):
            step = abs(b.point_at(s + eps) - b.point_at(s))
            assert step / eps == pytest.approx(1.0, rel=1e-5)

    def test_tangent_angles_square(self, square):
        b = square.boundary
        # mid-edge: continuous tangent pointing up the right side
        am, ap = b.tangent_angles(1.0)
        assert am == pytest.approx(math.pi / 2, abs=1e-12)
        assert ap == pytest.approx(math.pi / 2, abs=1e-12)
        # at the corner (1,1) the tangent jumps by the outer angle
        am, ap = b.tangent_angles(2.0)
        assert ap - am == pytest.approx(math.pi / 2, abs=1e-12)

    def test_sample_params(self, heptagon):
        b = heptagon.boundary
        s = sample_params(b, 64, include_vertices=True)
        assert np.all(np.diff(s) > 0)
        assert s[0] >= 0.0 and s[-1] < b.total_length
        for v in b.vertex_params:
            assert np.min(np.abs(s - v)) < 1e-12

    def test_build_rejects_open_chain(self):
        with pytest.raises(GeometryError):
            build_boundary([
                Segment(0.0 + 0.0j, 1.0 + 0.0j),
                Segment(1.0 + 0.0j, 1.0 + 1.0j),
            ])

    def test_build_rejects_reflex_polygon(self):
        with pytest.raises(GeometryError):
            build_boundary([
                Segment(0.0 + 0.0j, 2.0 + 0.0j),
                Segment(2.0 + 0.0j, 2.0 + 2.0j),
                Segment(2.0 + 2.0j, 1.0 + 0.5j),  # reflex vertex
                Segment(1.0 + 0.5j, 0.0 + 2.0j),
                Segment(0.0 + 2.0j, 0.0 + 0.0j),
            ])


class TestTransfiniteDiameter:
    def test_disk_m40_classical(self, disk):
        r = transfinite_diameter(disk.boundary, m=40, seed=0)
        assert r.converged
        # m-th diameter of the unit disk: m^(1/(m-1))
        assert r.fekete_estimate == pytest.approx(
            40.0 ** (1.0 / 39.0), rel=1e-12
        )
        for z in r.points:
            assert abs(abs(z) - 1.0) < 1e-9

    def test_monotone_in_m(self, truncated_disk):
        vals = [
            transfinite_diameter(truncated_disk.boundary, m=m, seed=0)
            for m in (8, 16, 32, 48)
        ]
        ests = [v.fekete_estimate for v in vals]
        assert all(a >= b - 1e-12 for a, b in zip(ests, ests[1:]))

    def test_bracket_sound(self, domains):
        for name, td in domains.items():
            b = td.boundary
            r = transfinite_diameter(b, m=16, seed=0)
            d = diameter(b)
            assert r.lower == pytest.approx(d / 4.0, rel=1e-12), name
            assert r.lower <= r.upper <= d / 2.0 + 1e-12, name
            assert r.fekete_estimate >= r.lower * (1.0 - 1e-9), name

    def test_determinism(self, heptagon):
        a = transfinite_diameter(heptagon.boundary, m=12, seed=5)
        b = transfinite_diameter(heptagon.boundary, m=12, seed=5)
        assert a.fekete_estimate == b.fekete_estimate
        assert a.points == b.points


@settings(max_examples=20, deadline=None)
@given(
    st.integers(min_value=3, max_value=11),
    st.floats(min_value=0.2, max_value=5.0, allow_nan=False),
)
def test_regular_polygon_properties(k, circumradius):
    b = _regular_polygon(k, circumradius)
    side = 2.0 * circumradius * math.sin(math.pi / k)
    assert perimeter(b) == pytest.approx(k * side, rel=1e-9)
    verts = [p.start for p in b.pieces]
    assert diameter(b) == pytest.approx(_polygon_diameter(verts), rel=1e-9)
    assert width(b) == pytest.approx(_polygon_width(verts), rel=1e-7)
    assert sum(b.outer_angles) == pytest.approx(2.0 * math.pi, rel=1e-9)
    rho, _ = inradius(b)
    apothem = circumradius * math.cos(math.pi / k)
    assert rho == pytest.approx(apothem, rel=1e-7)
