"""Explicit constants, the corner trapezoid, comparison rows, and the
two-sided segment alternative."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from turanlab import (
    DegenerateAngles,
    ECertificate,
    RootPolynomial,
    classify_segment_alternative,
    comparison_bounds,
    erod_constants,
    nikolskii_bound,
    summarize_geometry,
    theta0,
    trapezoid,
)


def _cert(d=2.0, delta=0.99, kappa=1.0, xi=0.31755, small=0.3,
          lambdas=(1, 1)):
    return ECertificate(
        k=len(lambdas), d=d, delta_cap=delta, kappa=kappa, xi=xi,
        delta_small=small, lambdas=lambdas, status="certified",
        delta_bracket=(delta, d / 2.0),
    )


class TestErodConstants:
    def test_reference_certificate(self):
        c = _cert()
        ec = erod_constants(c)
        # independent arithmetic for every constant
        assert ec.theta == pytest.approx(
            0.3 * 0.31755 / (2.0 * math.pi * 0.99), rel=1e-12
        )
        assert ec.theta == pytest.approx(0.0153151, rel=1e-4)
        assert ec.eta == pytest.approx(0.3 / (8.0 * 0.99), rel=1e-12)
        assert ec.eta == pytest.approx(0.0378788, rel=1e-4)
        assert ec.n0 == 1089
        assert ec.r_k == pytest.approx(
            max(1.0, 0.99 / (2.0 * math.sin(0.31755))), rel=1e-12
        )
        assert ec.r_k == pytest.approx(1.5853, rel=2e-4)
        ratio2 = (0.3 / 0.99) ** 2
        assert ec.c_k == pytest.approx(
            min(0.25, 0.00022 * ratio2 / 2.0,
                0.009 * ratio2 * 0.31755 / 2.0),
            rel=1e-12,
        )
        assert ec.c_k == pytest.approx(1.0101e-05, rel=1e-3)
        assert theta0(c) == pytest.approx(
            0.3 * 0.31755 / (4.0 * 0.99), rel=1e-12
        )
        assert theta0(c) > ec.theta

    def test_all_straight_certificate(self):
        c = _cert(d=2.0, delta=0.6, kappa=math.inf, xi=math.pi / 4,
                  small=0.3, lambdas=(2, 2, 2))
        ec = erod_constants(c)
        ratio2 = 0.25
        assert ec.c_k == pytest.approx(
            min(0.00022 * ratio2 / 2.0,
                0.009 * ratio2 * (math.pi / 4) / 2.0),
            rel=1e-12,
        )
        assert ec.c_k == pytest.approx(2.75e-05, rel=1e-9)
        assert math.isinf(ec.r_k) is False
        assert ec.n0 == math.ceil(100.0 * (0.6 / 0.3) ** 2)

    def test_n0_scaling(self):
        a = erod_constants(_cert(small=0.3))
        b = erod_constants(_cert(small=0.15))
        # halving delta quadruples the degree threshold
        assert b.n0 == pytest.approx(4 * a.n0, rel=2e-2)

    def test_corpus_constants_positive(self, truncated_disk_cert,
                                       heptagon_cert):
        for cert in (truncated_disk_cert, heptagon_cert):
            ec = erod_constants(cert)
            assert 0.0 < ec.theta < theta0(cert)
            assert 0.0 < ec.eta < 1.0
            assert ec.n0 >= 100
            assert ec.c_k > 0.0
            if math.isfinite(cert.kappa):
                assert ec.c_k <= cert.kappa / 4.0


class TestTrapezoid:
    def test_reference_values(self):
        a, xi, th = 0.5, math.pi / 4, 0.05
        t = trapezoid(a, xi, th)
        c = 2.0 * a * math.sin(xi) / math.sin(xi - th)
        assert t.c == pytest.approx(c, rel=1e-12)
        assert t.u == pytest.approx(
            c * math.sin(xi + th) / math.sin(xi) / 2.0, rel=1e-12
        )
        assert t.v == pytest.approx(c * math.sin(th), rel=1e-12)
        assert t.b == pytest.approx(t.v / math.sin(xi), rel=1e-12)
        assert t.diam == max(2.0 * t.u, t.c)
        # the legs, chord, and cap are mutually consistent
        assert t.u == pytest.approx(c * math.cos(th) - a, rel=1e-12)

    def test_theta_to_zero_limit(self):
        t = trapezoid(0.5, math.pi / 4, 1e-9)
        assert t.c == pytest.approx(1.0, rel=1e-6)
        assert t.v == pytest.approx(0.0, abs=1e-8)
        assert t.diam == pytest.approx(1.0, rel=1e-6)

    def test_degenerate_angles(self):
        with pytest.raises(DegenerateAngles):
            trapezoid(0.5, math.pi / 4, 0.0)
        with pytest.raises(DegenerateAngles):
            trapezoid(0.5, math.pi / 4, math.pi / 4)
        with pytest.raises(DegenerateAngles):
            trapezoid(0.5, 1.8, 0.05)

    @settings(max_examples=60, deadline=None)
    @given(
        a=st.floats(min_value=0.01, max_value=10.0),
        xi=st.floats(min_value=1e-3, max_value=math.pi / 2),
        frac=st.floats(min_value=1e-6, max_value=0.999),
    )
    def test_consistency_random(self, a, xi, frac):
        t = trapezoid(a, xi, frac * xi)
        assert t.u == pytest.approx(
            t.c * math.cos(t.theta) - a, rel=1e-9, abs=1e-12
        )
        assert t.c > 0 and t.v >= 0 and t.diam >= 2.0 * a * (1 - 1e-12)


class TestComparisonBounds:
    def test_disk_rows(self, disk):
        g = summarize_geometry(disk.boundary, fekete_m=8)
        rows = {r.name: r for r in comparison_bounds(g, 10, R=1.0)}
        assert rows["circular"].value == pytest.approx(5.0, rel=1e-9)
        assert rows["circular"].applicable
        assert rows["width"].value == pytest.approx(
            0.0003 * (2.0 / 4.0) * 10, rel=1e-9
        )
        assert rows["depth"].value == pytest.approx(
            (2.0 ** 4 / (3000.0 * 2.0 ** 5)) * 10, rel=1e-6
        )
        assert rows["gabriel"].value == pytest.approx(0.011, rel=1e-9)
        assert rows["gabriel"].kind == "lower"
        assert rows["target-upper"].value == pytest.approx(75.0, rel=1e-9)
        assert rows["target-upper"].kind == "upper"

    def test_no_radius_marks_circular_inapplicable(self, disk):
        g = summarize_geometry(disk.boundary, fekete_m=8)
        rows = {r.name: r for r in comparison_bounds(g, 10)}
        assert not rows["circular"].applicable

    def test_zero_depth_inapplicable(self, triangle):
        g = summarize_geometry(triangle.boundary, fekete_m=8)
        rows = {r.name: r for r in comparison_bounds(g, 4)}
        assert not rows["depth"].applicable
        assert rows["width"].applicable


class TestNikolskii:
    def test_reference_values(self):
        assert nikolskii_bound(2.0, 1.0, 4) == 0.03125
        assert nikolskii_bound(2.0, 2.0, 1) == pytest.approx(
            math.sqrt(1.0 / 3.0), rel=1e-15
        )

    def test_formula(self):
        for d, q, n in ((1.5, 4.0, 7), (3.0, 1.0, 2)):
            want = (d / (2.0 * (q + 1.0))) ** (1.0 / q) * n ** (-2.0 / q)
            assert nikolskii_bound(d, q, n) == pytest.approx(want, rel=1e-14)

    def test_decreasing_in_n(self):
        vals = [nikolskii_bound(2.0, 2.0, n) for n in (1, 2, 4, 8)]
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestSegmentAlternative:
    def test_far_point_roots_give_large_derivative(
        self, truncated_disk, truncated_disk_cert
    ):
        # all roots at the point farthest from the chord
        p = RootPolynomial([-1.0 + 0.0j] * 8)
        j = truncated_disk.straight_indices()[0]
        rep = classify_segment_alternative(
            p, truncated_disk, truncated_disk_cert, j
        )
        assert rep.holds_i
        assert (rep.holds_i, rep.holds_ii) != (False, False)

    def test_chord_endpoint_roots_give_small_values(
        self, truncated_disk, truncated_disk_cert
    ):
        j = truncated_disk.straight_indices()[0]
        seg = truncated_disk.boundary.pieces[j]
        p = RootPolynomial([seg.start] * 8 + [seg.end] * 8)
        rep = classify_segment_alternative(
            p, truncated_disk, truncated_disk_cert, j
        )
        assert rep.holds_ii

    def test_never_both_false(self, truncated_disk, truncated_disk_cert):
        from turanlab import random_poly

        b = truncated_disk.boundary
        j = truncated_disk.straight_indices()[0]
        for seed in range(40):
            p = random_poly(b, 6, seed)
            rep = classify_segment_alternative(
                p, truncated_disk, truncated_disk_cert, j
            )
            assert rep.holds_i or rep.holds_ii, seed

    def test_root_on_segment_is_excluded(self, truncated_disk,
                                         truncated_disk_cert):
        # a root exactly on a sample point (the segment endpoint is
        # always sampled) must be skipped, not classified
        j = truncated_disk.straight_indices()[0]
        seg = truncated_disk.boundary.pieces[j]
        p = RootPolynomial([seg.start] + [-0.5 + 0.0j] * 4)
        rep = classify_segment_alternative(
            p, truncated_disk, truncated_disk_cert, j
        )
        assert rep.excluded >= 1
        assert rep.holds_i or rep.holds_ii
