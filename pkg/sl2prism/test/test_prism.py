import math
from unittest import mock

import numpy

from sl2prism.errors import ValidationError, DomainError, GeometryError
from sl2prism.kernel import origin, rotation_origin, from_inhomogeneous, to_inhomogeneous, Isometry
from sl2prism.prism import (validate, vertex_b, SideCurve, side_curve_point, side_curve_polar, curvature,
                            curve_radius, curvature_q_limit, parallelism_distance, numeric_curvature,
                            circle_through, circle_fit_residual, base_vertices, prism_vertices, sector_volume,
                            prism_volume, base_area, group_generators, fibre_parameter, verify_relations, b_power)
from sl2prism.tables import TABLE1, TABLE2, TABLE3

SAMPLE_PAIRS = [(3, 7), (3, 8), (3, 10), (4, 5), (4, 6), (5, 4), (6, 4), (7, 3), (20, 3), (29, 3)]

#-----------------------------------------------------------------------------
# unit tests

import unittest


class Test_params(unittest.TestCase):

    def test_validate(self):
        params = validate(3, 7)
        assert (params.p, params.q) == (3, 7)
        assert validate(7, 3).h_periodic > 0
        assert abs(params.psi_periodic - (math.pi / 2 - math.pi / 3 - math.pi / 7)) < 1e-15
        assert params.h_periodic == 2 * params.psi_periodic

    def test_invalid(self):
        with self.assertRaises(ValidationError) as ctx:
            validate(3, 6)
        assert "q must exceed 2p/(p-2) = 6" in str(ctx.exception)
        with self.assertRaises(ValidationError):
            validate(2, 100)
        with self.assertRaises(ValidationError):
            validate(3.0, 7)
        with self.assertRaises(ValidationError):
            validate(True, 7)

    def test_vertex_b(self):
        assert abs(vertex_b(validate(4, 6)) - (math.sqrt(6) - math.sqrt(2)) / 2) < 1e-12
        for p, q in SAMPLE_PAIRS:
            b = vertex_b(validate(p, q))
            assert 0 < b < 1
            _, y, z = side_curve_point(validate(p, q), 0.0)
            assert abs(math.hypot(y, z) - b) < 1e-12
        # b grows with q
        assert vertex_b(validate(3, 100000)) > vertex_b(validate(3, 7)) > 0


class Test_side_curve(unittest.TestCase):

    def test_endpoints(self):
        params = validate(4, 6)
        assert numpy.allclose(side_curve_point(params, 0.0), (0, 0.517638, 0), atol=1e-6)
        for p, q in SAMPLE_PAIRS:
            params = validate(p, q)
            start = from_inhomogeneous(side_curve_point(params, 0.0))
            end = from_inhomogeneous(side_curve_point(params, 1.0))
            assert start.transform(rotation_origin(2 * math.pi / p)).residual(end) < 1e-10

    def test_domain(self):
        with self.assertRaises(DomainError):
            side_curve_point(validate(3, 7), 1.5)

    def test_rotated_copies_close_up(self):
        params = validate(5, 4)
        curve = SideCurve(params)
        rot = rotation_origin(2 * math.pi / 5)
        X = curve.projective_point(0.0)
        for _ in range(5):
            X = X.transform(rot)
        assert X.residual(curve.projective_point(0.0)) < 1e-10

    def test_polar(self):
        params = validate(3, 7)
        polar = side_curve_polar(params)
        rb = math.atanh(vertex_b(params))
        assert abs(polar(0.0) - rb) < 1e-12
        assert abs(polar(2 * math.pi / 3) - rb) < 1e-10
        thetas = numpy.linspace(0, 2 * math.pi / 3, 201)
        rs = numpy.array([polar(theta) for theta in thetas])
        assert numpy.argmin(rs) == 100
        assert numpy.allclose(rs, rs[::-1], atol=1e-9)
        for t in (0.2, 0.5, 0.9):
            assert abs(polar.t_of(float(polar.curve.theta(t))) - t) < 1e-10

    def test_polar_failure(self):
        polar = side_curve_polar(validate(4, 6))
        with mock.patch("sl2prism.prism.bisect", side_effect=RuntimeError("f(a) and f(b) must have different signs")):
            with self.assertRaises(GeometryError):
                polar.t_of(0.3)
        assert polar.t_of(0.0) == 0.0

    def test_curvature_table(self):
        for p, q, C, r in TABLE1:
            params = validate(p, q)
            assert abs(curvature(params) - C) <= 1e-5
            assert abs(curve_radius(params) - r) <= 1e-5 * max(1, r)

    def test_numeric_curvature(self):
        for p, q in SAMPLE_PAIRS:
            params = validate(p, q)
            curve = SideCurve(params)
            for t in (0.25, 0.5, 0.75):
                assert abs(numeric_curvature(curve, t) - curvature(params)) < 1e-6

    def test_circle_fit(self):
        for p, q in SAMPLE_PAIRS:
            params = validate(p, q)
            residual, radius = circle_fit_residual(SideCurve(params))
            assert residual < 1e-9
            assert abs(radius - curve_radius(params)) < 1e-8 * max(1, radius)

    def test_circle_through(self):
        centre, radius = circle_through((1, 0), (0, 1), (-1, 0))
        assert numpy.allclose(centre, (0, 0)) and abs(radius - 1) < 1e-15

    def test_limits(self):
        assert abs(curvature_q_limit(3) - 1 / math.sqrt(3)) < 1e-15
        assert abs(curvature(validate(3, 1000)) - curvature_q_limit(3)) < 1e-4
        assert curvature(validate(1000, 3)) > 10
        assert abs(parallelism_distance(math.pi / 4)) < 1e-15
        with self.assertRaises(DomainError):
            parallelism_distance(0.0)


class Test_volumes(unittest.TestCase):

    def test_zero_height(self):
        assert sector_volume(validate(3, 7), 0.0) == 0
        assert prism_volume(validate(3, 7), 0.0) == 0
        with self.assertRaises(DomainError):
            sector_volume(validate(3, 7), -1.0)

    def test_linear_in_height(self):
        params = validate(4, 5)
        assert abs(sector_volume(params, 0.6) - 2 * sector_volume(params, 0.3)) < 1e-12

    def test_half_sectors(self):
        params = validate(5, 5)
        whole = sector_volume(params, 1.0)
        half = math.pi / 5
        parts = (sector_volume(params, 1.0, theta_range=(0.0, half))
                 + sector_volume(params, 1.0, theta_range=(half, 2 * half)))
        assert abs(whole - parts) < 1e-9 * whole

    def test_table_volumes(self):
        for p, q, rho, _, vol_prism, _ in [TABLE2[0], TABLE3[7]]:
            assert abs(prism_volume(validate(p, q), 2 * rho) - vol_prism) <= 1e-4 * vol_prism

    def test_base_area(self):
        # area of the base figure in the curvature -4 plane
        for p, q in ((29, 3), (3, 7), (6, 4)):
            expected = ((p - 2) * math.pi - 2 * p * math.pi / q) / 4
            assert abs(base_area(validate(p, q)) - expected) < 1e-8 * expected

    def test_vertices(self):
        params = validate(4, 6)
        G = base_vertices(params)
        assert len(G) == 4
        for g in G:
            assert g.x1 == 0
            _, y, z = to_inhomogeneous(g)
            assert abs(math.hypot(y, z) - vertex_b(params)) < 1e-12
        labelled = prism_vertices(params, 0.5)
        assert [label for label, _ in labelled] == ["A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4"]
        for (_, A), (_, B) in zip(labelled[:4], labelled[4:]):
            assert abs(math.atan2(B.x1, B.x0) - math.atan2(A.x1, A.x0) - 0.5) < 1e-12
        with self.assertRaises(DomainError):
            prism_vertices(params, -1)


class Test_group(unittest.TestCase):

    def test_relations(self):
        for p, q in sorted(set((row[0], row[1]) for row in TABLE2 + TABLE3)):
            report = verify_relations(validate(p, q))
            assert report.ok
            assert max(report.residuals.values()) < 1e-9
            assert abs(report.phi_tau - validate(p, q).h_periodic) < 1e-9

    def test_tau(self):
        for p, q in ((3, 7), (4, 5), (7, 3)):
            params = validate(p, q)
            report = verify_relations(params)
            gens = group_generators(params, report.orientation)
            phi, residual = fibre_parameter(gens.tau)
            assert residual < 1e-9
            assert abs(abs(phi) - (math.pi - 2 * math.pi / p - 2 * math.pi / q)) < 1e-9
            E0 = origin()
            moved = E0.transform(gens.tau)
            assert abs(moved.x2) < 1e-10 and abs(moved.x3) < 1e-10

    def test_order_large_q(self):
        for p in (3, 4, 8, 20):
            params = validate(p, 1000)
            report = verify_relations(params)
            assert report.residuals['b_order'] < 1e-9
            gens = group_generators(params, report.orientation)
            assert b_power(gens, 1).residual(gens.b_rot) < 1e-12
            assert not b_power(gens, 500).is_identity(1e-3)

    def test_generator_orders(self):
        params = validate(3, 7)
        gens = group_generators(params, verify_relations(params).orientation)
        assert gens.a.power(3).residual(Isometry.identity()) < 1e-12
        assert gens.b_rot.power(7).residual(Isometry.identity()) < 1e-10
        assert not gens.b_rot.power(3).is_identity()
