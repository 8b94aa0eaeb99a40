import os
import math

import numpy

from sl2prism.errors import ValidationError, DomainError, SolverError
from sl2prism.kernel import origin, from_hyperboloid, fibre_translation, translation_to, rotation_origin
from sl2prism.geodesics import (ToleranceConfig, GeographicalCoords, metric_at, perturbed_metric, volume_element,
                                speed, integrate_geodesic, exp_map, endpoint_jacobian, geodesic_jacobian,
                                solve_geodesic, distance, distance_to_fibred_curve, HALF_PI)
from sl2prism.prism import validate, SideCurve

SLOW = os.environ.get("SL2PRISM_SLOW") == "1"

#-----------------------------------------------------------------------------
# unit tests

import unittest


class Test_tolerances(unittest.TestCase):

    def test_defaults(self):
        tol = ToleranceConfig()
        assert tol.ode_rel_tol == 1e-12 and tol.ode_abs_tol == 1e-12
        assert tol.newton_tol == 1e-11
        assert tol.max_newton_iters == 64
        assert tol.fd_step == 1e-6

    def test_overrides(self):
        tol = ToleranceConfig().with_overrides(quad_tol=1e-8, multistart=4.0)
        assert tol.quad_tol == 1e-8
        assert tol.multistart == 4 and isinstance(tol.multistart, int)
        assert tol != ToleranceConfig()
        assert ToleranceConfig(quad_tol=1e-8) == ToleranceConfig(quad_tol=1e-8)

    def test_bad_values(self):
        with self.assertRaises(ValidationError):
            ToleranceConfig(ode_rel_tol=0)
        with self.assertRaises(ValidationError):
            ToleranceConfig(max_newton_iters=2.5)
        with self.assertRaises(ValidationError):
            ToleranceConfig(bogus=1)

    def test_immutable(self):
        with self.assertRaises(AttributeError):
            ToleranceConfig().quad_tol = 1


class Test_metric(unittest.TestCase):

    def test_origin(self):
        assert numpy.allclose(metric_at(0.0), numpy.diag([1.0, 0.0, 1.0]))

    def test_volume_element(self):
        for r in numpy.linspace(0, 3, 1000):
            assert abs(volume_element(r) - 0.5 * math.sinh(2 * r)) <= 1e-12

    def test_positive_definite(self):
        for r in numpy.linspace(0.01, 3, 100):
            g = metric_at(r)
            assert g[0, 0] > 0
            assert numpy.linalg.det(g[1:, 1:]) > 0
            assert numpy.linalg.det(g) > 0

    def test_perturbed(self):
        g = perturbed_metric(0.1)
        assert abs(g(0.5)[2, 2] - 1.1) < 1e-15
        assert abs(volume_element(1.0, g) - 0.5 * math.sinh(2.0)) > 1e-3


class Test_exp_map(unittest.TestCase):

    def test_coords(self):
        with self.assertRaises(DomainError):
            GeographicalCoords(-1.0, 0.0, 0.5)
        with self.assertRaises(DomainError):
            GeographicalCoords(1.0, 0.0, 2.0)

    def test_zero_length(self):
        end = exp_map(GeographicalCoords(0.0, 0.3, 0.7))
        assert end.coords.r == 0 and end.coords.phi == 0

    def test_fibre_geodesic(self):
        end = exp_map(GeographicalCoords(1.2, 0.0, HALF_PI))
        assert abs(end.coords.r) < 1e-12
        assert abs(end.coords.phi - 1.2) < 1e-10

    def test_base_direction(self):
        for s in (0.01, 0.05, 0.1):
            r, theta, phi = exp_map(GeographicalCoords(s, 0.0, 0.0)).coords
            assert abs(r - s) < 1e-12
            assert abs(phi) < 1e-12

    def test_unit_speed(self):
        for alpha in numpy.linspace(0.0, HALF_PI, 7):
            traj = integrate_geodesic(alpha, 1.5, dense=True)
            for s in numpy.linspace(0.0, 1.5, 11):
                state = traj(s)
                assert abs(speed((state[0], state[2], state[3]), traj.velocity(state)) - 1) < 1e-9

    def test_lambda_equivariance(self):
        g0 = exp_map(GeographicalCoords(0.9, 0.2, 0.6)).coords
        g1 = exp_map(GeographicalCoords(0.9, 1.7, 0.6)).coords
        assert abs(g1.r - g0.r) < 1e-12 and abs(g1.phi - g0.phi) < 1e-12
        assert abs(math.remainder(g1.theta - g0.theta - 1.5, 2 * math.pi)) < 1e-10

    def test_jacobians(self):
        assert abs(endpoint_jacobian(0.05, 0.0)[0, 0] - 1) < 1e-6
        assert abs(endpoint_jacobian(0.7, HALF_PI)[1, 0] - 1) < 1e-8
        for s, alpha in ((0.3, 0.2), (0.8, 0.7), (1.3, 1.2)):
            exact = geodesic_jacobian(s, alpha)
            fd = endpoint_jacobian(s, alpha)
            assert numpy.allclose(exact, fd, atol=1e-5)
            half = endpoint_jacobian(s, alpha, ToleranceConfig(fd_step=5e-7))
            assert abs(numpy.linalg.det(half) - numpy.linalg.det(fd)) < 1e-4 * abs(numpy.linalg.det(exact))


class Test_distance(unittest.TestCase):

    def test_same_point(self):
        P = from_hyperboloid((0.3, 1.0, 0.2))
        assert distance(P, P) < 1e-10

    def test_fibre(self):
        E0 = origin()
        for phi in (0.1, 0.7, 1.4):
            assert abs(distance(E0, E0.transform(fibre_translation(phi))) - phi) < 1e-12
            assert abs(distance(E0, E0.transform(fibre_translation(-phi))) - phi) < 1e-12

    def test_round_trip(self):
        E0 = origin()
        for lam in numpy.linspace(0, 2 * math.pi, 8, endpoint=False):
            for alpha in numpy.linspace(0.05, HALF_PI - 0.05, 8):
                for s in (0.2, 0.6, 1.0, 1.4):
                    end = exp_map(GeographicalCoords(s, lam, alpha))
                    sol = solve_geodesic(E0, from_hyperboloid(end.coords))
                    assert abs(sol.s - s) < 1e-7

    def test_mirror(self):
        E0 = origin()
        r, theta, phi = exp_map(GeographicalCoords(0.8, 0.4, 0.9)).coords
        Q = from_hyperboloid((r, theta, -phi))
        sol = solve_geodesic(E0, Q)
        assert sol.alpha < 0
        r1, theta1, phi1 = integrate_geodesic(sol.alpha, sol.s, lam=sol.lam).state[[0, 2, 3]]
        assert abs(from_hyperboloid((r1, theta1, phi1)).residual(Q)) < 1e-8

    def test_invariance(self):
        rng = numpy.random.default_rng(11)
        for _ in range(10):
            P = from_hyperboloid((rng.uniform(0, 0.4), rng.uniform(0, 2 * math.pi), rng.uniform(-0.3, 0.3)))
            Q = from_hyperboloid((rng.uniform(0, 0.4), rng.uniform(0, 2 * math.pi), rng.uniform(-0.3, 0.3)))
            m = (translation_to(from_hyperboloid((0.3, 1.0, 0.2))) @ rotation_origin(rng.uniform(-3, 3))
                 @ fibre_translation(rng.uniform(-1, 1)))
            assert abs(distance(P.transform(m), Q.transform(m)) - distance(P, Q)) < 1e-8

    def test_triangle_inequality(self):
        rng = numpy.random.default_rng(12)
        for _ in range(5):
            P, Q, R = [from_hyperboloid((rng.uniform(0, 0.3), rng.uniform(0, 2 * math.pi), rng.uniform(-0.2, 0.2)))
                       for _ in range(3)]
            assert distance(P, R) <= distance(P, Q) + distance(Q, R) + 1e-9

    def test_different_sheets(self):
        with self.assertRaises(DomainError):
            distance(origin(), from_hyperboloid((0.1, 0.0, 2 * math.pi + 0.1)))

    def test_across_seam(self):
        P = from_hyperboloid((0.1, 0.0, 3.0))
        Q = from_hyperboloid((0.1, 0.0, 3.3))
        assert (P.winding, Q.winding) == (0, 1)
        assert abs(distance(P, Q) - 0.3) < 1e-9
        assert abs(distance(Q, P) - 0.3) < 1e-9
        P = from_hyperboloid((0.2, 0.5, 3.0))
        Q = from_hyperboloid((0.3, 1.0, 3.2))
        d = distance(from_hyperboloid((0.2, 0.5, 0.0)), from_hyperboloid((0.3, 1.0, 0.2)))
        assert abs(distance(P, Q) - d) < 1e-8
        # same sheet index, but six apart on the cover
        with self.assertRaises(DomainError):
            distance(from_hyperboloid((0.1, 0.0, -3.0)), from_hyperboloid((0.1, 0.0, 3.0)))

    def test_solver_failure(self):
        tol = ToleranceConfig(max_newton_iters=1, multistart=1)
        with self.assertRaises(SolverError) as ctx:
            solve_geodesic(origin(), from_hyperboloid((1.0, 0.5, 0.8)), tol)
        assert ctx.exception.diagnostics["best_residual"] > tol.residual_tol
        assert ctx.exception.diagnostics["starts"] == 2

    def test_exhaustive_multistart(self):
        tol = ToleranceConfig(exhaustive_multistart=True)
        E0 = origin()
        for r in (0.2, 0.6, 1.0):
            for phi in (-0.8, 0.1, 0.5, 1.2):
                Q = from_hyperboloid((r, 0.7, phi))
                first = solve_geodesic(E0, Q)
                every = solve_geodesic(E0, Q, tol)
                assert every.starts == tol.multistart + 1
                assert every.s <= first.s + 1e-9
                assert abs(every.s - first.s) < 1e-8


class Test_fibred_curve(unittest.TestCase):

    def test_3_7(self):
        params = validate(3, 7)
        curve = SideCurve(params)
        fit = distance_to_fibred_curve(curve)
        print(fit)
        assert abs(fit.rho - 0.141564) < 1e-4
        assert abs(fit.psi_min) < 1e-5
        assert abs(float(curve.theta(fit.t_min)) - math.pi / 3) < 1e-4
        scan = min(distance(origin(), curve.projective_point(t)) for t in numpy.linspace(0, 1, 41))
        assert fit.rho <= scan + 1e-9

    @unittest.skipUnless(SLOW, "set SL2PRISM_SLOW=1")
    def test_4_6(self):
        fit = distance_to_fibred_curve(SideCurve(validate(4, 6)))
        assert abs(fit.rho - 0.329239) < 1e-4
