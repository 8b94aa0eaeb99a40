import os
import math
from unittest import mock

import numpy

from sl2prism.errors import ValidationError, SolverError
from sl2prism.prism import validate, curvature, base_area
from sl2prism.packing import (PackingResult, optimal_radius, packing_density, sweep, sweep_pairs,
                              argmax_density)
from sl2prism.tables import TABLE2, TABLE3, PEAK_Q, PEAK_P_RANGE, reference

SLOW = os.environ.get("SL2PRISM_SLOW") == "1"


def fake_row(p, q, density):
    return PackingResult(p, q, 0.1, 0.2, 0.01, 0.02, density, 0.03, {})

#-----------------------------------------------------------------------------
# unit tests

import unittest


class Test_packing(unittest.TestCase):

    def test_optimal_radius(self):
        for p, q in ((3, 7), (7, 3)):
            params = validate(p, q)
            rho = optimal_radius(params)
            assert abs(rho - reference("table2", p, q)[0]) < 1e-4
            # the ball touches the side surface where the base circle is closest to the origin
            assert abs(rho - 0.5 * math.asinh(curvature(params))) < 1e-6

    def test_density_3_7(self):
        params = validate(3, 7)
        row = packing_density(params)
        print(row)
        rho, vol_ball, vol_prism, density = reference("table2", 3, 7)
        assert abs(row.rho_opt - rho) < 1e-4
        assert row.h_opt == 2 * row.rho_opt
        assert abs(row.vol_ball - vol_ball) <= 1e-4 * vol_ball
        assert abs(row.vol_prism - vol_prism) <= 1e-4 * vol_prism
        assert abs(row.density - density) < 1e-4
        assert 0 < row.density < 1
        assert row.diagnostics["non_periodic"]
        assert abs(row.h_opt - params.h_periodic) > 1e-6
        assert abs(row.vol_prism / row.h_opt - base_area(params)) < 1e-8 * row.vol_prism
        assert abs(row.diagnostics["psi_min"]) < 1e-5

    def test_sweep_skips_invalid(self):
        result = sweep([3, 4, 5, 6], [3])
        assert result.rows == [] and result.failed == []
        assert [(p, q) for p, q, _ in result.skipped] == [(3, 3), (4, 3), (5, 3), (6, 3)]

    def test_sweep_empty(self):
        result = sweep_pairs([])
        assert result.rows == [] and result.skipped == [] and result.failed == []
        with self.assertRaises(ValidationError):
            argmax_density(result.rows)

    def test_sweep_records_failures(self):
        def failing(params, tol=None):
            if params.p == 3:
                raise numpy.linalg.LinAlgError("Singular matrix")
            raise SolverError("[sl2prism.geodesics] no geodesic found", diagnostics={})
        with mock.patch("sl2prism.packing.packing_density", failing):
            result = sweep_pairs([(7, 3), (3, 7), (3, 6)])
        assert result.rows == []
        assert [(p, q) for p, q, _ in result.skipped] == [(3, 6)]
        assert [(p, q) for p, q, _ in result.failed] == [(3, 7), (7, 3)]
        assert "LinAlgError" in result.failed[0][2]
        assert "no geodesic" in result.failed[1][2]

    def test_argmax_ties(self):
        rows = [fake_row(28, 3, 0.5), fake_row(29, 3, 0.6), fake_row(30, 3, 0.6 - 1e-8)]
        best = argmax_density(rows)
        assert (best.p, best.q) == (29, 3)
        assert best.diagnostics["ties"] == [(30, 3)]
        best = argmax_density(rows[:2])
        assert best.diagnostics["ties"] == []

    def test_sweep_order(self):
        result = sweep_pairs([(7, 3), (3, 7), (3, 6)], jobs=2)
        assert [(row.p, row.q) for row in result.rows] == [(3, 7), (7, 3)]
        assert [(p, q) for p, q, _ in result.skipped] == [(3, 6)]

    @unittest.skipUnless(SLOW, "set SL2PRISM_SLOW=1")
    def test_table2(self):
        result = sweep_pairs([(row[0], row[1]) for row in TABLE2], jobs=4)
        assert not result.failed
        for row, (p, q, rho, vol_ball, vol_prism, density) in zip(result.rows, TABLE2):
            rel = 1e-3 if q == 1000 else 1e-4
            assert (row.p, row.q) == (p, q)
            assert abs(row.rho_opt - rho) <= rel * rho
            assert abs(row.vol_ball - vol_ball) <= rel * vol_ball
            assert abs(row.vol_prism - vol_prism) <= rel * vol_prism
            assert abs(row.density - density) <= rel * density
        # density falls with q inside each block of fixed p
        for a, b in zip(result.rows, result.rows[1:]):
            if a.p == b.p:
                assert a.density > b.density

    @unittest.skipUnless(SLOW, "set SL2PRISM_SLOW=1")
    def test_peak(self):
        result = sweep(range(PEAK_P_RANGE[0], PEAK_P_RANGE[1] + 1), [PEAK_Q], jobs=4)
        assert not result.failed
        best = argmax_density(result.rows)
        assert (best.p, best.q) == (29, 3)
        assert abs(best.density - 0.626606) < 1e-4
        density = dict(((row.p, row.q), row.density) for row in result.rows)
        assert density[28, 3] < density[29, 3] > density[30, 3]
        assert density[35, 3] > density[40, 3] > density[52, 3]
        for p, q, _, _, _, expected in TABLE3:
            if q == PEAK_Q:
                assert abs(density[p, q] - expected) < 1e-4

    @unittest.skipUnless(SLOW, "set SL2PRISM_SLOW=1")
    def test_reproducible(self):
        params = validate(29, 3)
        assert packing_density(params) == packing_density(params)
