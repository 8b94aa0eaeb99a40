#
# Verification suite
#
# Checks are specified as a list of check dicts.
# Each check dict contains the following key/value pairs:
#
#    name   - unique check name
#    group  - one of metric, isometry, geodesic, ball, curvature, vertex, group
#    check  - function(context) returning (ok, detail string)
#    doc    - one line description
#
# The context passed to each check carries the tolerances, the number of
# random samples, a seeded random generator and the metric (possibly perturbed).
#
# Usage:
#
#         results = CheckSuite(samples=20).run(filter="group")
#
# Tolerances given as strings are relative if they end in %, otherwise absolute;
# see compare_with_tolerance.

import math
import numbers
import logging
from collections import namedtuple

import numpy

from .errors import Sl2PrismError
from .lib.calc import evaluator
from .kernel import (quadratic_form, fibre_translation, translation_to, rotation_origin, from_hyperboloid,
                     origin)
from .geodesics import (metric_at, perturbed_metric, volume_element, exp_map, distance, GeographicalCoords,
                        resolve_tolerances)
from .ballvol import ball_volume
from .prism import (validate, SideCurve, curvature, numeric_curvature, circle_fit_residual, vertex_b,
                    verify_relations)
from .tables import TABLE2, TABLE3

log = logging.getLogger(__name__)

CheckResult = namedtuple('CheckResult', 'name group ok detail')

#-----------------------------------------------------------------------------


def compare_with_tolerance(value, expected, tolerance):
    """
    Compare value to expected with maximum tolerance.

    If tolerance is a string, it is relative if it ends in %, otherwise absolute;
    a string may be any expression understood by lib/calc.py (e.g. "1e-3%").
    Works elementwise on arrays: the sum of absolute differences is compared.
    """
    if isinstance(tolerance, numbers.Number):
        tolerance = repr(float(tolerance))
    value = numpy.asarray(value, dtype=float)
    expected = numpy.asarray(expected, dtype=float)
    if tolerance.endswith('%'):
        tolerance = evaluator(dict(), dict(), tolerance[:-1]) * 0.01
        tolerance = tolerance * max(numpy.sum(abs(value)), numpy.sum(abs(expected)))
    else:
        tolerance = evaluator(dict(), dict(), tolerance)

    if numpy.isinf(value).any() or numpy.isinf(expected).any():
        return bool(numpy.all(value == expected))
    return bool(numpy.sum(abs(value - expected)) <= tolerance)

#-----------------------------------------------------------------------------
# random interior points and isometries


def random_point(rng, rmax=0.4, phimax=0.3):
    return from_hyperboloid((rng.uniform(0, rmax), rng.uniform(0, 2 * math.pi), rng.uniform(-phimax, phimax)))


def random_word(rng, maxlen=5):
    '''
    A random product of fibre translations, translations and rotations.
    '''
    word = None
    for _ in range(rng.integers(1, maxlen + 1)):
        kind = rng.integers(3)
        if kind == 0:
            letter = fibre_translation(rng.uniform(-0.5, 0.5))
        elif kind == 1:
            letter = translation_to(random_point(rng, rmax=0.3, phimax=0.3))
        else:
            letter = rotation_origin(rng.uniform(-math.pi, math.pi))
        word = letter if word is None else word @ letter
    return word

#-----------------------------------------------------------------------------
# the checks


def check_volume_element(ctx):
    rs = numpy.linspace(0.0, 3.0, 1000)
    err = max(abs(volume_element(r, ctx.metric) - 0.5 * math.sinh(2 * r)) for r in rs)
    return err <= 1e-12, "max deviation %.3g" % err


def check_metric_positive(ctx):
    worst = min(numpy.linalg.eigvalsh(ctx.metric(r)).min() for r in numpy.linspace(0.01, 3.0, 300))
    return worst > 0, "smallest eigenvalue %.3g" % worst


def check_polarity(ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        m = random_word(ctx.rng)
        ratios = []
        for _ in range(5):
            x = random_point(ctx.rng)
            ratios.append(quadratic_form(x.transform(m)) / quadratic_form(x))
        worst = max(worst, (max(ratios) - min(ratios)) / abs(numpy.mean(ratios)))
    return worst <= 1e-10, "largest spread of Q ratios %.3g" % worst


def check_distance_invariance(ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        P, Q = random_point(ctx.rng), random_point(ctx.rng)
        m = random_word(ctx.rng)
        d0 = distance(P, Q, ctx.tol)
        d1 = distance(P.transform(m), Q.transform(m), ctx.tol)
        worst = max(worst, abs(d1 - d0))
    return compare_with_tolerance(worst, 0.0, 1e-7), "largest change %.3g over %d pairs" % (worst, ctx.samples)


def check_exp_round_trip(ctx):
    E0 = origin()
    worst = 0.0
    for lam in numpy.linspace(0, 2 * math.pi, 4, endpoint=False):
        for alpha in numpy.linspace(0.05, 0.5 * math.pi - 0.05, 4):
            for s in (0.3, 0.8, 1.4):
                end = exp_map(GeographicalCoords(s, lam, alpha), ctx.tol)
                worst = max(worst, abs(distance(E0, from_hyperboloid(end.coords), ctx.tol) - s))
    return worst <= 1e-7, "largest deviation %.3g" % worst


def check_small_ball(ctx):
    rho = 0.01
    ratio = ball_volume(rho, ctx.tol).volume / (4.0 / 3.0 * math.pi * rho ** 3)
    return compare_with_tolerance(ratio, 1.0, "0.1%"), "volume ratio %.6f" % ratio


def check_curvature(ctx):
    worst = 0.0
    for p, q in CURVATURE_PAIRS:
        params = validate(p, q)
        curve = SideCurve(params)
        C = curvature(params)
        for t in (0.25, 0.5, 0.75):
            worst = max(worst, abs(numeric_curvature(curve, t) - C))
    return worst <= 1e-6, "largest deviation %.3g over %d pairs" % (worst, len(CURVATURE_PAIRS))


def check_circle_fit(ctx):
    worst_fit = worst_radius = 0.0
    for p, q in CURVATURE_PAIRS:
        params = validate(p, q)
        residual, radius = circle_fit_residual(SideCurve(params))
        worst_fit = max(worst_fit, residual)
        worst_radius = max(worst_radius, abs(radius - 1 / curvature(params)))
    ok = worst_fit <= 1e-9 and compare_with_tolerance(worst_radius, 0.0, 1e-8)
    return ok, "fit residual %.3g, radius deviation %.3g" % (worst_fit, worst_radius)


def check_vertex_b(ctx):
    worst = abs(vertex_b(validate(4, 6)) - (math.sqrt(6) - math.sqrt(2)) / 2)
    for p, q in CURVATURE_PAIRS:
        params = validate(p, q)
        _, y, z = SideCurve(params).point(0.0)
        worst = max(worst, abs(math.hypot(y, z) - vertex_b(params)))
    return worst <= 1e-12, "largest deviation %.3g" % worst


def check_relations(ctx):
    worst = 0.0
    for p, q in TABLE_PAIRS:
        report = verify_relations(validate(p, q))
        worst = max(worst, max(report.residuals.values()))
    return worst <= 1e-9, "largest residual %.3g over %d pairs" % (worst, len(TABLE_PAIRS))


CURVATURE_PAIRS = [(3, 7), (3, 8), (3, 10), (4, 5), (4, 6), (5, 4), (6, 4), (7, 3), (20, 3), (29, 3)]
TABLE_PAIRS = sorted(set((row[0], row[1]) for row in TABLE2 + TABLE3))

CHECKS = [
    {'name': 'volume_element', 'group': 'metric', 'check': check_volume_element,
     'doc': 'sqrt(det g) equals (1/2) sinh 2r on [0, 3]'},
    {'name': 'metric_positive', 'group': 'metric', 'check': check_metric_positive,
     'doc': 'metric tensor is positive definite for r > 0'},
    {'name': 'polarity', 'group': 'isometry', 'check': check_polarity,
     'doc': 'products of S, T, R scale the quadratic form by one constant'},
    {'name': 'distance_invariance', 'group': 'isometry', 'check': check_distance_invariance,
     'doc': 'distance is unchanged by random isometries'},
    {'name': 'exp_round_trip', 'group': 'geodesic', 'check': check_exp_round_trip,
     'doc': 'distance from the origin to exp(s, lambda, alpha) is s'},
    {'name': 'small_ball', 'group': 'ball', 'check': check_small_ball,
     'doc': 'small balls have Euclidean volume'},
    {'name': 'curvature_formula', 'group': 'curvature', 'check': check_curvature,
     'doc': 'finite-difference curvature of the side curve matches the closed form'},
    {'name': 'circle_fit', 'group': 'curvature', 'check': check_circle_fit,
     'doc': 'side curves are circular arcs of radius 1/C'},
    {'name': 'vertex_b', 'group': 'vertex', 'check': check_vertex_b,
     'doc': 'vertex radius b agrees with the side curve endpoints'},
    {'name': 'relations', 'group': 'group', 'check': check_relations,
     'doc': 'group presentation holds for every table pair'},
]

#-----------------------------------------------------------------------------


class CheckContext(object):
    def __init__(self, tol, samples, seed, metric):
        self.tol = tol
        self.samples = samples
        self.rng = numpy.random.default_rng(seed)
        self.metric = metric


class CheckSuite(object):

    def __init__(self, checks=None, tol=None, samples=20, seed=0, metric_perturbation=0.0):
        '''
        checks              = list of check dicts (defaults to CHECKS)
        tol                 = ToleranceConfig
        samples             = number of random samples for the sampling checks
        metric_perturbation = relative change of g_phiphi; nonzero values make the metric checks fail
        '''
        self.checks = CHECKS if checks is None else checks
        self.tol = resolve_tolerances(tol)
        self.samples = samples
        self.seed = seed
        if metric_perturbation:
            self.metric = perturbed_metric(metric_perturbation)
        else:
            self.metric = metric_at

    def selected(self, filter=None):
        if not filter:
            return list(self.checks)
        return [chk for chk in self.checks if filter in (chk['name'], chk['group'])]

    def run_check(self, chk):
        ctx = CheckContext(self.tol, self.samples, self.seed, self.metric)
        try:
            ok, detail = chk['check'](ctx)
        except Sl2PrismError as err:
            ok, detail = False, "error: %s" % err
        log.info("%s %s/%s: %s", "PASS" if ok else "FAIL", chk['group'], chk['name'], detail)
        return CheckResult(chk['name'], chk['group'], bool(ok), detail)

    def run(self, filter=None):
        return [self.run_check(chk) for chk in self.selected(filter)]
