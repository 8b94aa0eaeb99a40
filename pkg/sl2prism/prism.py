'''
Regular p-gonal prisms with q prisms around each side edge.

The base figure is centred at the origin; its vertices G_1 ... G_p lie in the
base plane at hyperboloid radius artanh(b) and its sides are Euclidean
circular arcs in the inhomogeneous (y, z) coordinates.  The tiling group is
generated by a p-rotation a about the origin's fibre and a q-rotation b about
the fibre through G_1; abab is then a fibre translation.
'''

import math
import numbers
import logging
from collections import namedtuple

import numpy
from scipy.optimize import bisect

from .errors import ValidationError, DomainError, GeometryError, VerificationError
from .kernel import (ProjectivePoint, InhomogeneousCoords, Isometry, fibre_translation, rotation_origin,
                     translation_to, translation_from, from_hyperboloid, TWO_PI)
from .geodesics import resolve_tolerances
from .quadrature import integrate

log = logging.getLogger(__name__)

RELATION_TOL = 1e-9
BISECT_XTOL = 1e-13

#-----------------------------------------------------------------------------


class PrismParams(object):
    '''
    Validated (p, q) with derived constants:

    b            = tanh of the distance from the origin to a base vertex
    psi_periodic = pi/2 - pi/p - pi/q
    h_periodic   = pi - 2 pi/p - 2 pi/q, the fibre length of abab
    '''
    def __init__(self, p, q):
        self.p = p
        self.q = q
        self.a_angle = math.pi / p
        self.b_angle = math.pi / q
        tt = math.tan(self.a_angle) * math.tan(self.b_angle)
        self.b = math.sqrt((1 - tt) / (1 + tt))
        self.psi_periodic = 0.5 * math.pi - self.a_angle - self.b_angle
        self.h_periodic = 2 * self.psi_periodic

    def __eq__(self, other):
        return isinstance(other, PrismParams) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return "PrismParams(p=%d, q=%d)" % (self.p, self.q)


def validate(p, q):
    for name, val in (("p", p), ("q", q)):
        if isinstance(val, bool) or not isinstance(val, numbers.Integral):
            raise ValidationError("[sl2prism.prism] %s must be an integer, got %r" % (name, val))
    p, q = int(p), int(q)
    if p < 3:
        raise ValidationError("[sl2prism.prism] p must be at least 3, got %d" % p)
    if q * (p - 2) <= 2 * p:
        raise ValidationError("[sl2prism.prism] q must exceed 2p/(p-2) = %g" % (2.0 * p / (p - 2)))
    return PrismParams(p, q)


def vertex_b(params):
    '''
    tanh(OG_1) = sqrt((1 - tan(pi/p) tan(pi/q)) / (1 + tan(pi/p) tan(pi/q)))
    '''
    return params.b

#-----------------------------------------------------------------------------
# side curve


class SideCurve(object):
    '''
    The side curve from G_1 (t = 0) to G_2 (t = 1) in inhomogeneous coordinates (0, y, z).
    '''
    def __init__(self, params):
        self.params = params
        a, bq = params.a_angle, params.b_angle
        A = a + bq
        self._a2 = 2 * a
        self._A = A
        self._scale = math.sqrt(math.sin(2 * A)) / math.sqrt(math.sin(2 * a) + math.sin(2 * bq))
        self._cos_diff = math.cos(a - bq)

    def points(self, ts):
        '''
        Vectorized evaluation: returns arrays (y, z) for the parameters ts.
        '''
        t = numpy.asarray(ts, dtype=float)
        s2a, c2a = math.sin(self._a2), math.cos(self._a2)
        sA, cA = math.sin(self._A), math.cos(self._A)
        s2A = math.sin(2 * self._A)
        den = sA * sA + t * t * cA * cA
        y = (t * c2a * sA * sA - 0.5 * t * s2a * s2A + sA * sA * (1 - t) + t * t * cA * self._cos_diff)
        z = t * (s2a * sA * sA + 0.5 * c2a * s2A * (1 - t) + cA * (t * s2a * cA + sA * (t - 1)))
        return self._scale * y / den, self._scale * z / den

    def point(self, t):
        y, z = self.points(t)
        return InhomogeneousCoords(0.0, float(y), float(z))

    def projective_point(self, t):
        _, y, z = self.point(t)
        return ProjectivePoint((1.0, 0.0, y, z))

    def theta(self, t):
        y, z = self.points(t)
        return numpy.arctan2(z, y)

    def radius(self, t):
        '''
        Hyperboloid radius r of the curve point, tanh r = |c(t)|.
        '''
        y, z = self.points(t)
        return numpy.arctanh(numpy.hypot(y, z))


def side_curve_point(params, t):
    if not 0 <= t <= 1:
        raise DomainError("[sl2prism.prism] curve parameter must lie in [0, 1], got %g" % t)
    return SideCurve(params).point(t)


class SidePolar(object):
    '''
    The side curve as a polar graph r = r(theta), theta in [0, 2 pi/p].
    '''
    MONOTONE_SAMPLES = 129

    def __init__(self, params):
        self.params = params
        self.curve = SideCurve(params)
        self.theta_max = TWO_PI / params.p
        ts = numpy.linspace(0.0, 1.0, self.MONOTONE_SAMPLES)
        if not numpy.all(numpy.diff(self.curve.theta(ts)) > 0):
            raise GeometryError("[sl2prism.prism] polar angle of the side curve is not monotone for %s" % params)

    def t_of(self, theta):
        if theta <= 0:
            return 0.0
        if theta >= self.theta_max:
            return 1.0
        try:
            return bisect(lambda t: self.curve.theta(t) - theta, 0.0, 1.0, xtol=BISECT_XTOL)
        except (ValueError, RuntimeError) as err:
            raise GeometryError("[sl2prism.prism] cannot invert the polar angle %g of the side curve for %s: %s"
                                % (theta, self.params, err))

    def __call__(self, theta):
        return float(self.curve.radius(self.t_of(theta)))


def side_curve_polar(params):
    return SidePolar(params)

#-----------------------------------------------------------------------------
# curvature


def curvature(params):
    '''
    Euclidean curvature of the side curve in the (y, z) plane.
    '''
    a, bq = params.a_angle, params.b_angle
    A = a + bq
    return math.sqrt(math.cos(A) * (math.sin(2 * a) + math.sin(2 * bq)) / (math.sin(A) * (1 - math.cos(2 * a))))


def curve_radius(params):
    return 1.0 / curvature(params)


def curvature_q_limit(p):
    '''
    Limit of the curvature for q -> infinity.
    '''
    if p < 3:
        raise ValidationError("[sl2prism.prism] p must be at least 3, got %r" % p)
    return 1.0 / math.tan(math.pi / p)


def parallelism_distance(phi):
    '''
    Distance of parallelism for the angle phi: log(cot phi).
    '''
    if not 0 < phi < 0.5 * math.pi:
        raise DomainError("[sl2prism.prism] angle of parallelism must lie in (0, pi/2), got %g" % phi)
    return math.log(1.0 / math.tan(phi))


FIRST_STENCIL = numpy.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12
SECOND_STENCIL = numpy.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12


def numeric_curvature(curve, t, h=1e-3):
    '''
    Curvature of the (y, z) curve by fourth-order central differences.
    '''
    y, z = curve.points(t + h * numpy.arange(-2, 3))
    dy, dz = FIRST_STENCIL @ y / h, FIRST_STENCIL @ z / h
    ddy, ddz = SECOND_STENCIL @ y / (h * h), SECOND_STENCIL @ z / (h * h)
    return abs(dy * ddz - dz * ddy) / (dy * dy + dz * dz) ** 1.5


def circle_through(p1, p2, p3):
    '''
    Centre and radius of the Euclidean circle through three points of the plane.
    '''
    (ax, ay), (bx, by), (cx, cy) = p1, p2, p3
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0:
        raise GeometryError("[sl2prism.prism] points %s, %s, %s are collinear" % (p1, p2, p3))
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    return numpy.array([ux, uy]), math.hypot(ax - ux, ay - uy)


def circle_fit_residual(curve, n=100):
    '''
    Largest deviation of n curve samples from the circle through c(0), c(1/2), c(1).
    Returns (residual, radius).
    '''
    y, z = curve.points([0.0, 0.5, 1.0])
    centre, radius = circle_through(*zip(y, z))
    ys, zs = curve.points(numpy.linspace(0.0, 1.0, n))
    residual = numpy.max(numpy.abs(numpy.hypot(ys - centre[0], zs - centre[1]) - radius))
    return float(residual), radius

#-----------------------------------------------------------------------------
# vertices and volumes


def base_vertices(params):
    '''
    G_1 ... G_p in the base plane.
    '''
    r = math.atanh(params.b)
    return [from_hyperboloid((r, TWO_PI * i / params.p, 0.0)) for i in range(params.p)]


def prism_vertices(params, height):
    '''
    Cover-face vertices of a bounded prism of the given height: A_i below and
    B_i above the base plane.  Returns a list of (label, ProjectivePoint).
    '''
    if height < 0:
        raise DomainError("[sl2prism.prism] prism height must be nonnegative, got %g" % height)
    down, up = fibre_translation(-0.5 * height), fibre_translation(0.5 * height)
    ret = []
    for i, g in enumerate(base_vertices(params), 1):
        ret.append(("A%d" % i, g.transform(down)))
    for i, g in enumerate(base_vertices(params), 1):
        ret.append(("B%d" % i, g.transform(up)))
    return ret


def sector_volume(params, Psi, tol=None, theta_range=None):
    '''
    Volume over one side curve, theta in [0, 2 pi/p], of height Psi.
    theta_range restricts the polar angle interval.
    '''
    tol = resolve_tolerances(tol)
    if Psi < 0:
        raise DomainError("[sl2prism.prism] height parameter must be nonnegative, got %g" % Psi)
    if Psi == 0:
        return 0.0
    polar = side_curve_polar(params)
    lower, upper = theta_range or (0.0, polar.theta_max)
    val, err = integrate(lambda theta: 0.25 * (math.cosh(2 * polar(theta)) - 1), lower, upper, tol,
                         "sector integral for %s" % params)
    log.debug("sector integral %s on [%g, %g]: %.12g (+- %.2g)", params, lower, upper, val, err)
    return Psi * val


def prism_volume(params, Psi, tol=None):
    return params.p * sector_volume(params, Psi, tol)


def base_area(params, tol=None):
    '''
    Prism volume per unit height.
    '''
    return prism_volume(params, 1.0, tol)

#-----------------------------------------------------------------------------
# group


GroupGenerators = namedtuple('GroupGenerators', 'a b_rot s tau orientation centre b_local')

RelationReport = namedtuple('RelationReport', 'residuals phi_tau tau_sense orientation ok')


def group_generators(params, orientation=1):
    a = rotation_origin(TWO_PI / params.p)
    A1 = from_hyperboloid((math.atanh(params.b), 0.0, 0.0))
    b_local = rotation_origin(orientation * TWO_PI / params.q)
    b_rot = translation_from(A1) @ b_local @ translation_to(A1)
    s = b_rot @ a @ b_rot
    tau = a @ b_rot @ a @ b_rot
    return GroupGenerators(a, b_rot, s, tau, orientation, A1, b_local)


def b_power(gens, n):
    '''
    b^n, taken at the origin where the rotation matrix is orthogonal and then
    moved to G_1.  Powers of b_rot itself drift off the group for large q.
    '''
    return translation_from(gens.centre) @ gens.b_local.power(n) @ translation_to(gens.centre)


def fibre_parameter(iso):
    '''
    Fit iso by a fibre translation S(phi); returns (phi, residual).
    '''
    m = iso.matrix
    kappa = math.hypot(m[0, 0], m[0, 1])
    if kappa == 0:
        return 0.0, math.inf
    phi = math.atan2(m[0, 1], m[0, 0])
    return phi, iso.residual(fibre_translation(phi))


def _relations(params, gens):
    one = Isometry.identity()
    a, b, s, tau = gens.a, gens.b_rot, gens.s, gens.tau
    phi, fibre_residual = fibre_parameter(tau)
    residuals = dict(a_order=a.power(params.p).residual(one),
                     b_order=b_power(gens, params.q).residual(one),
                     commutator=(a @ s @ a.inverse() @ s.inverse()).residual(one),
                     screw=(b @ a @ b @ s.inverse()).residual(one),
                     abab_baba=tau.residual(b @ a @ b @ a),
                     tau_fibre=fibre_residual,
                     tau_length=abs(abs(phi) - params.h_periodic))
    return residuals, phi


def verify_relations(params):
    '''
    Check the presentation of the tiling group numerically.  The sense of the
    q-rotation is not fixed a priori: the reverse sense is tried when the first fails.
    '''
    report = None
    for orientation in (1, -1):
        residuals, phi = _relations(params, group_generators(params, orientation))
        ok = max(residuals.values()) <= RELATION_TOL
        report = RelationReport(residuals, abs(phi), 1 if phi >= 0 else -1, orientation, ok)
        if ok:
            break
        log.debug("relations for %s fail with orientation %+d: %s", params, orientation, residuals)
    if not report.ok:
        raise VerificationError("[sl2prism.prism] group relations fail for %s: %s" % (params, report.residuals),
                                report=report)
    return report
