'''
Riemannian layer: metric tensor, geodesics from the origin, exponential map
inversion and the distance from the origin to a fibred curve.

The line element in hyperboloid coordinates (r, theta, phi) is

    ds^2 = dr^2 + cosh^2 r sinh^2 r dtheta^2 + (dphi + sinh^2 r dtheta)^2

whose volume element is (1/2) sinh 2r dr dtheta dphi.  theta and phi are
cyclic, and a geodesic leaving the origin at inclination alpha has
phi-momentum sin(alpha) and zero theta-momentum.  With a signed radius r the
remaining equations are regular at r = 0:

    r'     = v
    v'     = -sin^2(alpha) tanh r / cosh^2 r
    theta' = -sin(alpha) / cosh^2 r
    phi'   =  sin(alpha) (1 + tanh^2 r)

starting from (r, v, theta, phi) = (0, cos alpha, lambda, 0).  A negative r
stands for the point (|r|, theta + pi, phi).
'''

import math
import logging
import functools
from collections import namedtuple

import numpy
from scipy.integrate import solve_ivp
from scipy.optimize import root, minimize_scalar

from .errors import ValidationError, DomainError, IntegrationError, SolverError, MinimizationError
from .kernel import (HyperboloidCoords, fibre_translation, translation_from,
                     to_hyperboloid, origin, TWO_PI)

log = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi

# below this radius a target is taken to lie on the origin's fibre
FIBRE_EPS = 1e-12

#-----------------------------------------------------------------------------


class ToleranceConfig(object):
    '''
    Numerical tolerances shared by every layer.  Instances are immutable;
    use with_overrides() to derive a modified copy.
    '''
    DEFAULTS = dict(ode_rel_tol=1e-12,
                    ode_abs_tol=1e-12,
                    newton_tol=1e-11,
                    max_newton_iters=64,
                    fd_step=1e-6,
                    quad_tol=1e-9,
                    residual_tol=1e-9,
                    multistart=8,
                    exhaustive_multistart=False,
                    minimize_tol=1e-7,
                    )
    INTEGER_FIELDS = ("max_newton_iters", "multistart")

    def __init__(self, **kwargs):
        unknown = set(kwargs) - set(self.DEFAULTS)
        if unknown:
            raise ValidationError("[sl2prism.geodesics] unknown tolerance setting(s) %s" % ", ".join(sorted(unknown)))
        values = dict(self.DEFAULTS)
        values.update(kwargs)
        for key, val in values.items():
            if key == "exhaustive_multistart":
                values[key] = bool(val)
                continue
            if key in self.INTEGER_FIELDS:
                if int(val) != val:
                    raise ValidationError("[sl2prism.geodesics] %s must be an integer, got %r" % (key, val))
                val = int(val)
            else:
                val = float(val)
            if not val > 0:
                raise ValidationError("[sl2prism.geodesics] %s must be positive, got %r" % (key, val))
            values[key] = val
        self.__dict__.update(values)

    def __setattr__(self, key, val):
        raise AttributeError("ToleranceConfig is immutable; use with_overrides()")

    def with_overrides(self, **kwargs):
        values = self.as_dict()
        values.update(kwargs)
        return ToleranceConfig(**values)

    def as_dict(self):
        return {key: getattr(self, key) for key in self.DEFAULTS}

    def __eq__(self, other):
        return isinstance(other, ToleranceConfig) and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash(tuple(sorted(self.as_dict().items())))

    def __repr__(self):
        return "ToleranceConfig(%s)" % ", ".join("%s=%r" % kv for kv in sorted(self.as_dict().items()))


DEFAULT_TOLERANCES = ToleranceConfig()


def resolve_tolerances(tol):
    return DEFAULT_TOLERANCES if tol is None else tol

#-----------------------------------------------------------------------------


class GeographicalCoords(namedtuple('GeographicalCoords', 's lam alpha')):
    '''
    s     = geodesic arc length, s >= 0
    lam   = longitude (rotation about the origin's fibre)
    alpha = inclination of the initial direction from the base plane, in [0, pi/2]
    '''
    __slots__ = ()

    def __new__(cls, s, lam, alpha):
        if s < 0:
            raise DomainError("[sl2prism.geodesics] arc length must be nonnegative, got %g" % s)
        if not 0 <= alpha <= HALF_PI:
            raise DomainError("[sl2prism.geodesics] alpha must lie in [0, pi/2], got %g" % alpha)
        return super(GeographicalCoords, cls).__new__(cls, float(s), float(lam), float(alpha))


GeodesicEndpoint = namedtuple('GeodesicEndpoint', 'coords tangent')

GeodesicSolution = namedtuple('GeodesicSolution', 's lam alpha residual starts converged')

FibredCurveDistance = namedtuple('FibredCurveDistance', 'rho t_min psi_min evaluations')

#-----------------------------------------------------------------------------
# metric


def metric_at(r, phi_scale=1.0):
    '''
    Metric tensor at radius r in the coordinates (r, theta, phi).
    phi_scale multiplies g_phiphi and is only used to perturb the metric.
    '''
    sh2 = math.sinh(r) ** 2
    return numpy.array([[1.0, 0.0, 0.0],
                        [0.0, sh2 * math.cosh(2 * r), sh2],
                        [0.0, sh2, phi_scale]])


def perturbed_metric(eps):
    return functools.partial(metric_at, phi_scale=1.0 + eps)


def volume_element(r, metric=metric_at):
    return math.sqrt(abs(numpy.linalg.det(metric(r))))


def speed(coords, tangent, metric=metric_at):
    '''
    Metric norm of a coordinate velocity at the given point.
    '''
    tangent = numpy.asarray(tangent, dtype=float)
    return math.sqrt(tangent @ metric(coords[0]) @ tangent)

#-----------------------------------------------------------------------------
# integration


def _geodesic_rhs(s, y, sa, ca, sensitivities):
    r, v = y[0], y[1]
    th = math.tanh(r)
    sech2 = 1.0 - th * th
    g = th * sech2
    dy = [v, -sa * sa * g, -sa * sech2, sa * (1.0 + th * th)]
    if sensitivities:
        dr, dv = y[4], y[5]
        dg = sech2 * (sech2 - 2.0 * th * th)
        dy += [dv,
               -2.0 * sa * ca * g - sa * sa * dg * dr,
               -ca * sech2 + 2.0 * sa * g * dr,
               ca * (1.0 + th * th) + 2.0 * sa * g * dr]
    return dy


class GeodesicTrajectory(object):
    '''
    Result of integrate_geodesic.

    state holds (r, v, theta, phi) at s_end, with the alpha-derivatives
    (dr, dv, dtheta, dphi) appended when sensitivities were integrated.
    r is signed.
    '''
    def __init__(self, alpha, lam, s_end, state, sol=None, nfev=0):
        self.alpha = alpha
        self.lam = lam
        self.s_end = s_end
        self.state = state
        self.sol = sol
        self.nfev = nfev

    def __call__(self, s):
        '''
        Dense state at arc length(s) s; needs dense=True.
        '''
        if self.sol is None:
            raise ValueError("trajectory was integrated without dense output")
        return self.sol(s)

    def velocity(self, state=None):
        '''
        Coordinate velocity (r', theta', phi') for a state of this trajectory.
        '''
        state = self.state if state is None else state
        dy = _geodesic_rhs(0.0, state, math.sin(self.alpha), math.cos(self.alpha), False)
        return numpy.array([dy[0], dy[2], dy[3]])

    def jacobian(self, state=None):
        '''
        d(r, phi)/d(s, alpha) from the variational equations.
        '''
        state = self.state if state is None else state
        if len(state) < 8:
            raise ValueError("trajectory was integrated without sensitivities")
        r_s, _, phi_s = self.velocity(state)
        return numpy.array([[r_s, state[4]],
                            [phi_s, state[7]]])


def integrate_geodesic(alpha, s_end, tol=None, lam=0.0, sensitivities=False, dense=False):
    '''
    Integrate the unit-speed geodesic from the origin with inclination alpha
    (any real) up to signed arc length s_end.
    '''
    tol = resolve_tolerances(tol)
    sa, ca = math.sin(alpha), math.cos(alpha)
    y0 = [0.0, ca, lam, 0.0]
    if sensitivities:
        y0 += [0.0, -sa, 0.0, 0.0]
    y0 = numpy.array(y0)
    if s_end == 0:
        return GeodesicTrajectory(alpha, lam, 0.0, y0)

    ret = solve_ivp(_geodesic_rhs, (0.0, s_end), y0, method="DOP853",
                    rtol=tol.ode_rel_tol, atol=tol.ode_abs_tol,
                    dense_output=dense, args=(sa, ca, sensitivities))
    if not ret.success:
        raise IntegrationError("[sl2prism.geodesics] geodesic integration failed at alpha=%g, s=%g: %s"
                               % (alpha, s_end, ret.message),
                               diagnostics=dict(alpha=alpha, s_end=s_end, message=ret.message,
                                                nfev=ret.nfev, reached=float(ret.t[-1])))
    return GeodesicTrajectory(alpha, lam, float(s_end), ret.y[:, -1].copy(),
                              sol=ret.sol if dense else None, nfev=ret.nfev)


def exp_map(g, tol=None):
    '''
    Exponential map at the origin in geographical coordinates.
    Returns the endpoint with r >= 0 and theta in [0, 2 pi).
    '''
    traj = integrate_geodesic(g.alpha, g.s, tol, lam=g.lam)
    r, v, theta, phi = traj.state[:4]
    tangent = traj.velocity()
    if r < 0:
        r, theta = -r, theta + math.pi
        tangent[0] = -tangent[0]
    return GeodesicEndpoint(HyperboloidCoords(float(r), float(theta % TWO_PI), float(phi)), tangent)


def _r_phi(alpha, s, tol):
    state = integrate_geodesic(alpha, s, tol).state
    return numpy.array([state[0], state[3]])


def endpoint_jacobian(s, alpha, tol=None):
    '''
    d(r, phi)/d(s, alpha) by central finite differences of the signed endpoint.
    '''
    tol = resolve_tolerances(tol)
    h = tol.fd_step
    col_s = (_r_phi(alpha, s + h, tol) - _r_phi(alpha, s - h, tol)) / (2 * h)
    col_a = (_r_phi(alpha + h, s, tol) - _r_phi(alpha - h, s, tol)) / (2 * h)
    return numpy.column_stack([col_s, col_a])


def geodesic_jacobian(s, alpha, tol=None):
    return integrate_geodesic(alpha, s, tol, sensitivities=True).jacobian()

#-----------------------------------------------------------------------------
# exponential map inversion


def _seeds(r_t, phi_t, tol):
    '''
    Starting points (s, alpha) for the shooting problem: the Euclidean guess
    first, then an alpha grid at the same arc length.
    '''
    s0 = math.hypot(r_t, phi_t)
    yield s0, math.atan2(phi_t, r_t)
    n = tol.multistart
    for k in range(n):
        yield s0, HALF_PI * (k + 0.5) / n


def _shoot(r_t, phi_t, tol):
    '''
    Solve r(s, alpha) = r_t, phi(s, alpha) = phi_t for phi_t >= 0.
    Returns (best solution or None, best residual, number of starts).
    '''
    target = numpy.array([r_t, phi_t])

    def fun(x):
        traj = integrate_geodesic(x[1], x[0], tol, sensitivities=True)
        return traj.state[[0, 3]] - target, traj.jacobian()

    best = None
    best_residual = math.inf
    starts = 0
    for seed in _seeds(r_t, phi_t, tol):
        starts += 1
        try:
            ret = root(fun, numpy.array(seed), jac=True, method="hybr", tol=tol.newton_tol,
                       options=dict(maxfev=tol.max_newton_iters))
        except IntegrationError as err:
            log.debug("shooting start %s abandoned: %s", seed, err)
            continue
        s, alpha = ret.x
        residual = float(numpy.max(numpy.abs(ret.fun)))
        log.debug("shooting start s=%.6g alpha=%.6g -> s=%.12g alpha=%.12g residual=%.3g",
                  seed[0], seed[1], s, alpha, residual)
        best_residual = min(best_residual, residual)
        if residual <= tol.residual_tol and s > 0:
            if best is None or s < best[0]:
                best = (s, alpha, residual)
            if not tol.exhaustive_multistart:
                break
    return best, best_residual, starts


def solve_geodesic(P, Q, tol=None):
    '''
    Find the geodesic from P to Q.  Returns a GeodesicSolution in the
    geographical coordinates of Q after P has been translated to the origin.
    '''
    tol = resolve_tolerances(tol)
    # Q seen from P, on the universal cover
    r_t, theta_t, phi_t = to_hyperboloid(Q.transform(translation_from(P)))
    if abs(phi_t) > math.pi:
        raise DomainError("[sl2prism.geodesics] fibre separation %.6g between %s and %s is outside the ball regime"
                          % (phi_t, P, Q))

    if r_t < FIBRE_EPS:
        # same fibre: the fibre line itself is the geodesic
        return GeodesicSolution(abs(phi_t), 0.0, math.copysign(HALF_PI, phi_t), r_t, 0, True)

    best, best_residual, starts = _shoot(r_t, abs(phi_t), tol)
    if best is None:
        raise SolverError("[sl2prism.geodesics] no geodesic found to (r=%g, phi=%g), best residual %.3g"
                          % (r_t, phi_t, best_residual),
                          diagnostics=dict(r=r_t, theta=theta_t, phi=phi_t,
                                           best_residual=best_residual, starts=starts))
    s, alpha, residual = best
    theta_end = integrate_geodesic(alpha, s, tol).state[2]
    if phi_t >= 0:
        lam = theta_t - theta_end
    else:
        # mirror image (theta, phi) -> (-theta, -phi)
        alpha = -alpha
        lam = theta_t + theta_end
    lam = lam % TWO_PI
    return GeodesicSolution(float(s), float(lam), float(alpha), residual, starts, True)


def distance(P, Q, tol=None):
    return solve_geodesic(P, Q, tol).s

#-----------------------------------------------------------------------------


def _minimize(fun, bracket, method, tol, what):
    try:
        ret = minimize_scalar(fun, bracket=bracket, method=method, options=dict(xtol=tol.minimize_tol))
    except (ValueError, RuntimeError) as err:
        raise MinimizationError("[sl2prism.geodesics] %s minimum not bracketed by %s: %s" % (what, bracket, err),
                                diagnostics=dict(bracket=bracket, method=method))
    if not ret.success:
        raise MinimizationError("[sl2prism.geodesics] %s minimization did not converge: %s" % (what, ret.message),
                                diagnostics=dict(bracket=bracket, method=method, nfev=ret.nfev))
    return ret


def distance_to_fibred_curve(curve, tol=None, psi_width=0.25):
    '''
    Minimal distance from the origin to the surface swept by the fibres
    through the points of a side curve.

    The outer search runs golden-section over the curve parameter t in
    [0, 1]; the inner search runs Brent over the fibre shift psi.
    '''
    tol = resolve_tolerances(tol)
    E0 = origin()
    count = [0]

    def shifted(t, psi):
        count[0] += 1
        return distance(E0, curve.projective_point(t).transform(fibre_translation(psi)), tol)

    def fibre_minimum(t):
        return _minimize(lambda psi: shifted(t, psi), (-psi_width, 0.0, psi_width), "brent", tol,
                         "fibre shift")

    outer = _minimize(lambda t: fibre_minimum(t).fun, (0.0, 0.5, 1.0), "golden", tol, "curve parameter")
    t_min = float(outer.x)
    inner = fibre_minimum(t_min)
    log.debug("curve distance %.12g at t=%.9g psi=%.3g after %d distance solves",
              inner.fun, t_min, inner.x, count[0])
    return FibredCurveDistance(float(inner.fun), t_min, float(inner.x), count[0])
