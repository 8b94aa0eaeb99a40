'''
Volume of a geodesic ball centred at the origin.

In geographical coordinates the volume element is (1/2) |sinh 2r| |J| ds dalpha dlambda,
J being the Jacobian of (r, phi) with respect to (s, alpha).  Mirror symmetry
in phi and the full turn in lambda give the factor 4 pi in front of the
(s, alpha) integral over [0, rho] x [0, pi/2].
'''

import math
import logging
from collections import namedtuple

import numpy

from .errors import DomainError
from .quadrature import integrate
from .geodesics import integrate_geodesic, endpoint_jacobian, resolve_tolerances, HALF_PI

log = logging.getLogger(__name__)

# the alpha integral is split where the geodesic type changes
ALPHA_SPLIT = 0.25 * math.pi

BallVolumeResult = namedtuple('BallVolumeResult', 'rho volume est_error evaluations outer_error inner_error')

MonteCarloEstimate = namedtuple('MonteCarloEstimate', 'volume std_error samples')


def check_radius(rho):
    if not 0 <= rho < HALF_PI:
        raise DomainError("[sl2prism.ballvol] ball radius must lie in [0, pi/2), got %g" % rho)


def density(state, trajectory):
    '''
    (1/2) |sinh 2r| |J| for one dense state of a trajectory with sensitivities.
    '''
    jac = trajectory.jacobian(state)
    return 0.5 * abs(math.sinh(2 * state[0])) * abs(numpy.linalg.det(jac))


def ball_volume(rho, tol=None):
    '''
    Volume of the geodesic ball of radius rho, 0 <= rho < pi/2.

    The outer quadrature runs over alpha and the inner one over s along a
    single dense trajectory, so each geodesic is integrated once per alpha node.
    '''
    tol = resolve_tolerances(tol)
    check_radius(rho)
    if rho == 0:
        return BallVolumeResult(0.0, 0.0, 0.0, 0, 0.0, 0.0)

    trajectories = {}
    inner_error = [0.0]

    def trajectory(alpha):
        if alpha not in trajectories:
            trajectories[alpha] = integrate_geodesic(alpha, rho, tol, sensitivities=True, dense=True)
        return trajectories[alpha]

    def along(alpha):
        traj = trajectory(alpha)
        val, err = integrate(lambda s: density(traj(s), traj), 0.0, rho, tol, "s-integral at alpha=%g" % alpha)
        inner_error[0] = max(inner_error[0], err)
        return val

    total = 0.0
    outer_error = 0.0
    for lower, upper in ((0.0, ALPHA_SPLIT), (ALPHA_SPLIT, HALF_PI)):
        val, err = integrate(along, lower, upper, tol, "alpha-integral")
        total += val
        outer_error += err

    scale = 4 * math.pi
    volume = scale * total
    # each inner error enters the outer integral weighted by the alpha range
    inner = scale * HALF_PI * inner_error[0]
    result = BallVolumeResult(rho, volume, scale * outer_error + inner, len(trajectories),
                              scale * outer_error, inner)
    log.debug("ball volume rho=%.9g: %.12g (+- %.2g) from %d geodesics", rho, volume, result.est_error,
              result.evaluations)
    return result


def monte_carlo_ball_volume(rho, n=400, seed=0, tol=None):
    '''
    Independent estimate of ball_volume from uniform (s, alpha) samples and
    finite-difference Jacobians.
    '''
    tol = resolve_tolerances(tol)
    check_radius(rho)
    rng = numpy.random.default_rng(seed)
    samples = numpy.empty(n)
    for k, (s, alpha) in enumerate(zip(rng.uniform(0.0, rho, n), rng.uniform(0.0, HALF_PI, n))):
        r = integrate_geodesic(alpha, s, tol).state[0]
        samples[k] = 0.5 * abs(math.sinh(2 * r)) * abs(numpy.linalg.det(endpoint_jacobian(s, alpha, tol)))
    scale = 4 * math.pi * rho * HALF_PI
    return MonteCarloEstimate(scale * samples.mean(), scale * samples.std(ddof=1) / math.sqrt(n), n)
