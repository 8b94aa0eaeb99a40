'''
Non-periodic ball packings of prism tilings.

For given (p, q) the largest ball centred at the origin inside the infinite
prism touches its side surfaces at distance rho_opt.  The bounded prism of
height 2 rho_opt then holds exactly that ball, and its translates along the
fibre tile the space; the density is Vol(ball) / Vol(prism).
'''

import logging
import itertools
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor

import numpy

from .errors import Sl2PrismError, ValidationError, ConsistencyError
from .geodesics import distance_to_fibred_curve, resolve_tolerances, HALF_PI
from .ballvol import ball_volume
from .prism import validate, SideCurve, prism_volume

log = logging.getLogger(__name__)

# smallest |h_opt - h_periodic| accepted as a non-periodicity witness
PERIODIC_MARGIN = 1e-6

PackingResult = namedtuple('PackingResult', 'p q rho_opt h_opt vol_ball vol_prism density '
                                            'vol_prism_periodic diagnostics')

SweepResult = namedtuple('SweepResult', 'rows skipped failed')


def optimal_radius(params, tol=None):
    return distance_to_fibred_curve(SideCurve(params), resolve_tolerances(tol)).rho


def packing_density(params, tol=None):
    tol = resolve_tolerances(tol)
    fit = distance_to_fibred_curve(SideCurve(params), tol)
    rho = fit.rho
    if not 0 < rho < HALF_PI:
        raise ConsistencyError("[sl2prism.packing] optimal radius %g for %s outside (0, pi/2)" % (rho, params))
    h_opt = 2 * rho
    ball = ball_volume(rho, tol)
    vol_prism = prism_volume(params, h_opt, tol)
    vol_periodic = prism_volume(params, params.h_periodic, tol)
    density = ball.volume / vol_prism
    non_periodic = abs(h_opt - params.h_periodic) > PERIODIC_MARGIN
    if not non_periodic:
        log.warning("optimal height %.9g of %s coincides with the periodic height", h_opt, params)
    diagnostics = dict(t_min=fit.t_min,
                       psi_min=fit.psi_min,
                       distance_solves=fit.evaluations,
                       ball_error=ball.est_error,
                       ball_geodesics=ball.evaluations,
                       non_periodic=non_periodic)
    if not 0 < density < 1:
        raise ConsistencyError("[sl2prism.packing] density %g for %s outside (0, 1)" % (density, params))
    log.info("(%d,%d): rho=%.6f vol_ball=%.6f vol_prism=%.6f density=%.6f",
             params.p, params.q, rho, ball.volume, vol_prism, density)
    return PackingResult(params.p, params.q, rho, h_opt, ball.volume, vol_prism, density, vol_periodic,
                         diagnostics)


# numpy and scipy failures inside one row
ROW_ERRORS = (ArithmeticError, ValueError, RuntimeError, numpy.linalg.LinAlgError)


def _sweep_row(args):
    params, tol = args
    try:
        return packing_density(params, tol), None
    except Sl2PrismError as err:
        return None, str(err)
    except ROW_ERRORS as err:
        return None, "[sl2prism.packing] %s: %s" % (type(err).__name__, err)


def sweep_pairs(pairs, tol=None, jobs=1):
    '''
    Packing rows for the given (p, q) pairs, ordered by (p, q).  Invalid pairs
    land in skipped, failing rows in failed; neither stops the sweep.
    '''
    tol = resolve_tolerances(tol)
    todo, skipped = [], []
    for p, q in sorted(set(pairs)):
        try:
            todo.append(validate(p, q))
        except ValidationError as err:
            skipped.append((p, q, str(err)))
    log.info("sweep over %d pairs (%d skipped) with %d job(s)", len(todo), len(skipped), jobs)

    work = [(params, tol) for params in todo]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_sweep_row, work))
    else:
        outcomes = [_sweep_row(job) for job in work]

    rows, failed = [], []
    for params, (row, error) in zip(todo, outcomes):
        if row is None:
            log.warning("(%d,%d) failed: %s", params.p, params.q, error)
            failed.append((params.p, params.q, error))
        else:
            rows.append(row)
    return SweepResult(rows, skipped, failed)


def sweep(p_list, q_list, tol=None, jobs=1):
    '''
    sweep_pairs over the product of p_list and q_list.
    '''
    return sweep_pairs(itertools.product(p_list, q_list), tol, jobs)


def argmax_density(rows, tie_tol=1e-7):
    '''
    Row of largest density.  Rows within tie_tol of it are listed in its
    diagnostics under "ties".
    '''
    if not rows:
        raise ValidationError("[sl2prism.packing] no rows to maximize over")
    best = max(rows, key=lambda row: row.density)
    ties = [(row.p, row.q) for row in rows
            if row is not best and best.density - row.density <= tie_tol]
    if ties:
        log.warning("density maximum at (%d,%d) is tied within %g with %s", best.p, best.q, tie_tol, ties)
    return best._replace(diagnostics=dict(best.diagnostics, ties=ties))
