'''
Adaptive quadrature shared by the volume computations.
'''

import warnings

from scipy.integrate import quad, IntegrationWarning

from .errors import QuadratureError

QUAD_LIMIT = 200


def integrate(fun, a, b, tol, what):
    '''
    scipy quad with relative tolerance tol.quad_tol; quadrature warnings become QuadratureError.

    Returns (value, error estimate).
    '''
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            return quad(fun, a, b, epsabs=0.0, epsrel=tol.quad_tol, limit=QUAD_LIMIT)
        except IntegrationWarning as err:
            raise QuadratureError("[sl2prism.quadrature] %s on [%g, %g] did not converge: %s" % (what, a, b, err),
                                  diagnostics=dict(what=what, lower=a, upper=b, quad_tol=tol.quad_tol))
