'''
Exceptions raised by sl2prism.

Everything derives from Sl2PrismError so callers (and the command line) can
separate user mistakes from numerical trouble.
'''


class Sl2PrismError(Exception):
    pass


class ValidationError(Sl2PrismError):
    '''
    Bad user input: (p,q) outside the admissible range, non-integers, bad tolerances.
    '''
    pass


class ConfigError(ValidationError):
    pass


class DomainError(Sl2PrismError):
    '''
    Argument outside the domain of an operation, e.g. an exterior point or a ball radius >= pi/2.
    '''
    pass


class NumericError(Sl2PrismError):
    '''
    A numerical procedure did not reach its tolerance.

    diagnostics = dict of whatever the failing procedure knew (residuals, counts, status)
    '''
    def __init__(self, msg, diagnostics=None):
        Sl2PrismError.__init__(self, msg)
        self.diagnostics = diagnostics or {}


class IntegrationError(NumericError):
    pass


class QuadratureError(NumericError):
    pass


class SolverError(NumericError):
    pass


class MinimizationError(NumericError):
    pass


class GeometryError(Sl2PrismError):
    pass


class VerificationError(Sl2PrismError):
    def __init__(self, msg, report=None):
        Sl2PrismError.__init__(self, msg)
        self.report = report


class ConsistencyError(Sl2PrismError):
    pass
