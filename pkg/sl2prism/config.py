'''
Config files: simple key=value lines, # comments, optional quotes.

Values are numeric expressions (see lib/calc.py), for example

    # tighter shooting, looser quadrature
    newton_tol = 1e-12
    quad_tol = 1e-8
    fd_step = 2^-20
    exhaustive_multistart = true
    precision = 9
'''

import logging

from path import Path as path

from .errors import ConfigError
from .geodesics import ToleranceConfig
from .lib.calc import evaluator, UndefinedVariable, CalcError

log = logging.getLogger(__name__)

CLI_KEYS = ("precision", "jobs")
BOOLEAN_WORDS = dict(true=1, false=0, yes=1, no=0, on=1, off=0)


def stripquotes(x):
    x = x.strip()
    if len(x) >= 2 and x[0] == x[-1] and x[0] in "\"'":
        return x[1:-1]
    return x


def parse_config(text, source="<config>"):
    '''
    Parse config text.  Returns (tolerance overrides, cli settings), both dicts.
    '''
    tolerances, settings = {}, {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError("[sl2prism.config] %s:%d: expected key=value, got %r" % (source, lineno, line))
        key, val = [x.strip() for x in line.split('=', 1)]
        val = stripquotes(val)
        if key not in ToleranceConfig.DEFAULTS and key not in CLI_KEYS:
            raise ConfigError("[sl2prism.config] %s:%d: unknown key %r" % (source, lineno, key))
        try:
            number = evaluator(BOOLEAN_WORDS, {}, val)
        except (UndefinedVariable, CalcError) as err:
            raise ConfigError("[sl2prism.config] %s:%d: bad value for %s: %s" % (source, lineno, key, err))
        if key in CLI_KEYS:
            if number != int(number) or number < (0 if key == "precision" else 1):
                raise ConfigError("[sl2prism.config] %s:%d: %s must be a %s integer, got %r"
                                  % (source, lineno, key, "nonnegative" if key == "precision" else "positive", val))
            settings[key] = int(number)
        else:
            tolerances[key] = number
    log.debug("config %s: tolerances %s, settings %s", source, tolerances, settings)
    return tolerances, settings


def load_config(fn):
    fn = path(fn)
    if not fn.is_file():
        raise ConfigError("[sl2prism.config] config file %s not found" % fn)
    return parse_config(fn.read_text(), source=str(fn))
