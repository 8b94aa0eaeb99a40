#!/usr/bin/env python

import io
import sys
import json
import logging
import argparse

import numpy
from path import Path as path

from . import __version__
from .errors import Sl2PrismError, ValidationError, DomainError
from .geodesics import ToleranceConfig
from .config import load_config
from .prism import (validate, side_curve_polar, curvature, curve_radius, circle_fit_residual,
                    base_vertices, prism_vertices)
from .packing import sweep, sweep_pairs, argmax_density, optimal_radius, packing_density
from .checks import CheckSuite
from .rows import (OutputRow, write_rows, packing_row, DEFAULT_PRECISION, TABLE1_COLUMNS, PACKING_COLUMNS,
                   CURVE_COLUMNS, VERTEX_COLUMNS, CHECK_COLUMNS)
from . import tables

log = logging.getLogger("sl2prism")

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_USAGE = 2

#-----------------------------------------------------------------------------


class VAction(argparse.Action):
    def __call__(self, parser, args, values, option_string=None):
        curval = getattr(args, self.dest, 0) or 0
        values = values.count('v') + 1
        setattr(args, self.dest, values + curval)


_handler = None


def configure_logging(verbose):
    '''
    Route the package loggers to standard error; -v gives INFO, -vv DEBUG.
    '''
    global _handler
    if _handler is not None:
        log.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter("[%(name)s] %(message)s"))
    log.addHandler(_handler)
    log.setLevel({0: logging.WARNING, 1: logging.INFO}.get(verbose or 0, logging.DEBUG))

#-----------------------------------------------------------------------------


class Sl2PrismCommand(object):
    '''
    Runs one sub-command.  Each cmd_* method writes rows to self.out and
    returns an exit code.
    '''
    def __init__(self, args, tol, precision, jobs):
        self.args = args
        self.tol = tol
        self.precision = precision
        self.jobs = jobs
        self.out = io.StringIO()

    def emit(self, rows):
        write_rows(rows, self.out, precision=self.precision, as_json=self.args.json)

    def comment(self, text, **fields):
        '''
        Trailing summary line: "# text" in CSV, an object in JSON.
        '''
        if self.args.json:
            self.out.write(json.dumps(fields) + "\n")
        else:
            self.out.write("# %s\n" % text)

    def packing_rows(self, sweep_result):
        rows = [packing_row(row) for row in sweep_result.rows]
        rows += [OutputRow.failure(PACKING_COLUMNS, (p, q)) for p, q, _ in sweep_result.failed]
        rows.sort(key=lambda row: row.values[:2])
        return rows

    def cmd_table1(self):
        rows = []
        for p, q in tables.pairs("table1"):
            params = validate(p, q)
            rows.append(OutputRow(TABLE1_COLUMNS, (p, q, curvature(params), curve_radius(params))))
        self.emit(rows)
        return EXIT_OK

    def cmd_packing_table(self, name):
        result = sweep_pairs(tables.pairs(name), self.tol, jobs=self.jobs)
        self.emit(self.packing_rows(result))
        return EXIT_NUMERIC if result.failed else EXIT_OK

    def cmd_table2(self):
        return self.cmd_packing_table("table2")

    def cmd_table3(self):
        return self.cmd_packing_table("table3")

    def cmd_density(self):
        params = validate(self.args.p, self.args.q)
        row = packing_density(params, self.tol)
        for key, val in sorted(row.diagnostics.items()):
            log.info("%s = %s", key, val)
        log.info("h_opt = %.9f, h_periodic = %.9f, periodic prism volume = %.9f",
                 row.h_opt, params.h_periodic, row.vol_prism_periodic)
        self.emit([packing_row(row)])
        return EXIT_OK

    def cmd_sweep(self):
        a, b = self.args.p_from, self.args.p_to
        result = sweep(range(a, b + 1), [self.args.q], self.tol, jobs=self.jobs)
        if not result.rows and not result.failed:
            raise ValidationError("[sl2prism.main] no valid (p, %d) pair for p in [%d, %d]" % (self.args.q, a, b))
        self.emit(self.packing_rows(result))
        if result.rows:
            best = argmax_density(result.rows)
            ties = best.diagnostics["ties"]
            self.comment("argmax p=%d q=%d density=%.*f ties=%s"
                         % (best.p, best.q, self.precision, best.density,
                            " ".join("(%d,%d)" % pq for pq in ties) or "none"),
                         argmax=[best.p, best.q], density=round(best.density, self.precision),
                         ties=[list(pq) for pq in ties])
        return EXIT_NUMERIC if result.failed else EXIT_OK

    def cmd_curve(self):
        if self.args.samples < 2:
            raise ValidationError("[sl2prism.main] --samples must be at least 2, got %d" % self.args.samples)
        params = validate(self.args.p, self.args.q)
        polar = side_curve_polar(params)
        curve = polar.curve
        ts = numpy.linspace(0.0, 1.0, self.args.samples)
        ys, zs = curve.points(ts)
        thetas = curve.theta(ts)
        rows = [OutputRow(CURVE_COLUMNS, (t, y, z, polar(theta), theta))
                for t, y, z, theta in zip(ts, ys, zs, thetas)]
        self.emit(rows)
        residual, radius = circle_fit_residual(curve)
        self.comment("circle fit residual %.3g radius %.*f" % (residual, self.precision, radius),
                     circle_fit_residual=residual, radius=round(radius, self.precision))
        return EXIT_OK

    def cmd_vertices(self):
        params = validate(self.args.p, self.args.q)
        height = self.args.height
        if height is None:
            height = 2 * optimal_radius(params, self.tol)
            log.info("optimal prism height %.9f", height)
        rows = [OutputRow(VERTEX_COLUMNS, ("G%d" % i,) + tuple(g.coords))
                for i, g in enumerate(base_vertices(params), 1)]
        rows += [OutputRow(VERTEX_COLUMNS, (label,) + tuple(pt.coords))
                 for label, pt in prism_vertices(params, height)]
        self.emit(rows)
        return EXIT_OK

    def cmd_check(self):
        suite = CheckSuite(tol=self.tol, samples=self.args.samples,
                           metric_perturbation=self.args.inject_metric_perturbation)
        if not suite.selected(self.args.filter):
            raise ValidationError("[sl2prism.main] no check named or grouped %r" % self.args.filter)
        results = suite.run(self.args.filter)
        self.emit([OutputRow(CHECK_COLUMNS, (res.name, res.group, "pass" if res.ok else "fail", res.detail))
                   for res in results])
        return EXIT_OK if all(res.ok for res in results) else EXIT_NUMERIC

#-----------------------------------------------------------------------------


def make_parser():
    help_text = """usage: sl2prism [command] [options]

Prism tilings and geodesic ball packings in SL(2,R)~.

Version: {}

""".format(__version__)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', "--verbose", nargs=0, help="increase output verbosity (add more -v to increase verbosity)",
                        action=VAction, dest='verbose')
    common.add_argument("--json", help="write JSON objects instead of CSV", action="store_true")
    common.add_argument("--precision", help="number of decimals in the output (default 6)", type=int, default=None)
    common.add_argument("--ode-tol", help="relative and absolute geodesic ODE tolerance", type=float, default=None)
    common.add_argument("--quad-tol", help="relative quadrature tolerance", type=float, default=None)
    common.add_argument("--config", help="config file of key=value lines", default=None)
    common.add_argument("--jobs", help="number of worker processes for sweeps", type=int, default=None)
    common.add_argument("-o", "--output", help="output filename (default: standard output)", default="")

    parser = argparse.ArgumentParser(description=help_text, formatter_class=argparse.RawTextHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    sub.add_parser("table1", parents=[common], help="curvature and radius of the side curves")
    sub.add_parser("table2", parents=[common], help="optimal packings for small p")
    sub.add_parser("table3", parents=[common], help="optimal packings around the density maximum")

    cmd = sub.add_parser("density", parents=[common], help="optimal packing for one (p, q)")
    cmd.add_argument("p", type=int)
    cmd.add_argument("q", type=int)

    cmd = sub.add_parser("sweep", parents=[common], help="optimal packings for a range of p at fixed q")
    cmd.add_argument("--q", type=int, required=True)
    cmd.add_argument("--p-from", type=int, required=True)
    cmd.add_argument("--p-to", type=int, required=True)

    cmd = sub.add_parser("curve", parents=[common], help="samples of the side curve")
    cmd.add_argument("p", type=int)
    cmd.add_argument("q", type=int)
    cmd.add_argument("--samples", type=int, default=11)

    cmd = sub.add_parser("vertices", parents=[common], help="base and cover face vertices of a prism")
    cmd.add_argument("p", type=int)
    cmd.add_argument("q", type=int)
    cmd.add_argument("--height", type=float, default=None, help="prism height (default: optimal height)")

    cmd = sub.add_parser("check", parents=[common], help="run the verification suite")
    cmd.add_argument("--filter", default=None, help="run only the checks of this name or group")
    cmd.add_argument("--samples", type=int, default=20, help="random samples for the sampling checks")
    cmd.add_argument("--inject-metric-perturbation", type=float, default=0.0, metavar="EPS",
                     help="perturb the metric (negative control: metric checks must fail)")
    return parser


def settings_from(args):
    '''
    Tolerances, precision and jobs: defaults < config file < command-line flags.
    '''
    overrides, settings = {}, {}
    if args.config:
        overrides, settings = load_config(args.config)
    if args.ode_tol is not None:
        overrides.update(ode_rel_tol=args.ode_tol, ode_abs_tol=args.ode_tol)
    if args.quad_tol is not None:
        overrides.update(quad_tol=args.quad_tol)
    precision = args.precision if args.precision is not None else settings.get("precision", DEFAULT_PRECISION)
    jobs = args.jobs if args.jobs is not None else settings.get("jobs", 1)
    if precision < 0 or precision > 17:
        raise ValidationError("[sl2prism.main] --precision must lie in [0, 17], got %d" % precision)
    if jobs < 1:
        raise ValidationError("[sl2prism.main] --jobs must be positive, got %d" % jobs)
    return ToleranceConfig(**overrides), precision, jobs


def CommandLine(args=None, arglist=None):
    '''
    Main command line.  Accepts args, to allow for simple unit testing.
    Returns the exit code.
    '''
    if not args:
        args = make_parser().parse_args(arglist)
    configure_logging(args.verbose)

    try:
        tol, precision, jobs = settings_from(args)
        command = Sl2PrismCommand(args, tol, precision, jobs)
        code = getattr(command, "cmd_%s" % args.command)()
    except (ValidationError, DomainError) as err:
        sys.stderr.write("%s\n" % err)
        return EXIT_USAGE
    except Sl2PrismError as err:
        sys.stderr.write("%s\n" % err)
        return EXIT_NUMERIC

    text = command.out.getvalue()
    if args.output:
        path(args.output).write_text(text)
        log.info("Wrote %s", args.output)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(CommandLine())
