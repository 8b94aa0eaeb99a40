'''
Output rows and their CSV / JSON serialization.

CSV: header row, comma separated, LF line endings, fixed-point numbers with a
fixed number of decimals and "nan" for values of failed rows.  JSON: one
object per line with keys in column order, numbers rounded to the same
precision and null for failed values.
'''

import csv
import json
import math
import numbers

DEFAULT_PRECISION = 6

TABLE1_COLUMNS = ("p", "q", "curvature", "radius")
PACKING_COLUMNS = ("p", "q", "rho_opt", "vol_ball", "vol_prism", "density")
CURVE_COLUMNS = ("t", "y", "z", "r", "theta")
VERTEX_COLUMNS = ("label", "x0", "x1", "x2", "x3")
CHECK_COLUMNS = ("check", "group", "result", "detail")


class OutputRow(object):
    '''
    One output line.  values are in column order; None marks a failed value.
    '''
    def __init__(self, columns, values, failed=False):
        if len(columns) != len(values):
            raise ValueError("%d columns but %d values" % (len(columns), len(values)))
        self.columns = tuple(columns)
        self.values = tuple(values)
        self.failed = failed

    @classmethod
    def failure(cls, columns, keys):
        '''
        A row whose leading key columns are known and whose other values failed.
        '''
        return cls(columns, tuple(keys) + (None,) * (len(columns) - len(keys)), failed=True)

    def formatted(self, precision=DEFAULT_PRECISION):
        return [format_value(val, precision) for val in self.values]

    def as_dict(self, precision=DEFAULT_PRECISION):
        return dict(zip(self.columns, [json_value(val, precision) for val in self.values]))


def format_value(val, precision):
    if val is None:
        return "nan"
    if isinstance(val, (bool, str)):
        return str(val)
    if isinstance(val, numbers.Integral):
        return "%d" % val
    if not math.isfinite(val):
        return "nan"
    return "%.*f" % (precision, val)


def json_value(val, precision):
    if val is None or isinstance(val, (bool, str)):
        return val
    if isinstance(val, numbers.Integral):
        return int(val)
    if not math.isfinite(val):
        return None
    return round(float(val), precision)


def write_csv(rows, ofp, precision=DEFAULT_PRECISION, header=True):
    writer = csv.writer(ofp, lineterminator="\n")
    if rows and header:
        writer.writerow(rows[0].columns)
    for row in rows:
        writer.writerow(row.formatted(precision))


def write_json(rows, ofp, precision=DEFAULT_PRECISION):
    for row in rows:
        ofp.write(json.dumps(row.as_dict(precision)) + "\n")


def write_rows(rows, ofp, precision=DEFAULT_PRECISION, as_json=False):
    if as_json:
        write_json(rows, ofp, precision)
    else:
        write_csv(rows, ofp, precision)

#-----------------------------------------------------------------------------


def packing_row(result):
    return OutputRow(PACKING_COLUMNS, (result.p, result.q, result.rho_opt, result.vol_ball,
                                       result.vol_prism, result.density))
