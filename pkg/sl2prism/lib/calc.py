"""
Evaluator for the numeric expressions accepted in config files and check
tolerances.

Uses pyparsing to parse. Main function is evaluator().

    evaluator({}, {}, "2^-20")        -> 9.5367431640625e-07
    evaluator({}, {}, "pi/4")         -> 0.7853981633974483
    evaluator({}, {}, "1e-12 * 4")    -> 4e-12

A leading sign binds tighter than ^, so "-2^2" is 4; this is what lets an
exponent carry its own sign.  ^ groups to the right: "2^3^2" is 512.
"""

import math
import operator
from functools import reduce

import numpy

from pyparsing import (
    Regex, Word, Suppress, Group, Forward, ParseResults, ParseException,
    infix_notation, OpAssoc, one_of, alphas, alphanums, string_end
)


def _sech(arg):
    return 1 / numpy.cosh(arg)


def _coth(arg):
    return 1 / numpy.tanh(arg)


def _cot(arg):
    return 1 / numpy.tan(arg)


DEFAULT_FUNCTIONS = {
    'sin': numpy.sin, 'cos': numpy.cos, 'tan': numpy.tan, 'cot': _cot,
    'arcsin': numpy.arcsin, 'arccos': numpy.arccos, 'arctan': numpy.arctan,
    'sinh': numpy.sinh, 'cosh': numpy.cosh, 'tanh': numpy.tanh,
    'sech': _sech, 'coth': _coth,
    'arcsinh': numpy.arcsinh, 'arccosh': numpy.arccosh, 'arctanh': numpy.arctanh,
    'sqrt': numpy.sqrt, 'exp': numpy.exp, 'abs': numpy.abs,
    'ln': numpy.log, 'log': numpy.log, 'log2': numpy.log2, 'log10': numpy.log10,
}
DEFAULT_VARIABLES = {
    'e': math.e,
    'pi': math.pi,
}

BINARY = {
    '+': operator.add,
    '-': operator.sub,
    '*': operator.mul,
    '/': operator.truediv,
}


class UndefinedVariable(Exception):
    """
    A name in an expression which is neither a known variable nor function.
    The message lists every such name.
    """
    pass


class CalcError(Exception):
    """
    An expression which does not parse or does not evaluate to a finite real number.
    """
    pass


class Name(str):
    pass


class Call(object):

    def __init__(self, tokens):
        self.name, self.arg = tokens[0][0], tokens[0][1]


def _grammar():
    number = Regex(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
    number.set_parse_action(lambda tokens: float(tokens[0]))
    name = Word(alphas + "_", alphanums + "_")

    expr = Forward()
    call = Group(name + Suppress("(") + expr + Suppress(")"))
    call.set_parse_action(Call)
    variable = name.copy().set_parse_action(lambda tokens: Name(tokens[0]))

    operand = call | number | variable
    expr <<= infix_notation(operand, [
        (one_of("+ -"), 1, OpAssoc.RIGHT),
        ("^", 2, OpAssoc.RIGHT),
        (one_of("* /"), 2, OpAssoc.LEFT),
        (one_of("+ -"), 2, OpAssoc.LEFT),
    ])
    return expr + string_end


GRAMMAR = _grammar()


def names_used(node):
    '''
    Yield (kind, name) for every variable and function in a parse tree.
    '''
    if isinstance(node, Name):
        yield ('variable', str(node))
    elif isinstance(node, Call):
        yield ('function', node.name)
        for item in names_used(node.arg):
            yield item
    elif isinstance(node, ParseResults):
        for kid in node:
            for item in names_used(kid):
                yield item


def reduce_node(node, variables, functions, casify):
    if isinstance(node, float):
        return node
    if isinstance(node, Name):
        return variables[casify(node)]
    if isinstance(node, Call):
        return functions[casify(node.name)](reduce_node(node.arg, variables, functions, casify))

    kids = list(node)
    if len(kids) == 1:
        return reduce_node(kids[0], variables, functions, casify)
    if len(kids) == 2:
        value = reduce_node(kids[1], variables, functions, casify)
        return -value if kids[0] == '-' else value

    values = [reduce_node(k, variables, functions, casify) for k in kids[::2]]
    ops = kids[1::2]
    if ops[0] == '^':
        return reduce(lambda a, b: b ** a, reversed(values))
    total = values[0]
    for op, value in zip(ops, values[1:]):
        total = BINARY[op](total, value)
    return total


def evaluator(variables, functions, math_expr, case_sensitive=False):
    """
    Evaluate math_expr and return a float; a blank expression gives nan.

    variables maps names to numbers, functions maps names to unary callables.
    Both are added to the defaults, and names are matched ignoring case unless
    case_sensitive is set.
    """
    if math_expr.strip() == "":
        return float('nan')

    casify = (lambda x: x) if case_sensitive else (lambda x: x.lower())
    all_variables = dict((casify(k), v) for k, v in list(DEFAULT_VARIABLES.items()) + list(variables.items()))
    all_functions = dict((casify(k), v) for k, v in list(DEFAULT_FUNCTIONS.items()) + list(functions.items()))

    try:
        tree = GRAMMAR.parse_string(math_expr)[0]
    except ParseException as err:
        raise CalcError("cannot parse %r: %s" % (math_expr, err))

    known = dict(variable=all_variables, function=all_functions)
    bad = set(name for kind, name in names_used(tree) if casify(name) not in known[kind])
    if bad:
        raise UndefinedVariable(' '.join(sorted(bad)))

    with numpy.errstate(all='ignore'):
        try:
            value = reduce_node(tree, all_variables, all_functions, casify)
        except (ZeroDivisionError, OverflowError) as err:
            raise CalcError("cannot evaluate %r: %s" % (math_expr, err))
    if isinstance(value, complex) or not math.isfinite(value):
        raise CalcError("%r does not evaluate to a finite real number" % math_expr)
    return float(value)
