##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Symbolic core
*************

:module: symbolic

:synopsis: Exact arithmetic used everywhere else: Laurent polynomials in
    the torus variables and the parameter field K.

.. currentmodule:: symbolic

"""
from fractions import Fraction
from typing import Sequence, Union

from .expression import ExpressionParser, tokenize
from .laurent import MAX_EXPONENT, LaurentPoly, check_exponent
from .parameters import (
    ParameterField,
    RatFun,
    complexity,
    format_ratfun,
    gcd_mpoly,
    parameter_field,
    parameter_names,
    shift,
    shift_many,
    substitute_scaled,
    value_at_zero_delta,
)

_Value = Union[Fraction, LaurentPoly]


def _as_laurent(variables: Sequence[str], value: _Value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(variables, value)


def parse_laurent(text: str, variables: Sequence[str]) -> LaurentPoly:
    """Read a Laurent polynomial.

    :param text: expression such as ``"1 - x^3"`` or ``"x^-1 + 3/4*y"``
    :param variables: ordered variable names
    :return: the expanded polynomial
    :raises ExpressionError: on syntax errors, unknown names, exponent
        overflow or a division by a polynomial that is not a monomial
    """
    variables = tuple(variables)

    def divide(a: _Value, b: _Value) -> _Value:
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a / b
        return _as_laurent(variables, a) / _as_laurent(variables, b)

    symbols = {name: LaurentPoly.variable(variables, name) for name in variables}
    parser = ExpressionParser(symbols, Fraction, divide)
    return _as_laurent(variables, parser.parse(text))


def parse_ratfun(text: str, field: ParameterField) -> RatFun:
    """Read an element of the parameter field, e.g. ``"nu/(nu - 3*s + 3)"``."""
    return field.parse(text)


__all__ = [
    "MAX_EXPONENT",
    "ExpressionParser",
    "LaurentPoly",
    "ParameterField",
    "RatFun",
    "check_exponent",
    "complexity",
    "format_ratfun",
    "gcd_mpoly",
    "parameter_field",
    "parameter_names",
    "parse_laurent",
    "parse_ratfun",
    "shift",
    "shift_many",
    "substitute_scaled",
    "tokenize",
    "value_at_zero_delta",
]
