##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Parameter field
***************

:module: parameters

:synopsis: The coefficient field K = Q(s1..sl, nu1..nun) and its
    extension by the degeneration parameter delta.

Elements of K are sympy sparse rational functions over ZZ in graded
lexicographic order. They are kept in the reduced form computed by
:meth:`FracField.new` (coprime numerator and denominator, denominator
with positive leading coefficient), so two elements are equal exactly
when their numerators and denominators are.

.. currentmodule:: parameters

"""
from __future__ import annotations

import functools
from fractions import Fraction
from numbers import Number
from typing import Dict, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement

from ..exceptions import DeltaPoleError, UnknownParameterError
from .expression import ExpressionParser

#: element of the parameter field
RatFun = FracElement

#: polynomial in the parameters
MPoly = PolyElement

DELTA = "delta"


def parameter_names(n_s: int, n_nu: int) -> Tuple[str, ...]:
    """Names of the parameters, ``s``/``nu`` when there is only one of a kind."""
    s_names = ("s",) if n_s == 1 else tuple(f"s{i}" for i in range(1, n_s + 1))
    nu_names = ("nu",) if n_nu == 1 else tuple(f"nu{j}" for j in range(1, n_nu + 1))
    return s_names + nu_names


@functools.lru_cache(maxsize=None)
def parameter_field(n_s: int, n_nu: int, with_delta: bool = False) -> ParameterField:
    """Return the shared :class:`ParameterField` for the given sizes."""
    return ParameterField(n_s, n_nu, with_delta)


class ParameterField:
    """K = Q(s, nu), optionally with delta as last generator."""

    def __init__(self, n_s: int, n_nu: int, with_delta: bool = False) -> None:
        """Initialize attributes.

        :param n_s: number of s parameters (one per polynomial)
        :param n_nu: number of nu parameters (one per torus variable)
        :param with_delta: append the degeneration parameter
        """
        self.n_s = n_s
        self.n_nu = n_nu
        self.with_delta = with_delta
        self.directions = parameter_names(n_s, n_nu)
        self.names = self.directions + ((DELTA,) if with_delta else ())
        self.field = FracField(self.names, ZZ, grlex)
        self.ring = self.field.ring
        self.gens: Dict[str, RatFun] = dict(zip(self.names, self.field.gens))
        self._parser = ExpressionParser(self.gens, self.from_int)

    def __repr__(self) -> str:
        return f"ParameterField({', '.join(self.names)})"

    @property
    def zero(self) -> RatFun:
        return self.field.zero

    @property
    def one(self) -> RatFun:
        return self.field.one

    @property
    def delta(self) -> RatFun:
        if not self.with_delta:
            raise UnknownParameterError(DELTA, self.names)
        return self.gens[DELTA]

    def extended(self) -> ParameterField:
        """The same field with delta adjoined."""
        return parameter_field(self.n_s, self.n_nu, True)

    def base(self) -> ParameterField:
        """The same field without delta."""
        return parameter_field(self.n_s, self.n_nu)

    def index(self, direction: Union[int, str]) -> int:
        """Position of a shift direction in the parameter order.

        :param direction: index or name (``"s2"``, ``"nu"``...)
        :raises UnknownParameterError: if there is no such direction
        """
        if isinstance(direction, int) and not isinstance(direction, bool):
            if 0 <= direction < len(self.directions):
                return direction
        elif direction in self.directions:
            return self.directions.index(direction)
        raise UnknownParameterError(direction, self.directions)

    def from_int(self, value: int) -> RatFun:
        return self.field.new(self.ring.ground_new(value))

    def from_fraction(self, value: Union[int, Fraction]) -> RatFun:
        """Lift a rational constant into the field."""
        value = Fraction(value)
        return self.field.new(
            self.ring.ground_new(value.numerator),
            self.ring.ground_new(value.denominator),
        )

    def parse(self, text: str) -> RatFun:
        """Read a rational function written in the parameter names."""
        return self._parser.parse(text)

    def convert(self, value: RatFun) -> RatFun:
        """Move an element of a smaller field (by names) into this one."""
        if value.field == self.field:
            return value
        return value.set_field(self.field)


def shift(r: RatFun, direction: Union[int, str], amount: int) -> RatFun:
    """Substitute ``parameter -> parameter + amount`` in ``r``.

    :param r: element of K
    :param direction: parameter index or name
    :param amount: integer shift
    :return: the shifted element, reduced
    :raises UnknownParameterError: if the direction does not exist
    """
    field = r.field
    names = [str(symbol) for symbol in field.symbols]
    if isinstance(direction, str):
        if direction not in names:
            raise UnknownParameterError(direction, names)
        index = names.index(direction)
    elif 0 <= direction < len(names):
        index = direction
    else:
        raise UnknownParameterError(direction, names)
    if amount == 0 or r.numer.is_ground and r.denom.is_ground:
        return r
    offsets = [0] * len(names)
    offsets[index] = amount
    return shift_many(r, offsets)


def shift_many(r: RatFun, offsets: Sequence[int]) -> RatFun:
    """Substitute ``p_i -> p_i + offsets[i]`` for every generator at once."""
    ring = r.field.ring
    replacements = [
        (generator, generator + amount)
        for generator, amount in zip(ring.gens, offsets)
        if amount
    ]
    if not replacements or r.numer.is_ground and r.denom.is_ground:
        return r
    numer = r.numer.compose(replacements) if not r.numer.is_ground else r.numer
    denom = r.denom.compose(replacements) if not r.denom.is_ground else r.denom
    return r.field.new(numer, denom)


def gcd_mpoly(p: MPoly, q: MPoly) -> MPoly:
    """Greatest common divisor normalized to a positive leading coefficient.

    ``gcd(p, 0)`` is ``p`` up to sign and ``gcd(0, 0)`` is ``0``.
    """
    if not p and not q:
        return p.ring.zero
    g = p.gcd(q)
    if g.LC < 0:
        g = -g
    return g


def total_degree(p: MPoly) -> int:
    return max((sum(monom) for monom in p.itermonoms()), default=0)


def complexity(r: RatFun) -> Tuple[int, int]:
    """Pivot preference: total degree of both parts, then term count."""
    return (total_degree(r.numer) + total_degree(r.denom), len(r.numer) + len(r.denom))


def _homogenize(p: MPoly, degree: int, target) -> MPoly:
    return target.from_dict(
        {monom + (degree - sum(monom),): coeff for monom, coeff in p.iterterms()}
    )


def substitute_scaled(r: RatFun) -> RatFun:
    """Return ``r(s/delta, nu/delta)`` as a reduced element of K(delta).

    Numerator and denominator are homogenized with delta and the
    difference of their degrees becomes a power of delta.
    """
    base = r.field
    symbols = tuple(str(symbol) for symbol in base.symbols)
    extended = FracField(symbols + (DELTA,), ZZ, base.order)
    if not r:
        return extended.zero
    numer_degree = total_degree(r.numer)
    denom_degree = total_degree(r.denom)
    numer = _homogenize(r.numer, numer_degree, extended.ring)
    denom = _homogenize(r.denom, denom_degree, extended.ring)
    delta = extended.ring.gens[-1]
    if denom_degree >= numer_degree:
        numer = numer * delta ** (denom_degree - numer_degree)
    else:
        denom = denom * delta ** (numer_degree - denom_degree)
    return extended.new(numer, denom)


def value_at_zero_delta(r: RatFun, label: Tuple[str, int, int] = ("?", -1, -1)) -> RatFun:
    """Evaluate an element of K(delta) at delta = 0.

    :param r: reduced element whose last generator is delta
    :param label: (direction, row, column) used in the error message
    :return: the value, an element of K
    :raises DeltaPoleError: if the denominator vanishes at delta = 0
    """
    field = r.field
    symbols = tuple(str(symbol) for symbol in field.symbols)
    if not symbols or symbols[-1] != DELTA:
        raise UnknownParameterError(DELTA, symbols)
    base = FracField(symbols[:-1], ZZ, field.order)
    delta = field.ring.gens[-1]
    denom = r.denom.evaluate(delta, 0)
    if not denom:
        raise DeltaPoleError(*label)
    numer = r.numer.evaluate(delta, 0)
    return base.new(numer.set_ring(base.ring), denom.set_ring(base.ring))


def evaluate(r: RatFun, values: Sequence[Number]) -> Number:
    """Evaluate ``r`` numerically, values given in generator order.

    :raises ZeroDivisionError: if the denominator vanishes
    """
    numer = _evaluate_poly(r.numer, values)
    denom = _evaluate_poly(r.denom, values)
    if denom == 0:
        raise ZeroDivisionError(f"denominator of {format_ratfun(r)} vanishes")
    return numer / denom


def _evaluate_poly(p: MPoly, values: Sequence[Number]) -> Number:
    total = 0
    for monom, coeff in p.iterterms():
        term = int(coeff)
        for value, power in zip(values, monom):
            if power:
                term = term * value**power
        total = total + term
    return total


def evaluate_exact(r: RatFun, values: Sequence[Fraction]) -> Fraction:
    """Exact evaluation at a rational point."""
    return Fraction(_evaluate_poly(r.numer, values)) / Fraction(
        _evaluate_poly(r.denom, values)
    )


def _needs_parentheses(p: MPoly) -> bool:
    if len(p) > 1:
        return True
    ((monom, coeff),) = p.terms()
    factors = sum(1 for power in monom if power) + (abs(coeff) != 1)
    return factors > 1 or any(power > 1 for power in monom) or coeff < 0


def format_mpoly(p: MPoly) -> str:
    """Polynomial text in the field's order, powers written with ``^``."""
    return str(p).replace("**", "^")


def format_ratfun(r: RatFun) -> str:
    """Canonical text ``numerator / denominator``, ``/ 1`` omitted."""
    numer = format_mpoly(r.numer)
    if r.denom == 1:
        return numer
    if len(r.numer) > 1:
        numer = f"({numer})"
    denom = format_mpoly(r.denom)
    if _needs_parentheses(r.denom):
        denom = f"({denom})"
    return f"{numer} / {denom}"
