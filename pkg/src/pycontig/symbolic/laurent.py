##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Sparse Laurent polynomials
**************************

:module: laurent

:synopsis: Sparse Laurent polynomials in the torus variables x1..xn.

The coefficients are usually :class:`fractions.Fraction` (model input)
but any number type works, the numeric solver uses the same class with
complex coefficients once the parameters are specialized.

.. currentmodule:: laurent

"""
from __future__ import annotations

from fractions import Fraction
from numbers import Number
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

from ..exceptions import ExponentOverflowError, NonMonomialInverseError
from ..types import Exponent

#: largest absolute exponent accepted anywhere
MAX_EXPONENT = 10_000


def check_exponent(exponent: int) -> int:
    """Raise if the exponent is out of the supported range.

    :param exponent: exponent to check
    :return: the exponent
    :raises ExponentOverflowError: if ``|exponent| > MAX_EXPONENT``
    """
    if abs(exponent) > MAX_EXPONENT:
        raise ExponentOverflowError(exponent, MAX_EXPONENT)
    return exponent


def term_order_key(exponent: Exponent) -> Tuple:
    """Sort key of the deterministic term order.

    Terms are graded by total degree, ties put the first variable first
    (``1, x^2, y^3, x^2*y^3``).
    """
    return (sum(exponent), tuple(-e for e in exponent))


class LaurentPoly:
    """Immutable sparse Laurent polynomial."""

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(
        self, variables: Sequence[str], terms: Optional[Mapping[Exponent, Number]] = None
    ) -> None:
        """Initialize attributes, zero coefficients are dropped.

        :param variables: ordered variable names
        :param terms: map from exponent tuples to coefficients
        """
        self.variables = tuple(variables)
        cleaned: Dict[Exponent, Number] = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != len(self.variables):
                raise ValueError(
                    f"exponent {exponent} does not match variables {self.variables}"
                )
            if coefficient != 0:
                cleaned[exponent] = coefficient
        self._terms = cleaned
        self._hash = None

    @classmethod
    def constant(cls, variables: Sequence[str], value: Number) -> LaurentPoly:
        """Build a constant polynomial."""
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> LaurentPoly:
        """Build the polynomial of a single variable."""
        variables = tuple(variables)
        index = variables.index(name)
        exponent = tuple(1 if i == index else 0 for i in range(len(variables)))
        return cls(variables, {exponent: Fraction(1)})

    @property
    def terms(self) -> Dict[Exponent, Number]:
        """Copy of the term map."""
        return dict(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def items(self) -> Iterator[Tuple[Exponent, Number]]:
        """Iterate the terms in the deterministic term order."""
        for exponent in sorted(self._terms, key=term_order_key):
            yield exponent, self._terms[exponent]

    def coefficient(self, exponent: Exponent) -> Number:
        return self._terms.get(tuple(exponent), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exponents(self) -> Exponent:
        """Componentwise minimum of the exponents (zeros for the zero polynomial)."""
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(column) for column in zip(*self._terms))

    def total_degree(self) -> int:
        """Largest total degree among the terms."""
        return max((sum(e) for e in self._terms), default=0)

    def _compatible(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError(
                    f"variables differ: {self.variables} != {other.variables}"
                )
            return other
        if isinstance(other, Number):
            return LaurentPoly.constant(self.variables, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Number):
            other = LaurentPoly.constant(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other) -> LaurentPoly:
        other = self._compatible(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            terms[exponent] = terms.get(exponent, 0) + coefficient
        return LaurentPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = self._compatible(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = self._compatible(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exponent, Number] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = tuple(check_exponent(a + b) for a, b in zip(e1, e2))
                terms[exponent] = terms.get(exponent, 0) + c1 * c2
        return LaurentPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> LaurentPoly:
        if not isinstance(power, int):
            return NotImplemented
        check_exponent(power)
        if power < 0:
            if not self.is_monomial():
                raise NonMonomialInverseError(str(self))
            ((exponent, coefficient),) = self._terms.items()
            inverse = LaurentPoly(
                self.variables,
                {tuple(-e for e in exponent): _reciprocal(coefficient)},
            )
            return inverse ** (-power)
        result = LaurentPoly.constant(self.variables, 1)
        base = self
        # square and multiply
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def __truediv__(self, other) -> LaurentPoly:
        other = self._compatible(other)
        if other is NotImplemented:
            return other
        return self * other ** -1

    def derivative(self, index: int) -> LaurentPoly:
        """Partial derivative along the variable of position ``index``."""
        terms = {}
        for exponent, coefficient in self._terms.items():
            power = exponent[index]
            if power:
                lowered = list(exponent)
                lowered[index] -= 1
                terms[tuple(lowered)] = coefficient * power
        return LaurentPoly(self.variables, terms)

    def shift_exponents(self, offset: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial ``x^offset``."""
        return LaurentPoly(
            self.variables,
            {
                tuple(check_exponent(e + o) for e, o in zip(exponent, offset)): c
                for exponent, c in self._terms.items()
            },
        )

    def extend(self, variables: Sequence[str]) -> LaurentPoly:
        """Embed into a larger variable set keeping the exponents by name."""
        variables = tuple(variables)
        positions = [variables.index(name) for name in self.variables]
        terms = {}
        for exponent, coefficient in self._terms.items():
            extended = [0] * len(variables)
            for position, power in zip(positions, exponent):
                extended[position] = power
            terms[tuple(extended)] = coefficient
        return LaurentPoly(variables, terms)

    def map_coefficients(self, function) -> LaurentPoly:
        """Apply ``function`` to every coefficient."""
        return LaurentPoly(
            self.variables, {e: function(c) for e, c in self._terms.items()}
        )

    def evaluate(self, point: Sequence[Number]) -> Number:
        """Evaluate at a point of the torus (all coordinates nonzero)."""
        total = 0
        for exponent, coefficient in self._terms.items():
            value = coefficient
            for coordinate, power in zip(point, exponent):
                if power:
                    value = value * coordinate**power
            total = total + value
        return total

    def to_string(self) -> str:
        """Canonical text that :func:`parse_laurent` reads back."""
        if not self._terms:
            return "0"
        pieces = []
        for exponent, coefficient in self.items():
            negative, magnitude = _split_sign(coefficient)
            monomial = "*".join(
                name if power == 1 else f"{name}^{power}"
                for name, power in zip(self.variables, exponent)
                if power
            )
            if not monomial:
                body = _format_number(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{_format_number(magnitude)}*{monomial}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.variables}, '{self.to_string()}')"


def _reciprocal(value: Number) -> Number:
    if isinstance(value, int):
        return Fraction(1, value)
    return 1 / value


def _split_sign(value: Number) -> Tuple[bool, Number]:
    if isinstance(value, complex):
        return False, value
    return (value < 0, -value) if value < 0 else (False, value)


def _format_number(value: Number) -> str:
    if isinstance(value, complex):
        return f"({value.real!r}{value.imag:+}j)"
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Fraction):
        return str(value.numerator)
    return str(value)
