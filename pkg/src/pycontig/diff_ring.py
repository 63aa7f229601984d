##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Difference ring
***************

:module: diff_ring

:synopsis: Shift operators sigma_s, sigma_nu acting on K, the generators
    of the annihilating left ideal J and the monomial windows used to
    compute contiguity matrices.

An element of the ring is a finite sum ``c(s, nu) * sigma^m`` where
``sigma^m = sigma_s1^a1...sigma_nun^bn`` and the coefficient is always
written on the left. Moving a shift to the right of a coefficient
shifts the coefficient: ``sigma_a * c(p) = c(p + e_a) * sigma_a``.

The exponent of a monomial is stored as ``a`` (one entry per polynomial)
followed by ``b`` (one entry per variable), in the same order as the
parameters of the field, so direction ``d`` moves both the ``d``-th
exponent and the ``d``-th parameter.

.. currentmodule:: diff_ring

"""
from __future__ import annotations

import itertools
import logging
import re
from typing import Dict, Iterable, Iterator, List, NamedTuple, Sequence, Tuple

from .exceptions import ExpressionSyntaxError, UnknownParameterError
from .model import ModelSpec
from .symbolic import ParameterField, RatFun, format_ratfun, shift, shift_many
from .types import Direction, Exponent

log = logging.getLogger(__name__)

SIGMA = "σ"

#: ordered set of monomials, used as matrix labels
MonomialSet = Tuple["DiffMonomial", ...]


class DiffMonomial(NamedTuple):
    """Monomial sigma_s^a * sigma_nu^b, negative exponents allowed."""

    a: Exponent
    b: Exponent

    @classmethod
    def unit(cls, ell: int, n: int) -> DiffMonomial:
        return cls((0,) * ell, (0,) * n)

    @classmethod
    def from_exponent(cls, exponent: Sequence[int], ell: int) -> DiffMonomial:
        exponent = tuple(exponent)
        return cls(exponent[:ell], exponent[ell:])

    @property
    def exponent(self) -> Exponent:
        """Exponents in direction order (s first, then nu)."""
        return self.a + self.b

    @property
    def degree(self) -> int:
        """Total absolute degree |a| + |b|."""
        return sum(abs(e) for e in self.exponent)

    def is_unit(self) -> bool:
        return not any(self.exponent)

    def times(self, offset: Sequence[int]) -> DiffMonomial:
        """Product with the monomial of exponent ``offset``."""
        return DiffMonomial.from_exponent(
            [e + o for e, o in zip(self.exponent, offset)], len(self.a)
        )

    def step(self, direction: Direction, amount: int = 1) -> DiffMonomial:
        exponent = list(self.exponent)
        exponent[direction] += amount
        return DiffMonomial.from_exponent(exponent, len(self.a))

    def to_string(self, names: Sequence[str]) -> str:
        """Text such as ``σs^2*σnu``, ``1`` for the unit."""
        factors = [
            f"{SIGMA}{name}" if power == 1 else f"{SIGMA}{name}^{power}"
            for name, power in zip(names, self.exponent)
            if power
        ]
        return "*".join(factors) if factors else "1"


def monomial_key(monomial: DiffMonomial) -> Tuple:
    """Canonical order: total absolute degree, then lexicographic."""
    return (monomial.degree, tuple(-e for e in monomial.exponent))


def canonical_order(monomials: Iterable[DiffMonomial]) -> MonomialSet:
    """Sort and deduplicate monomials in canonical order."""
    return tuple(sorted(set(monomials), key=monomial_key))


_FACTOR = re.compile(r"^σ?([A-Za-z_][A-Za-z0-9_]*)(?:\^\(?(-?\d+)\)?)?$")


def parse_monomial(text: str, parameters: ParameterField) -> DiffMonomial:
    """Read a monomial written as ``σs^2*σnu`` (the ``σ`` may be omitted).

    :param text: monomial text, ``1`` for the unit
    :param parameters: field whose parameter names define the directions
    :raises ExpressionSyntaxError: on a malformed factor
    :raises UnknownParameterError: on an unknown direction
    """
    names = list(parameters.directions)
    exponent = [0] * len(names)
    stripped = text.strip()
    if stripped != "1":
        position = 0
        for factor in stripped.split("*"):
            match = _FACTOR.match(factor.strip())
            if match is None:
                raise ExpressionSyntaxError(text, position, f"bad factor '{factor}'")
            name, power = match.group(1), int(match.group(2) or 1)
            if name not in names:
                raise UnknownParameterError(name, names)
            exponent[names.index(name)] += power
            position += len(factor) + 1
    return DiffMonomial.from_exponent(exponent, parameters.n_s)


class DiffElement:
    """Immutable element of the difference ring."""

    __slots__ = ("parameters", "_terms", "_hash")

    def __init__(
        self, parameters: ParameterField, terms: Dict[DiffMonomial, RatFun] = None
    ) -> None:
        """Initialize attributes, zero coefficients are dropped.

        :param parameters: coefficient field
        :param terms: coefficient of every monomial
        """
        self.parameters = parameters
        self._terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def monomial(
        cls, parameters: ParameterField, monomial: DiffMonomial, coefficient=None
    ) -> DiffElement:
        if coefficient is None:
            coefficient = parameters.one
        return cls(parameters, {monomial: coefficient})

    @property
    def terms(self) -> Dict[DiffMonomial, RatFun]:
        return dict(self._terms)

    def support(self) -> MonomialSet:
        """Monomials with a nonzero coefficient, in canonical order."""
        return canonical_order(self._terms)

    def items(self) -> Iterator[Tuple[DiffMonomial, RatFun]]:
        for monomial in self.support():
            yield monomial, self._terms[monomial]

    def coefficient(self, monomial: DiffMonomial) -> RatFun:
        return self._terms.get(monomial, self.parameters.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: DiffElement) -> DiffElement:
        terms = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            terms[monomial] = terms.get(monomial, self.parameters.zero) + coefficient
        return DiffElement(self.parameters, terms)

    def __neg__(self) -> DiffElement:
        return DiffElement(self.parameters, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: DiffElement) -> DiffElement:
        return self + (-other)

    def scale(self, coefficient: RatFun) -> DiffElement:
        """Left multiplication by an element of K."""
        return DiffElement(
            self.parameters, {m: coefficient * c for m, c in self._terms.items()}
        )

    def to_string(self) -> str:
        if not self._terms:
            return "0"
        names = self.parameters.directions
        pieces = []
        for monomial, coefficient in self.items():
            text = format_ratfun(coefficient)
            if len(coefficient.numer) > 1 and coefficient.denom == 1:
                text = f"({text})"
            pieces.append(f"{text} * {monomial.to_string(names)}")
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"DiffElement('{self.to_string()}')"


def left_multiply(direction: Direction, sign: int, element: DiffElement) -> DiffElement:
    """Normal-ordered product ``sigma_direction^sign * element``.

    :param direction: index of the shift direction (s first, then nu)
    :param sign: +1 or -1
    :param element: element to multiply
    :return: the product
    :raises UnknownParameterError: if the direction does not exist
    """
    parameters = element.parameters
    direction = parameters.index(direction)
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return DiffElement(
        parameters,
        {
            monomial.step(direction, sign): shift(coefficient, direction, sign)
            for monomial, coefficient in element.terms.items()
        },
    )


def multiply_monomial(offset: Sequence[int], element: DiffElement) -> DiffElement:
    """Normal-ordered product ``sigma^offset * element``."""
    if not any(offset):
        return element
    return DiffElement(
        element.parameters,
        {
            monomial.times(offset): shift_many(coefficient, offset)
            for monomial, coefficient in element.terms.items()
        },
    )


def _lift(parameters: ParameterField, value) -> RatFun:
    return parameters.from_fraction(value)


def j_generators(model: ModelSpec) -> List[DiffElement]:
    """Generators of the left ideal J annihilating the twisted integrand.

    For every polynomial the element ``1 - sigma_si * f_i(sigma_nu)`` and
    for every variable the element
    ``sigma_nuj^-1 * nu_j - sum_i s_i * sigma_si * (df_i/dx_j)(sigma_nu)``,
    normal ordered (``sigma_nuj^-1 * nu_j = (nu_j - 1) * sigma_nuj^-1``).

    :param model: the model
    :return: the l + n generators, polynomials first
    """
    parameters = model.parameters
    ell, n = model.ell, model.n
    unit = DiffMonomial.unit(ell, n)
    generators = []
    for i, poly in enumerate(model.polynomials):
        a = tuple(1 if k == i else 0 for k in range(ell))
        terms = {unit: parameters.one}
        for exponent, coefficient in poly.items():
            monomial = DiffMonomial(a, exponent)
            terms[monomial] = terms.get(monomial, parameters.zero) - _lift(
                parameters, coefficient
            )
        generators.append(DiffElement(parameters, terms))
    for j in range(n):
        nu = parameters.gens[parameters.directions[ell + j]]
        inverse_shift = DiffMonomial((0,) * ell, tuple(-1 if k == j else 0 for k in range(n)))
        terms = {inverse_shift: nu - 1}
        for i in range(ell):
            s = parameters.gens[parameters.directions[i]]
            a = tuple(1 if k == i else 0 for k in range(ell))
            for exponent, coefficient in model.gradient(i)[j].items():
                monomial = DiffMonomial(a, exponent)
                terms[monomial] = terms.get(monomial, parameters.zero) - s * _lift(
                    parameters, coefficient
                )
        generators.append(DiffElement(parameters, terms))
    return generators


def anchor(element: DiffElement) -> DiffElement:
    """Shift an element so that every exponent of its support is non-negative.

    The element is left multiplied by the smallest monomial doing so,
    which generates the same left ideal.
    """
    support = element.support()
    if not support:
        return element
    offset = [
        -min(0, min(column)) for column in zip(*(m.exponent for m in support))
    ]
    return multiply_monomial(offset, element)


def generators(model: ModelSpec, form: str = "anchored") -> List[DiffElement]:
    """Generators of J in the requested form (``"anchored"`` or ``"raw"``)."""
    raw = j_generators(model)
    if form == "raw":
        return raw
    if form == "anchored":
        return [anchor(element) for element in raw]
    raise ValueError(f"unknown generator form '{form}'")


def unit_steps(dimension: int) -> List[Tuple[int, ...]]:
    """The 2 * dimension offsets of a single step."""
    steps = []
    for direction in range(dimension):
        for sign in (1, -1):
            steps.append(tuple(sign if k == direction else 0 for k in range(dimension)))
    return steps


def ball(dimension: int, radius: int) -> List[Tuple[int, ...]]:
    """All offsets reachable with at most ``radius`` unit steps, nearest first."""
    reached = {(0,) * dimension}
    frontier = [(0,) * dimension]
    ordered = [(0,) * dimension]
    for _ in range(radius):
        new = []
        for point in frontier:
            for step in unit_steps(dimension):
                candidate = tuple(p + s for p, s in zip(point, step))
                if candidate not in reached:
                    reached.add(candidate)
                    new.append(candidate)
        ordered.extend(new)
        frontier = new
    return ordered


def plus_closure_step(span: Sequence[DiffElement], k: int) -> List[DiffElement]:
    """Generators of the k-fold plus closure of a span.

    The result holds the original elements and every element obtained by
    at most ``k`` left multiplications with a shift or its inverse.
    Elements that coincide exactly are kept once.

    :param span: generating elements
    :param k: number of plus steps, at least 1
    :return: generators of the closure, originals first
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not span:
        return []
    dimension = len(span[0].parameters.directions)
    seen = set()
    closure = []
    for offset in ball(dimension, k):
        for element in span:
            product = multiply_monomial(offset, element)
            if product not in seen:
                seen.add(product)
                closure.append(product)
    log.internal_debug(f"plus closure of {len(span)} elements with k={k}: {len(closure)}")
    return closure


def build_E(basis: MonomialSet, generators: Sequence[DiffElement]) -> MonomialSet:
    """Monomial window E of a basis.

    ``E = B + sigma_s1 B + ... + sigma_nun B + support(generators)``,
    ordered with ``E \\ B`` first in canonical order, then ``B`` in its
    own order.
    """
    if not basis:
        raise ValueError("the basis is empty")
    dimension = len(basis[0].exponent)
    members = set(basis)
    for step in unit_steps(dimension):
        if min(step) < 0:
            continue
        members.update(monomial.times(step) for monomial in basis)
    for element in generators:
        members.update(element.support())
    outer = canonical_order(members - set(basis))
    return outer + tuple(basis)


def expand_window(window: MonomialSet, k: int) -> MonomialSet:
    """E^[k]: every monomial within ``k`` unit steps of the window.

    Columns outside the window come first in canonical order, followed
    by the window in its own order.
    """
    if not window:
        return ()
    dimension = len(window[0].exponent)
    members = set(window)
    outer = set()
    for monomial in window:
        for offset in ball(dimension, k):
            candidate = monomial.times(offset)
            if candidate not in members:
                outer.add(candidate)
    return canonical_order(outer) + tuple(window)


def direction_label(parameters: ParameterField, direction: Direction) -> str:
    """File and table label of a direction, ``Cs``, ``Cnu2``..."""
    return f"C{parameters.directions[direction]}"


def exponent_combinations(dimension: int, degree: int) -> Iterator[Tuple[int, ...]]:
    """Non-negative exponents of total degree exactly ``degree``."""
    for cut in itertools.combinations(range(degree + dimension - 1), dimension - 1):
        previous = -1
        exponent = []
        for position in cut + (degree + dimension - 1,):
            exponent.append(position - previous - 1)
            previous = position
        yield tuple(exponent)
