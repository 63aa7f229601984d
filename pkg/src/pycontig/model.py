##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Model specification
*******************

:module: model

:synopsis: The input problem: Laurent polynomials f1..fl in the torus
    variables x1..xn defining X = (C*)^n minus V(f1...fl).

.. currentmodule:: model

"""
from __future__ import annotations

import functools
import keyword
import re
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .exceptions import ModelError
from .symbolic import LaurentPoly, ParameterField, parameter_field, parse_laurent

NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class ModelSpec:
    """Store a validated model."""

    #: torus variable names, in order
    variables: Tuple[str, ...]
    #: the polynomials f_i, all over ``variables``
    polynomials: Tuple[LaurentPoly, ...]
    #: free text label used in reports
    name: str = "model"

    def __post_init__(self) -> None:
        if not self.variables:
            raise ModelError("at least one variable is required")
        if not self.polynomials:
            raise ModelError("at least one polynomial is required")
        if len(set(self.variables)) != len(self.variables):
            raise ModelError(f"duplicate variable names in {list(self.variables)}")
        for name in self.variables:
            if not NAME_PATTERN.match(name) or keyword.iskeyword(name):
                raise ModelError(f"'{name}' is not a valid variable name")
        for index, poly in enumerate(self.polynomials, start=1):
            if poly.variables != tuple(self.variables):
                raise ModelError(
                    f"polynomial {index} is over {poly.variables}, "
                    f"expected {tuple(self.variables)}"
                )
            if poly.is_zero():
                raise ModelError(f"polynomial {index} is zero")

    @classmethod
    def from_strings(
        cls, polynomials: Sequence[str], variables: Sequence[str], name: str = "model"
    ) -> ModelSpec:
        """Parse the polynomials and build the model.

        :param polynomials: expression strings, one per f_i
        :param variables: torus variable names
        :param name: label of the model
        :return: the validated model
        :raises ExpressionError: if an expression cannot be read
        :raises ModelError: if the model is invalid
        """
        variables = tuple(variables)
        if not variables:
            raise ModelError("at least one variable is required")
        return cls(
            variables,
            tuple(parse_laurent(text, variables) for text in polynomials),
            name,
        )

    @property
    def n(self) -> int:
        """Number of torus variables."""
        return len(self.variables)

    @property
    def ell(self) -> int:
        """Number of polynomials."""
        return len(self.polynomials)

    @property
    def parameters(self) -> ParameterField:
        """The coefficient field Q(s1..sl, nu1..nun)."""
        return parameter_field(self.ell, self.n)

    @functools.lru_cache(maxsize=None)
    def gradient(self, i: int) -> Tuple[LaurentPoly, ...]:
        """Partial derivatives of f_i along every variable."""
        return tuple(self.polynomials[i].derivative(j) for j in range(self.n))

    @functools.lru_cache(maxsize=None)
    def second_derivative(self, i: int, j: int, k: int) -> LaurentPoly:
        return self.gradient(i)[j].derivative(k)

    def to_strings(self) -> List[str]:
        """Canonical text of the polynomials."""
        return [poly.to_string() for poly in self.polynomials]

    def __str__(self) -> str:
        polys = ", ".join(self.to_strings())
        return f"{self.name}: [{polys}] over ({', '.join(self.variables)})"
