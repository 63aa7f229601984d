##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Likelihood equations
********************

:module: system

:synopsis: The critical equations of log L at a specialization, cleared
    of denominators, and the numeric one-form and Hessian used to filter
    and weight their solutions.

With ``L = f1^-s1...fl^-sl * x1^nu1...xn^nun`` the one-form has the
components ``w_j = nu_j / x_j - sum_i s_i * (df_i/dx_j) / f_i``. The
cleared equation ``j`` is ``x_j * f1...fl * w_j``.

.. currentmodule:: system

"""
from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np

from ..model import ModelSpec
from ..symbolic import LaurentPoly
from .specialization import Specialization


class CompiledPoly:
    """Polynomial with complex coefficients, evaluated with numpy."""

    def __init__(self, poly: LaurentPoly) -> None:
        """Initialize attributes.

        :param poly: polynomial to compile
        """
        self.poly = poly
        items = list(poly.items())
        self.exponents = np.array(
            [exponent for exponent, _ in items], dtype=int
        ).reshape(len(items), poly.nvars)
        self.coefficients = np.array(
            [complex(coefficient) for _, coefficient in items], dtype=complex
        )

    def __call__(self, x: np.ndarray) -> complex:
        if not len(self.coefficients):
            return 0j
        return complex(self.coefficients @ np.prod(x[None, :] ** self.exponents, axis=1))


def _product(polys: Sequence[LaurentPoly], variables: Sequence[str]) -> LaurentPoly:
    result = LaurentPoly.constant(variables, 1)
    for poly in polys:
        result = result * poly
    return result


class PolySystem:
    """Square polynomial system with its forbidden locus."""

    def __init__(
        self,
        equations: Sequence[LaurentPoly],
        model: ModelSpec,
        specialization: Specialization,
    ) -> None:
        """Initialize attributes.

        :param equations: one polynomial per variable, non-negative exponents
        :param model: the model whose f_i and coordinates are forbidden
        :param specialization: parameter values used to build the equations
        """
        if len(equations) != model.n:
            raise ValueError(f"{len(equations)} equations for {model.n} unknowns")
        self.equations = tuple(equations)
        self.model = model
        self.specialization = specialization
        self._compiled = [CompiledPoly(eq) for eq in self.equations]
        self._jacobian = [
            [CompiledPoly(eq.derivative(k)) for k in range(model.n)] for eq in self.equations
        ]
        self._forbidden = [CompiledPoly(f) for f in model.polynomials]

    @property
    def n(self) -> int:
        return self.model.n

    @property
    def degrees(self) -> List[int]:
        """Total degree of every equation."""
        return [eq.total_degree() for eq in self.equations]

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.array([eq(x) for eq in self._compiled], dtype=complex)

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        return np.array([[d(x) for d in row] for row in self._jacobian], dtype=complex)

    def forbidden_values(self, x: np.ndarray) -> np.ndarray:
        """Values of the f_i at ``x``."""
        return np.array([f(x) for f in self._forbidden], dtype=complex)

    def residual(self, x: np.ndarray) -> float:
        """Largest modulus of the equations at ``x``."""
        return float(np.max(np.abs(self.evaluate(x))))


def clear_denominators(model: ModelSpec, spec: Specialization) -> PolySystem:
    """Build the cleared critical equations.

    Equation ``j`` is ``nu_j * P - sum_i s_i * x_j * df_i/dx_j * P / f_i``
    with ``P = f1...fl``, multiplied by the monomial that makes every
    exponent non-negative when the f_i are Laurent.

    :param model: the model
    :param spec: complex parameter values
    :return: the square system
    """
    variables = model.variables
    polys = [f.map_coefficients(complex) for f in model.polynomials]
    total = _product(polys, variables)
    equations = []
    for j in range(model.n):
        x_j = LaurentPoly.variable(variables, variables[j]).map_coefficients(complex)
        equation = total * spec.nu[j]
        for i, poly in enumerate(polys):
            others = _product(polys[:i] + polys[i + 1:], variables)
            derivative = model.gradient(i)[j].map_coefficients(complex)
            equation = equation - x_j * derivative * others * spec.s[i]
        offset = [-min(0, e) for e in equation.min_exponents()]
        equations.append(equation.shift_exponents(offset))
    return PolySystem(equations, model, spec)


def omega(model: ModelSpec, spec: Specialization, x: Sequence[complex]) -> np.ndarray:
    """Components of the one-form dlog L at ``x``."""
    x = np.asarray(x, dtype=complex)
    f_values = [complex(f.evaluate(x)) for f in model.polynomials]
    result = []
    for j in range(model.n):
        value = spec.nu[j] / x[j]
        for i in range(model.ell):
            value -= spec.s[i] * complex(model.gradient(i)[j].evaluate(x)) / f_values[i]
        result.append(value)
    return np.array(result, dtype=complex)


def hessian(model: ModelSpec, spec: Specialization, x: Sequence[complex]) -> np.ndarray:
    """Hessian of log L at ``x``.

    ``H_jk = -delta_jk nu_j / x_j^2
    - sum_i s_i (d_jk f_i / f_i - d_j f_i d_k f_i / f_i^2)``
    """
    x = np.asarray(x, dtype=complex)
    n = model.n
    matrix = np.zeros((n, n), dtype=complex)
    for j in range(n):
        matrix[j, j] -= spec.nu[j] / x[j] ** 2
    for i in range(model.ell):
        f_value = complex(model.polynomials[i].evaluate(x))
        gradient = [complex(d.evaluate(x)) for d in model.gradient(i)]
        for j in range(n):
            for k in range(n):
                second = complex(model.second_derivative(i, j, k).evaluate(x))
                matrix[j, k] -= spec.s[i] * (
                    second / f_value - gradient[j] * gradient[k] / f_value**2
                )
    return matrix


def hessian_determinant(model: ModelSpec, spec: Specialization, x: Sequence[complex]) -> complex:
    """The value eta of the Hessian determinant at ``x``."""
    return complex(np.linalg.det(hessian(model, spec, x)))


def vieta_coefficients(system: PolySystem) -> Tuple[complex, ...]:
    """Coefficients of a univariate system, highest degree first."""
    if system.n != 1:
        raise ValueError("only univariate systems have a single coefficient list")
    (equation,) = system.equations
    degree = equation.total_degree()
    return tuple(complex(equation.coefficient((d,))) for d in range(degree, -1, -1))
