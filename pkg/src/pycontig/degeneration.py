##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Degeneration to the likelihood quotient
***************************************

:module: degeneration

:synopsis: The limit delta -> 0 of the contiguity matrices after
    ``(s, nu) -> (s/delta, nu/delta)``. The transposed limits are the
    multiplication matrices of ``x_j`` and ``f_i^-1`` on the quotient
    by the likelihood ideal, checked here against the critical points.

.. currentmodule:: degeneration

"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Sequence, Tuple, Union

import numpy as np

from .basis import evaluate_monomial
from .contiguity import ContiguitySet
from .diff_ring import DiffElement, DiffMonomial, MonomialSet
from .exceptions import (
    EigenMismatchError,
    ResidueMismatchError,
    SingularHessianError,
)
from .linalg import MatK, evaluate_matrix, inverse, multiply
from .model import ModelSpec
from .numeric import CriticalPoint, Specialization
from .symbolic import LaurentPoly, ParameterField, RatFun
from .symbolic.parameters import evaluate, substitute_scaled, total_degree, value_at_zero_delta

log = logging.getLogger(__name__)

#: a function on the torus given as a monomial f^-a x^b or a Laurent polynomial in x
Function = Union[DiffMonomial, LaurentPoly]


@dataclass(frozen=True)
class MultiplicationSet:
    """Multiplication matrices on the likelihood quotient.

    Column ``r`` of a matrix holds the coordinates of ``g * beta_r``.
    Matrices are indexed like the directions: ``s_i`` carries ``f_i^-1``
    and ``nu_j`` carries ``x_j``.
    """

    #: the model
    model: ModelSpec
    #: basis B of the quotient
    basis: MonomialSet
    #: one matrix per direction
    matrices: Tuple[MatK, ...]

    @property
    def parameters(self) -> ParameterField:
        return self.model.parameters

    def matrix(self, direction: Union[int, str]) -> MatK:
        return self.matrices[self.parameters.index(direction)]

    def generator_label(self, direction: int) -> str:
        """``x``, ``x2``, ``1/f``, ``1/f1``... for a direction."""
        if direction < self.model.ell:
            suffix = "" if self.model.ell == 1 else str(direction + 1)
            return f"1/f{suffix}"
        return self.model.variables[direction - self.model.ell]

    def named_matrices(self) -> Dict[str, MatK]:
        """Matrices keyed ``Ms``, ``Mnu1``..."""
        return {
            f"M{name}": matrix
            for name, matrix in zip(self.parameters.directions, self.matrices)
        }


def multiplication_matrices(cs: ContiguitySet) -> MultiplicationSet:
    """Transposed delta -> 0 limits of the contiguity matrices.

    :param cs: contiguity matrices of a basis
    :return: the multiplication matrices
    :raises DeltaPoleError: if an entry has a pole at delta = 0
    """
    parameters = cs.parameters
    matrices = []
    for direction, contiguity in enumerate(cs.matrices):
        name = parameters.directions[direction]
        limit = [
            [
                parameters.convert(
                    value_at_zero_delta(substitute_scaled(value), (name, row, column))
                )
                if value
                else parameters.zero
                for column, value in enumerate(entries)
            ]
            for row, entries in enumerate(contiguity.entries)
        ]
        matrices.append(MatK(parameters, limit, cs.basis, cs.basis).transpose())
    return MultiplicationSet(cs.model, cs.basis, tuple(matrices))


def commute_exactly(ms: MultiplicationSet) -> bool:
    """True iff every pair of multiplication matrices commutes over K."""
    for alpha, left in enumerate(ms.matrices):
        for right in ms.matrices[alpha + 1 :]:
            if multiply(left, right).entries != multiply(right, left).entries:
                return False
    return True


def _matrix_power(m: MatK, power: int) -> MatK:
    base = m if power >= 0 else inverse(m)
    result = MatK.identity(m.parameters, m.col_labels)
    for _ in range(abs(power)):
        result = multiply(result, base)
    return result


def polynomial_in_matrices(poly: LaurentPoly, ms: MultiplicationSet) -> MatK:
    """Substitute ``x_j -> M_x_j`` in a Laurent polynomial with rational coefficients."""
    parameters = ms.parameters
    ell = ms.model.ell
    size = len(ms.basis)
    total = MatK(parameters, [[parameters.zero] * size for _ in range(size)], ms.basis, ms.basis)
    for exponent, coefficient in poly.items():
        term = MatK.identity(parameters, ms.basis)
        for j, power in enumerate(exponent):
            if power:
                term = multiply(term, _matrix_power(ms.matrices[ell + j], power))
        scale = parameters.from_fraction(coefficient)
        total = MatK(
            parameters,
            [
                [a + scale * b for a, b in zip(row_a, row_b)]
                for row_a, row_b in zip(total.entries, term.entries)
            ],
            ms.basis,
            ms.basis,
        )
    return total


def inverse_consistent(ms: MultiplicationSet) -> bool:
    """True iff ``M_{f_i^-1} * f_i(M_x) == 1`` for every polynomial."""
    identity = MatK.identity(ms.parameters, ms.basis)
    for i, poly in enumerate(ms.model.polynomials):
        if multiply(ms.matrices[i], polynomial_in_matrices(poly, ms)).entries != identity.entries:
            return False
    return True


def specialize(ms: MultiplicationSet, spec: Specialization) -> List[np.ndarray]:
    """Numeric multiplication matrices at a specialization."""
    return [evaluate_matrix(m, spec.values) for m in ms.matrices]


def function_value(g: Function, point: CriticalPoint) -> complex:
    if isinstance(g, DiffMonomial):
        return evaluate_monomial(g, point)
    return complex(g.evaluate(point.coordinates))


def _numeric_power(matrix: np.ndarray, power: int) -> np.ndarray:
    return np.linalg.matrix_power(matrix, power)


def function_matrix(g: Function, matrices: Sequence[np.ndarray], model: ModelSpec) -> np.ndarray:
    """Numeric multiplication matrix of a monomial or a Laurent polynomial in x."""
    size = matrices[0].shape[0]
    if isinstance(g, DiffMonomial):
        result = np.eye(size, dtype=complex)
        for direction, power in enumerate(g.exponent):
            if power:
                result = result @ _numeric_power(matrices[direction], power)
        return result
    result = np.zeros((size, size), dtype=complex)
    for exponent, coefficient in g.items():
        term = complex(coefficient) * np.eye(size, dtype=complex)
        for j, power in enumerate(exponent):
            if power:
                term = term @ _numeric_power(matrices[model.ell + j], power)
        result = result + term
    return result


class EigenReport(NamedTuple):
    """Largest deviations found by :func:`eigen_check`."""

    mismatch: float
    residual: float
    per_direction: Dict[str, Tuple[float, float]]


def _assign(eigenvalues: np.ndarray, expected: Sequence[complex]) -> float:
    free = list(eigenvalues)
    worst = 0.0
    for value in expected:
        distances = [abs(candidate - value) for candidate in free]
        nearest = int(np.argmin(distances))
        worst = max(worst, distances[nearest] / max(1.0, abs(value)))
        free.pop(nearest)
    return worst


def eigen_check(
    ms: MultiplicationSet,
    points: Sequence[CriticalPoint],
    spec: Specialization,
    tolerance: float = 1e-6,
) -> EigenReport:
    """Compare the specialized matrices with the critical points.

    Eigenvalues are matched greedily to ``x_j`` (or ``f_i^-1``) at the
    points. The evaluation vector ``v_p = (beta_c(x_p))`` must then be an
    eigenvector of the transposed matrix with that value.

    :param ms: multiplication matrices
    :param points: every critical point at ``spec``
    :param spec: the specialization the points belong to
    :param tolerance: bound on both deviations, relative
    :raises EigenMismatchError: if a deviation exceeds the tolerance
    """
    if len(points) != len(ms.basis):
        raise ValueError(f"{len(points)} critical points for a basis of {len(ms.basis)}")
    numeric = specialize(ms, spec)
    vectors = [
        np.array([evaluate_monomial(beta, point) for beta in ms.basis], dtype=complex)
        for point in points
    ]
    mismatch, residual = 0.0, 0.0
    per_direction = {}
    for direction, matrix in enumerate(numeric):
        name = ms.parameters.directions[direction]
        if direction < ms.model.ell:
            expected = [1 / point.f_values[direction] for point in points]
        else:
            expected = [point.coordinates[direction - ms.model.ell] for point in points]
        direction_mismatch = _assign(np.linalg.eigvals(matrix), expected)
        direction_residual = max(
            float(np.linalg.norm(matrix.T @ v - g * v) / max(1.0, abs(g)) / np.linalg.norm(v))
            for v, g in zip(vectors, expected)
        )
        log.internal_debug(
            f"{ms.generator_label(direction)}: eigenvalue mismatch {direction_mismatch:.3e}, "
            f"eigenvector residual {direction_residual:.3e}"
        )
        per_direction[name] = (direction_mismatch, direction_residual)
        worst = max(direction_mismatch, direction_residual)
        if worst > tolerance:
            raise EigenMismatchError(name, worst, tolerance)
        mismatch = max(mismatch, direction_mismatch)
        residual = max(residual, direction_residual)
    return EigenReport(mismatch, residual, per_direction)


def _determinant(matrix: List[List[LaurentPoly]]) -> LaurentPoly:
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    total = None
    for column in range(size):
        minor = [row[:column] + row[column + 1 :] for row in matrix[1:]]
        term = matrix[0][column] * _determinant(minor)
        if column % 2:
            term = -term
        total = term if total is None else total + term
    return total


def hessian_expression(model: ModelSpec, spec: Specialization) -> LaurentPoly:
    """Hessian determinant of log L at ``spec`` as a Laurent polynomial in (x, u).

    ``u_i`` stands for ``f_i^-1``::

        H_jk = -delta_jk nu_j x_j^-2
               - sum_i s_i (d_jk f_i u_i - d_j f_i d_k f_i u_i^2)
    """
    u_names = tuple(f"u{i + 1}" for i in range(model.ell))
    names = model.variables + u_names
    variables = [LaurentPoly.variable(names, name) for name in names]
    rows = []
    for j in range(model.n):
        row = []
        for k in range(model.n):
            entry = LaurentPoly(names)
            if j == k:
                entry = entry - complex(spec.nu[j]) * variables[j] ** -2
            for i in range(model.ell):
                u = variables[model.n + i]
                second = model.second_derivative(i, j, k).extend(names)
                first = model.gradient(i)[j].extend(names) * model.gradient(i)[k].extend(names)
                entry = entry - complex(spec.s[i]) * (second * u - first * u**2)
            row.append(entry)
        rows.append(row)
    return _determinant(rows)


class ResiduePairing(NamedTuple):
    """Both evaluations of the residue pairing."""

    trace_value: complex
    direct_value: complex


def residue_pairing(
    g: Function,
    h: Function,
    ms: MultiplicationSet,
    points: Sequence[CriticalPoint],
    spec: Specialization,
    tolerance: float = 1e-6,
    condition_limit: float = 1e12,
) -> ResiduePairing:
    """Residue pairing of g and h by the trace formula and by the sum over points.

    :param g: monomial f^-a x^b or Laurent polynomial in x
    :param h: same
    :param ms: multiplication matrices
    :param points: every critical point at ``spec``
    :param spec: specialization of the parameters
    :param tolerance: relative agreement required between the two values
    :param condition_limit: largest accepted condition number of ``M_Hess``
    :return: the two values
    :raises SingularHessianError: if ``M_Hess`` is singular at ``spec``
    :raises ResidueMismatchError: if the values disagree
    """
    model = ms.model
    numeric = specialize(ms, spec)
    hessian = hessian_expression(model, spec)
    # x_j -> M_x_j and u_i -> M_f_i^-1
    ordered = numeric[model.ell :] + numeric[: model.ell]
    size = len(ms.basis)
    m_hess = np.zeros((size, size), dtype=complex)
    for exponent, coefficient in hessian.items():
        term = complex(coefficient) * np.eye(size, dtype=complex)
        for matrix, power in zip(ordered, exponent):
            if power:
                term = term @ _numeric_power(matrix, power)
        m_hess = m_hess + term
    condition = float(np.linalg.cond(m_hess))
    if not condition < condition_limit:
        raise SingularHessianError(condition)
    product = function_matrix(g, numeric, model) @ function_matrix(h, numeric, model)
    trace_value = complex(np.trace(product @ np.linalg.inv(m_hess)))
    direct_value = complex(
        sum(function_value(g, p) * function_value(h, p) / p.eta for p in points)
    )
    if abs(trace_value - direct_value) > tolerance * max(1.0, abs(direct_value)):
        raise ResidueMismatchError(trace_value, direct_value)
    return ResiduePairing(trace_value, direct_value)


def _weight(r: RatFun) -> int:
    return total_degree(r.numer) - total_degree(r.denom)


def degenerate_element(element: DiffElement) -> DiffElement:
    """Leading part of an element under ``(s, nu) -> (s/delta, nu/delta)``.

    Coefficients are multiplied by ``delta^w``, w the largest weight among
    them, and evaluated at delta = 0. Reading the monomials as functions
    ``f^-a x^b``, the image of a generator of J vanishes at the critical
    points.
    """
    parameters = element.parameters
    terms = [(m, c) for m, c in element.items() if c]
    if not terms:
        return element
    top = max(_weight(c) for _, c in terms)
    result = {}
    for monomial, coefficient in terms:
        scaled = substitute_scaled(coefficient)
        delta = scaled.field.gens[-1]
        value = value_at_zero_delta(scaled * delta**top)
        if value:
            result[monomial] = parameters.convert(value)
    return DiffElement(parameters, result)


def element_value(element: DiffElement, point: CriticalPoint, spec: Specialization) -> complex:
    """Value of an element read as the function ``sum c(s, nu) f^-a x^b``."""
    return complex(
        sum(
            complex(evaluate(coefficient, spec.values)) * evaluate_monomial(monomial, point)
            for monomial, coefficient in element.items()
        )
    )


def scaled_value(r: RatFun, values: Sequence[complex], delta: float) -> complex:
    """Numeric value of ``r(s/delta, nu/delta)``."""
    return complex(evaluate(r, [value / delta for value in values]))
