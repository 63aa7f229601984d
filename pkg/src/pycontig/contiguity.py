##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Contiguity matrices
*******************

:module: contiguity

:synopsis: Exact matrices over K describing how the shift operators act
    on a cohomology basis B, computed by saturating the generators of J
    inside the monomial window E.

For a fixed number of plus steps ``k`` the span is iterated: the
current generators are closed under ``k`` plus steps, intersected with
span(E) and row reduced, until the rank reaches ``|E \\ B|`` or stops
growing. A plateau escalates ``k``. At full rank every monomial of
``E \\ B`` is expressed in B and the matrices are read off.

Row ``r`` of the matrix of direction ``a`` expresses
``sigma_a * beta_r = sum_c C_a[r, c] * beta_c``.

.. currentmodule:: contiguity

"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from .diff_ring import (
    DiffElement,
    DiffMonomial,
    MonomialSet,
    build_E,
    direction_label,
    expand_window,
    generators,
    plus_closure_step,
)
from .exceptions import (
    IterationLimitError,
    RankNotReachedError,
    SingularPivotError,
    SingularShiftError,
)
from .linalg import (
    ColumnRestriction,
    MatK,
    build_matrix,
    inverse,
    multiply,
    normalize_rows,
    rank,
    restrict_to_columns,
    shift_matrix,
)
from .model import ModelSpec
from .symbolic import LaurentPoly, ParameterField, RatFun

log = logging.getLogger(__name__)

IMPROVED = "improved"
NAIVE = "naive"


class ContiguityOptions(NamedTuple):
    """Loop bounds and variants of the contiguity computation."""

    k_max: int = 4
    q_max: int = 12
    generator_form: str = "anchored"
    variant: str = IMPROVED


@dataclass(frozen=True)
class ContiguitySet:
    """Contiguity matrices of a basis."""

    #: the model
    model: ModelSpec
    #: basis B, matrix rows and columns follow its order
    basis: MonomialSet
    #: one chi x chi matrix per direction, in parameter order
    matrices: Tuple[MatK, ...]
    #: number of plus steps that reached full rank
    k: int
    #: last iteration that increased the rank
    q_star: int
    #: (k, q, rank) of every iteration
    rank_trace: Tuple[Tuple[int, int, int], ...]
    #: monomial window E, ``E \ B`` first
    window: MonomialSet
    #: the final span restricted to E
    relations: MatK
    _inverses: Dict[Tuple[int, Tuple[int, ...]], MatK] = field(
        default_factory=dict, init=False, compare=False, repr=False
    )

    @property
    def parameters(self) -> ParameterField:
        return self.model.parameters

    @property
    def chi(self) -> int:
        return len(self.basis)

    def direction(self, direction: Union[int, str]) -> int:
        return self.parameters.index(direction)

    def matrix(self, direction: Union[int, str]) -> MatK:
        """Matrix of a direction given by index or name (``"s"``, ``"nu2"``...)."""
        return self.matrices[self.direction(direction)]

    def named_matrices(self) -> Dict[str, MatK]:
        """Matrices keyed ``Cs``, ``Cnu1``..."""
        return {
            direction_label(self.parameters, direction): matrix
            for direction, matrix in enumerate(self.matrices)
        }

    def shifted(self, direction: int, offsets: Sequence[int]) -> MatK:
        """Matrix of a direction at shifted parameters."""
        return shift_matrix(self.matrices[direction], offsets)

    def inverse_step(self, direction: int, offsets: Sequence[int]) -> MatK:
        """Matrix of ``sigma_direction^-1`` at parameters shifted by ``offsets``.

        This is the inverse of the matrix of the direction evaluated one
        step back.

        :raises SingularShiftError: if that matrix is singular
        """
        key = (direction, tuple(offsets))
        if key not in self._inverses:
            back = list(offsets)
            back[direction] -= 1
            try:
                self._inverses[key] = inverse(self.shifted(direction, back))
            except SingularPivotError:
                raise SingularShiftError(self.parameters.directions[direction], back)
        return self._inverses[key]


def _rows_as_elements(m: MatK) -> List[DiffElement]:
    return [
        DiffElement(
            m.parameters,
            {label: value for label, value in zip(m.col_labels, row) if value},
        )
        for row in m.entries
    ]


def _saturate(
    gens: Sequence[DiffElement],
    window: MonomialSet,
    target: int,
    options: ContiguityOptions,
) -> Tuple[MatK, int, int, List[Tuple[int, int, int]]]:
    trace: List[Tuple[int, int, int]] = []
    last_rank = 0
    for k in range(1, options.k_max + 1):
        outer = expand_window(window, k)
        if options.variant == NAIVE:
            current = restrict_to_columns(
                build_matrix(plus_closure_step(gens, k), outer), window, target
            )
            last_rank = rank(current)
            trace.append((k, 1, last_rank))
            log.internal_info(f"k={k}: rank {last_rank} of {target}")
            if last_rank == target:
                return current, k, 1, trace
            continue
        current = restrict_to_columns(build_matrix(gens, window), window, target)
        previous_rank, current_rank = 0, len(current.entries)
        trace.append((k, 0, current_rank))
        # the closure of a grown span only adds the closure of its new rows
        restriction = ColumnRestriction(current.parameters, outer, window, target)
        fresh = current
        q = 0
        while previous_rank < current_rank < target:
            q += 1
            if q > options.q_max:
                raise IterationLimitError(k, options.q_max, current_rank)
            previous_rank = current_rank
            span = _rows_as_elements(fresh)
            fresh = restriction.matrix(
                restriction.add(build_matrix(plus_closure_step(span, k), outer))
            )
            current_rank = len(restriction)
            trace.append((k, q, current_rank))
            log.internal_info(f"k={k} q={q}: rank {current_rank} of {target}")
        if q:
            current = restriction.matrix()
        last_rank = current_rank
        if current_rank == target:
            return current, k, q, trace
        log.internal_info(f"k={k}: rank stalls at {current_rank}, increasing k")
    raise RankNotReachedError(options.k_max, last_rank, target)


def contiguity_matrices(
    model: ModelSpec,
    basis: Sequence[DiffMonomial],
    options: Optional[ContiguityOptions] = None,
) -> ContiguitySet:
    """Compute the contiguity matrices of a basis.

    :param model: the model
    :param basis: basis B of the cohomology, independent modulo J
    :param options: loop bounds and variants
    :return: the matrices with the (k, q*) that produced them
    :raises RankNotReachedError: if ``k_max`` plus steps are not enough
    :raises IterationLimitError: if the span keeps growing past ``q_max``
    :raises SingularPivotError: if B is not a basis over K
    """
    options = options or ContiguityOptions()
    if options.variant not in (IMPROVED, NAIVE):
        raise ValueError(f"unknown variant '{options.variant}'")
    basis = tuple(basis)
    gens = generators(model, options.generator_form)
    window = build_E(basis, gens)
    outer = window[: len(window) - len(basis)]
    log.internal_info(
        f"{model.name}: |B|={len(basis)}, |E|={len(window)}, target rank {len(outer)}"
    )
    relations, k, q_star, trace = _saturate(gens, window, len(outer), options)
    normalized = normalize_rows(relations, outer)
    matrices = tuple(
        _read_matrix(model.parameters, normalized, basis, direction)
        for direction in range(len(model.parameters.directions))
    )
    return ContiguitySet(
        model, basis, matrices, k, q_star, tuple(trace), window, relations
    )


def _read_matrix(
    parameters: ParameterField, normalized: MatK, basis: MonomialSet, direction: int
) -> MatK:
    row_of = {label: index for index, label in enumerate(normalized.row_labels)}
    columns = [normalized.column_index(beta) for beta in basis]
    entries = []
    for beta in basis:
        image = beta.step(direction)
        if image in basis:
            target = basis.index(image)
            entries.append(
                [parameters.one if c == target else parameters.zero for c in range(len(basis))]
            )
        else:
            row = normalized.entries[row_of[image]]
            entries.append([-row[c] for c in columns])
    return MatK(parameters, entries, basis, basis)


def _path_to(
    basis: MonomialSet, exponent: Sequence[int]
) -> Tuple[int, List[Tuple[int, int]]]:
    distances = [
        sum(abs(e - b) for e, b in zip(exponent, beta.exponent)) for beta in basis
    ]
    start = distances.index(min(distances))
    offset = [e - b for e, b in zip(exponent, basis[start].exponent)]
    steps = []
    # nu_n first, s_1 last
    for direction in range(len(offset) - 1, -1, -1):
        sign = 1 if offset[direction] > 0 else -1
        steps.extend([(direction, sign)] * abs(offset[direction]))
    return start, steps


def expand_class(
    a: Sequence[int], b: Sequence[int], cs: ContiguitySet
) -> List[RatFun]:
    """Coordinates of the class of ``f^-a * x^b`` in the basis.

    The monomial is reached from the nearest basis element by unit
    shifts, nu_n first and s_1 last. The step applied first carries every
    later shift in its parameters.

    :param a: exponents of the f_i^-1
    :param b: exponents of the x_j
    :param cs: contiguity matrices of the basis
    :return: c with ``[f^-a * x^b] = sum_i c_i * [beta_i]``
    :raises SingularShiftError: if a needed inverse does not exist
    """
    a, b = tuple(a), tuple(b)
    if len(a) != cs.model.ell or len(b) != cs.model.n:
        raise ValueError(f"exponents ({a}, {b}) do not fit {cs.model.name}")
    parameters = cs.parameters
    start, steps = _path_to(cs.basis, a + b)
    offsets = [0] * len(a + b)
    factors = []
    for direction, sign in reversed(steps):
        if sign > 0:
            factors.append(cs.shifted(direction, offsets))
        else:
            factors.append(cs.inverse_step(direction, offsets))
        offsets[direction] += sign
    # factors[-1] belongs to the first applied step
    row = MatK(
        parameters,
        [[parameters.one if c == start else parameters.zero for c in range(cs.chi)]],
        cs.basis,
    )
    for factor in reversed(factors):
        row = multiply(row, factor)
    return list(row.entries[0])


def expand_function(poly: LaurentPoly, cs: ContiguitySet) -> List[RatFun]:
    """Coordinates of the class of the form ``g * dx/x`` for a Laurent polynomial g."""
    parameters = cs.parameters
    if poly.variables != cs.model.variables:
        raise ValueError(f"{poly} is not over {cs.model.variables}")
    total = [parameters.zero] * cs.chi
    zero_a = (0,) * cs.model.ell
    for exponent, coefficient in poly.items():
        vector = expand_class(zero_a, exponent, cs)
        scale = parameters.from_fraction(coefficient)
        total = [t + scale * v for t, v in zip(total, vector)]
    return total


def verify_twisted_commutation(cs: ContiguitySet) -> bool:
    """Check ``C_b(p + e_a) C_a(p) == C_a(p + e_b) C_b(p)`` for every pair a < b."""
    dimension = len(cs.matrices)
    for alpha in range(dimension):
        for beta in range(alpha + 1, dimension):
            e_alpha = [1 if d == alpha else 0 for d in range(dimension)]
            e_beta = [1 if d == beta else 0 for d in range(dimension)]
            left = multiply(cs.shifted(beta, e_alpha), cs.matrices[alpha])
            right = multiply(cs.shifted(alpha, e_beta), cs.matrices[beta])
            if left.entries != right.entries:
                log.internal_warning(
                    f"twisted commutation fails for "
                    f"{cs.parameters.directions[alpha]}, {cs.parameters.directions[beta]}"
                )
                return False
    return True
