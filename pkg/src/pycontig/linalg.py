##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Exact linear algebra over K
***************************

:module: linalg

:synopsis: Matrices with rational function entries and labeled rows and
    columns: rank, cokernel, restriction of a row span to a set of
    columns, normalization against a pivot block, inversion.

Ranks are computed fraction free over the polynomial ring, see
:func:`bareiss_rank`. The other eliminations go through
:class:`EchelonBasis`, an incremental row echelon form. A new row is
reduced against the rows already accepted and, if something is left,
the entry of smallest complexity becomes its pivot (ties go to the first column). Restricting the pivot choice to a
preferred group of columns first is how cokernels and span restrictions
are computed; :class:`ColumnRestriction` keeps such an elimination open
so that a span can grow without eliminating its old rows again.

.. currentmodule:: linalg

"""
from __future__ import annotations

import logging
from typing import (
    Any,
    Dict,
    Hashable,
    Iterable,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
)

import numpy as np

from .diff_ring import DiffElement, DiffMonomial
from .exceptions import SingularPivotError, SupportEscapeError
from .symbolic import ParameterField, RatFun, complexity, format_ratfun, shift_many
from .symbolic.parameters import evaluate

log = logging.getLogger(__name__)

#: sparse row, column index to nonzero entry
SparseRow = Dict[int, RatFun]


class MatK:
    """Dense matrix over K with row and column labels."""

    def __init__(
        self,
        parameters: ParameterField,
        entries: Sequence[Sequence[RatFun]],
        col_labels: Sequence[Hashable],
        row_labels: Optional[Sequence[Hashable]] = None,
    ) -> None:
        """Initialize attributes.

        :param parameters: field of the entries
        :param entries: rows of the matrix
        :param col_labels: one label per column
        :param row_labels: one label per row, defaults to the row index
        """
        self.parameters = parameters
        self.entries = [list(row) for row in entries]
        self.col_labels = tuple(col_labels)
        self.row_labels = (
            tuple(row_labels) if row_labels is not None else tuple(range(len(self.entries)))
        )
        if len(self.row_labels) != len(self.entries):
            raise ValueError(
                f"{len(self.row_labels)} row labels for {len(self.entries)} rows"
            )
        for row in self.entries:
            if len(row) != len(self.col_labels):
                raise ValueError(
                    f"row of length {len(row)} for {len(self.col_labels)} columns"
                )

    @classmethod
    def zeros(
        cls, parameters: ParameterField, rows: int, col_labels: Sequence[Hashable]
    ) -> MatK:
        return cls(
            parameters,
            [[parameters.zero] * len(col_labels) for _ in range(rows)],
            col_labels,
        )

    @classmethod
    def identity(cls, parameters: ParameterField, labels: Sequence[Hashable]) -> MatK:
        size = len(labels)
        return cls(
            parameters,
            [
                [parameters.one if i == j else parameters.zero for j in range(size)]
                for i in range(size)
            ],
            labels,
            labels,
        )

    @classmethod
    def from_sparse(
        cls,
        parameters: ParameterField,
        rows: Sequence[SparseRow],
        col_labels: Sequence[Hashable],
        row_labels: Optional[Sequence[Hashable]] = None,
    ) -> MatK:
        width = len(col_labels)
        entries = []
        for row in rows:
            dense = [parameters.zero] * width
            for column, value in row.items():
                dense[column] = value
            entries.append(dense)
        return cls(parameters, entries, col_labels, row_labels)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.entries), len(self.col_labels)

    def sparse_rows(self) -> List[SparseRow]:
        return [
            {column: value for column, value in enumerate(row) if value}
            for row in self.entries
        ]

    def column_index(self, label: Hashable) -> int:
        return self.col_labels.index(label)

    def select_columns(self, labels: Sequence[Hashable]) -> MatK:
        """Submatrix on the given columns, in the given order."""
        positions = [self.column_index(label) for label in labels]
        return MatK(
            self.parameters,
            [[row[p] for p in positions] for row in self.entries],
            labels,
            self.row_labels,
        )

    def select_rows(self, indices: Sequence[int]) -> MatK:
        return MatK(
            self.parameters,
            [self.entries[i] for i in indices],
            self.col_labels,
            [self.row_labels[i] for i in indices],
        )

    def transpose(self) -> MatK:
        rows, columns = self.shape
        return MatK(
            self.parameters,
            [[self.entries[i][j] for i in range(rows)] for j in range(columns)],
            self.row_labels,
            self.col_labels,
        )

    def is_zero(self) -> bool:
        return not any(value for row in self.entries for value in row)

    def __getitem__(self, position: Tuple[int, int]) -> RatFun:
        row, column = position
        return self.entries[row][column]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatK):
            return NotImplemented
        return self.entries == other.entries and self.col_labels == other.col_labels

    def __repr__(self) -> str:
        return f"MatK({self.shape[0]}x{self.shape[1]})"

    def to_text(self, label_format=str) -> str:
        """Tab separated text: column labels, then one line per row."""
        lines = ["\t".join(label_format(label) for label in self.col_labels)]
        for row in self.entries:
            lines.append("\t".join(format_ratfun(value) for value in row))
        return "\n".join(lines) + "\n"


class EchelonBasis:
    """Incremental row echelon form over K.

    Accepted rows are stored in insertion order, every accepted row is
    zero on the pivots of the rows accepted before it and the pivot
    entries are normalized to one.
    """

    def __init__(
        self, one: RatFun, preferred: Optional[Iterable[int]] = None
    ) -> None:
        """Initialize attributes.

        :param one: unit of the field
        :param preferred: columns searched for a pivot before any other
        """
        self.one = one
        self.preferred: Set[int] = set(preferred or ())
        self.rows: List[SparseRow] = []
        self.pivots: List[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, row: SparseRow) -> SparseRow:
        """Reduce a row against the accepted rows."""
        row = dict(row)
        for pivot, basis_row in zip(self.pivots, self.rows):
            factor = row.get(pivot)
            if factor:
                row = axpy(row, basis_row, -factor)
        return row

    def add(self, row: SparseRow) -> Optional[int]:
        """Reduce and accept a row.

        :return: index of the new pivot column, None if the row was
            dependent
        """
        reduced = self.reduce(row)
        if not reduced:
            return None
        candidates = [c for c in reduced if c in self.preferred] or list(reduced)
        pivot = min(candidates, key=lambda c: (complexity(reduced[c]), c))
        inverse = self.one / reduced[pivot]
        reduced = {c: v * inverse for c, v in reduced.items()}
        self.rows.append(reduced)
        self.pivots.append(pivot)
        return pivot

    def back_substitute(self) -> None:
        """Clear every pivot column above its pivot (reduced echelon form)."""
        for index in range(len(self.rows) - 1, -1, -1):
            pivot = self.pivots[index]
            pivot_row = self.rows[index]
            for other in range(index):
                factor = self.rows[other].get(pivot)
                if factor:
                    self.rows[other] = axpy(self.rows[other], pivot_row, -factor)


def axpy(row: SparseRow, other: SparseRow, factor: RatFun) -> SparseRow:
    """Return ``row + factor * other`` without zero entries."""
    result = dict(row)
    for column, value in other.items():
        current = result.get(column)
        updated = factor * value if current is None else current + factor * value
        if updated:
            result[column] = updated
        else:
            result.pop(column, None)
    return result


def build_matrix(
    elements: Sequence[DiffElement],
    columns: Sequence[DiffMonomial],
    row_labels: Optional[Sequence[Hashable]] = None,
) -> MatK:
    """Coefficient matrix of ring elements against a monomial window.

    :param elements: one row per element
    :param columns: monomial labels of the columns
    :param row_labels: labels of the rows, indices by default
    :return: matrix whose entry (i, Q) is the coefficient of Q in element i
    :raises SupportEscapeError: if an element uses a monomial outside the
        columns
    """
    if not elements:
        raise ValueError("no elements to build a matrix from")
    parameters = elements[0].parameters
    position = {monomial: index for index, monomial in enumerate(columns)}
    rows = []
    for element in elements:
        row = {}
        for monomial, coefficient in element.terms.items():
            if monomial not in position:
                raise SupportEscapeError(monomial.to_string(parameters.directions))
            row[position[monomial]] = coefficient
        rows.append(row)
    return MatK.from_sparse(parameters, rows, columns, row_labels)


def row_echelon(m: MatK, preferred: Optional[Iterable[int]] = None) -> EchelonBasis:
    basis = EchelonBasis(m.parameters.one, preferred)
    for row in m.sparse_rows():
        basis.add(row)
    return basis


def _common_denominator(row: Sequence[RatFun]):
    denominator = None
    for value in row:
        if value:
            denominator = value.denom if denominator is None else denominator.lcm(value.denom)
    return denominator


def bareiss_rank(m: MatK) -> int:
    """Rank by fraction-free elimination over the polynomial ring.

    Every row is multiplied by the common denominator of its entries,
    the elimination then only divides exactly.
    """
    ring = m.parameters.ring
    matrix = []
    for row in m.entries:
        denominator = _common_denominator(row)
        if denominator is None:
            continue
        matrix.append(
            [
                value.numer * denominator.exquo(value.denom) if value else ring.zero
                for value in row
            ]
        )
    rows = len(matrix)
    columns = m.shape[1]
    previous = ring.one
    pivot_row = 0
    for column in range(columns):
        if pivot_row == rows:
            break
        candidates = [i for i in range(pivot_row, rows) if matrix[i][column]]
        if not candidates:
            continue
        swap = min(candidates, key=lambda i: (len(matrix[i][column]), i))
        matrix[pivot_row], matrix[swap] = matrix[swap], matrix[pivot_row]
        pivot = matrix[pivot_row][column]
        for i in range(pivot_row + 1, rows):
            lead = matrix[i][column]
            for j in range(column, columns):
                value = pivot * matrix[i][j] - lead * matrix[pivot_row][j]
                matrix[i][j] = value.exquo(previous) if value else ring.zero
        previous = pivot
        pivot_row += 1
    return pivot_row


def rank(m: MatK) -> int:
    """Exact rank over K, by fraction-free elimination."""
    return bareiss_rank(m)


def _canonical_vector(row: SparseRow, one: RatFun) -> SparseRow:
    first = row[min(row)]
    scale = one / first
    return {c: v * scale for c, v in row.items()}


def cokernel(m: MatK) -> MatK:
    """Left nullspace of ``m``.

    :return: matrix whose rows span ``{v : v * m = 0}``, one row per
        dependency, each scaled so that its first nonzero entry is one
    """
    rows, columns = m.shape
    augmented = []
    for index, row in enumerate(m.sparse_rows()):
        extended = dict(row)
        extended[columns + index] = m.parameters.one
        augmented.append(extended)
    basis = EchelonBasis(m.parameters.one, range(columns))
    for row in augmented:
        basis.add(row)
    kernel = [
        _canonical_vector({c - columns: v for c, v in row.items()}, m.parameters.one)
        for row, pivot in zip(basis.rows, basis.pivots)
        if pivot >= columns
    ]
    kernel_basis = EchelonBasis(m.parameters.one)
    for row in kernel:
        kernel_basis.add(row)
    kernel_basis.back_substitute()
    kernel = [_canonical_vector(row, m.parameters.one) for row in kernel_basis.rows]
    return MatK.from_sparse(m.parameters, kernel, m.row_labels)


class ColumnRestriction:
    """Intersection of a growing row span with the span of some columns.

    Rows are eliminated with the columns outside ``keep`` as preferred
    pivots. An accepted row whose pivot lies in ``keep`` has no entry
    outside ``keep`` and accepted rows are never modified, so these rows
    stay a basis of the intersection as more rows are added.
    """

    def __init__(
        self,
        parameters: ParameterField,
        col_labels: Sequence[Hashable],
        keep: Sequence[Hashable],
        limit: Optional[int] = None,
    ) -> None:
        """Initialize attributes.

        :param parameters: field of the entries
        :param col_labels: column labels of the rows to come
        :param keep: labels of the columns spanning the target space
        :param limit: stop accepting rows once the intersection has this
            dimension
        """
        self.parameters = parameters
        self.col_labels = tuple(col_labels)
        self.keep = tuple(keep)
        self.limit = limit
        self.keep_positions = {self.col_labels.index(label) for label in self.keep}
        outer = [c for c in range(len(self.col_labels)) if c not in self.keep_positions]
        self.basis = EchelonBasis(parameters.one, outer)
        self.inner: List[SparseRow] = []

    def __len__(self) -> int:
        return len(self.inner)

    @property
    def full(self) -> bool:
        return self.limit is not None and len(self.inner) >= self.limit

    def add(self, m: MatK) -> List[SparseRow]:
        """Eliminate the rows of ``m``.

        :return: the rows that enlarged the intersection, in the columns
            of ``m``
        """
        if m.col_labels != self.col_labels:
            raise ValueError("the rows do not use the columns of the restriction")
        fresh = []
        for row in m.sparse_rows():
            if self.full:
                log.internal_debug(f"intersection reached dimension {self.limit}")
                break
            if self.basis.add(row) in self.keep_positions:
                fresh.append(self.basis.rows[-1])
                self.inner.append(self.basis.rows[-1])
        return fresh

    def matrix(self, rows: Optional[Sequence[SparseRow]] = None) -> MatK:
        """Rows of the intersection (all of them by default) on the ``keep`` columns."""
        rows = self.inner if rows is None else rows
        inner = MatK.from_sparse(self.parameters, rows, self.col_labels)
        return inner.select_columns(self.keep)


def restrict_to_columns(
    m: MatK, keep: Sequence[Hashable], limit: Optional[int] = None
) -> MatK:
    """Intersect the row span of ``m`` with the span of the ``keep`` columns.

    The columns outside ``keep`` are eliminated first, the rows left with
    no entry outside ``keep`` span the intersection and are returned as an
    independent echelon set on the ``keep`` columns.

    :param limit: dimension at which the elimination stops, known upper
        bound of the intersection
    """
    restriction = ColumnRestriction(m.parameters, m.col_labels, keep, limit)
    restriction.add(m)
    return restriction.matrix()


def select_independent_rows(m: MatK) -> List[int]:
    """Indices of the first independent rows, greedily in stored order."""
    basis = EchelonBasis(m.parameters.one)
    return [
        index for index, row in enumerate(m.sparse_rows()) if basis.add(row) is not None
    ]


def normalize_rows(m: MatK, pivot_block: Sequence[Hashable]) -> MatK:
    """Left multiply a maximal independent row set by the inverse of its pivot block.

    :param m: matrix to normalize
    :param pivot_block: labels of the columns that become the identity
    :return: square-on-pivot matrix, row ``r`` has its one on pivot column ``r``
    :raises SingularPivotError: if the pivot block is not invertible
    """
    selected = m.select_rows(select_independent_rows(m))
    positions = [m.column_index(label) for label in pivot_block]
    if len(selected.entries) != len(positions):
        log.internal_warning(
            f"{len(selected.entries)} independent rows for a pivot block of {len(positions)}"
        )
    basis = EchelonBasis(m.parameters.one, positions)
    by_pivot: Dict[int, SparseRow] = {}
    for row in selected.sparse_rows():
        pivot = basis.add(row)
        if pivot is None or pivot not in positions:
            break
    basis.back_substitute()
    for row, pivot in zip(basis.rows, basis.pivots):
        if pivot in positions:
            by_pivot[pivot] = row
    for position, label in zip(positions, pivot_block):
        if position not in by_pivot:
            raise SingularPivotError(_label_text(m.parameters, label))
    ordered = [by_pivot[position] for position in positions]
    return MatK.from_sparse(m.parameters, ordered, m.col_labels, list(pivot_block))


def _label_text(parameters: ParameterField, label: Hashable) -> str:
    if isinstance(label, DiffMonomial):
        return label.to_string(parameters.directions)
    return str(label)


def row_space_equal(a: MatK, b: MatK) -> bool:
    """True iff both matrices have the same row span over K."""
    if a.col_labels != b.col_labels:
        b = b.select_columns(a.col_labels)
    basis = row_echelon(a)
    rank_a = len(basis)
    if rank(b) != rank_a:
        return False
    return all(not basis.reduce(row) for row in b.sparse_rows())


def multiply(a: MatK, b: MatK) -> MatK:
    """Matrix product ``a * b``."""
    rows, inner = a.shape
    if inner != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    zero = a.parameters.zero
    entries = []
    for i in range(rows):
        row = []
        for j in range(b.shape[1]):
            total = zero
            for k in range(inner):
                left = a.entries[i][k]
                if left:
                    right = b.entries[k][j]
                    if right:
                        total = total + left * right
            row.append(total)
        entries.append(row)
    return MatK(a.parameters, entries, b.col_labels, a.row_labels)


def inverse(m: MatK) -> MatK:
    """Inverse by Gauss-Jordan elimination.

    :raises SingularPivotError: if the matrix is singular
    """
    size, columns = m.shape
    if size != columns:
        raise ValueError(f"cannot invert a {size}x{columns} matrix")
    augmented = []
    for index, row in enumerate(m.sparse_rows()):
        extended = dict(row)
        extended[columns + index] = m.parameters.one
        augmented.append(extended)
    basis = EchelonBasis(m.parameters.one, range(columns))
    for row in augmented:
        basis.add(row)
    basis.back_substitute()
    by_pivot = {p: row for row, p in zip(basis.rows, basis.pivots) if p < columns}
    for column in range(columns):
        if column not in by_pivot:
            raise SingularPivotError(_label_text(m.parameters, m.col_labels[column]))
    rows = [
        {c - columns: v for c, v in by_pivot[column].items() if c >= columns}
        for column in range(columns)
    ]
    return MatK.from_sparse(m.parameters, rows, m.row_labels, m.col_labels)


def shift_matrix(m: MatK, offsets: Sequence[int]) -> MatK:
    """Apply ``p_i -> p_i + offsets[i]`` to every entry."""
    if not any(offsets):
        return m
    return MatK(
        m.parameters,
        [[shift_many(value, offsets) if value else value for value in row] for row in m.entries],
        m.col_labels,
        m.row_labels,
    )


def map_entries(m: MatK, function, parameters: Optional[ParameterField] = None) -> MatK:
    """Apply ``function`` to every entry, optionally changing the field."""
    return MatK(
        parameters or m.parameters,
        [[function(value) for value in row] for row in m.entries],
        m.col_labels,
        m.row_labels,
    )


def evaluate_matrix(m: MatK, values: Sequence[Any]) -> np.ndarray:
    """Numeric matrix at a parameter point, values in parameter order."""
    return np.array(
        [[complex(evaluate(value, values)) if value else 0j for value in row] for row in m.entries],
        dtype=complex,
    )
