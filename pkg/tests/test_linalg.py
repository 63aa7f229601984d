##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

import random

import numpy as np
import pytest

from pycontig import linalg
from pycontig.diff_ring import DiffElement, DiffMonomial
from pycontig.exceptions import SingularPivotError, SupportEscapeError
from pycontig.linalg import (
    ColumnRestriction,
    MatK,
    bareiss_rank,
    build_matrix,
    cokernel,
    evaluate_matrix,
    inverse,
    multiply,
    normalize_rows,
    rank,
    restrict_to_columns,
    row_echelon,
    row_space_equal,
    shift_matrix,
)
from pycontig.symbolic import parameter_field


@pytest.fixture
def field():
    return parameter_field(1, 1)


def matrix(field, rows, col_labels=None, row_labels=None):
    entries = [[field.parse(text) for text in row] for row in rows]
    labels = col_labels or [f"c{i}" for i in range(len(rows[0]))]
    return MatK(field, entries, labels, row_labels)


def test_shape_checks(field):
    with pytest.raises(ValueError):
        MatK(field, [[field.one]], ["a", "b"])
    with pytest.raises(ValueError):
        MatK(field, [[field.one]], ["a"], ["r1", "r2"])


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([["1", "s"], ["nu", "s*nu"]], 1),
        ([["1", "s"], ["nu", "s"]], 2),
        ([["0", "0"], ["0", "0"]], 0),
        ([["s", "nu", "1"], ["1", "1", "1"], ["s + 1", "nu + 1", "2"]], 2),
    ],
)
def test_rank(field, rows, expected):
    m = matrix(field, rows)

    assert rank(m) == expected
    assert bareiss_rank(m) == expected


def test_cokernel(field):
    m = matrix(field, [["s", "nu"], ["1", "1"], ["s + 1", "nu + 1"]])

    kernel = cokernel(m)

    assert kernel.shape == (1, 3)
    assert kernel.entries[0] == [field.one, field.one, -field.one]
    assert multiply(kernel, m).is_zero()


def test_restrict_to_columns_matches_cokernel(field):
    # rows of x0 + s*x1 + x2, x0 + nu*x1 + 2*x2 and x1 + x2
    m = matrix(
        field,
        [["1", "s", "1"], ["1", "nu", "2"], ["0", "1", "1"]],
        ["x0", "x1", "x2"],
    )

    restricted = restrict_to_columns(m, ["x1", "x2"])
    combinations = cokernel(m.select_columns(["x0"]))
    reference = multiply(combinations, m).select_columns(["x1", "x2"])

    assert restricted.col_labels == ("x1", "x2")
    assert rank(restricted) == 2
    assert row_space_equal(restricted, reference)


def test_normalize_rows(field):
    m = matrix(field, [["2", "s", "nu"], ["0", "nu", "1"]], ["a", "b", "beta"])

    normalized = normalize_rows(m, ["a", "b"])

    assert normalized.row_labels == ("a", "b")
    assert normalized.select_columns(["a", "b"]) == MatK.identity(field, ["a", "b"])
    assert normalized[0, 2] == field.parse("(nu - s/nu)/2")
    assert normalized[1, 2] == field.parse("1/nu")


def test_normalize_rows_singular(field):
    m = matrix(field, [["1", "s", "nu"], ["1", "s", "1"]], ["a", "b", "beta"])

    with pytest.raises(SingularPivotError, match="b"):
        normalize_rows(m, ["a", "b"])


def test_inverse_and_multiply(field):
    m = matrix(field, [["0", "1"], ["nu/(nu - 3*s + 3)", "0"]])

    product = multiply(m, inverse(m))

    assert product.entries == MatK.identity(field, m.col_labels).entries
    assert inverse(m)[0, 1] == field.parse("(nu - 3*s + 3)/nu")
    with pytest.raises(SingularPivotError):
        inverse(matrix(field, [["1", "s"], ["nu", "s*nu"]]))
    with pytest.raises(ValueError):
        multiply(m, matrix(field, [["1", "1"]]))


def test_transpose_and_shift(field):
    m = matrix(field, [["s", "nu"], ["1", "0"]], ["a", "b"], ["r", "t"])

    transposed = m.transpose()
    shifted = shift_matrix(m, (1, -1))

    assert transposed.col_labels == ("r", "t")
    assert transposed[0, 1] == field.one
    assert shifted[0, 0] == field.parse("s + 1")
    assert shifted[0, 1] == field.parse("nu - 1")
    assert shift_matrix(m, (0, 0)) is m


def test_row_space_equal(field):
    a = matrix(field, [["1", "s"], ["0", "1"]])
    b = matrix(field, [["1", "0"], ["nu", "1"]])
    c = matrix(field, [["1", "s"]])

    assert row_space_equal(a, b)
    assert not row_space_equal(a, c)


def test_build_matrix(cubic):
    field = cubic.parameters
    unit, shifted = DiffMonomial((0,), (0,)), DiffMonomial((0,), (1,))
    element = DiffElement(field, {unit: field.parse("nu"), shifted: field.one})

    m = build_matrix([element], [shifted, unit])

    assert m.entries == [[field.one, field.parse("nu")]]
    with pytest.raises(SupportEscapeError):
        build_matrix([element], [unit])


def test_evaluate_matrix(field):
    m = matrix(field, [["nu/(nu - 3*s + 3)", "0"], ["1", "s"]])

    numeric = evaluate_matrix(m, (1, 2))

    assert numeric.dtype == complex
    np.testing.assert_allclose(numeric, [[1, 0], [1, 1]])


def test_text(field):
    m = matrix(field, [["nu/s", "0"]], ["a", "b"])

    assert m.to_text() == "a\tb\nnu / s\t0\n"


def random_entry(rng, field, zero_share=0.25):
    """Small polynomial over the field, zero with the given probability."""
    if rng.random() < zero_share:
        return field.zero
    total = field.from_int(rng.randint(-5, 5))
    for _ in range(rng.randint(1, 2)):
        term = field.from_int(rng.randint(1, 5) * rng.choice((-1, 1)))
        for name in field.directions:
            term = term * field.gens[name] ** rng.randint(0, 1)
        total = total + term
    return total


def random_matrix(rng, field, rows, columns, inner):
    """Product of a rows x inner and an inner x columns random matrix."""
    left = MatK(
        field,
        [[random_entry(rng, field) for _ in range(inner)] for _ in range(rows)],
        [f"k{i}" for i in range(inner)],
    )
    denominator = field.parse("s + nu + 1")
    right = MatK(
        field,
        [
            [random_entry(rng, field) / denominator for _ in range(columns)]
            for _ in range(inner)
        ],
        [f"c{i}" for i in range(columns)],
    )
    return multiply(left, right)


def numeric_rank(values):
    singular = np.linalg.svd(values, compute_uv=False)
    if not singular.size or singular[0] == 0:
        return 0
    return int(np.sum(singular > 1e-9 * singular[0]))


@pytest.mark.parametrize("seed", range(4))
def test_rank_matches_numeric_rank(field, seed):
    rng = random.Random(seed)
    m = random_matrix(rng, field, 5, 4, rng.randint(1, 3))
    points = [(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)) for _ in range(3)]

    numeric = [numeric_rank(evaluate_matrix(m, point)) for point in points]

    assert max(numeric) == rank(m)
    assert rank(m) == len(row_echelon(m))


@pytest.mark.parametrize("seed", range(3))
def test_cokernel_annihilates(field, seed):
    rng = random.Random(seed)
    m = random_matrix(rng, field, 5, 3, 2)

    kernel = cokernel(m)

    assert kernel.shape[0] == 5 - rank(m)
    assert multiply(kernel, m).is_zero()


def test_rank_is_fraction_free(field, mocker):
    spy = mocker.spy(linalg, "bareiss_rank")
    m = matrix(field, [["1", "s"], ["nu", "s*nu"]])

    assert rank(m) == 1
    spy.assert_called_once_with(m)


def test_column_restriction_grows(field):
    # x0 + x1, x0 - s*x2, then x1 + s*x2 which is already in the span
    restriction = ColumnRestriction(field, ["x0", "x1", "x2"], ["x1", "x2"])

    first = restriction.add(matrix(field, [["1", "1", "0"]], ["x0", "x1", "x2"]))
    second = restriction.add(matrix(field, [["1", "0", "-s"]], ["x0", "x1", "x2"]))
    third = restriction.add(matrix(field, [["0", "1", "s"]], ["x0", "x1", "x2"]))

    assert (first, len(second), third) == ([], 1, [])
    assert len(restriction) == 1
    assert row_space_equal(restriction.matrix(), matrix(field, [["1", "s"]], ["x1", "x2"]))
    with pytest.raises(ValueError):
        restriction.add(matrix(field, [["1", "0"]], ["x0", "x1"]))


def test_restrict_to_columns_limit(field):
    m = matrix(
        field,
        [["0", "1", "0"], ["0", "0", "1"], ["0", "1", "1"], ["1", "s", "nu"]],
        ["x0", "x1", "x2"],
    )

    assert restrict_to_columns(m, ["x1", "x2"]).shape == (2, 2)
    assert restrict_to_columns(m, ["x1", "x2"], limit=1).shape == (1, 2)
    assert restrict_to_columns(m, ["x1", "x2"], limit=1).entries == [[field.one, field.zero]]
