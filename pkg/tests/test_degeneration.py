##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

import dataclasses

import pytest

from pycontig.degeneration import (
    commute_exactly,
    degenerate_element,
    eigen_check,
    element_value,
    inverse_consistent,
    multiplication_matrices,
    polynomial_in_matrices,
    residue_pairing,
    scaled_value,
)
from pycontig.diff_ring import generators, parse_monomial
from pycontig.exceptions import DeltaPoleError, EigenMismatchError
from pycontig.linalg import MatK
from pycontig.symbolic import parse_laurent


def scalar(state, text):
    value = state.parse(text)
    return MatK(
        state.parameters,
        [[value if i == j else state.parameters.zero for j in range(len(state.basis))]
         for i in range(len(state.basis))],
        state.basis,
        state.basis,
    )


def test_cubic_multiplication_matrices(cubic):
    ms = cubic.ms
    m_x = ms.matrix("nu")

    assert m_x[0, 2] == cubic.parse("nu/(nu - 3*s)")
    assert m_x[1, 0] == m_x[2, 1] == cubic.parameters.one
    assert polynomial_in_matrices(parse_laurent("x^3", ("x",)), ms) == scalar(
        cubic, "nu/(nu - 3*s)"
    )
    assert ms.matrix("s") == scalar(cubic, "(3*s - nu)/(3*s)")


def test_line_multiplication_matrices(line):
    ms = line.ms

    assert ms.matrix("nu")[0, 0] == line.parse("nu/(nu - s)")
    assert ms.matrix("s")[0, 0] == line.parse("(s - nu)/s")


def test_labels(cubic, m05):
    assert [cubic.ms.generator_label(d) for d in range(2)] == ["1/f", "x"]
    assert [m05.ms.generator_label(d) for d in range(5)] == ["1/f1", "1/f2", "1/f3", "x", "y"]
    assert list(cubic.ms.named_matrices()) == ["Ms", "Mnu"]


@pytest.mark.parametrize("state", ["line", "cubic", "m05"])
def test_exact_consistency(request, state):
    ms = request.getfixturevalue(state).ms

    assert commute_exactly(ms)
    assert inverse_consistent(ms)


def test_inconsistent_inverse_detected(cubic):
    ms = cubic.ms
    broken = dataclasses.replace(ms, matrices=(scalar(cubic, "1"), ms.matrices[1]))

    assert not inverse_consistent(broken)


@pytest.mark.parametrize("state", ["line", "cubic", "m05"])
def test_eigen_check(request, state):
    state = request.getfixturevalue(state)

    report = eigen_check(state.ms, state.points, state.spec)

    assert report.mismatch < 1e-6
    assert report.residual < 1e-6
    assert set(report.per_direction) == set(state.parameters.directions)


def test_eigen_check_errors(cubic):
    with pytest.raises(ValueError):
        eigen_check(cubic.ms, cubic.points[:2], cubic.spec)

    other = cubic.spec._replace(nu=(cubic.spec.nu[0] + 0.5,))
    with pytest.raises(EigenMismatchError):
        eigen_check(cubic.ms, cubic.points, other)


@pytest.mark.parametrize(
    "g, h",
    [
        ("1", "1"),
        ("σnu", "σnu^2"),
        ("σs", "σnu^-1"),
    ],
)
def test_residue_pairing_monomials(cubic, g, h):
    pairing = residue_pairing(
        parse_monomial(g, cubic.parameters),
        parse_monomial(h, cubic.parameters),
        cubic.ms,
        cubic.points,
        cubic.spec,
    )

    assert pairing.trace_value == pytest.approx(pairing.direct_value, rel=1e-6, abs=1e-8)


def test_residue_pairing_laurent(m05):
    variables = m05.model.variables
    g = parse_laurent("x + y^-1", variables)
    h = parse_laurent("1 - x*y", variables)

    pairing = residue_pairing(g, h, m05.ms, m05.points, m05.spec)

    assert pairing.trace_value == pytest.approx(pairing.direct_value, rel=1e-6, abs=1e-8)


def test_generators_vanish_at_critical_points(cubic):
    for generator in generators(cubic.model):
        degenerate = degenerate_element(generator)

        assert not degenerate.is_zero()
        for point in cubic.points:
            assert abs(element_value(degenerate, point, cubic.spec)) < 1e-8


def test_degenerate_element_keeps_leading_part(cubic):
    _, second = generators(cubic.model)

    degenerate = degenerate_element(second)

    assert degenerate == second
    assert degenerate_element(second - second).is_zero()


def test_scaled_value_approaches_limit(cubic):
    entry = cubic.cs.matrix("nu")[2, 0]
    limit = cubic.ms.matrix("nu")[0, 2]
    values = cubic.spec.values

    close = scaled_value(entry, values, 1e-6)

    assert close == pytest.approx(scaled_value(limit, values, 1.0), rel=1e-4)


def test_delta_pole(line):
    cs = line.cs
    pole = MatK(line.parameters, [[line.parse("s")]], cs.basis, cs.basis)
    broken = dataclasses.replace(cs, matrices=(pole, cs.matrices[1]))

    with pytest.raises(DeltaPoleError, match="s matrix"):
        multiplication_matrices(broken)
