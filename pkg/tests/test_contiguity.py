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

from pycontig.basis import find_basis
from pycontig.contiguity import (
    NAIVE,
    ContiguityOptions,
    contiguity_matrices,
    expand_class,
    expand_function,
    verify_twisted_commutation,
)
from pycontig.diff_ring import parse_monomial
from pycontig.exceptions import (
    IterationLimitError,
    RankNotReachedError,
    SingularShiftError,
)
from pycontig.fixtures import get_fixture
from pycontig.linalg import MatK, multiply, rank, row_space_equal
from pycontig.numeric import SolverOptions, critical_points, random_specialization
from pycontig.symbolic import parse_laurent

# relations of the cubic after two iterations at k = 1, as published
CUBIC_COLUMNS = ("σnu^3", "σs*σnu^2", "σs*σnu", "σs", "σs*σnu^3", "1", "σnu", "σnu^2")
CUBIC_RELATIONS = (
    ("(3*s - nu - 3)/nu", "0", "0", "0", "0", "1", "0", "0"),
    ("0", "3*s", "0", "0", "0", "0", "0", "nu - 3*s + 2"),
    ("0", "0", "1", "0", "0", "0", "(nu - 3*s + 1)/(3*s)", "0"),
    ("0", "0", "0", "1", "(3*s - nu)/nu", "0", "0", "0"),
    ("0", "0", "0", "1", "0", "(nu - 3*s)/(3*s)", "0", "0"),
)


@pytest.mark.parametrize("state", ["cubic", "m05", "line"])
def test_published_matrices(request, state):
    state = request.getfixturevalue(state)

    for name in state.fixture.matrices:
        assert state.cs.matrix(name[1:]) == state.fixture.expected_matrix(state.model, name), name
    if state.fixture.k is not None:
        assert (state.cs.k, state.cs.q_star) == (state.fixture.k, state.fixture.q_star)


def test_cubic_stabilization(cubic):
    cs = cubic.cs

    assert (cs.k, cs.q_star) == (1, 2)
    assert cs.rank_trace == ((1, 0, 2), (1, 1, 4), (1, 2, 5))
    assert len(cs.window) == 8
    assert cs.chi == 3


def test_cubic_relations(cubic):
    field = cubic.parameters
    columns = [parse_monomial(text, field) for text in CUBIC_COLUMNS]
    published = MatK(
        field, [[field.parse(text) for text in row] for row in CUBIC_RELATIONS], columns
    )

    assert rank(cubic.cs.relations) == 5
    assert row_space_equal(cubic.cs.relations, published)


def test_named_matrices(cubic, m05):
    assert list(cubic.cs.named_matrices()) == ["Cs", "Cnu"]
    assert list(m05.cs.named_matrices()) == ["Cs1", "Cs2", "Cs3", "Cnu1", "Cnu2"]
    assert cubic.cs.matrix(1) is cubic.cs.matrix("nu")


def test_raw_generators_give_the_same_matrices(cubic):
    raw = contiguity_matrices(cubic.model, cubic.basis, ContiguityOptions(generator_form="raw"))

    assert raw.matrices == cubic.cs.matrices
    assert len(raw.window) > len(cubic.cs.window)


def test_naive_variant(cubic):
    naive = contiguity_matrices(cubic.model, cubic.basis, ContiguityOptions(variant=NAIVE))

    assert naive.matrices == cubic.cs.matrices
    assert (naive.k, naive.q_star) == (2, 1)
    assert naive.rank_trace[0] == (1, 1, 4)


def test_unknown_variant(cubic):
    with pytest.raises(ValueError):
        contiguity_matrices(cubic.model, cubic.basis, ContiguityOptions(variant="other"))


def test_rank_not_reached(cubic):
    options = ContiguityOptions(k_max=1, variant=NAIVE)

    with pytest.raises(RankNotReachedError) as error:
        contiguity_matrices(cubic.model, cubic.basis, options)

    assert (error.value.rank, error.value.target) == (4, 5)


def test_iteration_limit(cubic):
    with pytest.raises(IterationLimitError):
        contiguity_matrices(cubic.model, cubic.basis, ContiguityOptions(q_max=1))


@pytest.mark.parametrize("state", ["cubic", "m05", "line"])
def test_twisted_commutation(request, state):
    state = request.getfixturevalue(state)

    assert verify_twisted_commutation(state.cs)


def test_twisted_commutation_detects_perturbation(cubic):
    cs = cubic.cs
    entries = [list(row) for row in cs.matrices[1].entries]
    entries[2][0] = entries[2][0] + cubic.parameters.one
    perturbed = MatK(cubic.parameters, entries, cs.basis, cs.basis)

    broken = dataclasses.replace(cs, matrices=(cs.matrices[0], perturbed))

    assert not verify_twisted_commutation(broken)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((0,), (3,), ("nu/(nu - 3*s + 3)", "0", "0")),
        ((1,), (0,), ("(3*s - nu)/(3*s)", "0", "0")),
        ((1,), (1,), ("0", "(3*s - nu - 1)/(3*s)", "0")),
        ((0,), (2,), ("0", "0", "1")),
        ((0,), (-1,), ("0", "0", "(nu - 3*s + 2)/(nu - 1)")),
    ],
)
def test_expand_class_cubic(cubic, a, b, expected):
    assert expand_class(a, b, cubic.cs) == [cubic.parse(text) for text in expected]


def test_expand_class_shape(cubic):
    with pytest.raises(ValueError):
        expand_class((0, 0), (1,), cubic.cs)


def test_expand_function_line(line):
    for text, expected in line.fixture.expansions:
        vector = expand_function(parse_laurent(text, line.model.variables), line.cs)

        assert vector == [line.parse(value) for value in expected], text


def test_expand_function_is_linear(cubic):
    variables = cubic.model.variables
    x3 = expand_function(parse_laurent("x^3", variables), cubic.cs)
    one = expand_function(parse_laurent("1", variables), cubic.cs)

    combined = expand_function(parse_laurent("2 - 3*x^3", variables), cubic.cs)

    assert combined == [2 * u - 3 * v for u, v in zip(one, x3)]


def test_inverse_step(cubic):
    cs = cubic.cs
    identity = MatK.identity(cubic.parameters, cs.basis)

    step = cs.inverse_step(1, (0, 0))

    assert multiply(cs.shifted(1, (0, -1)), step).entries == identity.entries
    assert cs.inverse_step(1, (0, 0)) is step


def test_singular_shift(cubic):
    cs = cubic.cs
    zero = MatK.zeros(cubic.parameters, 3, cs.basis)
    broken = dataclasses.replace(
        cs, matrices=(cs.matrices[0], MatK(cubic.parameters, zero.entries, cs.basis, cs.basis))
    )

    with pytest.raises(SingularShiftError):
        broken.inverse_step(1, (0, 0))


@pytest.mark.parametrize("name", ["bubble", "triangle"])
def test_feynman_stabilization(name):
    fixture = get_fixture(name)
    model = fixture.model()
    spec = random_specialization(model.ell, model.n, 0)
    basis = find_basis(model, critical_points(model, spec, SolverOptions()))

    cs = contiguity_matrices(model, basis)

    assert (cs.k, cs.q_star) == (fixture.k, fixture.q_star)
    assert verify_twisted_commutation(cs)


@pytest.mark.slow
def test_surface_stabilization():
    fixture = get_fixture("surface")
    model = fixture.model()

    cs = contiguity_matrices(model, fixture.basis_monomials(model))

    assert (cs.k, cs.q_star) == (2, 2)
    assert len(cs.window) - cs.chi == 14
    assert max(rank for k, _, rank in cs.rank_trace if k == 1) == 4
    assert verify_twisted_commutation(cs)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["quadric", "power50"])
def test_stretch_stabilization(name):
    fixture = get_fixture(name)
    model = fixture.model()
    spec = random_specialization(model.ell, model.n, 0)
    basis = find_basis(model, critical_points(model, spec, SolverOptions()))

    cs = contiguity_matrices(model, basis, ContiguityOptions(q_max=30))

    assert (cs.k, cs.q_star) == (fixture.k, fixture.q_star)
