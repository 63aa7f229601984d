##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

import pytest

from pycontig.exceptions import ExpressionError, ModelError
from pycontig.model import ModelSpec
from pycontig.symbolic import parse_laurent


def test_from_strings():
    model = ModelSpec.from_strings(["x - 1", "y - 1", "x - y"], ["x", "y"], "m05")

    assert model.n == 2
    assert model.ell == 3
    assert model.parameters.directions == ("s1", "s2", "s3", "nu1", "nu2")
    assert model.to_strings() == ["-1 + x", "-1 + y", "x - y"]
    assert str(model) == "m05: [-1 + x, -1 + y, x - y] over (x, y)"


def test_derivatives():
    model = ModelSpec.from_strings(["1 + x^2 + y^3 + x^2*y^3"], ["x", "y"])

    assert model.gradient(0) == (
        parse_laurent("2*x + 2*x*y^3", ("x", "y")),
        parse_laurent("3*y^2 + 3*x^2*y^2", ("x", "y")),
    )
    assert model.second_derivative(0, 0, 1) == parse_laurent("6*x*y^2", ("x", "y"))


@pytest.mark.parametrize(
    "polynomials, variables, message",
    [
        (["x"], [], "at least one variable"),
        ([], ["x"], "at least one polynomial"),
        (["x"], ["x", "x"], "duplicate variable"),
        (["1"], ["1x"], "not a valid variable name"),
        (["1"], ["lambda"], "not a valid variable name"),
        (["x - x"], ["x"], "polynomial 1 is zero"),
    ],
)
def test_invalid_model(polynomials, variables, message):
    with pytest.raises(ModelError, match=message):
        ModelSpec.from_strings(polynomials, variables)


def test_polynomial_over_other_variables():
    with pytest.raises(ModelError, match="polynomial 1 is over"):
        ModelSpec(("x", "y"), (parse_laurent("x", ("x",)),))


def test_expression_error_is_forwarded():
    with pytest.raises(ExpressionError):
        ModelSpec.from_strings(["1 - z"], ["x"])
