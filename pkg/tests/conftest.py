##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

from textwrap import dedent

import pytest

from pycontig.contiguity import contiguity_matrices
from pycontig.degeneration import multiplication_matrices
from pycontig.fixtures import get_fixture
from pycontig.numeric import SolverOptions, critical_points, random_specialization


## skip slow test by default
def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: mark test as slow to run")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        # --runslow given in cli: do not skip slow tests
        return
    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


class ModelState:
    """Everything computed once per reference model."""

    def __init__(self, name: str, seed: int = 0):
        self.fixture = get_fixture(name)
        self.model = self.fixture.model()
        self.parameters = self.model.parameters
        self.basis = self.fixture.basis_monomials(self.model)
        self.spec = random_specialization(self.model.ell, self.model.n, seed)
        self._points = None
        self._cs = None
        self._ms = None

    @property
    def points(self):
        if self._points is None:
            self._points = critical_points(self.model, self.spec, SolverOptions())
        return self._points

    @property
    def cs(self):
        if self._cs is None:
            self._cs = contiguity_matrices(self.model, self.basis)
        return self._cs

    @property
    def ms(self):
        if self._ms is None:
            self._ms = multiplication_matrices(self.cs)
        return self._ms

    def parse(self, text: str):
        return self.parameters.parse(text)


@pytest.fixture(scope="session")
def cubic():
    return ModelState("cubic")


@pytest.fixture(scope="session")
def line():
    return ModelState("line")


@pytest.fixture(scope="session")
def m05():
    return ModelState("m05")


@pytest.fixture
def model_yaml(tmp_path):
    """Create a YAML model file inside tmp_dir."""
    content = dedent(
        """
        name: cubic
        variables: [x]
        polynomials: ["1 - x^3"]
        options:
          expected_chi: 3
          degree: 2
        """
    )
    path = tmp_path / "cubic.yaml"
    path.write_text(content)
    return path
