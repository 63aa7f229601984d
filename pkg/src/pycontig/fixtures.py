##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Reference models
****************

:module: fixtures

:synopsis: Published models with their known Euler characteristics,
    bases, stabilization data and contiguity matrices.

Matrices are given row by row as rational function text in the
parameter names; they are compared after parsing, so only the value
matters, not the way it is written.

.. currentmodule:: fixtures

"""
from typing import Dict, List, NamedTuple, Optional, Tuple

from .diff_ring import MonomialSet, parse_monomial
from .linalg import MatK
from .model import ModelSpec

#: contiguity stage runs always
FAST = "fast"
#: contiguity stage runs only with --slow
SLOW = "slow"
#: no contiguity stage
SKIP = "skip"

MatrixText = Tuple[Tuple[str, ...], ...]


class Fixture(NamedTuple):
    """A model and what is known about it."""

    name: str
    variables: Tuple[str, ...]
    polynomials: Tuple[str, ...]
    chi: int
    k: Optional[int] = None
    q_star: Optional[int] = None
    basis: Optional[Tuple[str, ...]] = None
    matrices: Dict[str, MatrixText] = {}
    #: (Laurent polynomial in x, expected coordinates) pairs
    expansions: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()
    contiguity: str = FAST
    #: the Euler characteristic itself is a stretch target
    slow: bool = False

    def model(self) -> ModelSpec:
        return ModelSpec.from_strings(self.polynomials, self.variables, self.name)

    def basis_monomials(self, model: ModelSpec) -> Optional[MonomialSet]:
        if self.basis is None:
            return None
        return tuple(parse_monomial(text, model.parameters) for text in self.basis)

    def expected_matrix(self, model: ModelSpec, name: str) -> MatK:
        """Parse one of the published matrices, labeled by the published basis."""
        parameters = model.parameters
        basis = self.basis_monomials(model)
        rows = [[parameters.parse(text) for text in row] for row in self.matrices[name]]
        return MatK(parameters, rows, basis, basis)


M05_DENOMINATOR = "(nu1 - s1 - s3 + 2)*(nu1 + nu2 - s1 - s2 - s3 + 2)"
M05_DENOMINATOR_2 = "(nu2 - s2 - s3 + 1)*(nu1 + nu2 - s1 - s2 - s3 + 2)"

CATALOGUE: Tuple[Fixture, ...] = (
    Fixture(
        "line",
        ("x",),
        ("1 - x",),
        1,
        basis=("1",),
        matrices={
            "Cs": (("(s - nu)/s",),),
            "Cnu": (("nu/(nu - s + 1)",),),
        },
        expansions=(
            ("1 + x^-1", ("(2*nu - s - 1)/(nu - 1)",)),
            ("x^-1", ("(nu - s)/(nu - 1)",)),
            ("x^-2", ("(nu - s)*(nu - s - 1)/((nu - 1)*(nu - 2))",)),
        ),
    ),
    Fixture(
        "cubic",
        ("x",),
        ("1 - x^3",),
        3,
        k=1,
        q_star=2,
        basis=("1", "σnu", "σnu^2"),
        matrices={
            "Cnu": (
                ("0", "1", "0"),
                ("0", "0", "1"),
                ("nu/(nu - 3*s + 3)", "0", "0"),
            ),
            "Cs": (
                ("(3*s - nu)/(3*s)", "0", "0"),
                ("0", "(3*s - nu - 1)/(3*s)", "0"),
                ("0", "0", "(3*s - nu - 2)/(3*s)"),
            ),
        },
    ),
    Fixture(
        "m05",
        ("x", "y"),
        ("x - 1", "y - 1", "x - y"),
        2,
        k=1,
        q_star=2,
        basis=("1", "σnu1"),
        matrices={
            "Cnu1": (
                ("0", "1"),
                (
                    f"nu1*(-nu1 - nu2 + s3)/({M05_DENOMINATOR})",
                    "(nu1*(2*nu1 + 2*nu2 - 2*s1 - s2 - 3*s3 + 4) - nu2*(s1 + s3 - 2)"
                    f" + s3*(s1 + s2 + s3 - 3) - s1 - s2 + 2)/({M05_DENOMINATOR})",
                ),
            ),
            "Cnu2": (
                (
                    "(nu1 + nu2 - s3)/(nu2 - s2 - s3 + 1)",
                    "(-nu1 + s1 + s3 - 1)/(nu2 - s2 - s3 + 1)",
                ),
                (
                    f"nu1*(nu1 + nu2 - s3)/({M05_DENOMINATOR_2})",
                    f"(nu1*(-nu1 + s1 + s3 - 1) + nu2*(nu2 - s2 - s3 + 1))/({M05_DENOMINATOR_2})",
                ),
            ),
        },
    ),
    Fixture(
        "surface",
        ("x", "y"),
        ("1 + x^2 + y^3 + x^2*y^3",),
        6,
        k=2,
        q_star=2,
        basis=("1", "σnu2", "σnu2^2", "σnu1", "σnu1*σnu2", "σnu1*σnu2^2"),
        contiguity=SLOW,
    ),
    Fixture(
        "bubble",
        ("x1", "x2"),
        ("7*x1^2 + 12*x1*x2 + 3*x2^2 + x1 + x2",),
        3,
        k=1,
        q_star=2,
    ),
    Fixture(
        "triangle",
        ("x1", "x2", "x3"),
        ("2*x1*x2 - 6*x1*x3 - 8*x2*x3 + x1 + x2 + x3",),
        4,
        k=1,
        q_star=2,
    ),
    *(
        Fixture(
            f"fermat{d}",
            ("x", "y"),
            (f"x^{d} + y^{d} - 1",),
            d * d,
            contiguity=SKIP,
        )
        for d in range(2, 7)
    ),
    Fixture(
        "quadric",
        ("x1", "x2", "x3", "x4"),
        ("x1^2 + x2^2 + x3^2 + x4^2 - 1",),
        16,
        k=1,
        q_star=4,
        contiguity=SLOW,
    ),
    Fixture("fermat10", ("x", "y"), ("x^10 + y^10 - 1",), 100, contiguity=SKIP, slow=True),
    Fixture(
        "fermat_surface4",
        ("x", "y", "z"),
        ("x^4 + y^4 + z^4 - 1",),
        64,
        contiguity=SKIP,
        slow=True,
    ),
    Fixture("power50", ("x",), ("1 - x^50",), 50, k=1, q_star=25, contiguity=SLOW, slow=True),
)


def get_fixture(name: str) -> Fixture:
    """Look a fixture up by name.

    :raises KeyError: if there is no such fixture
    """
    for fixture in CATALOGUE:
        if fixture.name == name:
            return fixture
    raise KeyError(f"unknown fixture '{name}', expected one of {fixture_names()}")


def fixture_names() -> List[str]:
    return [fixture.name for fixture in CATALOGUE]
