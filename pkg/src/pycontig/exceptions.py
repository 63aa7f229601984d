##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
:module: exceptions

:synopsis: Define all custom exceptions raised by pycontig

.. currentmodule:: exceptions
"""
from typing import Sequence


class PycontigError(Exception):
    """Pycontig specific exception used as basis for all others."""

    def __str__(self):
        return self.message


class ExpressionError(PycontigError):
    """Base class of all errors raised while reading an expression."""


class ExpressionSyntaxError(ExpressionError):
    """Raised when an expression does not follow the grammar."""

    def __init__(self, text: str, position: int, reason: str) -> None:
        """Initialize attributes.

        :param text: the full expression text.
        :param position: 0-based offset of the offending character.
        :param reason: short description of what was expected.
        """
        self.text = text
        self.position = position
        self.message = (
            f"Syntax error at position {position}: {reason}\n"
            f"  {text}\n  {' ' * position}^"
        )
        super().__init__(self.message)


class UnknownVariableError(ExpressionError):
    """Raised when an expression uses a name that is not declared."""

    def __init__(self, name: str, position: int, known: Sequence[str]) -> None:
        self.name = name
        self.position = position
        self.message = (
            f"Unknown variable '{name}' at position {position}, "
            f"expected one of {list(known)}"
        )
        super().__init__(self.message)


class ExponentOverflowError(ExpressionError):
    """Raised when an exponent exceeds the supported range."""

    def __init__(self, exponent: int, limit: int) -> None:
        self.exponent = exponent
        self.message = f"Exponent {exponent} exceeds the supported bound {limit}"
        super().__init__(self.message)


class NonMonomialInverseError(ExpressionError):
    """Raised when a Laurent polynomial with several terms is inverted."""

    def __init__(self, expression: str) -> None:
        self.message = (
            f"Only monomials can be inverted in a Laurent polynomial, got '{expression}'"
        )
        super().__init__(self.message)


class UnknownParameterError(PycontigError):
    """Raised when a parameter direction does not exist in the field."""

    def __init__(self, direction, known: Sequence[str]) -> None:
        self.message = f"Unknown parameter '{direction}', expected one of {list(known)}"
        super().__init__(self.message)


class ModelError(PycontigError):
    """Raised when a model definition is inconsistent."""

    def __init__(self, reason: str) -> None:
        self.message = f"Invalid model: {reason}"
        super().__init__(self.message)


class ModelFileError(PycontigError):
    """Raised when a model file cannot be turned into a model."""

    def __init__(self, path, reason: str) -> None:
        self.path = path
        self.message = f"Invalid model file '{path}': {reason}"
        super().__init__(self.message)


class SupportEscapeError(PycontigError):
    """Raised when an element has a monomial outside of the matrix columns."""

    def __init__(self, monomial: str) -> None:
        self.monomial = monomial
        self.message = (
            f"Monomial {monomial} is not among the matrix columns, the column set is too small"
        )
        super().__init__(self.message)


class SingularPivotError(PycontigError):
    """Raised when the pivot block of a normalization is singular.

    In the contiguity computation this means that the chosen monomials
    are not a basis over the parameter field.
    """

    def __init__(self, column: str) -> None:
        self.column = column
        self.message = (
            f"Singular pivot block: no independent row left for column {column} "
            "(the basis is not independent over K)"
        )
        super().__init__(self.message)


class SingularShiftError(PycontigError):
    """Raised when a contiguity matrix cannot be inverted at a shift."""

    def __init__(self, direction: str, offsets: Sequence[int]) -> None:
        self.message = (
            f"Contiguity matrix for {direction} is singular at the parameter shift {tuple(offsets)}"
        )
        super().__init__(self.message)


class PathFailureError(PycontigError):
    """Raised when homotopy paths could not be tracked."""

    def __init__(self, failed: int, total: int, reason: str = "") -> None:
        self.failed = failed
        self.total = total
        self.message = f"{failed} of {total} homotopy paths failed" + (
            f": {reason}" if reason else ""
        )
        super().__init__(self.message)


class PathBudgetExceededError(PathFailureError):
    """Raised when the start system has more paths than allowed."""

    def __init__(self, paths: int, budget: int) -> None:
        super().__init__(
            paths, paths, f"the total degree homotopy needs {paths} paths, budget is {budget}"
        )


class NondeterminismError(PathFailureError):
    """Raised when two random gamma draws give different solution counts."""

    def __init__(self, first: int, second: int, total: int) -> None:
        self.counts = (first, second)
        super().__init__(
            abs(first - second),
            total,
            f"solution count changed from {first} to {second} with another gamma",
        )


class InconsistentCountError(PycontigError):
    """Raised when independent specializations give different counts."""

    def __init__(self, counts: Sequence[int]) -> None:
        self.counts = list(counts)
        self.message = (
            f"Critical point counts differ across specializations: {self.counts}"
        )
        super().__init__(self.message)


class PoolExhaustedError(PycontigError):
    """Raised when the candidate pool does not contain a full basis."""

    def __init__(self, found: int, chi: int, degree: int) -> None:
        self.found = found
        self.chi = chi
        self.degree = degree
        self.message = (
            f"Only {found} of {chi} basis elements found among candidates of degree "
            f"<= {degree}, increase the degree bound"
        )
        super().__init__(self.message)


class RankNotReachedError(PycontigError):
    """Raised when k exceeds its bound before the relations are complete."""

    def __init__(self, k_max: int, rank: int, target: int) -> None:
        self.rank = rank
        self.target = target
        self.message = (
            f"Rank {rank} of {target} reached with k <= {k_max}, increase k_max"
        )
        super().__init__(self.message)


class IterationLimitError(PycontigError):
    """Raised when q exceeds its bound at a fixed k."""

    def __init__(self, k: int, q_max: int, rank: int) -> None:
        self.message = f"Rank still increasing at k={k} after q_max={q_max} steps (rank {rank})"
        super().__init__(self.message)


class DeltaPoleError(PycontigError):
    """Raised when a degenerated matrix entry has a pole at delta = 0."""

    def __init__(self, direction: str, row: int, column: int) -> None:
        self.message = (
            f"Entry ({row}, {column}) of the {direction} matrix has a pole at delta=0, "
            "the basis is not constant"
        )
        super().__init__(self.message)


class EigenMismatchError(PycontigError):
    """Raised when multiplication matrix eigenvalues miss the critical points."""

    def __init__(self, direction: str, mismatch: float, tolerance: float) -> None:
        self.mismatch = mismatch
        self.message = (
            f"Eigenvalues of the {direction} multiplication matrix differ from the "
            f"critical point values by {mismatch:.3e} (tolerance {tolerance:.1e})"
        )
        super().__init__(self.message)


class SingularHessianError(PycontigError):
    """Raised when the Hessian multiplication matrix is not invertible."""

    def __init__(self, condition: float) -> None:
        self.message = f"Hessian multiplication matrix is singular (condition {condition:.3e})"
        super().__init__(self.message)


class ResidueMismatchError(PycontigError):
    """Raised when the trace formula and the critical point sum disagree."""

    def __init__(self, trace_value: complex, direct_value: complex) -> None:
        self.message = (
            f"Residue pairing mismatch: trace formula gives {trace_value}, "
            f"critical point sum gives {direct_value}"
        )
        super().__init__(self.message)
