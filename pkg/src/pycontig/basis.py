##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Basis selection
***************

:module: basis

:synopsis: Choose monomials ``f^-a * x^b`` whose values at the critical
    points are linearly independent. Such a set is a basis of the
    likelihood quotient and, read as ``sigma_s^a * sigma_nu^b``, of the
    twisted cohomology.

Candidates are tried in pool order and kept when they raise the
numerical rank of the evaluation matrix. The pool is graded by total
degree and within a degree prefers pure ``x`` monomials, so the bases
found are sparse in ``f^-1``.

.. currentmodule:: basis

"""
from __future__ import annotations

import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .diff_ring import DiffMonomial, MonomialSet, exponent_combinations
from .exceptions import PoolExhaustedError
from .model import ModelSpec
from .numeric import CriticalPoint

log = logging.getLogger(__name__)


class BasisOptions(NamedTuple):
    """Pool size and rank tolerance of the basis search."""

    degree: int = 3
    max_degree: int = 60
    rank_tol: float = 1e-8


def pool_key(monomial: DiffMonomial) -> Tuple:
    """Order inside the pool: degree, f-inverse degree, then lexicographic."""
    return (
        monomial.degree,
        sum(monomial.a),
        tuple(-e for e in monomial.b),
        tuple(-e for e in monomial.a),
    )


class CandidatePool(NamedTuple):
    """Candidate monomials ``f^-a * x^b`` with ``|a| + |b| <= degree``."""

    degree: int
    monomials: MonomialSet

    def __len__(self) -> int:
        return len(self.monomials)


def candidate_pool(model: ModelSpec, degree: int) -> CandidatePool:
    """Build the pool of a model up to ``degree``."""
    if degree < 0:
        raise ValueError(f"degree must be non-negative, got {degree}")
    dimension = model.ell + model.n
    monomials = [
        DiffMonomial.from_exponent(exponent, model.ell)
        for total in range(degree + 1)
        for exponent in exponent_combinations(dimension, total)
    ]
    return CandidatePool(degree, tuple(sorted(monomials, key=pool_key)))


def evaluate_monomial(
    monomial: DiffMonomial, point: CriticalPoint, model: Optional[ModelSpec] = None
) -> complex:
    """Value of ``f^-a * x^b`` at a critical point.

    :param monomial: exponents (a, b)
    :param point: critical point carrying its coordinates and f values
    :param model: when given, the exponent lengths are checked against it
    """
    if model is not None and (len(monomial.a), len(monomial.b)) != (model.ell, model.n):
        raise ValueError(f"monomial {monomial} does not fit {model.name}")
    value = 1 + 0j
    for f_value, power in zip(point.f_values, monomial.a):
        if power:
            value *= f_value ** (-power)
    for coordinate, power in zip(point.coordinates, monomial.b):
        if power:
            value *= coordinate**power
    return value


def evaluation_row(
    monomial: DiffMonomial, points: Sequence[CriticalPoint], model: Optional[ModelSpec] = None
) -> np.ndarray:
    return np.array([evaluate_monomial(monomial, p, model) for p in points], dtype=complex)


class _RankTracker:
    """Incremental Gram-Schmidt test of numerical independence."""

    def __init__(self, tolerance: float) -> None:
        self.tolerance = tolerance
        self.basis: List[np.ndarray] = []

    def try_add(self, row: np.ndarray) -> bool:
        norm = np.linalg.norm(row)
        if norm == 0:
            return False
        residual = row / norm
        # two passes keep the residual orthogonal in floating point
        for _ in range(2):
            for vector in self.basis:
                residual = residual - np.vdot(vector, residual) * vector
        remaining = np.linalg.norm(residual)
        if remaining <= self.tolerance:
            return False
        self.basis.append(residual / remaining)
        return True


def lex_key(monomial: DiffMonomial) -> Tuple:
    return monomial.a + monomial.b


def select_basis(
    model: ModelSpec,
    pool: CandidatePool,
    points: Sequence[CriticalPoint],
    rank_tol: float = 1e-8,
) -> MonomialSet:
    """Greedy maximal independent subset of the pool.

    :param model: model the pool was built for
    :param pool: candidates in pool order
    :param points: all critical points at one specialization
    :param rank_tol: relative residual below which a row is dependent
    :return: the selected monomials sorted lexicographically on (a, b),
        at most ``len(points)`` of them
    """
    chi = len(points)
    if pool.monomials and len(pool.monomials[0].exponent) != model.ell + model.n:
        raise ValueError(f"pool does not match {model.name}")
    tracker = _RankTracker(rank_tol)
    selected = []
    for monomial in pool.monomials:
        if len(selected) == chi:
            break
        if tracker.try_add(evaluation_row(monomial, points)):
            selected.append(monomial)
    return tuple(sorted(selected, key=lex_key))


def find_basis(
    model: ModelSpec,
    points: Sequence[CriticalPoint],
    options: Optional[BasisOptions] = None,
) -> MonomialSet:
    """Select a basis, enlarging the pool until it has ``len(points)`` elements.

    :raises PoolExhaustedError: if ``options.max_degree`` is not enough
    """
    options = options or BasisOptions()
    chi = len(points)
    found: MonomialSet = ()
    for degree in range(options.degree, max(options.degree, options.max_degree) + 1):
        found = select_basis(
            model, candidate_pool(model, degree), points, options.rank_tol
        )
        log.internal_info(f"pool of degree {degree}: {len(found)} of {chi} basis elements")
        if len(found) == chi:
            return found
    raise PoolExhaustedError(len(found), chi, options.max_degree)


class EvaluationMatrix(NamedTuple):
    """Values of the basis at the critical points."""

    rows: MonomialSet
    raw: np.ndarray
    normalized: np.ndarray

    def smallest_singular_value(self) -> float:
        return float(np.linalg.svd(self.normalized, compute_uv=False).min())


def evaluation_matrix(
    model: ModelSpec, basis: Sequence[DiffMonomial], points: Sequence[CriticalPoint]
) -> EvaluationMatrix:
    """Evaluation pairing ``beta_i(x_j)`` and its normalization by ``sqrt(eta_j)``."""
    raw = np.array([evaluation_row(m, points, model) for m in basis], dtype=complex).reshape(
        len(basis), len(points)
    )
    scale = np.sqrt(np.array([p.eta for p in points], dtype=complex))
    return EvaluationMatrix(tuple(basis), raw, raw / scale[None, :])
