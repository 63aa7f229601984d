##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Critical point solver
*********************

:module: solver

:synopsis: Solve the likelihood equations at a generic specialization,
    keep the genuine critical points and count them.

An end point of a path is a critical point when

* its residual on the cleared system is below ``tol_final``,
* the one-form itself is below ``tol_omega`` there (this rejects the
  extra solutions that clearing denominators introduces on the boundary),
* no coordinate, no f_i and not the Hessian determinant is smaller
  than ``degeneracy``.

Accepted points are sorted canonically and deduplicated at relative
distance ``dedup``.

.. currentmodule:: solver

"""
from __future__ import annotations

import concurrent.futures
import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import (
    InconsistentCountError,
    NondeterminismError,
    PathBudgetExceededError,
    PathFailureError,
)
from ..model import ModelSpec
from ..types import ComplexPair
from .homotopy import FAILED, PathResult, PathTracker, TrackerOptions
from .specialization import Specialization, random_specialization
from .system import PolySystem, clear_denominators, hessian_determinant, omega

log = logging.getLogger(__name__)


class SolverOptions(NamedTuple):
    """Tolerances and budget of the numeric solver."""

    seed: int = 0
    trials: int = 3
    tol_final: float = 1e-10
    tol_omega: float = 1e-8
    degeneracy: float = 1e-10
    dedup: float = 1e-6
    max_paths: int = 5000
    workers: int = 1
    verify_gamma: bool = False
    tracker: TrackerOptions = TrackerOptions()


class CriticalPoint(NamedTuple):
    """A nondegenerate critical point of log L."""

    coordinates: Tuple[complex, ...]
    eta: complex
    residual: float
    omega_residual: float
    f_values: Tuple[complex, ...]

    def as_pairs(self) -> List[ComplexPair]:
        """Coordinates as [re, im] pairs."""
        return [(value.real, value.imag) for value in self.coordinates]


def canonical_key(point: Sequence[complex]) -> Tuple[float, ...]:
    """Sort key of a point, rounded so that tiny noise does not reorder."""
    key = []
    for value in point:
        key.extend((round(value.real, 6), round(value.imag, 6)))
    return tuple(key)


def track_paths(
    system: PolySystem, rng: np.random.Generator, options: SolverOptions
) -> List[PathResult]:
    """Track every path of a random total degree homotopy.

    Results are returned in start point order whatever the number of
    workers.

    :raises PathBudgetExceededError: if there are more than
        ``options.max_paths`` paths
    """
    tracker = PathTracker.random(system, rng, options.tracker)
    if tracker.path_count > options.max_paths:
        raise PathBudgetExceededError(tracker.path_count, options.max_paths)
    starts = tracker.start_points()
    log.internal_info(f"tracking {len(starts)} paths with {options.workers} worker(s)")
    if options.workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=options.workers) as pool:
            return list(pool.map(tracker.track, starts, range(len(starts))))
    return [tracker.track(start, index) for index, start in enumerate(starts)]


def _accept(
    system: PolySystem, result: PathResult, options: SolverOptions
) -> Optional[CriticalPoint]:
    x = result.point
    if not np.all(np.isfinite(x)):
        return None
    model, spec = system.model, system.specialization
    with np.errstate(all="ignore"):
        residual = system.residual(x)
        if not residual < options.tol_final:
            return None
        if np.min(np.abs(x)) <= options.degeneracy:
            return None
        f_values = system.forbidden_values(x)
        if np.min(np.abs(f_values)) <= options.degeneracy:
            return None
        omega_residual = float(np.max(np.abs(omega(model, spec, x))))
        if not omega_residual < options.tol_omega:
            return None
        eta = hessian_determinant(model, spec, x)
    if not abs(eta) > options.degeneracy:
        return None
    return CriticalPoint(
        tuple(complex(v) for v in x), eta, residual, omega_residual, tuple(f_values)
    )


def deduplicate(points: Sequence[CriticalPoint], tolerance: float) -> List[CriticalPoint]:
    """Sort canonically and drop points closer than ``tolerance`` (relative)."""
    ordered = sorted(points, key=lambda p: canonical_key(p.coordinates))
    kept: List[CriticalPoint] = []
    for point in ordered:
        x = np.array(point.coordinates)
        bound = tolerance * max(1.0, np.linalg.norm(x))
        duplicate = any(
            np.linalg.norm(x - np.array(other.coordinates)) <= bound
            for other in kept
        )
        if not duplicate:
            kept.append(point)
    return kept


def _filter(
    system: PolySystem, results: Sequence[PathResult], options: SolverOptions
) -> List[CriticalPoint]:
    accepted = [point for point in (_accept(system, r, options) for r in results) if point]
    return deduplicate(accepted, options.dedup)


def solve_system(
    system: PolySystem, options: Optional[SolverOptions] = None
) -> List[CriticalPoint]:
    """All isolated critical points of the system off its forbidden locus.

    If a path fails before the end a second gamma is drawn and every
    path is tracked again. With ``options.verify_gamma`` the second run
    always happens and both counts must agree.

    :param system: cleared likelihood equations
    :param options: solver options
    :return: the critical points, canonically ordered
    :raises PathFailureError: if paths fail with both gammas
    :raises NondeterminismError: if two clean runs disagree on the count
    """
    options = options or SolverOptions()
    rng = np.random.default_rng([system.specialization.seed, 1])
    first = track_paths(system, rng, options)
    failed = sum(1 for r in first if r.status == FAILED)
    points = _filter(system, first, options)
    if not failed and not options.verify_gamma:
        return points
    if failed:
        log.internal_warning(
            f"{failed} of {len(first)} paths failed, tracking again with another gamma"
        )
    second = track_paths(system, rng, options)
    failed_again = sum(1 for r in second if r.status == FAILED)
    second_points = _filter(system, second, options)
    if failed and failed_again:
        raise PathFailureError(failed_again, len(second), "with two different gammas")
    if not failed and not failed_again and len(points) != len(second_points):
        raise NondeterminismError(len(points), len(second_points), len(second))
    return second_points if failed else points


def critical_points(
    model: ModelSpec, spec: Specialization, options: Optional[SolverOptions] = None
) -> List[CriticalPoint]:
    """Critical points of log L at a specialization."""
    return solve_system(clear_denominators(model, spec), options)


def euler_characteristic(model: ModelSpec, options: Optional[SolverOptions] = None) -> int:
    """Absolute Euler characteristic |chi(X)|, counted as critical points.

    ``options.trials`` specializations are drawn from consecutive seeds
    starting at ``options.seed``; all must give the same count.

    :raises InconsistentCountError: if the counts differ
    """
    options = options or SolverOptions()
    if options.trials < 1:
        raise ValueError(f"trials must be at least 1, got {options.trials}")
    counts = []
    for trial in range(options.trials):
        spec = random_specialization(model.ell, model.n, options.seed + trial)
        counts.append(len(critical_points(model, spec, options)))
        log.internal_info(f"trial {trial}: {counts[-1]} critical points")
    if len(set(counts)) != 1:
        raise InconsistentCountError(counts)
    return counts[0]
