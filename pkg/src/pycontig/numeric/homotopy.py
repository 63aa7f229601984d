##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Path tracking
*************

:module: homotopy

:synopsis: Total degree homotopy ``H = (1 - t) * gamma * S + t * F`` and a
    predictor-corrector tracker following its solution paths from t = 0
    to t = 1.

The start system is ``S_j = x_j^d_j - r_j`` with ``d_j`` the degree of
``F_j`` and random unit-modulus ``r_j``. Paths follow the Davidenko
equation ``dx/dt = -H_x^-1 * H_t`` with a fourth order Runge-Kutta
predictor and a Newton corrector. The step is halved on a failed
correction and doubled after three successful steps in a row.

.. currentmodule:: homotopy

"""
from __future__ import annotations

import cmath
import itertools
import logging
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from .system import PolySystem

log = logging.getLogger(__name__)

CONVERGED = "converged"
DIVERGED = "diverged"
TRUNCATED = "truncated"
FAILED = "failed"


class TrackerOptions(NamedTuple):
    """Step control of the path tracker."""

    initial_step: float = 0.01
    min_step: float = 1e-12
    max_step: float = 0.1
    corrector_iterations: int = 3
    corrector_tolerance: float = 1e-10
    divergence_norm: float = 1e8
    truncation_time: float = 0.999
    final_iterations: int = 25
    max_steps: int = 20000


class PathResult(NamedTuple):
    """End of a tracked path."""

    index: int
    status: str
    point: np.ndarray
    t: float
    steps: int

    @property
    def reached_end(self) -> bool:
        """True for a path that can be handed to the solution filters."""
        return self.status in (CONVERGED, TRUNCATED)


class PathTracker:
    """Track the solution paths of a total degree homotopy."""

    def __init__(
        self,
        system: PolySystem,
        gamma: complex,
        constants: Sequence[complex],
        options: Optional[TrackerOptions] = None,
    ) -> None:
        """Initialize attributes.

        :param system: target system F
        :param gamma: random unit complex number of the gamma trick
        :param constants: the r_j of the start system
        :param options: step control, defaults when None
        """
        self.system = system
        self.gamma = complex(gamma)
        self.constants = np.array(constants, dtype=complex)
        self.degrees = np.array(system.degrees, dtype=int)
        self.options = options or TrackerOptions()

    @classmethod
    def random(
        cls,
        system: PolySystem,
        rng: np.random.Generator,
        options: Optional[TrackerOptions] = None,
    ) -> PathTracker:
        """Tracker with gamma and start constants drawn from ``rng``."""
        gamma = cmath.exp(2j * cmath.pi * rng.uniform())
        constants = [cmath.exp(2j * cmath.pi * rng.uniform()) for _ in range(system.n)]
        return cls(system, gamma, constants, options)

    @property
    def path_count(self) -> int:
        return int(np.prod(self.degrees)) if len(self.degrees) else 0

    def start_points(self) -> List[np.ndarray]:
        """All solutions of the start system, in a fixed order."""
        roots = []
        for degree, constant in zip(self.degrees, self.constants):
            base = constant ** (1.0 / degree)
            roots.append([base * cmath.exp(2j * cmath.pi * k / degree) for k in range(degree)])
        return [np.array(point, dtype=complex) for point in itertools.product(*roots)]

    def _start_values(self, x: np.ndarray) -> np.ndarray:
        return x**self.degrees - self.constants

    def _start_jacobian(self, x: np.ndarray) -> np.ndarray:
        return np.diag(self.degrees * x ** (self.degrees - 1))

    def homotopy(self, x: np.ndarray, t: float) -> np.ndarray:
        return (1 - t) * self.gamma * self._start_values(x) + t * self.system.evaluate(x)

    def homotopy_jacobian(self, x: np.ndarray, t: float) -> np.ndarray:
        return (1 - t) * self.gamma * self._start_jacobian(x) + t * self.system.jacobian(x)

    def velocity(self, x: np.ndarray, t: float) -> np.ndarray:
        """dx/dt along the path through (x, t)."""
        derivative_t = self.system.evaluate(x) - self.gamma * self._start_values(x)
        return -np.linalg.solve(self.homotopy_jacobian(x, t), derivative_t)

    def predict(self, x: np.ndarray, t: float, step: float) -> np.ndarray:
        """Runge-Kutta step of the Davidenko equation."""
        k1 = self.velocity(x, t)
        k2 = self.velocity(x + step / 2 * k1, t + step / 2)
        k3 = self.velocity(x + step / 2 * k2, t + step / 2)
        k4 = self.velocity(x + step * k3, t + step)
        return x + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    def correct(self, x: np.ndarray, t: float) -> Optional[np.ndarray]:
        """Newton iterations at fixed t, None if they do not converge."""
        options = self.options
        for _ in range(options.corrector_iterations):
            delta = np.linalg.solve(self.homotopy_jacobian(x, t), self.homotopy(x, t))
            x = x - delta
            if np.linalg.norm(delta) <= options.corrector_tolerance * (1 + np.linalg.norm(x)):
                return x
        return None

    def refine(self, x: np.ndarray) -> np.ndarray:
        """Newton iterations on the target system."""
        for _ in range(self.options.final_iterations):
            try:
                delta = np.linalg.solve(self.system.jacobian(x), self.system.evaluate(x))
            except np.linalg.LinAlgError:
                break
            x = x - delta
            if not np.all(np.isfinite(x)):
                break
            if np.linalg.norm(delta) <= 1e-15 * (1 + np.linalg.norm(x)):
                break
        return x

    def track(self, start: np.ndarray, index: int = 0) -> PathResult:
        """Follow one path from t = 0 to t = 1.

        :param start: solution of the start system
        :param index: position of the path, kept in the result
        :return: end point and status of the path
        """
        options = self.options
        x = np.array(start, dtype=complex)
        t = 0.0
        step = options.initial_step
        successes = 0
        steps = 0
        while t < 1.0:
            steps += 1
            if steps > options.max_steps:
                return self._stalled(index, x, t, steps)
            target = min(1.0, t + step)
            try:
                predicted = self.predict(x, t, target - t)
                corrected = self.correct(predicted, target)
            except np.linalg.LinAlgError:
                corrected = None
            if corrected is not None and np.all(np.isfinite(corrected)):
                x, t = corrected, target
                if np.linalg.norm(x) > options.divergence_norm:
                    log.internal_debug(f"path {index} diverged at t={t:.6f}")
                    return PathResult(index, DIVERGED, x, t, steps)
                successes += 1
                if successes >= 3:
                    step = min(2 * step, options.max_step)
                    successes = 0
            else:
                step /= 2
                successes = 0
                if step < options.min_step:
                    return self._stalled(index, x, t, steps)
        x = self.refine(x)
        log.internal_debug(f"path {index} converged after {steps} steps")
        return PathResult(index, CONVERGED, x, 1.0, steps)

    def _stalled(self, index: int, x: np.ndarray, t: float, steps: int) -> PathResult:
        if np.linalg.norm(x) > self.options.divergence_norm:
            return PathResult(index, DIVERGED, x, t, steps)
        if t > self.options.truncation_time:
            log.internal_debug(f"path {index} truncated at t={t:.8f}")
            return PathResult(index, TRUNCATED, self.refine(x), t, steps)
        log.internal_debug(f"path {index} failed at t={t:.6f}")
        return PathResult(index, FAILED, x, t, steps)
