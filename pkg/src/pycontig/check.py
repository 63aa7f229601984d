##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
End-to-end check
****************

:module: check

:synopsis: Run the whole pipeline on the reference models and compare
    every stage with the known data.

Stages of one fixture run in order, a failing stage skips the stages
that need its result.

.. currentmodule:: check

"""
import logging
import time
from typing import List, NamedTuple, Optional, Sequence

import numpy as np
from tabulate import tabulate

from .basis import candidate_pool, find_basis
from .contiguity import (
    ContiguityOptions,
    contiguity_matrices,
    expand_function,
    verify_twisted_commutation,
)
from .degeneration import (
    commute_exactly,
    eigen_check,
    inverse_consistent,
    multiplication_matrices,
    residue_pairing,
)
from .exceptions import PycontigError
from .fixtures import CATALOGUE, FAST, SLOW, Fixture
from .numeric import SolverOptions, critical_points, euler_characteristic, random_specialization
from .symbolic import parse_laurent

log = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIP"

RESIDUE_PAIRS = 10


class CheckResult(NamedTuple):
    """Outcome of one stage."""

    fixture: str
    stage: str
    status: str
    detail: str
    seconds: float = 0.0

    @property
    def failed(self) -> bool:
        return self.status == FAIL


class _StageFailed(Exception):
    pass


class FixtureRun:
    """Stages of one fixture, with the state they hand to each other."""

    def __init__(self, fixture: Fixture, options: SolverOptions, slow: bool) -> None:
        self.fixture = fixture
        self.options = options
        self.slow = slow
        self.results: List[CheckResult] = []
        self.model = fixture.model()
        self.spec = random_specialization(self.model.ell, self.model.n, options.seed)
        self.points = None
        self.basis = None
        self.cs = None
        self.ms = None

    def _stage(self, name: str, function) -> bool:
        start = time.perf_counter()
        try:
            detail = function()
            status = PASS
        except (PycontigError, _StageFailed) as error:
            detail, status = str(error), FAIL
        elapsed = time.perf_counter() - start
        self.results.append(CheckResult(self.fixture.name, name, status, detail, elapsed))
        log.internal_info(f"{self.fixture.name} {name}: {status} ({elapsed:.2f} s)")
        return status == PASS

    def _skip(self, name: str, reason: str) -> None:
        self.results.append(CheckResult(self.fixture.name, name, SKIPPED, reason))

    def chi(self) -> str:
        chi = euler_characteristic(self.model, self.options)
        if chi != self.fixture.chi:
            raise _StageFailed(f"chi = {chi}, expected {self.fixture.chi}")
        return f"chi = {chi} over {self.options.trials} seeds"

    def basis_stage(self) -> str:
        self.points = critical_points(self.model, self.spec, self.options)
        found = find_basis(self.model, self.points)
        expected = self.fixture.basis_monomials(self.model)
        if expected is not None and set(found) != set(expected):
            names = self.model.parameters.directions
            raise _StageFailed(
                f"basis {[m.to_string(names) for m in found]}, expected {list(self.fixture.basis)}"
            )
        self.basis = expected or found
        return f"{len(found)} elements"

    def contiguity_stage(self) -> str:
        self.cs = contiguity_matrices(self.model, self.basis, ContiguityOptions())
        expected = (self.fixture.k, self.fixture.q_star)
        if expected != (None, None) and expected != (self.cs.k, self.cs.q_star):
            raise _StageFailed(f"(k, q*) = {(self.cs.k, self.cs.q_star)}, expected {expected}")
        for name in self.fixture.matrices:
            if self.cs.matrix(name[1:]) != self.fixture.expected_matrix(self.model, name):
                raise _StageFailed(f"{name} differs from the published matrix")
        return f"k = {self.cs.k}, q* = {self.cs.q_star}"

    def twisted(self) -> str:
        if not verify_twisted_commutation(self.cs):
            raise _StageFailed("twisted commutation fails")
        return f"{len(self.cs.matrices)} matrices"

    def multiplication(self) -> str:
        self.ms = multiplication_matrices(self.cs)
        if not commute_exactly(self.ms):
            raise _StageFailed("multiplication matrices do not commute")
        if not inverse_consistent(self.ms):
            raise _StageFailed("M_f^-1 is not the inverse of f(M_x)")
        return "commuting, inverse consistent"

    def eigen(self) -> str:
        report = eigen_check(self.ms, self.points, self.spec)
        return f"mismatch {report.mismatch:.1e}, residual {report.residual:.1e}"

    def residue(self) -> str:
        rng = np.random.default_rng(self.options.seed)
        pool = candidate_pool(self.model, 2).monomials
        worst = 0.0
        for _ in range(RESIDUE_PAIRS):
            g, h = (pool[int(index)] for index in rng.integers(0, len(pool), size=2))
            pairing = residue_pairing(g, h, self.ms, self.points, self.spec)
            worst = max(
                worst,
                abs(pairing.trace_value - pairing.direct_value)
                / max(1.0, abs(pairing.direct_value)),
            )
        return f"{RESIDUE_PAIRS} pairs, worst relative gap {worst:.1e}"

    def expansion(self) -> str:
        parameters = self.model.parameters
        for text, expected in self.fixture.expansions:
            vector = expand_function(parse_laurent(text, self.model.variables), self.cs)
            if vector != [parameters.parse(value) for value in expected]:
                raise _StageFailed(f"expansion of {text} differs")
        return f"{len(self.fixture.expansions)} functions"

    def run(self) -> List[CheckResult]:
        if not self._stage("chi", self.chi):
            return self.results
        if not self._stage("basis", self.basis_stage):
            return self.results
        if self.fixture.contiguity == FAST or (self.fixture.contiguity == SLOW and self.slow):
            if self._stage("contiguity", self.contiguity_stage):
                self._stage("twisted commutation", self.twisted)
                if self._stage("multiplication", self.multiplication):
                    self._stage("eigenvalues", self.eigen)
                    self._stage("residue pairing", self.residue)
                if self.fixture.expansions:
                    self._stage("expansion", self.expansion)
        elif self.fixture.contiguity == SLOW:
            self._skip("contiguity", "needs --slow")
        return self.results


def run_checks(
    fixtures: Optional[Sequence[Fixture]] = None,
    slow: bool = False,
    options: Optional[SolverOptions] = None,
) -> List[CheckResult]:
    """Run the pipeline on every fixture.

    :param fixtures: fixtures to run, the whole catalogue by default
    :param slow: also run the stretch targets
    :param options: solver options, seed and trials included
    :return: one result per stage that ran
    """
    options = options or SolverOptions()
    results = []
    for fixture in fixtures if fixtures is not None else CATALOGUE:
        if fixture.slow and not slow:
            results.append(CheckResult(fixture.name, "all", SKIPPED, "needs --slow"))
            continue
        results.extend(FixtureRun(fixture, options, slow).run())
    return results


def render_table(results: Sequence[CheckResult]) -> str:
    rows = [
        (r.fixture, r.stage, r.status, r.detail, f"{r.seconds:.2f}") for r in results
    ]
    return tabulate(
        rows, headers=["fixture", "stage", "result", "detail", "time [s]"], tablefmt="fancy_grid"
    )
