##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Numeric solve
*************

:module: numeric

:synopsis: Critical points of the likelihood function by homotopy
    continuation.

.. currentmodule:: numeric

"""
from .homotopy import PathResult, PathTracker, TrackerOptions
from .solver import (
    CriticalPoint,
    SolverOptions,
    critical_points,
    deduplicate,
    euler_characteristic,
    solve_system,
    track_paths,
)
from .specialization import Specialization, random_specialization
from .system import (
    PolySystem,
    clear_denominators,
    hessian,
    hessian_determinant,
    omega,
)

__all__ = [
    "CriticalPoint",
    "PathResult",
    "PathTracker",
    "PolySystem",
    "SolverOptions",
    "Specialization",
    "TrackerOptions",
    "clear_denominators",
    "critical_points",
    "deduplicate",
    "euler_characteristic",
    "hessian",
    "hessian_determinant",
    "omega",
    "random_specialization",
    "solve_system",
    "track_paths",
]
