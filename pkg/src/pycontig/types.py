##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Define some recurring typing definitions
"""

import pathlib
from typing import Dict, List, Tuple, TypedDict, Union

PathType = Union[str, pathlib.Path]

#: exponent vector of a monomial
Exponent = Tuple[int, ...]

#: index of a shift direction in the parameter order s1..sl, nu1..nun
Direction = int

#: complex coordinates of a point, JSON friendly
ComplexPair = Tuple[float, float]


class ModelOptionsDict(TypedDict, total=False):
    degree: int
    max_degree: int
    expected_chi: int
    seed: int
    trials: int
    tol_final: float
    rank_tol: float
    k_max: int
    q_max: int
    max_paths: int
    generator_form: str


class ModelFileDict(TypedDict, total=False):
    schema: int
    name: str
    variables: List[str]
    polynomials: List[str]
    options: ModelOptionsDict


class ContiguityBundleDict(TypedDict):
    schema: int
    model: ModelFileDict
    parameters: List[str]
    basis: List[str]
    k: int
    q_star: int
    rank_trace: List[Tuple[int, int, int]]
    matrices: Dict[str, List[List[str]]]
