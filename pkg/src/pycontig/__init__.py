##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
pycontig - contiguity matrices of twisted cohomology.
*****************************************************

:module: pycontig

:synopsis: ``pycontig`` computes the contiguity matrices of the twisted
    cohomology of a very affine variety and their degeneration to the
    likelihood quotient.

Coefficients of the models are rational numbers.

.. currentmodule:: pycontig

"""
from importlib import metadata

# get version from package metadata to automatically set the version dunder
__version__ = metadata.version(__name__)

from . import logging_initializer

logging_initializer.add_internal_log_levels()

from .basis import find_basis, select_basis
from .contiguity import (
    ContiguityOptions,
    ContiguitySet,
    contiguity_matrices,
    expand_class,
    expand_function,
    verify_twisted_commutation,
)
from .degeneration import (
    MultiplicationSet,
    eigen_check,
    multiplication_matrices,
    residue_pairing,
)
from .diff_ring import DiffElement, DiffMonomial, generators, j_generators
from .exceptions import PycontigError
from .model import ModelSpec
from .numeric import critical_points, euler_characteristic, random_specialization
