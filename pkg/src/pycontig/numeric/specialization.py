##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Parameter specialization
************************

:module: specialization

:synopsis: Random generic complex values for the parameters (s, nu).

.. currentmodule:: specialization

"""
from __future__ import annotations

from typing import NamedTuple, Tuple

import numpy as np

#: relative spread of the modulus around one
JITTER = 0.25


class Specialization(NamedTuple):
    """Complex values of the parameters, drawn from ``seed``."""

    s: Tuple[complex, ...]
    nu: Tuple[complex, ...]
    seed: int

    @property
    def values(self) -> Tuple[complex, ...]:
        """All values in parameter order (s first, then nu)."""
        return self.s + self.nu

    def shifted(self, offsets) -> Specialization:
        """Values of the parameters after ``p -> p + offsets``."""
        values = [v + o for v, o in zip(self.values, offsets)]
        ell = len(self.s)
        return Specialization(tuple(values[:ell]), tuple(values[ell:]), self.seed)


def unit_complex(rng: np.random.Generator, jitter: float = JITTER) -> complex:
    """Complex number of modulus ``1 +- jitter`` with a uniform random direction."""
    while True:
        value = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        if abs(value) > 1e-3:
            break
    modulus = 1.0 + jitter * rng.uniform(-1.0, 1.0)
    return value / abs(value) * modulus


def random_specialization(ell: int, n: int, seed: int) -> Specialization:
    """Draw a generic specialization.

    :param ell: number of s parameters
    :param n: number of nu parameters
    :param seed: seed of the generator
    :return: the specialization, reproducible from ``seed``
    """
    rng = np.random.default_rng(seed)
    s = tuple(unit_complex(rng) for _ in range(ell))
    nu = tuple(unit_complex(rng) for _ in range(n))
    return Specialization(s, nu, seed)
