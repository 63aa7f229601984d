##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Result files
************

:module: export

:synopsis: Deterministic text and JSON renderings of the computed
    objects. Nothing here depends on the clock, reruns with the same
    inputs write identical bytes.

.. currentmodule:: export

"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence

from .basis import EvaluationMatrix
from .config_parser import SCHEMA_VERSION, ModelFile, dumps
from .contiguity import ContiguitySet
from .diff_ring import DiffMonomial
from .linalg import MatK
from .numeric import CriticalPoint
from .symbolic import ParameterField, format_ratfun
from .types import ContiguityBundleDict, PathType

log = logging.getLogger(__name__)


def monomial_names(parameters: ParameterField, monomials: Sequence[DiffMonomial]) -> List[str]:
    return [m.to_string(parameters.directions) for m in monomials]


def matrix_rows(m: MatK) -> List[List[str]]:
    """Entries as canonical rational function strings."""
    return [[format_ratfun(value) for value in row] for row in m.entries]


def matrix_text(m: MatK) -> str:
    return m.to_text(lambda label: label.to_string(m.parameters.directions))


def write_matrices(matrices: Dict[str, MatK], out_dir: PathType) -> List[Path]:
    """Write one ``<name>.txt`` file per matrix.

    :param matrices: matrices keyed by file stem (``Cs``, ``Cnu1``...)
    :param out_dir: target directory, created if needed
    :return: the written paths, in key order
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(matrices):
        path = out_dir / f"{name}.txt"
        path.write_text(matrix_text(matrices[name]), encoding="utf-8")
        log.internal_info(f"wrote {path}")
        written.append(path)
    return written


def contiguity_bundle(cs: ContiguitySet, model_file: ModelFile) -> ContiguityBundleDict:
    parameters = cs.parameters
    return {
        "schema": SCHEMA_VERSION,
        "model": model_file.to_dict(),
        "parameters": list(parameters.directions),
        "basis": monomial_names(parameters, cs.basis),
        "k": cs.k,
        "q_star": cs.q_star,
        "rank_trace": [list(entry) for entry in cs.rank_trace],
        "matrices": {name: matrix_rows(m) for name, m in cs.named_matrices().items()},
    }


def points_bundle(
    points: Sequence[CriticalPoint], model_file: ModelFile, seed: int
) -> Dict[str, Any]:
    return {
        "schema": SCHEMA_VERSION,
        "model": model_file.to_dict(),
        "seed": seed,
        "count": len(points),
        "points": [
            {
                "coordinates": [list(pair) for pair in point.as_pairs()],
                "eta": [point.eta.real, point.eta.imag],
                "residual": point.residual,
            }
            for point in points
        ],
    }


def basis_bundle(
    parameters: ParameterField, evaluation: EvaluationMatrix, model_file: ModelFile
) -> Dict[str, Any]:
    def pairs(array) -> List[List[List[float]]]:
        return [[[value.real, value.imag] for value in row] for row in array]

    return {
        "schema": SCHEMA_VERSION,
        "model": model_file.to_dict(),
        "basis": monomial_names(parameters, evaluation.rows),
        "evaluation": pairs(evaluation.raw),
        "normalized_evaluation": pairs(evaluation.normalized),
    }


def write_json(data: Any, path: PathType) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data), encoding="utf-8")
    log.internal_info(f"wrote {path}")
    return path
