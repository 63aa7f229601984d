##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

import json

from pycontig.basis import evaluation_matrix
from pycontig.config_parser import ModelFile
from pycontig.export import (
    basis_bundle,
    contiguity_bundle,
    matrix_rows,
    matrix_text,
    points_bundle,
    write_json,
    write_matrices,
)


def test_matrix_text(cubic):
    lines = matrix_text(cubic.cs.matrix("nu")).splitlines()

    assert lines[:3] == ["1\tσnu\tσnu^2", "0\t1\t0", "0\t0\t1"]
    assert lines[3].endswith("\t0\t0")
    assert cubic.parse(lines[3].split("\t")[0]) == cubic.parse("nu/(nu - 3*s + 3)")


def test_write_matrices(tmp_path, m05):
    written = write_matrices(m05.cs.named_matrices(), tmp_path / "out")

    assert [path.name for path in written] == [
        "Cnu1.txt",
        "Cnu2.txt",
        "Cs1.txt",
        "Cs2.txt",
        "Cs3.txt",
    ]
    assert written[0].read_text(encoding="utf-8") == matrix_text(m05.cs.matrix("nu1"))


def test_contiguity_bundle(tmp_path, cubic):
    model_file = ModelFile.from_model(cubic.model)

    bundle = contiguity_bundle(cubic.cs, model_file)
    first = write_json(bundle, tmp_path / "a" / "contiguity.json").read_bytes()
    second = write_json(contiguity_bundle(cubic.cs, model_file), tmp_path / "b.json").read_bytes()

    assert first == second
    assert bundle["parameters"] == ["s", "nu"]
    assert bundle["basis"] == ["1", "σnu", "σnu^2"]
    assert (bundle["k"], bundle["q_star"]) == (1, 2)
    assert bundle["rank_trace"] == [[1, 0, 2], [1, 1, 4], [1, 2, 5]]
    assert bundle["matrices"]["Cnu"] == matrix_rows(cubic.cs.matrix("nu"))
    assert json.loads(first)["model"]["polynomials"] == ["1 - x^3"]


def test_points_bundle(cubic):
    bundle = points_bundle(cubic.points, ModelFile.from_model(cubic.model), 0)

    assert bundle["count"] == 3
    assert len(bundle["points"][0]["coordinates"]) == 1
    assert len(bundle["points"][0]["coordinates"][0]) == 2
    json.dumps(bundle)


def test_basis_bundle(cubic):
    evaluation = evaluation_matrix(cubic.model, cubic.basis, cubic.points)

    bundle = basis_bundle(cubic.parameters, evaluation, ModelFile.from_model(cubic.model))

    assert bundle["basis"] == ["1", "σnu", "σnu^2"]
    assert len(bundle["evaluation"]) == 3
    assert bundle["evaluation"][0][0] == [1.0, 0.0]
