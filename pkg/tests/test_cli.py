##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

import json
import logging

import pytest
from click.testing import CliRunner

from pycontig import __version__, cli
from pycontig.check import FAIL, PASS, CheckResult

CUBIC = ["--f", "1 - x^3", "--vars", "x"]
M05 = ["--f", "x - 1", "--f", "y - 1", "--f", "x - y", "--vars", "x,y"]


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture(autouse=True)
def drop_cli_handlers():
    """Remove the stream handlers bound to the runner's closed streams."""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_pycontig", False):
            root.removeHandler(handler)
            handler.close()


def test_version(runner):
    result = runner.invoke(cli.main, ["--version"])

    assert result.exit_code == 0
    assert __version__ in result.output


def test_chi_inline(runner):
    result = runner.invoke(cli.main, ["chi", *CUBIC])

    assert result.exit_code == cli.ExitCode.SUCCESS
    assert result.stdout.strip() == "3"


def test_chi_json(runner):
    result = runner.invoke(cli.main, ["chi", *M05, "--json"])

    data = json.loads(result.stdout)
    assert result.exit_code == 0
    assert data["chi"] == 2
    assert data["model"]["variables"] == ["x", "y"]


def test_chi_model_file(runner, model_yaml):
    result = runner.invoke(cli.main, ["chi", "--model", str(model_yaml)])

    assert result.exit_code == 0
    assert result.stdout.strip() == "3"


def test_chi_mismatch(runner):
    result = runner.invoke(cli.main, ["chi", *CUBIC, "--expect-chi", "4"])

    assert result.exit_code == cli.ExitCode.MATHEMATICAL_FAILURE
    assert result.stdout.strip() == "3"


@pytest.mark.parametrize(
    "arguments",
    [
        ["chi"],
        ["chi", "--f", "1 - x"],
        ["chi", "--vars", "x"],
        ["contiguity", "--variant", "other", *CUBIC],
    ],
)
def test_usage_errors(runner, arguments):
    result = runner.invoke(cli.main, arguments)

    assert result.exit_code == cli.ExitCode.BAD_CLI_USAGE


def test_model_and_inline_are_exclusive(runner, model_yaml):
    result = runner.invoke(cli.main, ["chi", "--model", str(model_yaml), *CUBIC])

    assert result.exit_code == cli.ExitCode.BAD_CLI_USAGE


def test_invalid_expression(runner):
    result = runner.invoke(cli.main, ["chi", "--f", "1 - y", "--vars", "x"])

    assert result.exit_code == cli.ExitCode.MATHEMATICAL_FAILURE
    assert "Unknown variable 'y'" in result.output


def test_basis(runner):
    result = runner.invoke(cli.main, ["basis", *CUBIC])

    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["1", "σnu", "σnu^2"]


def test_critical_points_out(runner, tmp_path):
    result = runner.invoke(
        cli.main, ["critical-points", *CUBIC, "--seed", "2", "--out", str(tmp_path)]
    )

    data = json.loads((tmp_path / "critical_points.json").read_text(encoding="utf-8"))
    assert result.exit_code == 0
    assert (data["seed"], data["count"]) == (2, 3)


def test_contiguity_out(runner, tmp_path, m05):
    out = tmp_path / "m05"

    result = runner.invoke(cli.main, ["contiguity", *M05, "--basis", "1,σnu1", "--out", str(out)])

    assert result.exit_code == 0
    assert sorted(path.name for path in out.iterdir()) == [
        "Cnu1.txt",
        "Cnu2.txt",
        "Cs1.txt",
        "Cs2.txt",
        "Cs3.txt",
        "contiguity.json",
    ]
    bundle = json.loads((out / "contiguity.json").read_text(encoding="utf-8"))
    assert bundle["basis"] == ["1", "σnu1"]
    expected = m05.fixture.expected_matrix(m05.model, "Cnu2")
    assert [[m05.parse(value) for value in row] for row in bundle["matrices"]["Cnu2"]] == (
        expected.entries
    )


def test_contiguity_text(runner):
    result = runner.invoke(cli.main, ["contiguity", *CUBIC, "--basis", "1,σnu,σnu^2"])

    lines = result.stdout.splitlines()
    assert result.exit_code == 0
    assert lines[0] == "k = 1, q* = 2"
    assert lines[1] == "Cs:"
    assert "Cnu:" in lines


def test_contiguity_rank_not_reached(runner):
    result = runner.invoke(
        cli.main,
        ["contiguity", *CUBIC, "--basis", "1,σnu,σnu^2", "--variant", "naive", "--k-max", "1"],
    )

    assert result.exit_code == cli.ExitCode.MATHEMATICAL_FAILURE
    assert "increase k_max" in result.output


def test_expand(runner, line):
    result = runner.invoke(cli.main, ["expand", "--f", "1 - x", "--vars", "x", "--g", "x^-1"])

    lines = result.stdout.splitlines()
    assert result.exit_code == 0
    assert lines[0] == "x^-1:"
    name, value = lines[1].strip().split("\t")
    assert name == "1"
    assert line.parse(value) == line.parse("(nu - s)/(nu - 1)")


def test_mult_matrices_check(runner):
    result = runner.invoke(
        cli.main, ["mult-matrices", *CUBIC, "--basis", "1,σnu,σnu^2", "--check"]
    )

    assert result.exit_code == 0
    assert "Ms (1/f):" in result.stdout
    assert "Mnu (x):" in result.stdout
    assert "eigenvalue mismatch" in result.output


def test_residue(runner):
    result = runner.invoke(cli.main, ["residue", *CUBIC, "--g", "x", "--h", "x^-1 + 1"])

    lines = result.stdout.splitlines()
    assert result.exit_code == 0
    assert lines[0].startswith("trace formula\t")
    assert lines[1].startswith("critical points\t")
    trace = complex(lines[0].split("\t")[1])
    direct = complex(lines[1].split("\t")[1])
    assert trace == pytest.approx(direct, rel=1e-6, abs=1e-8)


def test_check(runner, mocker):
    run_mock = mocker.patch(
        "pycontig.cli.run_checks",
        return_value=[CheckResult("cubic", "chi", PASS, "chi = 3 over 3 seeds", 0.1)],
    )

    result = runner.invoke(cli.main, ["check", "--fixture", "cubic"])

    assert result.exit_code == 0
    assert "chi = 3 over 3 seeds" in result.stdout
    fixtures, slow, options = run_mock.call_args.args
    assert [fixture.name for fixture in fixtures] == ["cubic"]
    assert slow is False
    assert options.seed == 0


def test_check_failure(runner, mocker):
    mocker.patch(
        "pycontig.cli.run_checks",
        return_value=[CheckResult("line", "basis", FAIL, "pool exhausted")],
    )

    result = runner.invoke(cli.main, ["check"])

    assert result.exit_code == cli.ExitCode.MATHEMATICAL_FAILURE


def test_check_unknown_fixture(runner):
    result = runner.invoke(cli.main, ["check", "--fixture", "nothing"])

    assert result.exit_code == cli.ExitCode.BAD_CLI_USAGE


def test_log_file(runner, tmp_path):
    log_file = tmp_path / "run.log"

    result = runner.invoke(
        cli.main, ["--log-path", str(log_file), "--log-level", "INFO", "-v", "chi", *CUBIC]
    )

    assert result.exit_code == 0
    assert log_file.is_file()
    assert "trial 0: 3 critical points" in log_file.read_text()


@pytest.mark.parametrize("model", [CUBIC, ["--f", "1 - x", "--vars", "x"]])
def test_contiguity_output_is_reproducible(runner, tmp_path, model):
    for run in ("first", "second"):
        result = runner.invoke(cli.main, ["contiguity", *model, "--out", str(tmp_path / run)])
        assert result.exit_code == 0

    first = sorted((tmp_path / "first").iterdir())
    second = sorted((tmp_path / "second").iterdir())
    assert [path.name for path in first] == [path.name for path in second]
    assert "contiguity.json" in [path.name for path in first]
    for old, new in zip(first, second):
        assert old.read_bytes() == new.read_bytes()
