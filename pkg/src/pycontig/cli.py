##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Contiguity matrices command line
********************************

:module: cli

:synopsis: Entry point of pycontig.

Results go to stdout or to ``--out DIR``, logs to stderr. Exit code 0
on success, 1 when the mathematics fails (pool exhausted, singular
pivot, failed paths...), 2 on a usage error.

.. currentmodule:: cli

"""
import enum
import functools
import logging
import re
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import click
from tabulate import tabulate

from . import __version__
from .basis import BasisOptions, evaluation_matrix, find_basis
from .check import render_table, run_checks
from .config_parser import ModelFile, dumps, merge_options, parse_model_file
from .contiguity import (
    IMPROVED,
    NAIVE,
    ContiguityOptions,
    ContiguitySet,
    contiguity_matrices,
    expand_function,
)
from .degeneration import eigen_check, multiplication_matrices, residue_pairing
from .diff_ring import MonomialSet, parse_monomial
from .exceptions import PycontigError
from .export import (
    basis_bundle,
    contiguity_bundle,
    matrix_text,
    monomial_names,
    points_bundle,
    write_json,
    write_matrices,
)
from .fixtures import get_fixture
from .logging_initializer import initialize_logging
from .model import ModelSpec
from .numeric import (
    CriticalPoint,
    SolverOptions,
    Specialization,
    critical_points,
    euler_characteristic,
    random_specialization,
)
from .symbolic import format_ratfun, parse_laurent
from .types import PathType

log = logging.getLogger(__name__)


class ExitCode(enum.IntEnum):
    """List of possible exit codes"""

    SUCCESS = 0
    MATHEMATICAL_FAILURE = 1
    BAD_CLI_USAGE = 2


def handle_errors(command: Callable) -> Callable:
    """Turn library errors into a diagnostic and exit code 1."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except PycontigError as error:
            click.echo(f"Error: {error}", err=True)
            sys.exit(ExitCode.MATHEMATICAL_FAILURE)

    return wrapper


def split_names(text: str) -> Tuple[str, ...]:
    return tuple(name for name in re.split(r"[,\s]+", text) if name)


def load_model_file(
    model: Optional[PathType], f: Tuple[str, ...], variables: Optional[str]
) -> ModelFile:
    """Model from ``--model`` or from ``--f`` and ``--vars``.

    :raises click.UsageError: unless exactly one source is given
    """
    if model and f:
        raise click.UsageError("--model and --f are mutually exclusive")
    if model:
        return parse_model_file(model)
    if not f:
        raise click.UsageError("a model is required, use --model or --f/--vars")
    if not variables:
        raise click.UsageError("--f needs --vars")
    names = split_names(variables)
    ModelSpec.from_strings(f, names)
    return ModelFile("model", names, tuple(f))


def model_options(command: Callable) -> Callable:
    """Options selecting the model and the numeric solve."""
    options = [
        click.option(
            "-m",
            "--model",
            type=click.Path(exists=True, dir_okay=False, readable=True),
            help="model file (YAML or JSON)",
        ),
        click.option(
            "--f",
            "f",
            multiple=True,
            help="polynomial of an inline model, repeat for several",
        ),
        click.option("--vars", "variables", help="variables of an inline model, e.g. 'x,y'"),
        click.option("--seed", type=int, default=None, help="seed of the specialization"),
        click.option("--trials", type=int, default=None, help="seeds used to count chi"),
        click.option("--tol-final", type=float, default=None, help="end point residual bound"),
        click.option("--max-paths", type=int, default=None, help="homotopy path budget"),
        click.option(
            "--workers", type=int, default=1, show_default=True, help="path tracking threads"
        ),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def output_options(command: Callable) -> Callable:
    command = click.option(
        "--json", "as_json", is_flag=True, help="print JSON instead of text"
    )(command)
    return click.option(
        "-o", "--out", type=click.Path(file_okay=False, writable=True), help="output directory"
    )(command)


def contiguity_options(command: Callable) -> Callable:
    options = [
        click.option("--basis", "basis_text", help="basis monomials, e.g. '1,σnu,σnu^2'"),
        click.option("--degree", type=int, default=None, help="initial degree of the basis pool"),
        click.option("--k-max", type=int, default=None, help="largest number of plus steps"),
        click.option("--q-max", type=int, default=None, help="largest number of iterations"),
        click.option(
            "--generator-form",
            type=click.Choice(["anchored", "raw"]),
            default=None,
            help="shape of the generators of J",
        ),
        click.option(
            "--variant",
            type=click.Choice([IMPROVED, NAIVE]),
            default=IMPROVED,
            show_default=True,
            help="saturation loop",
        ),
    ]
    for option in reversed(options):
        command = option(command)
    return command


class Session:
    """Pipeline state of one command, computed on demand."""

    def __init__(self, model_file: ModelFile, settings: Dict[str, Any]) -> None:
        self.model_file = model_file
        self.model = model_file.to_model()
        self.settings = merge_options(model_file, settings)
        self._points: Optional[List[CriticalPoint]] = None
        self._basis: Optional[MonomialSet] = None

    @property
    def seed(self) -> int:
        return self.settings.get("seed", 0)

    @property
    def solver_options(self) -> SolverOptions:
        defaults = SolverOptions()
        return defaults._replace(
            seed=self.seed,
            trials=self.settings.get("trials", defaults.trials),
            tol_final=self.settings.get("tol_final", defaults.tol_final),
            max_paths=self.settings.get("max_paths", defaults.max_paths),
            workers=self.settings.get("workers", defaults.workers),
        )

    @property
    def specialization(self) -> Specialization:
        return random_specialization(self.model.ell, self.model.n, self.seed)

    def points(self) -> List[CriticalPoint]:
        if self._points is None:
            self._points = critical_points(self.model, self.specialization, self.solver_options)
        return self._points

    def basis(self, basis_text: Optional[str] = None) -> MonomialSet:
        if basis_text:
            return tuple(
                parse_monomial(text, self.model.parameters)
                for text in basis_text.split(",")
                if text.strip()
            )
        if self._basis is None:
            defaults = BasisOptions()
            options = defaults._replace(
                degree=self.settings.get("degree", defaults.degree),
                max_degree=self.settings.get("max_degree", defaults.max_degree),
                rank_tol=self.settings.get("rank_tol", defaults.rank_tol),
            )
            self._basis = find_basis(self.model, self.points(), options)
        return self._basis

    def contiguity(self, basis_text: Optional[str], variant: str) -> ContiguitySet:
        defaults = ContiguityOptions()
        options = ContiguityOptions(
            k_max=self.settings.get("k_max", defaults.k_max),
            q_max=self.settings.get("q_max", defaults.q_max),
            generator_form=self.settings.get("generator_form", defaults.generator_form),
            variant=variant,
        )
        return contiguity_matrices(self.model, self.basis(basis_text), options)


def make_session(
    model: Optional[PathType],
    f: Tuple[str, ...],
    variables: Optional[str],
    **settings: Any,
) -> Session:
    return Session(load_model_file(model, f, variables), settings)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "-l",
    "--log-path",
    required=False,
    default=None,
    type=click.Path(writable=True),
    help="path to log-file or folder, logs always go to STDERR too",
)
@click.option(
    "--log-level",
    required=False,
    default="WARNING",
    type=click.Choice(
        "DEBUG INFO WARNING ERROR".split(" "),
        case_sensitive=False,
    ),
    help="set the verbosity of the logging",
)
@click.option(
    "-v",
    "--verbose",
    is_flag=True,
    required=False,
    help="show the progress of the computations",
)
@click.version_option(__version__)
@click.pass_context
def main(
    click_context: click.Context,
    log_path: Optional[PathType] = None,
    log_level: str = "WARNING",
    verbose: bool = False,
) -> None:
    """Contiguity matrices of twisted cohomology on very affine varieties.

    \f
    :param click_context: click context
    :param log_path: path to a log file or a directory for dated log files
    :param log_level: any of DEBUG, INFO, WARNING, ERROR
    :param verbose: activate the internal progress logs
    """
    click_context.ensure_object(dict)
    initialize_logging(log_path, log_level.upper(), verbose, click_context.invoked_subcommand)


@main.command("chi")
@model_options
@click.option("--expect-chi", type=int, default=None, help="fail unless chi has this value")
@click.option("--json", "as_json", is_flag=True, help="print JSON instead of text")
@handle_errors
def chi_command(expect_chi: Optional[int], as_json: bool, **kwargs) -> None:
    """Euler characteristic, counted as critical points over several seeds."""
    session = make_session(**kwargs)
    chi = euler_characteristic(session.model, session.solver_options)
    expected = expect_chi if expect_chi is not None else session.settings.get("expected_chi")
    if as_json:
        data = {"schema": 1, "model": session.model_file.to_dict(), "chi": chi}
        click.echo(dumps(data), nl=False)
    else:
        click.echo(chi)
    if expected is not None and chi != expected:
        click.echo(f"Error: chi = {chi}, expected {expected}", err=True)
        sys.exit(ExitCode.MATHEMATICAL_FAILURE)


@main.command("critical-points")
@model_options
@output_options
@handle_errors
def critical_points_command(out: Optional[str], as_json: bool, **kwargs) -> None:
    """Critical points of log L at the specialization of the seed."""
    session = make_session(**kwargs)
    points = session.points()
    bundle = points_bundle(points, session.model_file, session.seed)
    if out:
        write_json(bundle, Path(out) / "critical_points.json")
    elif as_json:
        click.echo(dumps(bundle), nl=False)
    else:
        rows = [
            [f"{value:.10g}" for value in point.coordinates] + [f"{point.eta:.6g}"]
            for point in points
        ]
        headers = list(session.model.variables) + ["eta"]
        click.echo(tabulate(rows, headers=headers, tablefmt="plain"))


@main.command("basis")
@model_options
@output_options
@click.option("--degree", type=int, default=None, help="initial degree of the basis pool")
@handle_errors
def basis_command(out: Optional[str], as_json: bool, degree: Optional[int], **kwargs) -> None:
    """Basis of the cohomology selected at the critical points."""
    session = make_session(degree=degree, **kwargs)
    basis = session.basis()
    names = monomial_names(session.model.parameters, basis)
    bundle = basis_bundle(
        session.model.parameters,
        evaluation_matrix(session.model, basis, session.points()),
        session.model_file,
    )
    if out:
        write_json(bundle, Path(out) / "basis.json")
    elif as_json:
        click.echo(dumps(bundle), nl=False)
    else:
        click.echo("\n".join(names))


@main.command("contiguity")
@model_options
@output_options
@contiguity_options
@handle_errors
def contiguity_command(
    out: Optional[str], as_json: bool, basis_text: Optional[str], variant: str, **kwargs
) -> None:
    """Contiguity matrices of every shift direction."""
    session = make_session(**kwargs)
    cs = session.contiguity(basis_text, variant)
    bundle = contiguity_bundle(cs, session.model_file)
    if out:
        write_matrices(cs.named_matrices(), out)
        write_json(bundle, Path(out) / "contiguity.json")
    elif as_json:
        click.echo(dumps(bundle), nl=False)
    else:
        click.echo(f"k = {cs.k}, q* = {cs.q_star}")
        for name, matrix in cs.named_matrices().items():
            click.echo(f"{name}:")
            click.echo(matrix_text(matrix), nl=False)


@main.command("expand")
@model_options
@contiguity_options
@click.option(
    "--g",
    "functions",
    multiple=True,
    required=True,
    help="Laurent polynomial in the variables to expand, e.g. '1 + x^-1'",
)
@handle_errors
def expand_command(
    functions: Tuple[str, ...], basis_text: Optional[str], variant: str, **kwargs
) -> None:
    """Coordinates of the classes of g dx/x in the basis."""
    session = make_session(**kwargs)
    cs = session.contiguity(basis_text, variant)
    names = monomial_names(cs.parameters, cs.basis)
    for text in functions:
        vector = expand_function(parse_laurent(text, session.model.variables), cs)
        click.echo(f"{text}:")
        for name, value in zip(names, vector):
            click.echo(f"  {name}\t{format_ratfun(value)}")


@main.command("mult-matrices")
@model_options
@output_options
@contiguity_options
@click.option("--check", "run_check", is_flag=True, help="compare eigenvalues with critical points")
@handle_errors
def mult_matrices_command(
    out: Optional[str],
    as_json: bool,
    basis_text: Optional[str],
    variant: str,
    run_check: bool,
    **kwargs,
) -> None:
    """Multiplication matrices of the likelihood quotient."""
    session = make_session(**kwargs)
    ms = multiplication_matrices(session.contiguity(basis_text, variant))
    matrices = ms.named_matrices()
    if out:
        write_matrices(matrices, out)
    elif as_json:
        click.echo(
            dumps(
                {
                    "schema": 1,
                    "model": session.model_file.to_dict(),
                    "basis": monomial_names(ms.parameters, ms.basis),
                    "matrices": {
                        name: [[format_ratfun(v) for v in row] for row in m.entries]
                        for name, m in matrices.items()
                    },
                }
            ),
            nl=False,
        )
    else:
        for direction, (name, matrix) in enumerate(matrices.items()):
            click.echo(f"{name} ({ms.generator_label(direction)}):")
            click.echo(matrix_text(matrix), nl=False)
    if run_check:
        report = eigen_check(ms, session.points(), session.specialization)
        click.echo(
            f"eigenvalue mismatch {report.mismatch:.3e}, "
            f"eigenvector residual {report.residual:.3e}",
            err=True,
        )


@main.command("residue")
@model_options
@contiguity_options
@click.option("--g", "g_text", default="1", show_default=True, help="first function")
@click.option("--h", "h_text", default="1", show_default=True, help="second function")
@handle_errors
def residue_command(
    g_text: str, h_text: str, basis_text: Optional[str], variant: str, **kwargs
) -> None:
    """Residue pairing of two Laurent polynomials, by trace and by summation."""
    session = make_session(**kwargs)
    ms = multiplication_matrices(session.contiguity(basis_text, variant))
    variables = session.model.variables
    pairing = residue_pairing(
        parse_laurent(g_text, variables),
        parse_laurent(h_text, variables),
        ms,
        session.points(),
        session.specialization,
    )
    click.echo(f"trace formula\t{pairing.trace_value:.12g}")
    click.echo(f"critical points\t{pairing.direct_value:.12g}")


@main.command("check")
@click.option("--fixture", "names", multiple=True, help="run only these fixtures")
@click.option("--slow", is_flag=True, help="also run the stretch targets")
@click.option("--seed", type=int, default=0, show_default=True, help="first seed")
@handle_errors
def check_command(names: Tuple[str, ...], slow: bool, seed: int) -> None:
    """Run the reference models through the whole pipeline."""
    try:
        fixtures = [get_fixture(name) for name in names] if names else None
    except KeyError as error:
        raise click.BadParameter(str(error.args[0]), param_hint="--fixture")
    results = run_checks(fixtures, slow, SolverOptions(seed=seed))
    click.echo(render_table(results))
    if any(result.failed for result in results):
        sys.exit(ExitCode.MATHEMATICAL_FAILURE)
