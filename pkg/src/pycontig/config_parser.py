##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Model File Parser
*****************

:module: config_parser

:synopsis: Load, validate and write model files.

A model file is YAML or JSON::

    name: cubic
    variables: [x]
    polynomials: ["1 - x^3"]
    options:
      expected_chi: 3
      seed: ENV{PYCONTIG_SEED=0}

Models are always written back as JSON with a ``schema`` field.

.. currentmodule:: config_parser

"""
import json
import logging
import os
import re
from dataclasses import dataclass, field
from io import TextIOBase
from pathlib import Path
from typing import Any, Dict, Optional, TextIO, Tuple, Union

import yaml

from .exceptions import ExpressionError, ModelError, ModelFileError
from .model import ModelSpec
from .types import ModelFileDict, ModelOptionsDict, PathType

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

MODEL_KEYS = ("schema", "name", "variables", "polynomials", "options")

#: accepted options and their types
OPTION_TYPES = {
    "degree": int,
    "max_degree": int,
    "expected_chi": int,
    "seed": int,
    "trials": int,
    "tol_final": float,
    "rank_tol": float,
    "k_max": int,
    "q_max": int,
    "max_paths": int,
    "generator_form": str,
}


class YamlLoader(yaml.SafeLoader):
    """Extension of yaml.SafeLoader with an !include tag and environment
    variable substitution, both resolved at load time.
    """

    env_var_pattern = re.compile(r"ENV{(\w+)(=(.+))?}")

    def __init__(self, file: Union[TextIO, PathType]):
        """Initialize attributes.

        For usage with yaml.load, the passed stream must be a path to the
        file or an opened file, not its content.

        :param file: path to the file to load
        """
        if isinstance(file, TextIOBase):
            file = file.name
        model_file = Path(file).resolve()
        self._base_dir = model_file.parent
        super().__init__(model_file.read_text())

    @staticmethod
    def is_key(node: yaml.nodes.ScalarNode) -> bool:
        """Detect if the provided ScalarNode is a key or a value.

        :param node: ScalarNode instance in use.

        :return: True if the node is a key otherwise False.
        """
        buffer = node.end_mark.buffer
        if buffer is None or node.end_mark.pointer >= len(buffer):
            return False
        rest = buffer[node.end_mark.pointer :].lstrip(" \"'")
        return rest.startswith(":")

    def include(self, node: yaml.nodes.ScalarNode) -> Any:
        """Return the content of a file identified by the !include tag.

        :param node: ScalarNode currently in use

        :return: content of the included file
        """
        nested = (self._base_dir / Path(node.value)).resolve()
        return yaml.load(nested, Loader=YamlLoader)

    def parse_env_var(self, node: yaml.nodes.ScalarNode) -> Union[str, int, bool]:
        """Parse an environment variable marked as `ENV{env_name=default}`
        and cast its value if it is an integer or a boolean.

        :param node: ScalarNode currently in use.

        :return: the value of the variable, its default, or the node's
            value as a string when there is no marker

        :raises ValueError: if the environment variable could not be
            found and no default value was specified.
        """
        if YamlLoader.is_key(node):
            return str(node.value)
        match = re.findall(self.env_var_pattern, node.value)
        if not match:
            return str(node.value)
        env_name, _, env_default = match[0]
        if env_name in os.environ:
            env = os.environ[env_name]
        elif env_default:
            env = env_default
        else:
            raise ValueError(
                f"Environment variable {env_name} not found and no default value specified"
            )
        if re.fullmatch(r"-?\d+", env):
            value = int(env)
        elif env.lower() in ("true", "false"):
            value = env.lower() == "true"
        else:
            value = env
        log.debug(f"Replaced environment variable {env_name} with {value}")
        return value


YamlLoader.add_constructor("!include", YamlLoader.include)
YamlLoader.add_constructor(YamlLoader.DEFAULT_SCALAR_TAG, YamlLoader.parse_env_var)


@dataclass(frozen=True)
class ModelFile:
    """Content of a model file."""

    #: label of the model
    name: str
    #: torus variable names
    variables: Tuple[str, ...]
    #: expression strings of the f_i
    polynomials: Tuple[str, ...]
    #: typed options, see OPTION_TYPES
    options: Dict[str, Any] = field(default_factory=dict)

    def to_model(self) -> ModelSpec:
        """Parse the expressions into a validated model."""
        return ModelSpec.from_strings(self.polynomials, self.variables, self.name)

    def option(self, key: str, default: Any = None) -> Any:
        return self.options.get(key, default)

    def to_dict(self) -> ModelFileDict:
        return {
            "schema": SCHEMA_VERSION,
            "name": self.name,
            "variables": list(self.variables),
            "polynomials": list(self.polynomials),
            "options": dict(self.options),
        }

    @classmethod
    def from_model(
        cls, model: ModelSpec, options: Optional[ModelOptionsDict] = None
    ) -> "ModelFile":
        """Model file holding the canonical text of a model."""
        return cls(model.name, model.variables, tuple(model.to_strings()), dict(options or {}))


def _coerce_options(options: Any, source: PathType) -> Dict[str, Any]:
    if options is None:
        return {}
    if not isinstance(options, dict):
        raise ModelFileError(source, "'options' must be a mapping")
    coerced = {}
    for key, value in options.items():
        if key not in OPTION_TYPES:
            raise ModelFileError(
                source, f"unknown option '{key}', expected one of {sorted(OPTION_TYPES)}"
            )
        expected = OPTION_TYPES[key]
        if isinstance(value, bool) and expected is not bool:
            raise ModelFileError(source, f"option '{key}' must be of type {expected.__name__}")
        try:
            coerced[key] = expected(value)
        except (TypeError, ValueError):
            raise ModelFileError(
                source, f"option '{key}' must be of type {expected.__name__}, got {value!r}"
            )
    return coerced


def _string_list(data: Dict[str, Any], key: str, source: PathType) -> Tuple[str, ...]:
    value = data.get(key)
    if not isinstance(value, list) or not value:
        raise ModelFileError(source, f"'{key}' must be a non-empty list")
    if not all(isinstance(item, (str, int)) and not isinstance(item, bool) for item in value):
        raise ModelFileError(source, f"'{key}' must only hold strings")
    return tuple(str(item) for item in value)


def model_file_from_dict(data: Any, source: PathType = "<memory>") -> ModelFile:
    """Validate a loaded mapping.

    :param data: loaded content
    :param source: origin used in error messages
    :return: the model file, its expressions already checked
    :raises ModelFileError: if a key is unknown, missing or mistyped, or
        the model does not parse
    """
    if not isinstance(data, dict):
        raise ModelFileError(source, "top level must be a mapping")
    unknown = sorted(set(data) - set(MODEL_KEYS))
    if unknown:
        raise ModelFileError(source, f"unknown keys {unknown}, expected {list(MODEL_KEYS)}")
    schema = data.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise ModelFileError(source, f"unsupported schema {schema}")
    model_file = ModelFile(
        str(data.get("name", Path(str(source)).stem)),
        _string_list(data, "variables", source),
        _string_list(data, "polynomials", source),
        _coerce_options(data.get("options"), source),
    )
    try:
        model_file.to_model()
    except (ExpressionError, ModelError) as error:
        raise ModelFileError(source, str(error))
    return model_file


def parse_model_file(file_name: PathType) -> ModelFile:
    """Load and validate a model file.

    .. note::
        The parsing includes:
        * Replacing values enclosed in `ENV{}` by their environment variable
          or their default value, with int and bool casting
        * Including the files marked by the !include tag, relative to the
          model file.

    :param file_name: path to the model file
    :return: the validated model file
    :raises ModelFileError: if the file cannot be read or is invalid
    """
    path = Path(file_name)
    if not path.is_file():
        raise ModelFileError(path, "no such file")
    try:
        with open(path, "r") as f:
            data = yaml.load(f, Loader=YamlLoader)
    except (yaml.YAMLError, ValueError, OSError) as error:
        raise ModelFileError(path, str(error))
    model_file = model_file_from_dict(data, path)
    log.internal_debug(f"loaded model '{model_file.name}' from {path}")
    return model_file


def dump_model_file(model_file: ModelFile, file_name: PathType) -> None:
    """Write a model file as JSON."""
    Path(file_name).write_text(dumps(model_file.to_dict()))


def dumps(data: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indentation."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def merge_options(
    model_file: Optional[ModelFile], overrides: Dict[str, Any]
) -> Dict[str, Any]:
    """Options of a model file with the non-None overrides applied on top."""
    merged: Dict[str, Any] = dict(model_file.options) if model_file else {}
    merged.update({key: value for key, value in overrides.items() if value is not None})
    return merged
