##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################
import logging

import pytest

from pycontig import logging_initializer


@pytest.fixture
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield root
    for handler in list(root.handlers):
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    root.setLevel(level)


@pytest.mark.parametrize(
    "path, level, expected_level, verbose",
    [
        (None, "INFO", logging.INFO, False),
        ("logs", "WARNING", logging.WARNING, True),
        ("run.log", "DEBUG", logging.DEBUG, False),
        (None, "ERROR", logging.ERROR, True),
    ],
)
def test_initialize_logging(
    restore_root_logger, tmp_path, path, level, expected_level, verbose
):
    log_path = tmp_path / path if path is not None else None

    logger = logging_initializer.initialize_logging(log_path, level, verbose, "cubic")

    assert isinstance(logger, logging.Logger)
    assert restore_root_logger.level == expected_level
    assert logging_initializer.log_options.log_path == log_path
    assert logging_initializer.log_options.log_level == level
    assert logging_initializer.log_options.verbose is verbose
    file_handlers = [
        h for h in restore_root_logger.handlers if isinstance(h, logging.FileHandler)
    ]
    if path is None:
        assert not file_handlers
    elif path == "logs":
        assert log_path.is_dir()
        assert file_handlers[0].baseFilename.endswith("cubic.log")
    else:
        assert log_path.is_file()


def test_initialize_logging_replaces_handlers(restore_root_logger, mocker):
    mkdir_mock = mocker.patch("pathlib.Path.mkdir")

    logging_initializer.initialize_logging(None, "INFO", False)
    count = len(restore_root_logger.handlers)
    logging_initializer.initialize_logging(None, "INFO", True)

    assert len(restore_root_logger.handlers) == count
    mkdir_mock.assert_not_called()


def test_internal_levels_filtered(restore_root_logger, capsys):
    logging_initializer.initialize_logging(None, "DEBUG", False)
    log = logging.getLogger("pycontig.test")

    log.internal_info("rank 4 of 5")
    log.info("chi = 3")

    captured = capsys.readouterr()
    assert "chi = 3" in captured.err
    assert "rank 4 of 5" not in captured.err
    assert captured.out == ""


def test_internal_levels_verbose(restore_root_logger, capsys):
    logging_initializer.initialize_logging(None, "DEBUG", True)

    logging.getLogger("pycontig.test").internal_debug("k=1 q=2")

    assert "k=1 q=2" in capsys.readouterr().err


def test_get_logging_options():
    logging_initializer.log_options = logging_initializer.LogOptions(None, "ERROR", False)

    options = logging_initializer.get_logging_options()

    assert options is not None
    assert options.log_level == "ERROR"
    assert options.verbose is False


def test_add_logging_level():
    logging_initializer.add_logging_level("PYCONTIG_TEST_LEVEL", logging.INFO + 3)

    assert logging.PYCONTIG_TEST_LEVEL == logging.INFO + 3
    assert logging.getLevelName(logging.INFO + 3) == "PYCONTIG_TEST_LEVEL"
    assert hasattr(logging.getLogger(), "pycontig_test_level")
    # a second call keeps the first value
    logging_initializer.add_logging_level("PYCONTIG_TEST_LEVEL", logging.INFO + 4)
    assert logging.PYCONTIG_TEST_LEVEL == logging.INFO + 3
