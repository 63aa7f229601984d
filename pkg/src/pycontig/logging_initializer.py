##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Logging setup
*************

:module: logging_initializer

:synopsis: Handles initialization of the loggers and the internal
    progress levels used by the engines.

Results go to stdout, so every handler installed here writes to stderr
or to a file.

.. currentmodule:: logging_initializer

"""
import logging
import sys
import time
from pathlib import Path
from typing import NamedTuple, Optional

from .types import PathType

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(module)s:%(lineno)d: %(message)s"

LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
}


class LogOptions(NamedTuple):
    """Available options for the logging configuration."""

    log_path: Optional[PathType]
    log_level: str
    verbose: bool


# used to store the selected logging options
log_options: Optional[LogOptions] = None


def get_logging_options() -> Optional[LogOptions]:
    """Return the options of the last :func:`initialize_logging` call."""
    return log_options


def add_internal_log_levels() -> None:
    """Create the internal log levels if not already done."""
    if not hasattr(logging, "INTERNAL_WARNING"):
        add_logging_level("INTERNAL_WARNING", logging.WARNING + 1)
        add_logging_level("INTERNAL_INFO", logging.INFO + 1)
        add_logging_level("INTERNAL_DEBUG", logging.DEBUG + 1)


class InternalLogsFilter(logging.Filter):
    def filter(self, record: logging.LogRecord) -> bool:
        """Filter internal log levels.

        :param record: event being logged

        :return: False if internal logging, True otherwise
        """
        return record.levelno not in (
            logging.INTERNAL_WARNING,
            logging.INTERNAL_INFO,
            logging.INTERNAL_DEBUG,
        )


def initialize_logging(
    log_path: Optional[PathType],
    log_level: str,
    verbose: bool,
    run_name: Optional[str] = None,
) -> logging.Logger:
    """Initialize the logging.

    Sets the general log level, the optional log file and the logging
    format.

    :param log_path: log file, or directory receiving a dated log file
    :param log_level: any of DEBUG, INFO, WARNING, ERROR
    :param verbose: show the internal progress levels on stderr if True
    :param run_name: name used for a log file created in a directory

    :returns: configured Logger
    """
    root_logger = logging.getLogger()
    log_format = logging.Formatter(LOG_FORMAT)
    add_internal_log_levels()

    global log_options
    log_options = LogOptions(log_path, log_level, verbose)

    # drop handlers of a previous initialization
    for handler in list(root_logger.handlers):
        if getattr(handler, "_pycontig", False):
            root_logger.removeHandler(handler)
            handler.close()

    if log_path is not None:
        log_path = Path(log_path)
        if log_path.suffix == "":
            log_path.mkdir(parents=True, exist_ok=True)
            fname = time.strftime(f"%Y-%m-%d_%H-%M-{run_name or 'pycontig'}.log")
            log_path = log_path / fname
        file_handler = logging.FileHandler(log_path, "a+")
        file_handler.setFormatter(log_format)
        file_handler.setLevel(LEVELS[log_level])
        file_handler._pycontig = True
        root_logger.addHandler(file_handler)

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(log_format)
    stream_handler.setLevel(LEVELS[log_level])
    if not verbose:
        stream_handler.addFilter(InternalLogsFilter())
    stream_handler._pycontig = True
    root_logger.addHandler(stream_handler)

    root_logger.setLevel(LEVELS[log_level])

    return logging.getLogger(__name__)


def add_logging_level(level_name: str, level_num: int) -> None:
    """Add a new logging level to the `logging` module and the logger class.

    `level_name` becomes an attribute of the `logging` module with the value
    `level_num`, its lower case name a method of every logger. Existing
    attributes are left untouched.

    Example
    -------
    >>> add_logging_level('INTERNAL_INFO', logging.INFO + 1)
    >>> logging.getLogger(__name__).internal_info('that worked')
    >>> logging.INTERNAL_INFO
    21

    :param level_name: name of the new level
    :param level_num: value of the new level
    """
    method_name = level_name.lower()

    def log_for_level(self, message, *args, **kwargs):
        if self.isEnabledFor(level_num):
            self._log(level_num, message, args, **kwargs)

    def log_to_root(message, *args, **kwargs):
        logging.log(level_num, message, *args, **kwargs)

    if not hasattr(logging, level_name):
        logging.addLevelName(level_num, level_name)
        setattr(logging, level_name, level_num)
        setattr(logging.getLoggerClass(), method_name, log_for_level)
        setattr(logging, method_name, log_to_root)
