# Copyright 2022 The Oddindex Authors
#
# This file is part of Oddindex.
#
# Licensed under the GNU Affero General Public License 3.0 (the "License").
# A copy of the License may be obtained with this software package or at
#
#      https://www.gnu.org/licenses/agpl-3.0.en.html
#
# Use of this file is prohibited except in compliance with the License. Any
# modifications or derivative works of this file must retain this copyright
# notice, and modified files must contain a notice indicating that they have
# been altered from the originals.
#
# Oddindex is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or
# FITNESS FOR A PARTICULAR PURPOSE. See the License for more details.

"""Package logger: stderr diagnostics and an optional log file."""

import datetime
import logging
import logging.handlers
import os
import sys
import time

from .config import get_config

STREAM_FORMAT = "%(filename)s: Line %(lineno)s in %(funcName)s:\n%(levelname)s - %(message)s"
FILE_FORMAT = "%(asctime)s - " + STREAM_FORMAT

logging.Formatter.converter = time.gmtime

# Error records carry the call stack unless LOGSTACK=FALSE
log_stack_info = os.environ.get("LOGSTACK", "TRUE").upper() == "TRUE"


def _configured(handler: logging.Handler, level: str, formatter: logging.Formatter):
    handler.setLevel(level)
    handler.setFormatter(formatter)
    return handler


def _log_file(log_dir: str) -> str:
    os.makedirs(log_dir, exist_ok=True)
    stamp = datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%d_%H.%M.%S_UTC")
    return os.path.join(log_dir, f"oddindex_{stamp}.log")


def make_logger(name: str) -> logging.Logger:
    """
    Logger at sdk.log_level that writes to stderr.

    Reports go to stdout, so diagnostics stay on stderr. When sdk.enable_logging
    is true, records are also written to a timestamped file in sdk.log_dir.

    Args:
        name: Logger name.

    Returns:
        The configured logger; an already configured one is returned as is.
    """

    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    level = str(get_config("sdk.log_level")).upper()
    logger.setLevel(level)
    logger.propagate = False
    logger.addHandler(
        _configured(logging.StreamHandler(sys.stderr), level, logging.Formatter(STREAM_FORMAT))
    )
    if str(get_config("sdk.enable_logging")).upper() == "TRUE":
        file_handler = logging.handlers.RotatingFileHandler(_log_file(get_config("sdk.log_dir")))
        file_formatter = logging.Formatter(FILE_FORMAT, "%Y-%m-%d %H:%M:%S UTC")
        logger.addHandler(_configured(file_handler, level, file_formatter))
    return logger


app_log = make_logger(__name__)
