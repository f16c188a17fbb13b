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

"""Deterministic JSON, CSV and text output."""

import csv
import io
import os
from typing import Any, Dict, Iterable, Optional, Sequence

import click
import numpy as np
import simplejson

from oddindex._shared_files.logger import app_log


def _encode(obj: Any) -> Any:
    if isinstance(obj, complex) or isinstance(obj, np.complexfloating):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def to_json(payload: Any) -> str:
    """Sorted, indented JSON with NaN written as null and complex numbers as {re, im}."""

    return simplejson.dumps(payload, default=_encode, ignore_nan=True, sort_keys=True, indent=2)


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def emit(output: Optional[str], files: Dict[str, str], summary: Optional[str] = None) -> None:
    """
    Write the run's files into the output directory.

    Args:
        output: Directory, created if missing; None prints `summary` to standard output.
        files: File name -> content.
        summary: What to print when no directory is given.

    Returns:
        None
    """

    if output is None:
        if summary is not None:
            click.echo(summary)
        return

    os.makedirs(output, exist_ok=True)
    for name in sorted(files):
        path = os.path.join(output, name)
        content = files[name]
        with open(path, "w", newline="") as f:
            f.write(content if content.endswith("\n") else content + "\n")
        app_log.debug(f"Wrote {path}")
