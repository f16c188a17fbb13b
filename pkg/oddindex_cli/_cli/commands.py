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

"""Oddindex CLI Tool - batch commands."""

from contextlib import contextmanager
from typing import Any, List, Optional

import click
import numpy as np
import simplejson

try:
    from pydantic import ValidationError
except ImportError:  # pragma: no cover
    from pydantic.error_wrappers import ValidationError

from oddindex import (
    DomainValidationError,
    NumericalConvergenceError,
    ahat_series,
    ch_delta,
    ch_delta_inverse,
    compare_with_limit,
    density_integral,
    density_profile,
    flat_gaussian,
    format_terms,
    heat_curve,
    heat_supertrace,
    hermite_heat_oracle,
    index,
    local_density_series,
    log_spaced_grid,
    mehler_density,
    outside_mass,
    rebase_report,
)
from oddindex._charclass import RootSet
from oddindex._shared_files.config import get_config
from oddindex._shared_files.logger import app_log, log_stack_info

from .schemas import (
    InputShapeError,
    JLORun,
    LocalizeRun,
    MehlerOptions,
    grid_from_text,
    parse_components,
    parse_model,
    parse_spectral,
)
from .writers import emit, to_csv, to_json

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_PARSE = 3
EXIT_NUMERICAL = 4

SERIES_KINDS = {
    "ahat": ahat_series,
    "chdelta": ch_delta,
    "chdelta-inverse": ch_delta_inverse,
    "density": local_density_series,
}


class OptionError(click.BadParameter):
    """A malformed flag value; exits with the parse code."""

    exit_code = EXIT_PARSE


def _abort(code: int, err: Exception) -> None:
    click.echo(f"{type(err).__name__}: {err}", err=True)
    click.get_current_context().exit(code)


@contextmanager
def _exit_codes():
    """Map library exceptions onto the documented exit codes."""

    try:
        yield
    except NumericalConvergenceError as err:
        _abort(EXIT_NUMERICAL, err)
    except DomainValidationError as err:
        _abort(EXIT_DOMAIN, err)
    except (
        ValidationError,
        InputShapeError,
        simplejson.JSONDecodeError,
        UnicodeDecodeError,
        OSError,
    ) as err:
        app_log.error(f"Unreadable input: {err}", stack_info=log_stack_info)
        _abort(EXIT_PARSE, err)


def _read_json(path: Optional[str]) -> Any:
    if path is None:
        return None
    with open(path, "r") as f:
        return simplejson.load(f)


def _positive(ctx, param, value):
    if value is not None and not value > 0:
        raise OptionError(f"must be positive, got {value}")
    return value


def _grid(ctx, param, value):
    try:
        grid = grid_from_text(value)
    except ValueError:
        raise OptionError(f"expected comma-separated numbers, got {value!r}")
    if grid is not None and (not grid or any(not t > 0 for t in grid)):
        raise OptionError(f"grid values must be positive, got {value!r}")
    return grid


def _input_option(required: bool):
    return click.option(
        "-i",
        "--input",
        "input_path",
        type=click.Path(dir_okay=False),
        required=required,
        help="JSON input file.",
    )


_output_option = click.option(
    "-o",
    "--output",
    type=click.Path(file_okay=False),
    default=None,
    help="Output directory; without it the summary goes to standard output.",
)
_cutoff_option = click.option(
    "--cutoff", type=int, default=None, callback=_positive, help="Momentum cutoff K."
)
_t_grid_option = click.option(
    "--t-grid", default=None, callback=_grid, help="Comma-separated heat times."
)
_tolerance_option = click.option(
    "--tolerance", type=float, default=None, callback=_positive, help="Check tolerance."
)


@click.command("index")
@_input_option(required=True)
@_output_option
@click.option(
    "--reference-m",
    type=int,
    default=None,
    help="Re-base the grading at a component with this m.",
)
def index_command(input_path: str, output: Optional[str], reference_m: Optional[int]) -> None:
    """
    Evaluate the fixed-point index formula for a list of components.
    """

    with _exit_codes():
        components = parse_components(_read_json(input_path))
        report = index(components)
        if reference_m is not None:
            report = rebase_report(report, reference_m)
        text = to_json(report.to_dict())
        emit(output, {"report.json": text}, text)


@click.command()
@_input_option(required=True)
@_output_option
@_cutoff_option
@_t_grid_option
@_tolerance_option
def spectral(
    input_path: str,
    output: Optional[str],
    cutoff: Optional[int],
    t_grid: Optional[List[float]],
    tolerance: Optional[float],
) -> None:
    """
    Heat supertrace curve of a model geometry against the index formula.
    """

    with _exit_codes():
        run = parse_spectral(_read_json(input_path))
        geom = run.geometry.build(cutoff, get_config("spectral.cutoff"))
        grid = t_grid or run.t_grid
        if grid is None:
            grid = log_spaced_grid(
                get_config("spectral.t_min"),
                get_config("spectral.t_max"),
                get_config("spectral.t_samples"),
            )
        tolerance = tolerance or get_config("spectral.constancy_tolerance")
        integer_tolerance = get_config("lefschetz.integrality_tolerance")
        grid_points = get_config("spectral.grid_points")
        epsilon = get_config("localize.epsilon")

        curve = heat_curve(geom, grid)
        report = index(geom.fixed_components)
        supertrace = float(curve.values[-1])
        masses = [outside_mass(geom, t, epsilon, grid_points) for t in curve.ts]
        t_first = float(curve.ts[0])
        density_error = abs(density_integral(geom, t_first, grid_points) - curve.values[0])

        summary = {
            "geometry": geom.describe(),
            "samples": len(curve),
            "spread": curve.spread(),
            "constancy_tolerance": tolerance,
            "constant": curve.spread() <= tolerance,
            "supertrace": supertrace,
            "index": report.to_dict(),
            "agrees_with_index": abs(supertrace - report.total) <= integer_tolerance,
            "integer": abs(supertrace - round(supertrace)) <= integer_tolerance,
            "density_integral_error": float(density_error),
            "localization": {
                "epsilon": epsilon,
                "outside_mass": [{"t": t, "mass": m} for t, m in zip(curve.ts, masses)],
                "strictly_decreasing": bool(np.all(np.diff(masses) < 0)),
            },
        }
        rows = [(t, v, geom.truncation_tail_bound(t)) for t, v in curve.samples]
        text = to_json(summary)
        emit(
            output,
            {
                "heat_curve.csv": to_csv(("t", "supertrace", "tail_bound"), rows),
                "summary.json": text,
            },
            text,
        )


@click.command()
@_input_option(required=True)
@_output_option
@_cutoff_option
@_t_grid_option
@click.option(
    "--quad-nodes", type=int, default=None, callback=_positive, help="Simplex nodes per axis."
)
@_tolerance_option
def jlo(
    input_path: str,
    output: Optional[str],
    cutoff: Optional[int],
    t_grid: Optional[List[float]],
    quad_nodes: Optional[int],
    tolerance: Optional[float],
) -> None:
    """
    Deformed JLO character on a t-grid, extrapolated and compared with its local limit.
    """

    with _exit_codes():
        run = parse_model(JLORun, _read_json(input_path))
        geom = run.geometry.build(cutoff, get_config("jlo.cutoff"))
        fs = run.function_specs(geom.ambient_dim)
        comparison = compare_with_limit(
            geom,
            fs,
            t_grid=t_grid or run.t_grid,
            quad_nodes=quad_nodes or run.quad_nodes,
            tolerance=tolerance or run.tolerance,
        )
        if not comparison.status:
            app_log.warning(
                f"Extrapolated character {comparison.extrapolation.value} misses the local "
                f"formula {comparison.rhs} at tolerance {comparison.tolerance}"
            )

        report = comparison.to_dict()
        report["geometry"] = geom.describe()
        rows = [
            (r.t, r.value.real, r.value.imag, r.quadrature_error) for r in comparison.results
        ]
        text = to_json(report)
        emit(
            output,
            {
                "jlo_curve.csv": to_csv(("t", "re", "im", "quadrature_error"), rows),
                "report.json": text,
            },
            text,
        )


@click.command()
@_input_option(required=False)
@_output_option
@_t_grid_option
@_tolerance_option
def mehler(
    input_path: Optional[str],
    output: Optional[str],
    t_grid: Optional[List[float]],
    tolerance: Optional[float],
) -> None:
    """
    Mehler closed form against the Hermite-expansion oracle on a grid.
    """

    with _exit_codes():
        options = parse_model(MehlerOptions, _read_json(input_path) or {})
        a_values = options.a_values or get_config("mehler.a_values")
        t_values = t_grid or options.t_values or get_config("mehler.t_values")
        y_max = options.y_max or get_config("mehler.y_max")
        y_step = options.y_step or get_config("mehler.y_step")
        tolerance = tolerance or options.tolerance or get_config("mehler.tolerance")

        axis = np.arange(-y_max, y_max + y_step / 2, y_step)
        points = np.array([(y1, y2) for y1 in axis for y2 in axis])

        rows, max_error, flat_error = [], 0.0, 0.0
        for a in a_values:
            for t in t_values:
                closed = np.atleast_1d(mehler_density(a, points, t))
                oracle = np.atleast_1d(hermite_heat_oracle(a, points, t))
                errors = np.abs(closed - oracle)
                max_error = max(max_error, float(errors.max()))
                rows.extend(
                    (a, t, y[0], y[1], c, o, e)
                    for y, c, o, e in zip(points, closed, oracle, errors)
                )
        for t in t_values:
            gaussian = np.atleast_1d(flat_gaussian(points, t))
            flat = np.atleast_1d(mehler_density(0.0, points, t))
            flat_error = max(flat_error, float(np.abs(flat - gaussian).max()))

        summary = {
            "a_values": list(a_values),
            "t_values": list(t_values),
            "points": len(points),
            "max_error": max_error,
            "flat_limit_error": flat_error,
            "tolerance": tolerance,
            "pass": max_error <= tolerance,
        }
        text = to_json(summary)
        header = ("a", "t", "y1", "y2", "mehler", "oracle", "abs_error")
        emit(output, {"mehler_grid.csv": to_csv(header, rows), "summary.json": text}, text)


@click.command()
@_input_option(required=False)
@_output_option
@_cutoff_option
@_t_grid_option
@click.option(
    "--epsilon",
    type=float,
    default=None,
    callback=_positive,
    help="Radius of the excluded neighborhood of the fixed set.",
)
def localize(
    input_path: Optional[str],
    output: Optional[str],
    cutoff: Optional[int],
    t_grid: Optional[List[float]],
    epsilon: Optional[float],
) -> None:
    """
    Local density along the reflected axis and its mass away from the fixed set.
    """

    with _exit_codes():
        run = parse_model(LocalizeRun, _read_json(input_path) or {})
        geom = run.geometry.build(cutoff, get_config("localize.cutoff"))
        grid = sorted(t_grid or run.t_grid or get_config("localize.t_grid"), reverse=True)
        epsilon = epsilon or run.epsilon or get_config("localize.epsilon")
        grid_points = run.grid_points or get_config("localize.grid_points")

        density_rows, masses = [], []
        for t in grid:
            s, profile = density_profile(geom, t, grid_points)
            density_rows.extend((t, x, value) for x, value in zip(s, profile))
            masses.append(outside_mass(geom, t, epsilon, grid_points))

        ratios = {
            f"{grid[0]}/{t}": masses[0] / m if m > 0 else None
            for t, m in zip(grid[1:], masses[1:])
        }
        summary = {
            "geometry": geom.describe(),
            "epsilon": epsilon,
            "outside_mass": [{"t": t, "mass": m} for t, m in zip(grid, masses)],
            "strictly_decreasing": bool(np.all(np.diff(masses) < 0)),
            "ratios": ratios,
            "supertrace": heat_supertrace(geom, grid[-1]),
        }
        text = to_json(summary)
        emit(
            output,
            {
                "density.csv": to_csv(("t", "x", "density"), density_rows),
                "outside_mass.csv": to_csv(("t", "outside_mass"), zip(grid, masses)),
                "summary.json": text,
            },
            text,
        )


@click.command()
@_output_option
@click.option(
    "--which",
    type=click.Choice(sorted(SERIES_KINDS)),
    default="density",
    show_default=True,
    help="Characteristic class to expand.",
)
@click.option("--tangent-roots", type=int, default=1, show_default=True, help="n' of TF.")
@click.option("--normal-roots", type=int, default=0, show_default=True, help="m of N.")
@click.option("--cap", type=int, default=None, help="Form-degree cap.")
def series(
    output: Optional[str], which: str, tangent_roots: int, normal_roots: int, cap: Optional[int]
) -> None:
    """
    Plain-text expansion of A-hat, ch-Delta, its inverse or the local density.
    """

    with _exit_codes():
        roots = RootSet.from_dimensions(2 * tangent_roots, 2 * normal_roots + 1)
        cap = get_config("series.cap") if cap is None else cap
        text = format_terms(SERIES_KINDS[which](roots, cap))
        emit(output, {"series.txt": text}, text)

