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

"""Heat supertraces and local densities of tau e^{-tD^2}."""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from .._shared_files.errors import DomainValidationError
from .._shared_files.logger import app_log
from .._shared_files.util_classes import Estimate
from .geometry import ModelGeometry

Number = Union[float, complex]


@dataclass
class HeatCurve:
    """
    Samples (t, value) of a t-dependent trace, t strictly decreasing toward 0.

    Attributes:
        samples: The (t, value) pairs.
    """

    samples: List[Tuple[float, Number]] = field(default_factory=list)

    def __post_init__(self) -> None:
        ts = [t for t, _ in self.samples]
        if any(t <= 0 for t in ts):
            raise DomainValidationError(f"Sample times must be positive, got {ts}.")
        if any(later >= earlier for earlier, later in zip(ts, ts[1:])):
            raise DomainValidationError(f"Sample times must strictly decrease, got {ts}.")

    @property
    def ts(self) -> np.ndarray:
        return np.array([t for t, _ in self.samples], dtype=float)

    @property
    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.samples])

    def spread(self) -> float:
        """Largest minus smallest sample value."""

        values = self.values
        if not len(values):
            return 0.0
        return float(np.abs(values[:, None] - values[None, :]).max())

    def __len__(self) -> int:
        return len(self.samples)


def check_time(t: float) -> None:
    if not t > 0:
        message = f"Heat time must be positive, got {t}."
        app_log.error(message)
        raise DomainValidationError(message)


def supertrace(geom: ModelGeometry, operator: sp.spmatrix) -> complex:
    """
    Tr(tau X) over the core modes |p| <= K.

    Only the core columns of X are used, so X may be inexact on padded modes.

    Args:
        geom: The geometry.
        operator: X on the geometry's basis, or its core columns only.

    Returns:
        The complex supertrace.
    """

    core = geom.basis.core_indices
    columns = operator if operator.shape[1] == len(core) else sp.csc_matrix(operator)[:, core]
    restricted = sp.csr_matrix(geom.tau_lift)[core, :] @ columns
    return complex(restricted.diagonal().sum())


def heat_supertrace_estimate(geom: ModelGeometry, t: float) -> Estimate:
    """Tr(tau e^{-tD^2}) with the Gaussian tail bound as error."""

    check_time(t)
    value = supertrace(geom, geom.heat_operator(t)).real
    return Estimate(value=value, error=geom.truncation_tail_bound(t))


def heat_supertrace(geom: ModelGeometry, t: float) -> float:
    """
    McKean-Singer supertrace Tr(tau e^{-tD^2}) on the truncated basis.

    Args:
        geom: The geometry.
        t: Positive time.

    Returns:
        The real supertrace.
    """

    return heat_supertrace_estimate(geom, t).value


def heat_curve(geom: ModelGeometry, t_grid: Sequence[float]) -> HeatCurve:
    ordered = sorted((float(t) for t in t_grid), reverse=True)
    return HeatCurve([(t, heat_supertrace(geom, t)) for t in ordered])


def log_spaced_grid(t_min: float, t_max: float, samples: int) -> List[float]:
    """Decreasing logarithmic grid from t_max down to t_min."""

    return [float(t) for t in np.geomspace(t_max, t_min, samples)]


def _kernel_entries(geom: ModelGeometry, t: float):
    core = geom.basis.core_indices
    kernel = sp.coo_matrix(
        sp.csr_matrix(geom.tau_lift)[core, :] @ sp.csc_matrix(geom.heat_operator(t))[:, core]
    )
    rows, cols = core[kernel.row], core[kernel.col]
    same_spin = geom.basis.spin[rows] == geom.basis.spin[cols]
    rows, cols, values = rows[same_spin], cols[same_spin], kernel.data[same_spin]
    frequencies = geom.basis.momenta[rows] - geom.basis.momenta[cols]
    return frequencies, values


def local_density(geom: ModelGeometry, x, t: float) -> Union[float, np.ndarray]:
    """
    Pointwise trace of the kernel of tau e^{-tD^2} on the diagonal.

    This is Tr[tau P_t(tau x, x)] as a finite mode sum.

    Args:
        geom: The geometry.
        x: A point with ambient_dim coordinates, or an (n, ambient_dim) array.
        t: Positive time.

    Returns:
        The density, a float for one point or an array for many.
    """

    check_time(t)
    points = np.atleast_2d(np.asarray(x, dtype=float))
    if points.shape[-1] != geom.ambient_dim:
        points = points.reshape(-1, geom.ambient_dim)
    frequencies, values = _kernel_entries(geom, t)
    phases = np.exp(1j * points @ frequencies.T)
    density = np.real(phases @ values) / geom.volume
    return float(density[0]) if np.ndim(x) <= 1 and density.size == 1 else density


def _normal_line(geom: ModelGeometry, grid_points: int) -> Tuple[np.ndarray, np.ndarray]:
    s = 2 * np.pi * np.arange(grid_points) / grid_points
    points = np.zeros((grid_points, geom.ambient_dim))
    points[:, geom.reflection_axis] = s
    return s, points


def density_profile(
    geom: ModelGeometry, t: float, grid_points: int
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Density along the reflected axis through the origin.

    Flat models are translation invariant along the fixed set, so this line
    carries the whole density.

    Returns:
        (coordinate, density) arrays.
    """

    s, points = _normal_line(geom, grid_points)
    return s, np.atleast_1d(local_density(geom, points, t))


def density_integral(geom: ModelGeometry, t: float, grid_points: int) -> float:
    """Trapezoidal integral of the local density over the manifold."""

    _, profile = density_profile(geom, t, grid_points)
    tangential_volume = (2 * np.pi) ** (geom.ambient_dim - 1)
    return float(profile.sum() * (2 * np.pi / grid_points) * tangential_volume)


def outside_mass(geom: ModelGeometry, t: float, epsilon: float, grid_points: int) -> float:
    """
    Integral of |local_density| outside the epsilon-neighborhood of the fixed set.

    Args:
        geom: The geometry.
        t: Positive time.
        epsilon: Radius of the excluded neighborhoods of the fixed set.
        grid_points: Grid points along the reflected axis.

    Returns:
        The outside mass.
    """

    if not epsilon > 0:
        raise DomainValidationError(f"epsilon must be positive, got {epsilon}.")
    s, profile = density_profile(geom, t, grid_points)
    distance = np.minimum.reduce([np.abs(s), np.abs(s - np.pi), np.abs(s - 2 * np.pi)])
    mask = distance > epsilon
    tangential_volume = (2 * np.pi) ** (geom.ambient_dim - 1)
    return float(np.abs(profile[mask]).sum() * (2 * np.pi / grid_points) * tangential_volume)
