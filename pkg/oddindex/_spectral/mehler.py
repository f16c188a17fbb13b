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

"""Mehler-type heat density near a fixed component and its Hermite-expansion oracle.

With z = a t / 2 the closed form per normal plane is

    a / (8 pi sinh z) * exp(-(a / 8) coth(z) |y|^2),

which is the kernel e^{-tH}(y, 0) of H = -Laplacian + (a / 4)^2 |y|^2 in two
dimensions. The oracle assembles that kernel from Hermite functions.
"""

from typing import Optional, Sequence, Union

import numpy as np

from .._shared_files.config import get_config
from .._shared_files.errors import (
    DomainValidationError,
    OracleConvergenceError,
    PoleProximityError,
)
from .._shared_files.logger import app_log, log_stack_info

# Sup norm of the L2-normalized Hermite functions
_CRAMER_BOUND = 1.086435 * np.pi ** (-0.25)

# Below this |z| the ratios z/sinh z and z coth z use their Taylor series.
_SERIES_THRESHOLD = 1e-4


def _ratios(z: complex, pole_threshold: float):
    if abs(z) < _SERIES_THRESHOLD:
        z2 = z * z
        return 1 - z2 / 6 + 7 * z2 * z2 / 360, 1 + z2 / 3 - z2 * z2 / 45
    sinh = np.sinh(z)
    if abs(np.imag(z)) >= np.pi or abs(sinh) < pole_threshold:
        message = f"a t / 2 = {z} lies at or beyond a pole of sinh."
        app_log.error(message, stack_info=log_stack_info)
        raise PoleProximityError(message)
    return z / sinh, z * np.cosh(z) / sinh


def mehler_density(
    a: Union[float, complex], y, t: float, pole_threshold: Optional[float] = None
) -> Union[float, complex, np.ndarray]:
    """
    Closed-form Mehler density for one normal plane.

    Args:
        a: Curvature parameter; real, or imaginary for the formal curvature sqrt(-1) x_s.
        y: Normal coordinates (y1, y2), or an array with trailing dimension 2.
        t: Positive time.
        pole_threshold: Smallest admissible |sinh(a t / 2)|.

    Returns:
        The density, real for real a.

    Raises:
        PoleProximityError: If a t / 2 is at or past the first pole of 1/sinh.
    """

    if not t > 0:
        raise DomainValidationError(f"Heat time must be positive, got {t}.")
    if pole_threshold is None:
        pole_threshold = get_config("mehler.pole_threshold")

    z = a * t / 2
    ratio, zcoth = _ratios(z, pole_threshold)
    y = np.asarray(y, dtype=float)
    radius2 = (y**2).sum(axis=-1)
    value = ratio / (4 * np.pi * t) * np.exp(-zcoth * radius2 / (4 * t))
    if np.isrealobj(a):
        value = np.real(value)
    return value.item() if np.ndim(value) == 0 else value


def flat_gaussian(y, t: float):
    """The flat heat kernel (1 / 4 pi t) e^{-|y|^2 / 4t} in two dimensions."""

    y = np.asarray(y, dtype=float)
    value = np.exp(-(y**2).sum(axis=-1) / (4 * t)) / (4 * np.pi * t)
    return value.item() if np.ndim(value) == 0 else value


def hermite_kernel_1d(
    omega: float,
    x,
    x0: float,
    t: float,
    tail_tolerance: Optional[float] = None,
    max_terms: Optional[int] = None,
) -> np.ndarray:
    """
    Kernel of e^{-t(-d^2/dx^2 + omega^2 x^2)} from its Hermite eigenfunctions.

    Sums e^{-t omega (2n + 1)} psi_n(x) psi_n(x0) with the normalized three-term
    recurrence until the Cramer bound on the remaining terms drops below the tolerance.

    Args:
        omega: Positive frequency.
        x: Points.
        x0: Source point.
        t: Positive time.
        tail_tolerance: Required bound on the neglected tail.
        max_terms: Largest number of eigenfunctions used.

    Returns:
        Kernel values at x.

    Raises:
        OracleConvergenceError: If max_terms is reached first.
    """

    if tail_tolerance is None:
        tail_tolerance = get_config("mehler.tail_tolerance")
    if max_terms is None:
        max_terms = get_config("mehler.max_terms")
    if not omega > 0:
        raise OracleConvergenceError(f"Hermite expansion needs omega > 0, got {omega}.")

    root = np.sqrt(omega)
    xi = root * np.atleast_1d(np.asarray(x, dtype=float))
    xi0 = root * float(x0)

    phi_prev = np.zeros_like(xi)
    phi = np.pi ** (-0.25) * np.exp(-(xi**2) / 2)
    phi0_prev = 0.0
    phi0 = np.pi ** (-0.25) * np.exp(-(xi0**2) / 2)

    decay = np.exp(-2 * t * omega)
    weight = np.exp(-t * omega)
    total = weight * phi * phi0
    tail_scale = root * _CRAMER_BOUND**2 / (1 - decay)
    for n in range(max_terms):
        factor_a, factor_b = np.sqrt(2 / (n + 1)), np.sqrt(n / (n + 1))
        phi, phi_prev = factor_a * xi * phi - factor_b * phi_prev, phi
        phi0, phi0_prev = factor_a * xi0 * phi0 - factor_b * phi0_prev, phi0
        weight *= decay
        total = total + weight * phi * phi0
        if tail_scale * weight * decay < tail_tolerance:
            return root * total
    message = f"Hermite expansion did not converge in {max_terms} terms (omega={omega}, t={t})."
    app_log.error(message, stack_info=log_stack_info)
    raise OracleConvergenceError(message)


def hermite_heat_oracle(
    a: float,
    y,
    t: float,
    y0: Sequence[float] = (0.0, 0.0),
    tail_tolerance: Optional[float] = None,
    max_terms: Optional[int] = None,
) -> Union[float, np.ndarray]:
    """
    Two-dimensional oscillator heat kernel with omega = |a| / 4, as a product of 1-d factors.

    Args:
        a: Nonzero real curvature parameter.
        y: Target point(s) with trailing dimension 2.
        t: Positive time.
        y0: Source point; the Mehler density uses the origin.
        tail_tolerance: Bound on each neglected tail.
        max_terms: Largest number of eigenfunctions per factor.

    Returns:
        Kernel values.
    """

    if not np.isrealobj(a):
        raise OracleConvergenceError("The Hermite oracle only covers real curvature parameters.")
    if not t > 0:
        raise DomainValidationError(f"Heat time must be positive, got {t}.")
    omega = abs(float(a)) / 4
    y = np.asarray(y, dtype=float)
    flat = y.reshape(-1, 2)
    first = hermite_kernel_1d(omega, flat[:, 0], y0[0], t, tail_tolerance, max_terms)
    second = hermite_kernel_1d(omega, flat[:, 1], y0[1], t, tail_tolerance, max_terms)
    value = (first * second).reshape(y.shape[:-1])
    return value.item() if value.ndim == 0 else value
