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

"""Small-t limit of the deformed character: local formula, extrapolation and comparison."""

from dataclasses import dataclass, field
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .._lefschetz import FixedComponentSpec, top_form_pairing, validate
from .._shared_files.config import get_config
from .._shared_files.errors import DomainValidationError, ExtrapolationError, RestrictionError
from .._shared_files.logger import app_log, log_stack_info
from .._shared_files.util_classes import CHECK_STATUS, Estimate, Status
from .._spectral import HeatCurve, ModelGeometry
from .character import JLOResult, jlo_ch_k, tau_invariance_notes
from .functions import FunctionSpec


def _torus_integral(fs: Sequence[FunctionSpec], grid_points: int) -> float:
    # int_{T^k} f^0 det(d f^i / d x_j) dx on a uniform grid, exact for low frequencies
    k = fs[0].dim
    axis = 2 * np.pi * np.arange(grid_points) / grid_points
    points = np.array(np.meshgrid(*([axis] * k), indexing="ij")).reshape(k, -1).T
    jacobian = np.stack([f.gradient(points) for f in fs[1:]], axis=1)
    integrand = fs[0].evaluate(points) * np.linalg.det(jacobian)
    return float(integrand.sum() * (2 * np.pi / grid_points) ** k)


def _component_integral(
    component: FixedComponentSpec, fs: Sequence[FunctionSpec], k: int, grid_points: int
) -> float:
    if k == 0 and fs[0].is_constant():
        return fs[0].constant_value() * float(top_form_pairing(component))

    if not component.flat:
        message = (
            f"{component.name} is not flat; the local formula for non-constant functions "
            "is only evaluated on flat components."
        )
        app_log.error(message)
        raise RestrictionError(message)

    # flat: only the degree-0 class 2^{-m} survives, so the form degree must be dim F
    if k != component.dim_f:
        return 0.0
    if component.embedding is None:
        message = f"{component.name} has no embedding to restrict functions to."
        app_log.error(message)
        raise RestrictionError(message)

    restricted = [f.restrict(component.embedding) for f in fs]
    scale = 2.0 ** (-component.m)
    if k == 0:
        return scale * component.volume * restricted[0].constant_value()
    return scale * _torus_integral(restricted, grid_points)


def limit_rhs(
    components: Sequence[FixedComponentSpec],
    fs: Sequence[FunctionSpec],
    k: Optional[int] = None,
    grid_points: Optional[int] = None,
) -> complex:
    """
    The local formula for lim_{t -> 0} ch_k(sqrt(t) D)(f^0, ..., f^k).

    1 / (k! (2 pi sqrt(-1))^{k/2}) sum_q (sqrt(-1))^{m1 - m_q} / 2 * sign_q
    * int_{F_q} f^0 df^1 ... df^k A-hat(TF_q) ch-Delta(N_q)^{-1}.

    Args:
        components: Fixed components, flat with embeddings unless k = 0 and f^0 is constant.
        fs: Functions on the model, restricted to each component here.
        k: Degree; defaults to len(fs) - 1.
        grid_points: Grid points per tangent axis for the component integrals.

    Returns:
        The complex limit.

    Raises:
        RestrictionError: If a component cannot be integrated over.
    """

    if k is None:
        k = len(fs) - 1
    if k % 2 or k != len(fs) - 1:
        raise DomainValidationError(f"Need an even k with k + 1 functions, got k = {k}.")
    if grid_points is None:
        grid_points = get_config("jlo.limit_grid_points")
    validate(components)

    m1 = max(c.m for c in components)
    total = 0.0
    for component in components:
        phase = -1 if ((m1 - component.m) // 2) % 2 else 1
        integral = _component_integral(component, fs, k, grid_points)
        total += 0.5 * phase * component.orientation_sign * integral
    return total / (factorial(k) * (2j * np.pi) ** (k // 2))


def extrapolate_to_zero(
    curve: HeatCurve, step: Optional[float] = None, noise_tolerance: Optional[float] = None
) -> Estimate:
    """
    Richardson extrapolation of a t-curve to t = 0 in powers of h = t^step.

    Uses the Neville tableau of polynomial interpolation in h evaluated at h = 0;
    step = 1/2 removes the sqrt(t) correction first.

    Args:
        curve: At least three samples, t decreasing.
        step: Exponent of t in the expansion variable.
        noise_tolerance: Growth of successive extrapolants beyond this is rejected.

    Returns:
        The extrapolated value with the last-step difference as its error bar.

    Raises:
        ExtrapolationError: If the extrapolants stop settling.
    """

    if len(curve) < 3:
        raise DomainValidationError(f"Extrapolation needs at least 3 samples, got {len(curve)}.")
    if step is None:
        step = get_config("jlo.extrapolation_step")
    if noise_tolerance is None:
        noise_tolerance = get_config("jlo.absolute_tolerance")

    ts = curve.ts
    ratios = ts[1:] / ts[:-1]
    if not np.allclose(ratios, ratios[0], rtol=1e-6):
        app_log.warning(f"t-grid {list(ts)} is not geometric")

    h = ts**step
    values = curve.values
    n = len(h)
    table: List[List] = [[value] for value in values]
    for i in range(1, n):
        for j in range(1, i + 1):
            table[i].append(
                (h[i] * table[i - 1][j - 1] - h[i - j] * table[i][j - 1]) / (h[i] - h[i - j])
            )

    diagonal = [table[i][i] for i in range(n)]
    steps = [abs(later - earlier) for earlier, later in zip(diagonal, diagonal[1:])]
    for earlier, later in zip(steps, steps[1:]):
        if later > earlier and later > noise_tolerance:
            message = f"Extrapolants {diagonal} do not settle; the curve is too noisy."
            app_log.error(message, stack_info=log_stack_info)
            raise ExtrapolationError(message)

    value = diagonal[-1]
    error = float(abs(table[-1][-1] - table[-1][-2]))
    value = complex(value) if np.iscomplexobj(values) else float(value)
    return Estimate(value=value, error=error)


def jlo_curve(
    geom: ModelGeometry,
    fs: Sequence[FunctionSpec],
    t_grid: Sequence[float],
    quad_nodes: Optional[int] = None,
) -> Tuple[List[JLOResult], HeatCurve]:
    """ch_k(sqrt(t) D) on a t-grid, largest t first."""

    ordered = sorted((float(t) for t in t_grid), reverse=True)
    results = [jlo_ch_k(geom, fs, t, quad_nodes=quad_nodes) for t in ordered]
    return results, HeatCurve([(r.t, r.value) for r in results])


@dataclass
class JLOComparison:
    """
    Extrapolated character against the local formula.

    Attributes:
        results: Per-t character values.
        extrapolation: Value at t = 0 with error bar.
        rhs: The local formula.
        status: PASS when |extrapolation - rhs| <= tolerance |rhs| + absolute_tolerance.
        tolerance: Relative tolerance used.
        notes: Warnings raised along the way.
    """

    results: List[JLOResult]
    extrapolation: Estimate
    rhs: complex
    status: Status
    tolerance: float
    notes: List[str] = field(default_factory=list)

    @property
    def difference(self) -> float:
        return float(abs(self.extrapolation.value - self.rhs))

    @property
    def relative_error(self) -> Optional[float]:
        return self.difference / abs(self.rhs) if self.rhs != 0 else None

    def to_dict(self) -> Dict:
        return {
            "curve": [r.to_dict() for r in self.results],
            "extrapolation": {
                "value": self.extrapolation.value,
                "error": self.extrapolation.error,
            },
            "rhs": self.rhs,
            "difference": self.difference,
            "relative_error": self.relative_error,
            "tolerance": self.tolerance,
            "pass": bool(self.status),
            "notes": list(self.notes),
        }


def compare_with_limit(
    geom: ModelGeometry,
    fs: Sequence[FunctionSpec],
    t_grid: Optional[Sequence[float]] = None,
    quad_nodes: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> JLOComparison:
    """
    Evaluate the character on a t-grid, extrapolate to t = 0 and compare with limit_rhs.

    Args:
        geom: The model; its fixed components give the local formula.
        fs: f^0, ..., f^k.
        t_grid: Deformation times.
        quad_nodes: Simplex quadrature nodes per dimension.
        tolerance: Relative tolerance of the comparison.

    Returns:
        The comparison; a failed comparison is reported, not raised.
    """

    if t_grid is None:
        t_grid = get_config("jlo.t_grid")
    if tolerance is None:
        tolerance = get_config("jlo.tolerance")
    absolute_tolerance = get_config("jlo.absolute_tolerance")

    notes = tau_invariance_notes(geom, fs)
    results, curve = jlo_curve(geom, fs, t_grid, quad_nodes=quad_nodes)
    extrapolation = extrapolate_to_zero(curve)
    rhs = complex(limit_rhs(geom.fixed_components, fs))

    passed = abs(extrapolation.value - rhs) <= tolerance * abs(rhs) + absolute_tolerance
    app_log.debug(f"Extrapolated {extrapolation.value} against local formula {rhs}")
    return JLOComparison(
        results=results,
        extrapolation=extrapolation,
        rhs=rhs,
        status=CHECK_STATUS.of(passed),
        tolerance=tolerance,
        notes=notes,
    )
