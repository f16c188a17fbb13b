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

"""Fixed-point index formula, heat-kernel models and JLO character checks."""

import os

from ._charclass import (
    PontryaginSeries,
    RootSet,
    ahat_pontryagin,
    ahat_series,
    ch_delta,
    ch_delta_inverse,
    local_density_pontryagin,
    parse_monomial_label,
    pontryagin_to_roots,
    roots_to_pontryagin,
)
from ._charclass import local_density as local_density_series
from ._jlo import (
    FunctionSpec,
    JLOComparison,
    JLOResult,
    LambdaMulti,
    commutator_matrix,
    compare_with_limit,
    d_lambda_supertrace,
    expansion_coefficient,
    extrapolate_to_zero,
    fit_power_law,
    jlo_ch_k,
    jlo_curve,
    lambda_factorial,
    lambda_tilde_factorial,
    limit_rhs,
    simplex_rule,
    small_t_expansion,
)
from ._lefschetz import (
    FixedComponentSpec,
    FlatEmbedding,
    LefschetzReport,
    component_contribution,
    grading_dependence,
    index,
    rebase_report,
    validate,
)
from ._series import (
    GradedSeries,
    add,
    eval_numeric,
    exp_even,
    extract_degree,
    format_terms,
    invert,
    mul,
)
from ._shared_files.config import get_config, reload_config, set_config, update_config
from ._shared_files.errors import (
    DomainValidationError,
    NumericalConvergenceError,
    OddIndexError,
)
from ._spectral import (
    HeatCurve,
    ModelGeometry,
    build_circle,
    build_torus3,
    density_integral,
    density_profile,
    flat_gaussian,
    heat_curve,
    heat_supertrace,
    hermite_heat_oracle,
    local_density,
    log_spaced_grid,
    mehler_density,
    outside_mass,
)

try:
    with open(os.path.join(os.path.dirname(os.path.abspath(__file__)), "../VERSION")) as f:
        __version__ = f.read().strip()
except FileNotFoundError:
    __version__ = "unknown"

__all__ = [s for s in dir() if not s.startswith("_")]
