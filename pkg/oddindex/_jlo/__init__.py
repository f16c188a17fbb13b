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

from .character import (
    JLOResult,
    LambdaMulti,
    commutator_matrix,
    d_lambda_supertrace,
    expansion_coefficient,
    fit_power_law,
    iterated_commutator,
    jlo_ch_k,
    lambda_factorial,
    lambda_tilde_factorial,
    small_t_expansion,
    tau_invariance_notes,
)
from .functions import FunctionSpec, multiplication_matrix, required_padding
from .limit import JLOComparison, compare_with_limit, extrapolate_to_zero, jlo_curve, limit_rhs
from .quadrature import simplex_rule
