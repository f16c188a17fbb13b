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

from .geometry import (
    ANTIPERIODIC,
    PERIODIC,
    SPIN_FLAGS,
    ModeBasis,
    ModelGeometry,
    build_circle,
    build_torus3,
)
from .heat import (
    HeatCurve,
    density_integral,
    density_profile,
    heat_curve,
    heat_supertrace,
    heat_supertrace_estimate,
    local_density,
    log_spaced_grid,
    outside_mass,
    supertrace,
)
from .mehler import flat_gaussian, hermite_heat_oracle, hermite_kernel_1d, mehler_density
