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

from .classes import ahat_series, ch_delta, ch_delta_inverse, local_density
from .pontryagin import (
    PontryaginSeries,
    ahat_pontryagin,
    canonical_label,
    class_degree,
    local_density_pontryagin,
    parse_monomial_label,
    pontryagin_to_roots,
    roots_to_pontryagin,
)
from .roots import RootSet
