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

"""The A-hat and ch-Delta classes in Chern roots."""

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Optional

from .._series import GradedSeries, exp_even
from .._shared_files.errors import SeriesDomainError
from .roots import RootSet


def _default_cap(roots: RootSet, cap: Optional[int]) -> int:
    cap = roots.dim_f if cap is None else cap
    if cap < 0:
        raise SeriesDomainError(f"Series cap must be nonnegative, got {cap}.")
    return cap


@lru_cache(maxsize=None)
def _ahat_root_factor(cap: int) -> Dict[int, Fraction]:
    # (x/2)/sinh(x/2) as the inverse of sinh(x/2)/(x/2) = sum (x/2)^{2k}/(2k+1)!
    quotient = GradedSeries.from_univariate(
        {2 * k: Fraction(1, 4**k * factorial(2 * k + 1)) for k in range(cap // 4 + 1)},
        "x",
        ("x",),
        cap,
    )
    return {exponents[0]: value for exponents, value in quotient.invert().items()}


def ahat_series(roots: RootSet, cap: Optional[int] = None) -> GradedSeries:
    """
    The A-hat class of the tangent bundle, prod_a (u_a/2)/sinh(u_a/2).

    Args:
        roots: Root set of the component.
        cap: Form-degree cap; defaults to the component dimension.

    Returns:
        The expansion over all roots of the set.
    """

    cap = _default_cap(roots, cap)
    factor = _ahat_root_factor(cap)
    result = GradedSeries.one(roots.variables, cap)
    for name in roots.tangent_roots:
        result = result * GradedSeries.from_univariate(factor, name, roots.variables, cap)
    return result


def ch_delta(roots: RootSet, cap: Optional[int] = None) -> GradedSeries:
    """
    The class prod_b (e^{v_b/2} + e^{-v_b/2}) of the normal bundle.

    Args:
        roots: Root set of the component.
        cap: Form-degree cap; defaults to the component dimension.

    Returns:
        The expansion, with constant term 2^m.
    """

    cap = _default_cap(roots, cap)
    result = GradedSeries.one(roots.variables, cap)
    for name in roots.normal_roots:
        half = GradedSeries.variable(name, roots.variables, cap) / 2
        result = result * (exp_even(half, name) + exp_even(-half, name))
    return result


def ch_delta_inverse(roots: RootSet, cap: Optional[int] = None) -> GradedSeries:
    return ch_delta(roots, cap).invert()


def local_density(roots: RootSet, cap: Optional[int] = None) -> GradedSeries:
    """The integrand A-hat(TF) [ch-Delta(N)]^{-1} of one fixed component."""

    return ahat_series(roots, cap) * ch_delta_inverse(roots, cap)
