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

"""Gauss-Legendre rules on the ordered simplex 0 <= s_1 <= ... <= s_k <= 1."""

from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from .._shared_files.errors import DomainValidationError


@lru_cache(maxsize=None)
def _unit_interval_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(nodes)
    return (x + 1) / 2, w / 2


def simplex_rule(k: int, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Iterated Gauss-Legendre rule on the ordered k-simplex.

    The cube [0, 1]^k is collapsed onto the simplex by s_k = x_k and
    s_j = s_{j+1} x_j, with Jacobian s_2 s_3 ... s_k.

    Args:
        k: Simplex dimension.
        nodes: Gauss-Legendre nodes per dimension.

    Returns:
        (points, weights): points of shape (nodes^k, k) with increasing columns,
        weights summing to 1/k!.
    """

    if k < 0:
        raise DomainValidationError(f"Simplex dimension must be nonnegative, got {k}.")
    if nodes < 1:
        raise DomainValidationError(f"Quadrature needs at least one node, got {nodes}.")
    if k == 0:
        return np.zeros((1, 0)), np.ones(1)

    x, w = _unit_interval_rule(nodes)
    grid = np.array(np.meshgrid(*([x] * k), indexing="ij")).reshape(k, -1).T
    weights = np.prod(np.array(np.meshgrid(*([w] * k), indexing="ij")).reshape(k, -1), axis=0)

    points = np.empty_like(grid)
    points[:, k - 1] = grid[:, k - 1]
    for j in range(k - 2, -1, -1):
        points[:, j] = points[:, j + 1] * grid[:, j]
    weights = weights * np.prod(points[:, 1:], axis=1)
    return points, weights
