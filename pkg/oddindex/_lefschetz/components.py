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

"""Fixed-point component descriptions."""

from typing import Dict, List, Optional

from pydantic import BaseModel, validator


class FlatEmbedding(BaseModel):
    """
    Position of a flat fixed torus inside a flat model.

    Attributes:
        normal_axis: Coordinate reflected by the involution.
        offset: Value of that coordinate on the component (0 or pi).
        tangent_axes: Remaining coordinates, ordered to give the orientation.
    """

    normal_axis: int
    offset: float
    tangent_axes: List[int] = []

    @validator("normal_axis")
    def _axis_nonnegative(cls, value):
        if value < 0:
            raise ValueError("normal_axis must be nonnegative")
        return value


class FixedComponentSpec(BaseModel):
    """
    One component F_q of the fixed-point set.

    Attributes:
        name: Label used in reports.
        dim_f: Dimension 2n'.
        codim: Codimension 2m_q + 1.
        orientation_sign: +1 or -1.
        char_numbers: Pontryagin monomial label -> value on the fundamental class.
        flat: All positive-degree characteristic numbers vanish.
        volume: Pairing of the degree-0 class; the number of points when dim_f = 0.
        embedding: Coordinates of a flat component in a built-in model.
    """

    name: str
    dim_f: int
    codim: int
    orientation_sign: int = 1
    char_numbers: Dict[str, float] = {}
    flat: bool = False
    volume: float = 1.0
    embedding: Optional[FlatEmbedding] = None

    @validator("dim_f")
    def _dim_nonnegative(cls, value):
        if value < 0:
            raise ValueError("dim_f must be nonnegative")
        return value

    @validator("codim")
    def _codim_positive(cls, value):
        if value < 1:
            raise ValueError("codim must be at least 1")
        return value

    @validator("orientation_sign")
    def _sign_is_unit(cls, value):
        if value not in (1, -1):
            raise ValueError("orientation_sign must be +1 or -1")
        return value

    @property
    def m(self) -> int:
        return (self.codim - 1) // 2

    @property
    def ambient_dim(self) -> int:
        return self.dim_f + self.codim
