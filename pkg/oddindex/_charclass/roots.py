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

"""Chern-root bookkeeping for a fixed component."""

from dataclasses import dataclass
from typing import Dict, Tuple

from .._shared_files.defaults import NORMAL_BUNDLE, TANGENT_BUNDLE
from .._shared_files.errors import CodimParityError, SeriesDomainError


@dataclass(frozen=True)
class RootSet:
    """
    Starred Chern roots of the tangent and normal bundles of a fixed component.

    A component of dimension 2n' and codimension 2m+1 has n' tangent roots and
    m normal roots; the unpaired normal direction carries none.

    Attributes:
        tangent_roots: Names of the tangent roots.
        normal_roots: Names of the normal roots.
    """

    tangent_roots: Tuple[str, ...] = ()
    normal_roots: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "tangent_roots", tuple(self.tangent_roots))
        object.__setattr__(self, "normal_roots", tuple(self.normal_roots))
        names = self.tangent_roots + self.normal_roots
        if len(set(names)) != len(names):
            raise SeriesDomainError(f"Root names must be unique, got {names}.")

    @classmethod
    def from_dimensions(cls, dim_f: int, codim: int) -> "RootSet":
        """Roots named u1..un' and v1..vm for a component of the given shape."""

        if dim_f < 0 or dim_f % 2:
            raise CodimParityError(
                f"Fixed component dimension must be even and >= 0, got {dim_f}."
            )
        if codim < 1 or codim % 2 == 0:
            raise CodimParityError(
                f"Fixed component codimension must be odd and >= 1, got {codim}."
            )
        return cls(
            tuple(f"u{i}" for i in range(1, dim_f // 2 + 1)),
            tuple(f"v{j}" for j in range(1, (codim - 1) // 2 + 1)),
        )

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.tangent_roots + self.normal_roots

    @property
    def n_prime(self) -> int:
        return len(self.tangent_roots)

    @property
    def m(self) -> int:
        return len(self.normal_roots)

    @property
    def dim_f(self) -> int:
        return 2 * self.n_prime

    @property
    def codim(self) -> int:
        return 2 * self.m + 1

    def groups(self) -> Dict[str, Tuple[str, ...]]:
        """Root names per bundle, for conversion to Pontryagin classes."""

        return {TANGENT_BUNDLE: self.tangent_roots, NORMAL_BUNDLE: self.normal_roots}
