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

from dataclasses import dataclass
from typing import NamedTuple, Union


@dataclass(frozen=True)
class Status:
    STATUS: str

    def __bool__(self):
        """
        Return True if the check passed.
        """

        return self.STATUS == "PASS"

    def __str__(self) -> str:
        return self.STATUS


class CHECK_STATUS:
    PASS = Status("PASS")
    FAIL = Status("FAIL")

    @staticmethod
    def of(passed: bool) -> Status:
        return CHECK_STATUS.PASS if passed else CHECK_STATUS.FAIL


class Estimate(NamedTuple):
    """
    A numerical value together with a nonnegative error estimate.

    Attributes:
        value: The estimate.
        error: Absolute error estimate.
    """

    value: Union[float, complex]
    error: float
