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

"""Exception types raised across Oddindex.

Domain validation failures subclass ValueError and numerical failures subclass
ArithmeticError, so callers that only know the builtin types still catch them.
"""


class OddIndexError(Exception):
    """Base class of all Oddindex errors."""


class DomainValidationError(OddIndexError, ValueError):
    """Input violates a mathematical precondition."""


class VariableMismatchError(DomainValidationError):
    pass


class SeriesDomainError(DomainValidationError):
    pass


class ComponentValidationError(DomainValidationError):
    pass


class EmptyComponentListError(ComponentValidationError):
    pass


class CodimParityError(ComponentValidationError):
    pass


class CodimMod4MismatchError(ComponentValidationError):
    pass


class AmbientMismatchError(ComponentValidationError):
    pass


class CharacteristicNumberError(ComponentValidationError):
    pass


class PhaseExponentError(ComponentValidationError):
    pass


class LiftConstructionError(DomainValidationError):
    """A constructed lift violates one of its axioms.

    Attributes:
        axiom: Short name of the violated identity.
    """

    def __init__(self, axiom: str, message: str) -> None:
        super().__init__(f"{axiom}: {message}")
        self.axiom = axiom


class PaddingError(DomainValidationError):
    pass


class RestrictionError(DomainValidationError):
    pass


class NumericalConvergenceError(OddIndexError, ArithmeticError):
    """A numerical procedure did not reach its requested accuracy."""


class PoleProximityError(NumericalConvergenceError):
    pass


class OracleConvergenceError(NumericalConvergenceError):
    pass


class QuadratureConvergenceError(NumericalConvergenceError):
    pass


class ExtrapolationError(NumericalConvergenceError):
    pass
