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

"""Fixed-point index formula for orientation-reversing involutions on odd-dimensional manifolds."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence

from .._charclass import (
    RootSet,
    canonical_label,
    local_density,
    parse_monomial_label,
    roots_to_pontryagin,
)
from .._shared_files.config import get_config
from .._shared_files.errors import (
    AmbientMismatchError,
    CharacteristicNumberError,
    CodimMod4MismatchError,
    CodimParityError,
    ComponentValidationError,
    EmptyComponentListError,
    PhaseExponentError,
)
from .._shared_files.logger import app_log
from .components import FixedComponentSpec


@dataclass
class LefschetzReport:
    """
    Outcome of the fixed-point formula.

    Attributes:
        contributions: Component name -> contribution, in input order.
        total: Sum of the contributions.
        m1: Largest m_q, the grading reference.
        notes: Validation and integrality remarks.
    """

    contributions: Dict[str, float]
    total: float
    m1: int
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "contributions": [
                {"name": name, "value": value} for name, value in self.contributions.items()
            ],
            "total": self.total,
            "m1": self.m1,
            "notes": list(self.notes),
        }

    def __str__(self) -> str:
        lines = [f"{name}: {value}" for name, value in self.contributions.items()]
        lines.append(f"total: {self.total} (m1 = {self.m1})")
        return "\n".join(lines)


def _fail(error_type, message: str):
    app_log.error(message)
    raise error_type(message)


def validate(components: Sequence[FixedComponentSpec]) -> None:
    """
    Check the consistency conditions on a list of fixed components.

    Args:
        components: The fixed components of one problem.

    Returns:
        None

    Raises:
        EmptyComponentListError: If no components are given.
        CodimParityError: If a dimension is odd or a codimension even.
        CodimMod4MismatchError: If two codimensions differ mod 4.
        AmbientMismatchError: If components disagree on the ambient dimension.
    """

    if not components:
        _fail(
            EmptyComponentListError,
            "No fixed components given; a fixed-point-free involution is outside the formula.",
        )

    names = [c.name for c in components]
    if len(set(names)) != len(names):
        _fail(ComponentValidationError, f"Component names must be unique, got {names}.")

    for c in components:
        if c.codim % 2 == 0:
            _fail(CodimParityError, f"CodimParity: {c.name} has even codimension {c.codim}.")
        if c.dim_f % 2:
            _fail(CodimParityError, f"CodimParity: {c.name} has odd dimension {c.dim_f}.")

    first = components[0]
    for c in components[1:]:
        if (c.codim - first.codim) % 4:
            _fail(
                CodimMod4MismatchError,
                f"CodimMod4Mismatch: codim({first.name}) = {first.codim} and "
                f"codim({c.name}) = {c.codim} differ mod 4.",
            )
        if c.ambient_dim != first.ambient_dim:
            _fail(
                AmbientMismatchError,
                f"AmbientMismatch: {first.name} sits in dimension {first.ambient_dim} "
                f"but {c.name} in dimension {c.ambient_dim}.",
            )


def top_form_pairing(spec: FixedComponentSpec) -> Fraction:
    """Value of the local density on the fundamental class of one component."""

    roots = RootSet.from_dimensions(spec.dim_f, spec.codim)
    density = local_density(roots, spec.dim_f)
    if spec.dim_f == 0:
        return density.constant_term() * Fraction(spec.volume)
    if spec.flat:
        return Fraction(0)

    top = roots_to_pontryagin(density.extract_degree(spec.dim_f), roots.groups())
    expected = set(top.monomials_of_degree(spec.dim_f))
    try:
        supplied = {
            canonical_label(parse_monomial_label(label)): value
            for label, value in spec.char_numbers.items()
        }
    except CharacteristicNumberError:
        app_log.error(f"Unreadable characteristic numbers on {spec.name}.")
        raise
    missing = sorted(expected - set(supplied))
    extra = sorted(set(supplied) - expected)
    if missing or extra:
        _fail(
            CharacteristicNumberError,
            f"{spec.name}: characteristic numbers must cover exactly the degree-{spec.dim_f} "
            f"monomials {sorted(expected)}; missing {missing}, unexpected {extra}.",
        )
    return top.pair(supplied)


def exact_contribution(spec: FixedComponentSpec, m1: int) -> Fraction:
    """Contribution of one component as an exact rational."""

    exponent = m1 - spec.m
    if exponent % 2:
        _fail(
            PhaseExponentError,
            f"Phase exponent m1 - m_q = {exponent} for {spec.name} is odd; validate first.",
        )
    phase = -1 if (exponent // 2) % 2 else 1
    return spec.orientation_sign * phase * Fraction(1, 2) * top_form_pairing(spec)


def component_contribution(spec: FixedComponentSpec, m1: int) -> float:
    """
    Contribution (1/2) (sqrt(-1))^{m1 - m_q} of the local density paired on F_q.

    Args:
        spec: The component.
        m1: Largest m over the problem's components.

    Returns:
        The signed real contribution.

    Raises:
        PhaseExponentError: If m1 - m_q is odd.
    """

    return float(exact_contribution(spec, m1))


def index(components: Sequence[FixedComponentSpec]) -> LefschetzReport:
    """
    Evaluate the fixed-point formula for the index of D^+.

    Args:
        components: Fixed components of the involution.

    Returns:
        Report with contributions in input order and their total.
    """

    validate(components)
    m1 = max(c.m for c in components)
    exact = {c.name: exact_contribution(c, m1) for c in components}
    total = sum(exact.values(), Fraction(0))

    notes = [f"m1 = {m1} taken as the largest m_q over {len(components)} components"]
    tolerance = get_config("lefschetz.integrality_tolerance")
    if abs(float(total) - round(float(total))) > tolerance:
        message = f"total {float(total)} is not an integer"
        app_log.warning(message)
        notes.append(message)

    app_log.debug(f"Lefschetz index {float(total)} from {len(components)} components")
    return LefschetzReport(
        contributions={name: float(value) for name, value in exact.items()},
        total=float(total),
        m1=m1,
        notes=notes,
    )


def grading_dependence(m_i: int, m_1: int) -> int:
    """
    Power of sqrt(-1) relating the index for gradings based at F_i and at F_1.

    Args:
        m_i: m of the new reference component.
        m_1: m of the current reference component.

    Returns:
        (m_i - m_1) mod 4, either 0 or 2.

    Raises:
        PhaseExponentError: If the difference is odd.
    """

    difference = m_i - m_1
    if difference % 2:
        _fail(PhaseExponentError, f"Grading change by m_i - m_1 = {difference} is not even.")
    return difference % 4


def rebase_report(report: LefschetzReport, m_i: int) -> LefschetzReport:
    """Re-express a report for the grading based at a component with m = m_i."""

    sign = -1 if grading_dependence(m_i, report.m1) == 2 else 1
    return LefschetzReport(
        contributions={name: sign * value for name, value in report.contributions.items()},
        total=sign * report.total,
        m1=m_i,
        notes=report.notes + [f"grading re-based from m = {report.m1} to m = {m_i}"],
    )
