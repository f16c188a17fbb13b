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

"""Conversion between Chern-root and Pontryagin-class presentations."""

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .._series import GradedSeries
from .._shared_files.defaults import NORMAL_BUNDLE, TANGENT_BUNDLE
from .._shared_files.errors import CharacteristicNumberError, SeriesDomainError
from .._shared_files.logger import app_log
from .classes import ahat_series, local_density
from .roots import RootSet

PontryaginClass = Tuple[str, int]
Exponents = Tuple[int, ...]

_FACTOR = re.compile(r"^p(\d+)\((\w+)\)(?:\^(\d+))?$")
_BUNDLE_ORDER = {TANGENT_BUNDLE: 0, NORMAL_BUNDLE: 1}


def _class_sort_key(cls: PontryaginClass) -> Tuple[int, str, int]:
    bundle, index = cls
    return (_BUNDLE_ORDER.get(bundle, len(_BUNDLE_ORDER)), bundle, index)


def canonical_label(powers: Mapping[PontryaginClass, int]) -> str:
    """Label such as p1(TF)^2*p1(N); "1" for the empty monomial."""

    factors = []
    for cls in sorted((c for c, e in powers.items() if e), key=_class_sort_key):
        bundle, index = cls
        exponent = powers[cls]
        factors.append(f"p{index}({bundle})" + (f"^{exponent}" if exponent > 1 else ""))
    return "*".join(factors) or "1"


def parse_monomial_label(label: str) -> Dict[PontryaginClass, int]:
    """
    Parse a Pontryagin monomial label.

    Args:
        label: Factors like "p2(TF)" or "p1(N)^2" joined by "*", or "1".

    Returns:
        Map from class to exponent.

    Raises:
        CharacteristicNumberError: If the label is malformed.
    """

    text = label.replace(" ", "")
    powers: Dict[PontryaginClass, int] = {}
    if text == "1":
        return powers
    for factor in text.split("*"):
        match = _FACTOR.match(factor)
        if not match or int(match.group(1)) < 1:
            raise CharacteristicNumberError(f"Malformed characteristic class label {label!r}.")
        cls = (match.group(2), int(match.group(1)))
        powers[cls] = powers.get(cls, 0) + int(match.group(3) or 1)
    return powers


def class_degree(powers: Mapping[PontryaginClass, int]) -> int:
    """Form degree; p_i has degree 4i."""

    return sum(4 * index * e for (_, index), e in powers.items())


@dataclass(frozen=True)
class PontryaginSeries:
    """
    Exact series in Pontryagin classes of one or more bundles.

    Attributes:
        classes: Ordered classes (bundle, i); exponent vectors follow this order.
        terms: Exponent vector -> coefficient.
        degree_cap: Form-degree cap inherited from the root series.
    """

    classes: Tuple[PontryaginClass, ...]
    terms: Dict[Exponents, Fraction] = field(default_factory=dict)
    degree_cap: int = 0

    def powers(self, exponents: Exponents) -> Dict[PontryaginClass, int]:
        return {cls: e for cls, e in zip(self.classes, exponents) if e}

    def label(self, exponents: Exponents) -> str:
        return canonical_label(self.powers(exponents))

    def degree(self, exponents: Exponents) -> int:
        return class_degree(self.powers(exponents))

    def coefficient_of(self, label: str) -> Fraction:
        target = canonical_label(parse_monomial_label(label))
        for exponents, value in self.terms.items():
            if self.label(exponents) == target:
                return value
        return Fraction(0)

    def extract_degree(self, degree: int) -> "PontryaginSeries":
        return PontryaginSeries(
            self.classes,
            {k: v for k, v in self.terms.items() if self.degree(k) == degree},
            self.degree_cap,
        )

    def monomials_of_degree(self, degree: int) -> List[str]:
        """Labels of every monomial in these classes with the given form degree."""

        labels = []
        bounds = [degree // (4 * index) for _, index in self.classes]
        for exponents in itertools.product(*(range(b + 1) for b in bounds)):
            if self.degree(exponents) == degree:
                labels.append(self.label(exponents))
        return sorted(labels)

    def pair(self, char_numbers: Mapping[str, Union[float, Fraction]]) -> Fraction:
        """
        Evaluate against characteristic numbers, term by term.

        Args:
            char_numbers: Label -> value of the class on the fundamental class.

        Returns:
            Exact sum of coefficient times number.

        Raises:
            CharacteristicNumberError: If a monomial with nonzero coefficient has no value.
        """

        numbers = {canonical_label(parse_monomial_label(k)): v for k, v in char_numbers.items()}
        total = Fraction(0)
        for exponents, coefficient in self.terms.items():
            label = self.label(exponents)
            if label not in numbers:
                message = f"No characteristic number supplied for {label}."
                app_log.error(message)
                raise CharacteristicNumberError(message)
            total += coefficient * Fraction(numbers[label])
        return total

    def __str__(self) -> str:
        keys = sorted(self.terms, key=lambda k: (self.degree(k), self.label(k)))
        return "\n".join(f"{self.terms[k]}*{self.label(k)}" for k in keys)


def _elementary_squares(
    names: Sequence[str], order: int, variables: Sequence[str], cap: int
) -> GradedSeries:
    # e_order(u_1^2, ..., u_r^2)
    slots = [variables.index(n) for n in names]
    terms = {}
    for chosen in itertools.combinations(slots, order):
        exponents = [0] * len(variables)
        for slot in chosen:
            exponents[slot] = 2
        terms[tuple(exponents)] = 1
    return GradedSeries(variables, terms, cap)


def _resolve_groups(
    series: GradedSeries, groups: Optional[Mapping[str, Sequence[str]]]
) -> Dict[str, List[int]]:
    groups = groups if groups is not None else {TANGENT_BUNDLE: series.variables}
    slots: Dict[str, List[int]] = {}
    seen = set()
    for bundle, names in groups.items():
        for name in names:
            if name not in series.variables or name in seen:
                raise SeriesDomainError(f"Root {name!r} is unknown or assigned twice.")
            seen.add(name)
        slots[bundle] = sorted(series.variables.index(n) for n in names)
    if seen != set(series.variables):
        raise SeriesDomainError(
            f"Roots {sorted(set(series.variables) - seen)} belong to no bundle."
        )
    return slots


def _check_symmetric_even(series: GradedSeries, slots: Mapping[str, List[int]]) -> None:
    for exponents, value in series.items():
        if any(e % 2 for e in exponents):
            raise SeriesDomainError(f"Series is not even in the roots: odd monomial {exponents}.")
        # adjacent transpositions generate each symmetric group
        for positions in slots.values():
            for i, j in zip(positions, positions[1:]):
                swapped = list(exponents)
                swapped[i], swapped[j] = swapped[j], swapped[i]
                if series.coefficient(tuple(swapped)) != value:
                    raise SeriesDomainError(
                        f"Series is not symmetric under exchanging roots "
                        f"{series.variables[i]} and {series.variables[j]}."
                    )


def roots_to_pontryagin(
    series: GradedSeries, groups: Optional[Mapping[str, Sequence[str]]] = None
) -> PontryaginSeries:
    """
    Rewrite a symmetric even root series in Pontryagin classes.

    p_i of a bundle is the i-th elementary symmetric polynomial in the squares of
    its roots. The rewrite repeatedly strips the lexicographically leading monomial
    u^{2a} (a non-increasing within each bundle) with the matching product
    prod_i p_i^{a_i - a_{i+1}}.

    Args:
        series: Series symmetric within each bundle and even in every root.
        groups: Bundle name -> root names; defaults to one tangent bundle.

    Returns:
        The same series in Pontryagin classes.

    Raises:
        SeriesDomainError: If the series is not symmetric and even.
    """

    slots = _resolve_groups(series, groups)
    try:
        _check_symmetric_even(series, slots)
    except SeriesDomainError as err:
        app_log.error(str(err))
        raise

    variables = series.variables
    cap = series.degree_cap
    classes = tuple(
        (bundle, i) for bundle, positions in slots.items() for i in range(1, len(positions) + 1)
    )
    elementary = {
        (bundle, i): _elementary_squares([variables[p] for p in positions], i, variables, cap)
        for bundle, positions in slots.items()
        for i in range(1, len(positions) + 1)
    }

    result: Dict[Exponents, Fraction] = {}
    remainder = series
    while not remainder.is_zero():
        leading = max(remainder.terms)
        coefficient = remainder.coefficient(leading)
        exponents: List[int] = []
        product = GradedSeries.one(variables, cap)
        for bundle, positions in slots.items():
            halves = [leading[p] // 2 for p in positions] + [0]
            for i in range(len(positions)):
                power = halves[i] - halves[i + 1]
                exponents.append(power)
                if power:
                    product = product * elementary[(bundle, i + 1)] ** power
        key = tuple(exponents)
        result[key] = result.get(key, 0) + coefficient
        remainder = remainder - product * coefficient

    return PontryaginSeries(classes, {k: v for k, v in result.items() if v != 0}, cap)


def pontryagin_to_roots(
    pseries: PontryaginSeries, groups: Mapping[str, Sequence[str]], variables: Sequence[str]
) -> GradedSeries:
    """
    Substitute elementary symmetric polynomials in squared roots for each class.

    Args:
        pseries: Series in Pontryagin classes.
        groups: Bundle name -> root names.
        variables: Ordered root variables of the result.

    Returns:
        The root series, with the cap of `pseries`.
    """

    variables = tuple(variables)
    cap = pseries.degree_cap
    result = GradedSeries.zero(variables, cap)
    for exponents, coefficient in pseries.terms.items():
        term = GradedSeries.constant(coefficient, variables, cap)
        for (bundle, index), power in zip(pseries.classes, exponents):
            if power:
                if bundle not in groups or index > len(groups[bundle]):
                    raise SeriesDomainError(f"Class p{index}({bundle}) has no roots to expand.")
                term = term * _elementary_squares(groups[bundle], index, variables, cap) ** power
        result = result + term
    return result


def ahat_pontryagin(roots: RootSet, cap: Optional[int] = None) -> PontryaginSeries:
    """A-hat of the tangent bundle in Pontryagin classes."""

    return roots_to_pontryagin(ahat_series(roots, cap), roots.groups())


def local_density_pontryagin(roots: RootSet, cap: Optional[int] = None) -> PontryaginSeries:
    """The fixed-component integrand in Pontryagin classes of TF and N."""

    return roots_to_pontryagin(local_density(roots, cap), roots.groups())
