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

"""Truncated power series in commuting degree-2 root variables with exact coefficients."""

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .._shared_files.errors import SeriesDomainError, VariableMismatchError
from .._shared_files.logger import app_log

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction]

# Every root variable carries form degree 2.
ROOT_DEGREE = 2


def form_degree(exponents: Exponents) -> int:
    """Form degree of a monomial."""

    return ROOT_DEGREE * sum(exponents)


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, Rational):
        raise TypeError(
            f"Series coefficients must be exact rationals, got {type(value).__name__}."
        )
    return Fraction(value)


def _mul_terms(
    left: Mapping[Exponents, Fraction], right: Mapping[Exponents, Fraction], cap: int
) -> Dict[Exponents, Fraction]:
    product: Dict[Exponents, Fraction] = {}
    for ea, ca in left.items():
        da = form_degree(ea)
        if da > cap:
            continue
        for eb, cb in right.items():
            if da + form_degree(eb) > cap:
                continue
            key = tuple(x + y for x, y in zip(ea, eb))
            product[key] = product.get(key, 0) + ca * cb
    return {key: value for key, value in product.items() if value != 0}


class GradedSeries:
    """
    Truncated multivariate power series with exact rational coefficients.

    Attributes:
        variables: Ordered root names; monomials are exponent tuples in this order.
        degree_cap: Largest form degree retained.
    """

    __slots__ = ("variables", "degree_cap", "_terms")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Optional[Mapping[Exponents, Scalar]] = None,
        degree_cap: int = 0,
    ) -> None:
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise SeriesDomainError(f"Duplicate root names in {variables}.")
        if degree_cap < 0:
            raise SeriesDomainError(f"degree_cap must be nonnegative, got {degree_cap}.")

        canonical: Dict[Exponents, Fraction] = {}
        for exponents, coefficient in (terms or {}).items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != len(variables) or any(e < 0 for e in exponents):
                raise SeriesDomainError(
                    f"Exponent vector {exponents} does not match variables {variables}."
                )
            coefficient = _as_fraction(coefficient)
            if coefficient != 0 and form_degree(exponents) <= degree_cap:
                canonical[exponents] = canonical.get(exponents, 0) + coefficient
        self.variables = variables
        self.degree_cap = int(degree_cap)
        self._terms = {key: value for key, value in canonical.items() if value != 0}

    # Constructors

    @classmethod
    def constant(cls, value: Scalar, variables: Sequence[str], cap: int) -> "GradedSeries":
        return cls(variables, {(0,) * len(tuple(variables)): value}, cap)

    @classmethod
    def one(cls, variables: Sequence[str], cap: int) -> "GradedSeries":
        return cls.constant(1, variables, cap)

    @classmethod
    def zero(cls, variables: Sequence[str], cap: int) -> "GradedSeries":
        return cls(variables, {}, cap)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str], cap: int) -> "GradedSeries":
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatchError(f"Root {name!r} is not one of {variables}.")
        exponents = tuple(int(v == name) for v in variables)
        return cls(variables, {exponents: 1}, cap)

    @classmethod
    def from_univariate(
        cls,
        coefficients: Mapping[int, Scalar],
        var: str,
        variables: Sequence[str],
        cap: int,
    ) -> "GradedSeries":
        """
        Embed a univariate series given by power -> coefficient into the variable set.

        Args:
            coefficients: Map from the exponent of `var` to its coefficient.
            var: Root carrying the series.
            variables: Full ordered variable list.
            cap: Degree cap of the result.

        Returns:
            The embedded series.
        """

        variables = tuple(variables)
        if var not in variables:
            raise VariableMismatchError(f"Root {var!r} is not one of {variables}.")
        slot = variables.index(var)
        terms = {}
        for power, coefficient in coefficients.items():
            exponents = [0] * len(variables)
            exponents[slot] = power
            terms[tuple(exponents)] = coefficient
        return cls(variables, terms, cap)

    # Accessors

    @property
    def terms(self) -> Dict[Exponents, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[Exponents, Fraction]]:
        return self._terms.items()

    def coefficient(self, exponents: Exponents) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * len(self.variables))

    def is_zero(self) -> bool:
        return not self._terms

    def max_degree(self) -> int:
        return max((form_degree(e) for e in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.degree_cap == other.degree_cap
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.degree_cap, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return (
            f"GradedSeries(variables={self.variables}, degree_cap={self.degree_cap}, "
            f"terms={len(self._terms)})"
        )

    def __str__(self) -> str:
        return format_terms(self)

    # Arithmetic

    def _check_compatible(self, other: "GradedSeries") -> None:
        if self.variables != other.variables:
            message = f"Variable sets differ: {self.variables} vs {other.variables}."
            app_log.error(message)
            raise VariableMismatchError(message)

    def _coerce(self, other) -> Optional["GradedSeries"]:
        if isinstance(other, GradedSeries):
            self._check_compatible(other)
            return other
        if isinstance(other, Rational) and not isinstance(other, bool):
            return GradedSeries.constant(other, self.variables, self.degree_cap)
        return None

    def truncate(self, cap: int) -> "GradedSeries":
        return GradedSeries(self.variables, self._terms, cap)

    def __add__(self, other) -> "GradedSeries":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        cap = min(self.degree_cap, other.degree_cap)
        merged = dict(self._terms)
        for key, value in other._terms.items():
            merged[key] = merged.get(key, 0) + value
        return GradedSeries(self.variables, merged, cap)

    __radd__ = __add__

    def __neg__(self) -> "GradedSeries":
        return GradedSeries(
            self.variables, {k: -v for k, v in self._terms.items()}, self.degree_cap
        )

    def __sub__(self, other) -> "GradedSeries":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "GradedSeries":
        return (-self) + other

    def __mul__(self, other) -> "GradedSeries":
        if isinstance(other, Rational) and not isinstance(other, bool):
            scale = Fraction(other)
            return GradedSeries(
                self.variables, {k: v * scale for k, v in self._terms.items()}, self.degree_cap
            )
        if not isinstance(other, GradedSeries):
            return NotImplemented
        self._check_compatible(other)
        cap = min(self.degree_cap, other.degree_cap)
        return GradedSeries(self.variables, _mul_terms(self._terms, other._terms, cap), cap)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GradedSeries":
        if isinstance(other, Rational) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("Division of a series by zero.")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, power: int) -> "GradedSeries":
        if not isinstance(power, int) or power < 0:
            raise SeriesDomainError(f"Only nonnegative integer powers are supported, got {power}.")
        result = GradedSeries.one(self.variables, self.degree_cap)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def homogeneous_parts(self) -> Dict[int, Dict[Exponents, Fraction]]:
        """Split the terms by form degree."""

        parts: Dict[int, Dict[Exponents, Fraction]] = {}
        for key, value in self._terms.items():
            parts.setdefault(form_degree(key), {})[key] = value
        return parts

    def extract_degree(self, degree: int) -> "GradedSeries":
        """
        Return the homogeneous part of the given form degree.

        Args:
            degree: Even form degree between 0 and the cap.

        Returns:
            The degree-`degree` part, with the same variables and cap.

        Raises:
            SeriesDomainError: If the degree is odd or outside [0, degree_cap].
        """

        if degree % ROOT_DEGREE:
            raise SeriesDomainError(f"Root monomials have even form degree; got {degree}.")
        if not 0 <= degree <= self.degree_cap:
            raise SeriesDomainError(
                f"Degree {degree} lies outside the retained range [0, {self.degree_cap}]."
            )
        return GradedSeries(
            self.variables,
            {k: v for k, v in self._terms.items() if form_degree(k) == degree},
            self.degree_cap,
        )

    def invert(self) -> "GradedSeries":
        """
        Multiplicative inverse through the degree cap by degreewise long division.

        Raises:
            SeriesDomainError: If the constant term vanishes.
        """

        leading = self.constant_term()
        if leading == 0:
            message = "Cannot invert a series with zero constant term."
            app_log.error(message)
            raise SeriesDomainError(message)

        parts = self.homogeneous_parts()
        zero = (0,) * len(self.variables)
        inverse: Dict[int, Dict[Exponents, Fraction]] = {0: {zero: 1 / leading}}
        for degree in range(ROOT_DEGREE, self.degree_cap + 1, ROOT_DEGREE):
            accumulated: Dict[Exponents, Fraction] = {}
            for step in range(ROOT_DEGREE, degree + 1, ROOT_DEGREE):
                if step not in parts or degree - step not in inverse:
                    continue
                for key, value in _mul_terms(
                    parts[step], inverse[degree - step], self.degree_cap
                ).items():
                    accumulated[key] = accumulated.get(key, 0) + value
            inverse[degree] = {k: -v / leading for k, v in accumulated.items() if v != 0}

        merged = {k: v for part in inverse.values() for k, v in part.items()}
        return GradedSeries(self.variables, merged, self.degree_cap)

    def exp(self) -> "GradedSeries":
        """
        Exponential of a series without constant term, truncated at the cap.

        Raises:
            SeriesDomainError: If the constant term is nonzero.
        """

        if self.constant_term() != 0:
            message = "The exponential is only formed for series with zero constant term."
            app_log.error(message)
            raise SeriesDomainError(message)

        result = GradedSeries.one(self.variables, self.degree_cap)
        power = result
        # u^k has form degree at least 2k
        for k in range(1, self.degree_cap // ROOT_DEGREE + 1):
            power = power * self / k
            if power.is_zero():
                break
            result = result + power
        return result

    def substitute_sign(self, var: str) -> "GradedSeries":
        """Substitute var -> -var."""

        if var not in self.variables:
            raise VariableMismatchError(f"Root {var!r} is not one of {self.variables}.")
        slot = self.variables.index(var)
        return GradedSeries(
            self.variables,
            {k: (-v if k[slot] % 2 else v) for k, v in self._terms.items()},
            self.degree_cap,
        )

    def eval_numeric(self, assignment: Mapping[str, float]) -> float:
        """
        Substitute real values for every root and sum exactly.

        Floats are converted to their exact binary rationals, so the only rounding
        happens in the final conversion.

        Args:
            assignment: Map from root name to value.

        Returns:
            The value of the series as a float.

        Raises:
            SeriesDomainError: If a root has no assigned value.
        """

        missing = [v for v in self.variables if v not in assignment]
        if missing:
            message = f"No value assigned to roots {missing}."
            app_log.error(message)
            raise SeriesDomainError(message)

        values = [Fraction(assignment[v]) for v in self.variables]
        total = Fraction(0)
        for exponents, coefficient in self._terms.items():
            term = coefficient
            for value, e in zip(values, exponents):
                if e:
                    term *= value**e
            total += term
        return float(total)


def _monomial_label(variables: Sequence[str], exponents: Exponents) -> str:
    factors = []
    for name, e in zip(variables, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) or "1"


def format_terms(series: GradedSeries) -> str:
    """
    Render a series as a sorted plain-text monomial list.

    One monomial per line, ordered by form degree and then by descending exponent
    vector, written as `coefficient*monomial`.
    """

    keys = sorted(series.terms, key=lambda e: (form_degree(e), tuple(-x for x in e)))
    return "\n".join(
        f"{series.coefficient(k)}*{_monomial_label(series.variables, k)}" for k in keys
    )


def add(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    return a + b


def mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    return a * b


def invert(a: GradedSeries) -> GradedSeries:
    return a.invert()


def exp_even(
    u: GradedSeries, var: Optional[str] = None, cap: Optional[int] = None
) -> GradedSeries:
    """
    Exponential of a univariate even series.

    Args:
        u: Series with zero constant term.
        var: If given, u must only involve this root.
        cap: If given, u is treated as a polynomial and the result is cut at this cap.

    Returns:
        exp(u) through the cap.
    """

    if var is not None:
        if var not in u.variables:
            raise VariableMismatchError(f"Root {var!r} is not one of {u.variables}.")
        slot = u.variables.index(var)
        stray = [k for k, _ in u.items() if any(e for i, e in enumerate(k) if i != slot)]
        if stray:
            raise SeriesDomainError(f"Series involves roots other than {var!r}.")
    if cap is not None:
        u = u.truncate(cap)
    return u.exp()


def extract_degree(a: GradedSeries, degree: int) -> GradedSeries:
    return a.extract_degree(degree)


def eval_numeric(a: GradedSeries, assignment: Mapping[str, float]) -> float:
    return a.eval_numeric(assignment)
