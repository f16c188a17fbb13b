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

"""The deformed JLO character ch_k(sqrt(t) D) and its expansion terms on model geometries."""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from .._shared_files.config import get_config
from .._shared_files.errors import (
    DomainValidationError,
    PaddingError,
    QuadratureConvergenceError,
)
from .._shared_files.logger import app_log, log_stack_info
from .._spectral import ModelGeometry, supertrace
from .._spectral.heat import check_time
from .functions import FunctionSpec, multiplication_matrix, required_padding
from .quadrature import simplex_rule


@dataclass
class JLOResult:
    """
    One value of ch_k(sqrt(t) D) on (f^0, ..., f^k).

    Attributes:
        k: Degree.
        t: Deformation time.
        value: The character value.
        quadrature_error: Difference to a coarser simplex rule.
        basis_cutoff: Momentum cutoff K of the core basis.
    """

    k: int
    t: float
    value: complex
    quadrature_error: float
    basis_cutoff: int

    def __post_init__(self) -> None:
        if self.quadrature_error < 0:
            raise DomainValidationError("quadrature_error must be nonnegative")

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "t": self.t,
            "value": self.value,
            "quadrature_error": self.quadrature_error,
            "basis_cutoff": self.basis_cutoff,
        }


@dataclass(frozen=True)
class LambdaMulti:
    """
    Multi-index (lambda_1, ..., lambda_p) of iterated D^2 commutators.

    Attributes:
        parts: Nonnegative integers.
    """

    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(int(v) for v in self.parts))
        if any(v < 0 for v in self.parts):
            raise DomainValidationError(f"Multi-index entries must be nonnegative: {self.parts}")

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @classmethod
    def zero(cls, p: int) -> "LambdaMulti":
        return cls((0,) * p)

    @classmethod
    def up_to(
        cls, p: int, max_order: int, max_entry: Optional[int] = None
    ) -> Iterator["LambdaMulti"]:
        """
        All multi-indices of length p with |lambda| <= max_order, in lexicographic order.

        If max_entry is given, each lambda_j is also bounded by it.
        """

        top = max_order if max_entry is None else min(max_order, max_entry)
        for parts in itertools.product(range(top + 1), repeat=p):
            if sum(parts) <= max_order:
                yield cls(parts)


def lambda_factorial(lam: LambdaMulti) -> int:
    """lambda! = prod_i lambda_i!."""

    return prod(factorial(v) for v in lam.parts)


def lambda_tilde_factorial(lam: LambdaMulti) -> int:
    """prod_j (lambda_1 + ... + lambda_j + j)."""

    result, running = 1, 0
    for j, value in enumerate(lam.parts, start=1):
        running += value
        result *= running + j
    return result


def expansion_coefficient(lam: LambdaMulti) -> Fraction:
    """(-1)^{|lambda|} / (lambda! lambda~!)."""

    sign = -1 if lam.total % 2 else 1
    return Fraction(sign, lambda_factorial(lam) * lambda_tilde_factorial(lam))


def _degree(fs: Sequence[FunctionSpec]) -> int:
    if not fs:
        raise DomainValidationError("At least f^0 is required.")
    dims = {f.dim for f in fs}
    if len(dims) != 1:
        raise DomainValidationError(f"Functions have mixed numbers of coordinates {sorted(dims)}.")
    return len(fs) - 1


def _padded(geom: ModelGeometry, fs: Sequence[FunctionSpec]) -> ModelGeometry:
    needed = required_padding(fs)
    if geom.padding >= needed:
        return geom
    app_log.debug(f"Padding {geom.name} basis from {geom.padding} to {needed}")
    return geom.with_padding(needed)


def tau_invariance_notes(geom: ModelGeometry, fs: Sequence[FunctionSpec]) -> List[str]:
    """Warn about, and list, functions that are not invariant under the involution."""

    notes = []
    for i, f in enumerate(fs):
        if not f.is_tau_invariant([geom.reflection_axis]):
            message = f"f^{i} is not invariant under the involution"
            app_log.warning(message)
            notes.append(message)
    return notes


def _core_columns(geom: ModelGeometry, operator: sp.spmatrix) -> sp.csc_matrix:
    return sp.csc_matrix(operator)[:, geom.basis.core_indices]


def commutator_matrix(geom: ModelGeometry, f: FunctionSpec) -> sp.csr_matrix:
    """
    [D, f] = D M_f - M_f D on the geometry's basis.

    Args:
        geom: A geometry whose padding covers the frequencies of f.
        f: The function.

    Returns:
        Sparse matrix coupling momenta p and p + k for frequencies k of f.

    Raises:
        PaddingError: If geom.padding is below the largest frequency of f.
    """

    needed = required_padding([f])
    if geom.padding < needed:
        message = (
            f"{geom.name} is padded by {geom.padding} but [D, f] needs {needed}; "
            "use with_padding first."
        )
        app_log.error(message)
        raise PaddingError(message)
    mult = multiplication_matrix(geom, f)
    commutator = sp.csr_matrix(geom.dirac @ mult - mult @ geom.dirac)
    commutator.eliminate_zeros()
    return commutator


def _simplex_trace(
    geom: ModelGeometry,
    f0: sp.spmatrix,
    commutators: Sequence[sp.spmatrix],
    point: np.ndarray,
    t: float,
) -> complex:
    # str(f0 e^{-s_1 tD^2} C_1 e^{-(s_2 - s_1) tD^2} ... C_k e^{-(1 - s_k) tD^2})
    bounds = np.concatenate(([0.0], point, [1.0]))
    gaps = np.diff(bounds)
    columns = _core_columns(geom, geom.heat_operator(gaps[-1] * t))
    for commutator, gap in zip(reversed(commutators), reversed(gaps[:-1])):
        columns = geom.heat_operator(gap * t) @ (commutator @ columns)
    return supertrace(geom, f0 @ columns)


def _simplex_integral(geom, f0, commutators, t, nodes) -> complex:
    points, weights = simplex_rule(len(commutators), nodes)
    total = 0j
    for point, weight in zip(points, weights):
        total += weight * _simplex_trace(geom, f0, commutators, point, t)
    return total


def jlo_ch_k(
    geom: ModelGeometry,
    fs: Sequence[FunctionSpec],
    t: float,
    quad_nodes: Optional[int] = None,
    quadrature_tolerance: Optional[float] = None,
) -> JLOResult:
    """
    Evaluate ch_k(sqrt(t) D)(f^0, ..., f^k) by quadrature over the ordered simplex.

    The integrand is t^{k/2} str(f^0 e^{-s_1 tD^2} [D, f^1] ... [D, f^k] e^{-(1 - s_k) tD^2}).

    The basis is padded to keep products exact on the core modes. The error
    estimate compares the rule with `quad_nodes` against one with two fewer nodes.

    Args:
        geom: The model.
        fs: f^0, ..., f^k with k even.
        t: Positive deformation time.
        quad_nodes: Gauss-Legendre nodes per simplex dimension.
        quadrature_tolerance: Largest accepted error relative to max(1, |value|).

    Returns:
        The value with its quadrature error.

    Raises:
        QuadratureConvergenceError: If the error estimate exceeds the tolerance.
    """

    k = _degree(fs)
    if k % 2:
        raise DomainValidationError(f"The character is defined for even k, got k = {k}.")
    check_time(t)
    if quad_nodes is None:
        quad_nodes = get_config("jlo.quad_nodes")
    if quadrature_tolerance is None:
        quadrature_tolerance = get_config("jlo.quadrature_tolerance")
    tau_invariance_notes(geom, fs)

    # k = 0 with constant f^0 is the McKean-Singer trace itself
    if k == 0 and fs[0].is_constant():
        value = fs[0].constant_value() * supertrace(geom, geom.heat_operator(t))
        return JLOResult(
            k=0, t=t, value=complex(value), quadrature_error=0.0, basis_cutoff=geom.cutoff
        )

    padded = _padded(geom, fs)
    f0 = multiplication_matrix(padded, fs[0])
    commutators = [commutator_matrix(padded, f) for f in fs[1:]]
    scale = t ** (k / 2)

    if any(c.nnz == 0 for c in commutators):
        return JLOResult(k=k, t=t, value=0j, quadrature_error=0.0, basis_cutoff=geom.cutoff)

    value = scale * _simplex_integral(padded, f0, commutators, t, quad_nodes)
    error = 0.0
    if k > 0:
        coarse = scale * _simplex_integral(padded, f0, commutators, t, max(1, quad_nodes - 2))
        error = abs(value - coarse)
        if error > quadrature_tolerance * max(1.0, abs(value)):
            message = (
                f"Simplex quadrature with {quad_nodes} nodes at t = {t} has error estimate "
                f"{error:.3g} above tolerance {quadrature_tolerance:.3g}."
            )
            app_log.error(message, stack_info=log_stack_info)
            raise QuadratureConvergenceError(message)

    app_log.debug(f"ch_{k} at t = {t}: {value} (quadrature error {error:.3g})")
    return JLOResult(
        k=k, t=t, value=complex(value), quadrature_error=error, basis_cutoff=geom.cutoff
    )


def iterated_commutator(geom: ModelGeometry, operator: sp.spmatrix, order: int) -> sp.csr_matrix:
    """B^{[l]} = [D^2, B^{[l-1]}] with B^{[0]} = B."""

    squared = geom.dirac_squared
    result = sp.csr_matrix(operator)
    for _ in range(order):
        result = sp.csr_matrix(squared @ result - result @ squared)
        result.eliminate_zeros()
    return result


def d_lambda_supertrace(
    geom: ModelGeometry, fs: Sequence[FunctionSpec], lam: LambdaMulti, t: float
) -> complex:
    """
    The supertrace str(tau D^lambda_t e^{-tD^2}).

    D^lambda = f^0 [D, f^1]^{[lambda_1]} ... [D, f^p]^{[lambda_p]} and D^lambda_t is
    D^lambda scaled by t^{p/2 + |lambda|}.

    Args:
        geom: The model; padded as needed.
        fs: f^0, ..., f^p.
        lam: Multi-index of length p.
        t: Positive time.

    Returns:
        The supertrace scaled by t^{p/2 + |lambda|}.
    """

    p = _degree(fs)
    if not isinstance(lam, LambdaMulti):
        lam = LambdaMulti(tuple(lam))
    if len(lam) != p:
        raise DomainValidationError(f"Multi-index {lam.parts} does not match {p} commutators.")
    check_time(t)

    padded = _padded(geom, fs)
    columns = _core_columns(padded, padded.heat_operator(t))
    for f, order in zip(reversed(fs[1:]), reversed(lam.parts)):
        columns = iterated_commutator(padded, commutator_matrix(padded, f), order) @ columns
    columns = multiplication_matrix(padded, fs[0]) @ columns
    return t ** (p / 2 + lam.total) * supertrace(padded, columns)


def small_t_expansion(
    geom: ModelGeometry,
    fs: Sequence[FunctionSpec],
    t: float,
    max_order: int,
    max_entry: Optional[int] = None,
) -> complex:
    """
    Sum of expansion_coefficient(lambda) * d_lambda_supertrace over a box of multi-indices.

    The sum runs over |lambda| <= max_order. The local expansion only needs the
    entrywise range 0 <= lambda_j <= dim - k; pass max_entry = dim - k to cut each
    entry there as well. Without max_entry only the total order is bounded, which
    keeps terms that vanish as t goes to 0.

    Args:
        geom: The geometry.
        fs: f^0, ..., f^k.
        t: Positive time.
        max_order: Bound on |lambda|.
        max_entry: Optional bound on each lambda_j.

    Returns:
        The truncated expansion.
    """

    if max_order < 0:
        raise DomainValidationError(f"max_order must be nonnegative, got {max_order}.")
    if max_entry is not None and max_entry < 0:
        raise DomainValidationError(f"max_entry must be nonnegative, got {max_entry}.")
    padded = _padded(geom, fs)
    total = 0j
    for lam in LambdaMulti.up_to(len(fs) - 1, max_order, max_entry):
        total += float(expansion_coefficient(lam)) * d_lambda_supertrace(padded, fs, lam, t)
    return total


def fit_power_law(ts: Sequence[float], values: Sequence[complex]) -> Tuple[float, float]:
    """
    Least-squares fit of |value| = c t^p on a log-log scale.

    Returns:
        (c, p).
    """

    magnitudes = np.abs(np.asarray(values, dtype=complex))
    if len(magnitudes) < 2 or np.any(magnitudes == 0):
        raise DomainValidationError("A power-law fit needs at least two nonzero values.")
    slope, intercept = np.polyfit(np.log(np.asarray(ts, dtype=float)), np.log(magnitudes), 1)
    return float(np.exp(intercept)), float(slope)
