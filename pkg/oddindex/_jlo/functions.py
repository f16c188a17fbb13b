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

"""Real trigonometric polynomials on flat tori."""

from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from .._lefschetz import FlatEmbedding
from .._shared_files.errors import DomainValidationError, RestrictionError
from .._shared_files.logger import app_log
from .._spectral import ModelGeometry

Frequency = Tuple[int, ...]

_REALITY_TOLERANCE = 1e-12


class FunctionSpec:
    """
    A real function sum_k c_k e^{i k.x} with finitely many integer frequencies k.

    Attributes:
        dim: Number of coordinates.
        coefficients: Frequency -> complex coefficient, zeros dropped.
    """

    __slots__ = ("dim", "_coefficients")

    def __init__(self, dim: int, coefficients: Mapping[Sequence[int], complex]) -> None:
        self.dim = int(dim)
        cleaned: Dict[Frequency, complex] = {}
        for frequency, value in coefficients.items():
            key = tuple(int(k) for k in frequency)
            if len(key) != self.dim:
                raise DomainValidationError(
                    f"Frequency {key} does not have {self.dim} components."
                )
            value = complex(value)
            if value != 0:
                cleaned[key] = cleaned.get(key, 0) + value
        self._coefficients = {k: v for k, v in sorted(cleaned.items()) if v != 0}

        for key, value in self._coefficients.items():
            partner = self._coefficients.get(tuple(-k for k in key), 0)
            if abs(partner - value.conjugate()) > _REALITY_TOLERANCE * max(1.0, abs(value)):
                message = (
                    f"Coefficients at {key} and its negative are not conjugate; "
                    "the function is not real."
                )
                app_log.error(message)
                raise DomainValidationError(message)

    @classmethod
    def constant(cls, value: float, dim: int) -> "FunctionSpec":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def cos(cls, dim: int, frequency: Sequence[int], amplitude: float = 1.0) -> "FunctionSpec":
        """amplitude * cos(k.x)."""

        key = tuple(frequency)
        if not any(key):
            return cls.constant(amplitude, dim)
        return cls(dim, {key: amplitude / 2, tuple(-k for k in key): amplitude / 2})

    @classmethod
    def sin(cls, dim: int, frequency: Sequence[int], amplitude: float = 1.0) -> "FunctionSpec":
        """amplitude * sin(k.x)."""

        key = tuple(frequency)
        if not any(key):
            return cls(dim, {})
        return cls(dim, {key: -0.5j * amplitude, tuple(-k for k in key): 0.5j * amplitude})

    @property
    def coefficients(self) -> Dict[Frequency, complex]:
        return dict(self._coefficients)

    def items(self) -> Iterable[Tuple[Frequency, complex]]:
        return self._coefficients.items()

    def is_constant(self) -> bool:
        return all(not any(k) for k in self._coefficients)

    def constant_value(self) -> float:
        return self._coefficients.get((0,) * self.dim, 0).real

    def max_frequency(self) -> float:
        """Largest Euclidean norm of a frequency, 0 for constants."""

        return max((float(np.linalg.norm(k)) for k in self._coefficients), default=0.0)

    def is_tau_invariant(self, axes: Iterable[int]) -> bool:
        """Whether f(tau x) = f(x) for the reflection of the given axes."""

        axes = set(axes)
        for key, value in self._coefficients.items():
            mirrored = tuple(-k if i in axes else k for i, k in enumerate(key))
            if abs(self._coefficients.get(mirrored, 0) - value) > _REALITY_TOLERANCE:
                return False
        return True

    def __add__(self, other: "FunctionSpec") -> "FunctionSpec":
        result = self.coefficients
        for key, value in other.items():
            result[key] = result.get(key, 0) + value
        return FunctionSpec(self.dim, result)

    def __mul__(self, other: Union["FunctionSpec", float]) -> "FunctionSpec":
        if not isinstance(other, FunctionSpec):
            return FunctionSpec(self.dim, {k: v * other for k, v in self.items()})
        if other.dim != self.dim:
            raise DomainValidationError(
                f"Cannot multiply functions of {self.dim} and {other.dim} coordinates."
            )
        result: Dict[Frequency, complex] = {}
        for k1, c1 in self.items():
            for k2, c2 in other.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                result[key] = result.get(key, 0) + c1 * c2
        return FunctionSpec(self.dim, result)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionSpec):
            return NotImplemented
        return self.dim == other.dim and self._coefficients == other._coefficients

    def __repr__(self) -> str:
        return f"FunctionSpec(dim={self.dim}, coefficients={self._coefficients})"

    def _phases(self, points) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        points = np.asarray(points, dtype=float).reshape(-1, self.dim)
        frequencies = np.array(list(self._coefficients) or [(0,) * self.dim], dtype=float)
        values = np.array(list(self._coefficients.values()) or [0], dtype=complex)
        return frequencies, values, np.exp(1j * points @ frequencies.T)

    def evaluate(self, points) -> np.ndarray:
        """Values at an (n, dim) array of points."""

        _, values, phases = self._phases(points)
        return np.real(phases @ values)

    def gradient(self, points) -> np.ndarray:
        """(n, dim) array of partial derivatives."""

        frequencies, values, phases = self._phases(points)
        return np.real((phases * values) @ (1j * frequencies))

    def restrict(self, embedding: FlatEmbedding) -> "FunctionSpec":
        """
        Restriction to a flat fixed torus, in its tangent coordinates.

        Args:
            embedding: Where the torus sits in the model.

        Returns:
            A function of len(embedding.tangent_axes) coordinates.

        Raises:
            RestrictionError: If the embedding does not fit this function's coordinates.
        """

        axes = [embedding.normal_axis] + list(embedding.tangent_axes)
        if sorted(axes) != list(range(self.dim)):
            message = (
                f"Embedding with normal axis {embedding.normal_axis} and tangent axes "
                f"{embedding.tangent_axes} does not match {self.dim} coordinates."
            )
            app_log.error(message)
            raise RestrictionError(message)

        result: Dict[Frequency, complex] = {}
        for key, value in self.items():
            phase = np.exp(1j * key[embedding.normal_axis] * embedding.offset)
            reduced = tuple(key[a] for a in embedding.tangent_axes)
            result[reduced] = result.get(reduced, 0) + value * phase
        # e^{i k pi} is +-1 only up to rounding
        result = {k: complex(round(v.real, 15), round(v.imag, 15)) for k, v in result.items()}
        return FunctionSpec(len(embedding.tangent_axes), result)


def required_padding(fs: Sequence[FunctionSpec]) -> int:
    """Basis padding that keeps every product of multiplications by fs exact on the core."""

    return int(np.ceil(sum(f.max_frequency() for f in fs) - 1e-12))


def multiplication_matrix(geom: ModelGeometry, f: FunctionSpec) -> sp.csr_matrix:
    """
    Multiplication by f on the geometry's modes.

    A mode with momentum p goes to p + k with weight c_k; shifted modes outside
    the basis are dropped.
    """

    if f.dim != geom.ambient_dim:
        raise DomainValidationError(
            f"Function of {f.dim} coordinates on a {geom.ambient_dim}-dimensional model."
        )
    size = len(geom.basis)
    rows, cols, values = [], [], []
    for frequency, coefficient in f.items():
        sources, targets = geom.basis.shift(frequency)
        rows.append(targets)
        cols.append(sources)
        values.append(np.full(len(sources), coefficient, dtype=complex))
    if not rows:
        return sp.csr_matrix((size, size), dtype=complex)
    return sp.csr_matrix(
        (np.concatenate(values), (np.concatenate(rows), np.concatenate(cols))),
        shape=(size, size),
        dtype=complex,
    )
