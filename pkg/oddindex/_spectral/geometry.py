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

"""Truncated Dirac operators with involution lifts on flat model geometries."""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from .._lefschetz import FixedComponentSpec, FlatEmbedding
from .._shared_files.errors import LiftConstructionError
from .._shared_files.logger import app_log

PERIODIC = "periodic"
ANTIPERIODIC = "antiperiodic"
SPIN_FLAGS = (PERIODIC, ANTIPERIODIC)

AXIS_NAMES = ("x", "y", "z")

# Pauli matrices, the flat Clifford generators in three dimensions
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# Matrix entries are small dyadic numbers, so the lift identities hold exactly;
# the tolerance only absorbs representation noise.
_AXIOM_TOLERANCE = 1e-12


def _max_abs(matrix: sp.spmatrix) -> float:
    data = sp.coo_matrix(matrix).data
    return float(np.abs(data).max()) if data.size else 0.0


@dataclass(frozen=True, eq=False)
class ModeBasis:
    """
    Plane-wave spinor modes e^{i p.x} (x) e_s inside a momentum ball.

    Momenta are stored doubled so half-integer lattices have integer keys.

    Attributes:
        twice_momenta: (N, d) integer array of 2p, one row per mode.
        spin: (N,) spinor component of each mode.
        core: (N,) mask of modes inside the nominal cutoff.
    """

    twice_momenta: np.ndarray
    spin: np.ndarray
    core: np.ndarray

    def __len__(self) -> int:
        return len(self.spin)

    @property
    def momenta(self) -> np.ndarray:
        return self.twice_momenta / 2.0

    @property
    def dim(self) -> int:
        return self.twice_momenta.shape[1]

    @cached_property
    def _positions(self) -> Dict[Tuple[Tuple[int, ...], int], int]:
        return {
            (tuple(int(v) for v in p), int(s)): i
            for i, (p, s) in enumerate(zip(self.twice_momenta, self.spin))
        }

    @cached_property
    def core_indices(self) -> np.ndarray:
        return np.flatnonzero(self.core)

    def lookup(self, twice_momentum: Sequence[int], spin: int) -> Optional[int]:
        return self._positions.get((tuple(int(v) for v in twice_momentum), int(spin)))

    def shift(self, frequency: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
        """
        Pairs (source, target) of modes with p_target = p_source + frequency.

        Args:
            frequency: Integer frequency vector.

        Returns:
            Index arrays of equal length, sources whose shifted mode leaves the
            basis omitted.
        """

        step = 2 * np.asarray(frequency, dtype=int)
        sources, targets = [], []
        for i, (p, s) in enumerate(zip(self.twice_momenta, self.spin)):
            j = self._positions.get((tuple(int(v) for v in p + step), int(s)))
            if j is not None:
                sources.append(i)
                targets.append(j)
        return np.asarray(sources, dtype=int), np.asarray(targets, dtype=int)


def _momentum_lattice(
    spin_structure: Sequence[str], radius: int, cutoff: int
) -> Tuple[np.ndarray, np.ndarray]:
    # Z on periodic axes, Z + 1/2 on antiperiodic ones; Euclidean ball of the given radius
    axes = []
    for flag in spin_structure:
        offset = 0 if flag == PERIODIC else 1
        axes.append([v for v in range(-2 * radius, 2 * radius + 1) if v % 2 == offset % 2])
    points = np.array(list(itertools.product(*axes)), dtype=int).reshape(-1, len(axes))
    norms = (points**2).sum(axis=1)
    inside = norms <= (2 * radius) ** 2
    return points[inside], norms[inside] <= (2 * cutoff) ** 2


class ModelGeometry:
    """
    A flat spin manifold (R / 2 pi Z)^d with a reflection, realized on a truncated mode basis.

    D acts on e^{i p.x} (x) s as the Clifford symbol sum_j gamma_j p_j. The lift of the
    reflection of one axis is lift_sign * U composed with the pullback, which sends
    momentum p to its mirror image.

    Attributes:
        name: Model name.
        ambient_dim: Dimension d (odd).
        spinor_rank: Rank of the spinor bundle.
        cutoff: Nominal cutoff K; traces run over |p| <= K.
        padding: Extra momentum radius kept for operator products.
        spin_structure: Per-axis periodic/antiperiodic flags.
        lift_sign: Scalar factor in the lift.
        reflection_axis: The reflected coordinate.
        basis: The mode basis.
        dirac: Sparse matrix of D.
        tau_lift: Sparse matrix of the lift.
        fixed_components: Derived fixed components.
        tau0_square: Square of Clifford multiplication by the unit normal, +1 or -1.
    """

    def __init__(
        self,
        name: str,
        spin_structure: Sequence[str],
        lift_sign: Union[int, complex],
        cutoff: int,
        reflection_axis: int,
        clifford: Sequence[np.ndarray],
        lift_matrix: np.ndarray,
        padding: int = 0,
    ) -> None:
        if cutoff < 1:
            raise LiftConstructionError("cutoff", f"cutoff must be at least 1, got {cutoff}")
        if padding < 0:
            raise LiftConstructionError("padding", f"padding must be nonnegative, got {padding}")
        if len(spin_structure) != len(clifford):
            raise LiftConstructionError(
                "spin_structure",
                f"{name} needs {len(clifford)} spin flags, got {len(spin_structure)}",
            )
        unknown = [flag for flag in spin_structure if flag not in SPIN_FLAGS]
        if unknown:
            raise LiftConstructionError("spin_structure", f"unknown flags {unknown}")
        if not 0 <= reflection_axis < len(clifford):
            raise LiftConstructionError(
                "reflection_axis", f"axis {reflection_axis} outside 0..{len(clifford) - 1}"
            )

        self.name = name
        self.ambient_dim = len(clifford)
        self.spinor_rank = lift_matrix.shape[0]
        self.cutoff = int(cutoff)
        self.padding = int(padding)
        self.spin_structure = tuple(spin_structure)
        self.lift_sign = lift_sign
        self.reflection_axis = int(reflection_axis)
        self._clifford = tuple(np.asarray(g, dtype=complex) for g in clifford)
        self._lift_matrix = np.asarray(lift_matrix, dtype=complex)

        momenta, core = _momentum_lattice(self.spin_structure, self.cutoff + self.padding, cutoff)
        rank = self.spinor_rank
        self.basis = ModeBasis(
            twice_momenta=np.repeat(momenta, rank, axis=0),
            spin=np.tile(np.arange(rank), len(momenta)),
            core=np.repeat(core, rank),
        )
        self._momenta = momenta
        self.dirac = self._assemble_dirac()
        self.tau_lift = self._assemble_lift()
        self.verify_lift()
        self.fixed_components = self._fixed_components()

        app_log.debug(
            f"Built {name}: {len(self.basis)} modes, cutoff {cutoff}, padding {padding}, "
            f"spin structure {self.spin_structure}, lift sign {lift_sign}"
        )

    # Assembly

    @cached_property
    def _dirac_blocks(self) -> np.ndarray:
        momenta = self._momenta / 2.0
        return np.einsum("mj,jab->mab", momenta, np.stack(self._clifford))

    def _block_matrix(self, blocks: np.ndarray) -> sp.csr_matrix:
        count, rank, _ = blocks.shape
        offsets = np.arange(count) * rank
        rows = (offsets[:, None, None] + np.arange(rank)[None, :, None]).repeat(rank, axis=2)
        cols = (offsets[:, None, None] + np.arange(rank)[None, None, :]).repeat(rank, axis=1)
        matrix = sp.csr_matrix(
            (blocks.ravel(), (rows.ravel(), cols.ravel())), shape=(count * rank,) * 2
        )
        matrix.eliminate_zeros()
        return matrix

    def _assemble_dirac(self) -> sp.csr_matrix:
        return self._block_matrix(self._dirac_blocks)

    def _mirror_positions(self) -> np.ndarray:
        mirrored = self._momenta.copy()
        mirrored[:, self.reflection_axis] *= -1
        lookup = {tuple(p): i for i, p in enumerate(map(tuple, self._momenta))}
        return np.array([lookup[tuple(p)] for p in mirrored], dtype=int)

    def _assemble_lift(self) -> sp.csr_matrix:
        rank = self.spinor_rank
        mirror = self._mirror_positions()
        block = self.lift_sign * self._lift_matrix
        rows, cols, values = [], [], []
        for source, target in enumerate(mirror):
            for j in range(rank):
                for k in range(rank):
                    if block[j, k] != 0:
                        rows.append(target * rank + j)
                        cols.append(source * rank + k)
                        values.append(block[j, k])
        size = len(self.basis)
        return sp.csr_matrix((values, (rows, cols)), shape=(size, size), dtype=complex)

    @property
    def tau0(self) -> np.ndarray:
        """Clifford multiplication by the unit normal, c(e_a) = -i gamma_a."""

        return -1j * self._clifford[self.reflection_axis]

    @property
    def tau0_square(self) -> int:
        square = self.tau0 @ self.tau0
        return int(np.rint(np.real(np.trace(square)) / self.spinor_rank))

    def verify_lift(self) -> None:
        """
        Check the lift identities on the truncated basis.

        Besides the operator identities, the spinor part of the lift must be the
        phase sqrt(-1) times tau0, and tau0 must square to -1.

        Raises:
            LiftConstructionError: Naming the first violated identity.
        """

        identity = sp.identity(len(self.basis), dtype=complex, format="csr")
        tau, dirac = self.tau_lift, self.dirac
        tau0 = self.tau0
        rank_identity = np.eye(self.spinor_rank, dtype=complex)
        checks = [
            ("tau_squared_is_identity", tau @ tau - identity),
            ("tau_self_adjoint", tau - tau.getH()),
            ("tau_unitary", tau @ tau.getH() - identity),
            ("tau_anticommutes_with_dirac", tau @ dirac + dirac @ tau),
            ("dirac_self_adjoint", dirac - dirac.getH()),
            ("tau0_squares_to_minus_one", sp.csr_matrix(tau0 @ tau0 + rank_identity)),
            ("lift_is_phase_times_tau0", sp.csr_matrix(self._lift_matrix - 1j * tau0)),
        ]
        for axiom, residual in checks:
            error = _max_abs(residual)
            if error > _AXIOM_TOLERANCE:
                message = (
                    f"{self.name} with spin structure {self.spin_structure} and lift sign "
                    f"{self.lift_sign} violates {axiom} (residual {error:.3g})"
                )
                app_log.error(message)
                raise LiftConstructionError(axiom, message)

    def _fixed_components(self) -> List[FixedComponentSpec]:
        axis = self.reflection_axis
        tangent = [(axis + i) % self.ambient_dim for i in range(1, self.ambient_dim)]
        sign = int(np.real(self.lift_sign))
        # the mirror point x_a = pi sees the holonomy of the spin structure along axis a
        holonomy = 1 if self.spin_structure[axis] == PERIODIC else -1
        dim_f = self.ambient_dim - 1
        label = "theta" if self.ambient_dim == 1 else AXIS_NAMES[axis]
        components = []
        placements = ((0.0, "0", sign), (np.pi, "pi", sign * holonomy))
        for offset, offset_label, orientation in placements:
            components.append(
                FixedComponentSpec(
                    name=f"{label}={offset_label}",
                    dim_f=dim_f,
                    codim=1,
                    orientation_sign=orientation,
                    flat=True,
                    volume=1.0 if dim_f == 0 else (2 * np.pi) ** dim_f,
                    embedding=FlatEmbedding(
                        normal_axis=axis, offset=float(offset), tangent_axes=tangent
                    ),
                )
            )
        return components

    # Derived operators

    @property
    def volume(self) -> float:
        return (2 * np.pi) ** self.ambient_dim

    @cached_property
    def dirac_squared(self) -> sp.csr_matrix:
        squared = self.dirac @ self.dirac
        squared.eliminate_zeros()
        return sp.csr_matrix(squared)

    @cached_property
    def _squared_blocks(self) -> np.ndarray:
        blocks = self._dirac_blocks
        return blocks @ blocks

    def heat_operator(self, t: float) -> sp.csr_matrix:
        """
        e^{-t D^2}, exponentiated block by block in the eigenbasis of D^2.

        Args:
            t: Nonnegative time.

        Returns:
            Sparse block-diagonal matrix.
        """

        blocks = self._squared_blocks
        rank = self.spinor_rank
        off_diagonal = blocks * (1 - np.eye(rank))
        scale = 1.0 + np.abs(blocks).max(initial=0.0)
        if np.abs(off_diagonal).max(initial=0.0) <= _AXIOM_TOLERANCE * scale:
            diagonal = np.real(np.einsum("maa->ma", blocks))
            return sp.diags(np.exp(-t * diagonal).ravel(), format="csr").astype(complex)
        eigenvalues, vectors = np.linalg.eigh(blocks)
        heat = np.einsum("mab,mb,mcb->mac", vectors, np.exp(-t * eigenvalues), vectors.conj())
        return self._block_matrix(heat)

    def spectrum(self) -> Tuple[np.ndarray, sp.csr_matrix]:
        """
        Eigenvalues of D and a block-diagonal unitary of eigenvectors.

        Returns:
            (eigenvalues, V) with D V = V diag(eigenvalues).
        """

        eigenvalues, vectors = np.linalg.eigh(self._dirac_blocks)
        return eigenvalues.ravel(), self._block_matrix(vectors)

    def with_padding(self, padding: int) -> "ModelGeometry":
        """The same model on a basis enlarged by `padding`; traces still run over |p| <= K."""

        if padding == self.padding:
            return self
        return ModelGeometry(
            self.name,
            self.spin_structure,
            self.lift_sign,
            self.cutoff,
            self.reflection_axis,
            self._clifford,
            self._lift_matrix,
            padding=padding,
        )

    def truncation_tail_bound(self, t: float) -> float:
        """
        Bound on the trace-norm tail of tau e^{-t D^2} beyond the cutoff.

        For |p| > K, e^{-t|p|^2} <= e^{-t K^2 / 2} e^{-t |p|^2 / 2}, and the remaining
        lattice sum factorizes over axes.
        """

        total = 1.0
        for flag in self.spin_structure:
            shift = 0.0 if flag == PERIODIC else 0.5
            n = np.arange(-4096, 4097) + shift
            total *= float(np.exp(-0.5 * t * n**2).sum())
        return self.spinor_rank * float(np.exp(-0.5 * t * self.cutoff**2)) * total

    def describe(self) -> Dict:
        return {
            "model": self.name,
            "ambient_dim": self.ambient_dim,
            "cutoff": self.cutoff,
            "padding": self.padding,
            "modes": len(self.basis),
            "spin_structure": list(self.spin_structure),
            "lift_sign": self.lift_sign,
            "reflection_axis": self.reflection_axis,
            "tau0_square": self.tau0_square,
        }


def _parse_lift_sign(lift_sign: Union[int, complex, str]) -> Union[int, complex]:
    if isinstance(lift_sign, str):
        lift_sign = {"+1": 1, "1": 1, "-1": -1, "+i": 1j, "i": 1j, "-i": -1j}.get(
            lift_sign.strip(), lift_sign
        )
    if lift_sign not in (1, -1, 1j, -1j):
        raise LiftConstructionError(
            "lift_sign", f"lift_sign must be one of +-1, +-i, got {lift_sign!r}"
        )
    return lift_sign


def build_circle(
    spin_structure: str, lift_sign: Union[int, complex, str], cutoff: int, padding: int = 0
) -> ModelGeometry:
    """
    The circle R / 2 pi Z with D = -i d/dtheta and the reflection theta -> -theta.

    Args:
        spin_structure: "periodic" (integer modes) or "antiperiodic" (half-integer modes).
        lift_sign: Factor epsilon in tau e_k = epsilon e_{-k}.
        cutoff: Largest |k| kept.
        padding: Extra modes kept for operator products.

    Returns:
        The verified geometry.

    Raises:
        LiftConstructionError: If the requested lift violates an identity.
    """

    return ModelGeometry(
        "circle",
        (spin_structure,),
        _parse_lift_sign(lift_sign),
        cutoff,
        reflection_axis=0,
        clifford=(np.array([[1.0]], dtype=complex),),
        lift_matrix=np.array([[1.0]], dtype=complex),
        padding=padding,
    )


def build_torus3(
    reflection_axis: int,
    spin_structure: Sequence[str],
    lift_sign: Union[int, complex, str],
    cutoff: int,
    padding: int = 0,
) -> ModelGeometry:
    """
    The flat 3-torus with D = sigma . p and the reflection of one coordinate.

    The lift is epsilon sigma_a composed with the pullback; it anticommutes with D
    because sigma_a anticommutes with the other two Pauli matrices.

    Args:
        reflection_axis: Reflected coordinate, 0, 1 or 2.
        spin_structure: Three periodic/antiperiodic flags.
        lift_sign: The factor epsilon.
        cutoff: Euclidean momentum cutoff K.
        padding: Extra momentum radius kept for operator products.

    Returns:
        The verified geometry.
    """

    return ModelGeometry(
        "torus3",
        tuple(spin_structure),
        _parse_lift_sign(lift_sign),
        cutoff,
        reflection_axis=reflection_axis,
        clifford=PAULI,
        lift_matrix=PAULI[reflection_axis] if 0 <= reflection_axis < 3 else PAULI[0],
        padding=padding,
    )
