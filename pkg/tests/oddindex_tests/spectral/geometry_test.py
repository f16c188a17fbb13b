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

"""Tests for the built-in model geometries."""

import numpy as np
import pytest

from oddindex._shared_files.errors import LiftConstructionError
from oddindex._spectral.geometry import (
    ANTIPERIODIC,
    PAULI,
    PERIODIC,
    ModelGeometry,
    build_circle,
    build_torus3,
)


@pytest.mark.parametrize("spin,modes", [(PERIODIC, 7), (ANTIPERIODIC, 6)])
def test_circle_modes(spin, modes):
    """Test integer and half-integer mode sets up to the cutoff."""

    geom = build_circle(spin, 1, 3)
    assert len(geom.basis) == modes
    assert geom.basis.core.all()
    assert np.abs(geom.basis.momenta).max() <= 3
    assert geom.ambient_dim == 1
    assert geom.tau0_square == -1


def test_circle_spectrum_is_the_momenta():
    """Test that D = -i d/dtheta has the mode momenta as eigenvalues."""

    geom = build_circle(PERIODIC, 1, 3)
    eigenvalues, vectors = geom.spectrum()
    assert sorted(eigenvalues) == list(range(-3, 4))
    dirac = geom.dirac.toarray()
    assert np.allclose(dirac @ vectors.toarray(), vectors.toarray() @ np.diag(eigenvalues))


@pytest.mark.parametrize("lift_sign", ["+i", "-i", 1j])
def test_imaginary_circle_lift_is_rejected(lift_sign):
    """Test that tau^2 = -1 is reported by axiom name."""

    with pytest.raises(LiftConstructionError) as err:
        build_circle(PERIODIC, lift_sign, 3)
    assert err.value.axiom == "tau_squared_is_identity"


@pytest.mark.parametrize(
    "kwargs,axiom",
    [
        ({"lift_sign": 2}, "lift_sign"),
        ({"cutoff": 0}, "cutoff"),
        ({"spin_structure": "twisted"}, "spin_structure"),
    ],
)
def test_circle_parameter_errors(kwargs, axiom):
    """Test the construction checks."""

    arguments = {"spin_structure": PERIODIC, "lift_sign": 1, "cutoff": 3, **kwargs}
    with pytest.raises(LiftConstructionError) as err:
        build_circle(**arguments)
    assert err.value.axiom == axiom


@pytest.mark.parametrize(
    "spin,lift_sign,signs",
    [
        (PERIODIC, 1, (1, 1)),
        (PERIODIC, -1, (-1, -1)),
        (ANTIPERIODIC, 1, (1, -1)),
        (ANTIPERIODIC, -1, (-1, 1)),
    ],
)
def test_circle_fixed_points(spin, lift_sign, signs):
    """Test the two fixed points and their orientation signs."""

    components = build_circle(spin, lift_sign, 2).fixed_components
    assert [c.name for c in components] == ["theta=0", "theta=pi"]
    assert tuple(c.orientation_sign for c in components) == signs
    assert all(c.dim_f == 0 and c.codim == 1 for c in components)


@pytest.mark.parametrize("axis,tangent", [(0, [1, 2]), (1, [2, 0]), (2, [0, 1])])
def test_torus3_fixed_tori(axis, tangent):
    """Test the two flat fixed 2-tori of each reflection."""

    geom = build_torus3(axis, [PERIODIC] * 3, 1, 2)
    components = geom.fixed_components
    assert [c.name for c in components] == [f"{'xyz'[axis]}=0", f"{'xyz'[axis]}=pi"]
    for component, offset in zip(components, (0.0, np.pi)):
        assert component.flat
        assert component.dim_f == 2
        assert component.volume == pytest.approx((2 * np.pi) ** 2)
        assert component.embedding.normal_axis == axis
        assert component.embedding.tangent_axes == tangent
        assert component.embedding.offset == pytest.approx(offset)


@pytest.mark.parametrize("lift_sign", [1, -1])
@pytest.mark.parametrize("spin", [[PERIODIC] * 3, [ANTIPERIODIC, PERIODIC, ANTIPERIODIC]])
def test_torus3_lifts_verify(lift_sign, spin):
    """Test that every sign choice of the torus lift satisfies the identities."""

    geom = build_torus3(2, spin, lift_sign, 2)
    tau = geom.tau_lift.toarray()
    dirac = geom.dirac.toarray()
    assert np.allclose(tau @ tau, np.eye(len(geom.basis)))
    assert np.allclose(tau @ dirac, -dirac @ tau)
    assert geom.spinor_rank == 2


def test_torus3_imaginary_lift_is_rejected():
    """Test that epsilon = i breaks tau^2 = 1 on the torus as well."""

    with pytest.raises(LiftConstructionError) as err:
        build_torus3(1, [PERIODIC] * 3, "+i", 2)
    assert err.value.axiom == "tau_squared_is_identity"


def test_torus3_spin_flags_are_checked():
    """Test that a torus needs three spin flags."""

    with pytest.raises(LiftConstructionError):
        build_torus3(0, [PERIODIC], 1, 2)


def test_with_padding_keeps_the_core():
    """Test that padding enlarges the basis but not the trace range."""

    geom = build_torus3(2, [PERIODIC] * 3, 1, 2)
    padded = geom.with_padding(2)
    assert padded.padding == 2
    assert len(padded.basis) > len(geom.basis)
    assert len(padded.basis.core_indices) == len(geom.basis)
    assert geom.with_padding(0) is geom
    assert isinstance(padded, ModelGeometry)


def test_basis_shift():
    """Test mode shifts by a frequency."""

    geom = build_circle(PERIODIC, 1, 2)
    sources, targets = geom.basis.shift([1])
    momenta = geom.basis.momenta[:, 0]
    assert len(sources) == 4
    assert np.array_equal(momenta[targets], momenta[sources] + 1)


def test_heat_operator_is_diagonal_gaussian():
    """Test e^{-tD^2} on the circle."""

    geom = build_circle(PERIODIC, 1, 3)
    heat = geom.heat_operator(0.2).toarray()
    momenta = geom.basis.momenta[:, 0]
    assert np.allclose(heat, np.diag(np.exp(-0.2 * momenta**2)))


def test_truncation_tail_bound_shrinks_with_cutoff():
    """Test the Gaussian tail bound."""

    small = build_circle(PERIODIC, 1, 4).truncation_tail_bound(0.5)
    large = build_circle(PERIODIC, 1, 8).truncation_tail_bound(0.5)
    assert 0 < large < small


def test_describe():
    """Test the geometry summary."""

    summary = build_circle(ANTIPERIODIC, -1, 3).describe()
    assert summary["model"] == "circle"
    assert summary["spin_structure"] == [ANTIPERIODIC]
    assert summary["modes"] == 6
    assert summary["lift_sign"] == -1
    assert summary["tau0_square"] == -1


@pytest.mark.parametrize("axis", [0, 1, 2])
def test_torus3_tau0_squares_to_minus_one(axis):
    """Test the Clifford normal of each reflection and the phase relating it to the lift."""

    geom = build_torus3(axis, [PERIODIC] * 3, 1, 2)
    assert geom.tau0_square == -1
    assert np.allclose(geom.tau0 @ geom.tau0, -np.eye(2))
    assert np.allclose(1j * geom.tau0, PAULI[axis])


def test_lift_without_the_clifford_phase_is_rejected():
    """Test that a spinor factor other than sqrt(-1) tau0 is refused by name."""

    with pytest.raises(LiftConstructionError) as err:
        ModelGeometry(
            "circle",
            (PERIODIC,),
            -1,
            3,
            reflection_axis=0,
            clifford=(np.array([[1.0]], dtype=complex),),
            lift_matrix=np.array([[-1.0]], dtype=complex),
        )
    assert err.value.axiom == "lift_is_phase_times_tau0"


@pytest.mark.parametrize(
    "geom",
    [
        build_circle(ANTIPERIODIC, 1, 4),
        build_circle(PERIODIC, -1, 4),
        build_torus3(0, [PERIODIC] * 3, 1, 3),
        build_torus3(2, [ANTIPERIODIC, PERIODIC, ANTIPERIODIC], -1, 3),
    ],
    ids=lambda geom: f"{geom.name}-{'-'.join(geom.spin_structure)}",
)
def test_lift_reverses_the_spectrum(geom):
    """Test that tau maps the lambda-eigenvectors of D to (-lambda)-eigenvectors."""

    eigenvalues, vectors = geom.spectrum()
    dirac = geom.dirac.toarray()
    mirrored = geom.tau_lift.toarray() @ vectors.toarray()
    assert np.allclose(dirac @ mirrored, -mirrored @ np.diag(eigenvalues), atol=1e-12)
    assert np.allclose(np.sort(eigenvalues), np.sort(-eigenvalues), atol=1e-12)
