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

"""Tests for the deformed JLO character on model geometries."""

from fractions import Fraction

import numpy as np
import pytest
import scipy.sparse as sp

from oddindex._jlo.character import (
    JLOResult,
    LambdaMulti,
    commutator_matrix,
    d_lambda_supertrace,
    expansion_coefficient,
    fit_power_law,
    iterated_commutator,
    jlo_ch_k,
    lambda_factorial,
    lambda_tilde_factorial,
    small_t_expansion,
    tau_invariance_notes,
)
from oddindex._jlo.functions import FunctionSpec, multiplication_matrix
from oddindex._shared_files.errors import (
    DomainValidationError,
    PaddingError,
    QuadratureConvergenceError,
)
from oddindex._shared_files.logger import log_stack_info
from oddindex._spectral import ANTIPERIODIC, PERIODIC, build_circle, build_torus3, heat_supertrace


def _shifted_cos():
    return FunctionSpec.constant(2.0, 1) + FunctionSpec.cos(1, (1,))


@pytest.mark.parametrize(
    "geom",
    [
        build_circle(PERIODIC, 1, 6),
        build_circle(ANTIPERIODIC, -1, 6),
        build_torus3(0, [PERIODIC, ANTIPERIODIC, PERIODIC], 1, 3),
    ],
)
def test_k0_with_unit_function_is_the_supertrace(geom):
    """Test that ch_0 of the constant 1 is the McKean-Singer supertrace."""

    result = jlo_ch_k(geom, [FunctionSpec.constant(1.0, geom.ambient_dim)], 0.3)
    assert abs(result.value - heat_supertrace(geom, 0.3)) <= 1e-14
    assert result.quadrature_error == 0.0
    assert result.basis_cutoff == geom.cutoff


@pytest.mark.parametrize("lift_sign", [1, -1])
def test_k0_with_nonconstant_function(lift_sign):
    """Test str(f e^{-tD^2}) for f = 2 + cos on the antiperiodic circle."""

    geom = build_circle(ANTIPERIODIC, lift_sign, 6)
    for t in (0.4, 0.1):
        value = jlo_ch_k(geom, [_shifted_cos()], t).value
        assert value == pytest.approx(lift_sign * np.exp(-t / 4), abs=1e-12)


def test_constant_commutator_gives_zero():
    """Test that a constant f^i makes the character vanish."""

    geom = build_torus3(2, [PERIODIC] * 3, 1, 2)
    fs = [
        FunctionSpec.cos(3, (1, 0, 0)),
        FunctionSpec.constant(1.0, 3),
        FunctionSpec.sin(3, (0, 1, 0)),
    ]
    result = jlo_ch_k(geom, fs, 0.2)
    assert result.value == 0
    assert result.k == 2


def test_k2_on_the_torus_runs():
    """Test a k = 2 evaluation with automatic padding."""

    geom = build_torus3(2, [PERIODIC] * 3, 1, 2)
    fs = [
        FunctionSpec.cos(3, (1, 0, 0)) * FunctionSpec.cos(3, (0, 1, 0)),
        FunctionSpec.sin(3, (1, 0, 0)),
        FunctionSpec.sin(3, (0, 1, 0)),
    ]
    result = jlo_ch_k(geom, fs, 0.5, quad_nodes=4, quadrature_tolerance=1.0)
    assert np.isfinite(result.value)
    assert result.quadrature_error >= 0
    assert result.to_dict()["k"] == 2


def test_quadrature_error_is_raised(mocker):
    """Test the check of the coarse-rule difference."""

    mocker.patch("oddindex._jlo.character._simplex_integral", side_effect=[1.0, 2.0])
    app_log = mocker.patch("oddindex._jlo.character.app_log")
    geom = build_circle(PERIODIC, 1, 3)
    fs = [FunctionSpec.constant(1.0, 1), FunctionSpec.cos(1, (1,)), FunctionSpec.sin(1, (1,))]
    with pytest.raises(QuadratureConvergenceError):
        jlo_ch_k(geom, fs, 0.5)
    assert app_log.error.call_args.kwargs["stack_info"] is log_stack_info


@pytest.mark.parametrize("count", [2, 4])
def test_odd_degree_is_refused(count):
    """Test that only even k is defined."""

    geom = build_circle(PERIODIC, 1, 3)
    with pytest.raises(DomainValidationError):
        jlo_ch_k(geom, [FunctionSpec.constant(1.0, 1)] * count, 0.5)


def test_jlo_result_error_must_be_nonnegative():
    """Test the result invariant."""

    with pytest.raises(DomainValidationError):
        JLOResult(k=0, t=0.1, value=0j, quadrature_error=-1.0, basis_cutoff=4)


def test_commutator_is_derivative():
    """Test [D, cos] = i sin on the circle."""

    geom = build_circle(PERIODIC, 1, 3).with_padding(1)
    commutator = commutator_matrix(geom, FunctionSpec.cos(1, (1,)))
    expected = 1j * multiplication_matrix(geom, FunctionSpec.sin(1, (1,)))
    assert np.allclose(commutator.toarray(), expected.toarray())


def test_commutator_needs_padding():
    """Test that an unpadded basis is refused."""

    with pytest.raises(PaddingError):
        commutator_matrix(build_circle(PERIODIC, 1, 3), FunctionSpec.cos(1, (1,)))


def test_iterated_commutator():
    """Test that the identity commutes with D^2 and order 0 is the operator."""

    geom = build_circle(PERIODIC, 1, 3)
    identity = sp.identity(len(geom.basis), dtype=complex, format="csr")
    assert iterated_commutator(geom, identity, 1).nnz == 0
    assert (iterated_commutator(geom, identity, 0) != identity).nnz == 0


def test_lambda_multi():
    """Test multi-indices and their enumeration."""

    assert LambdaMulti.zero(2).parts == (0, 0)
    assert LambdaMulti((1, 2)).total == 3
    assert [lam.parts for lam in LambdaMulti.up_to(2, 1)] == [(0, 0), (0, 1), (1, 0)]
    with pytest.raises(DomainValidationError):
        LambdaMulti((-1,))


@pytest.mark.parametrize(
    "parts,factorial_,tilde,coefficient",
    [
        ((), 1, 1, Fraction(1)),
        ((0, 0), 1, 2, Fraction(1, 2)),
        ((1, 0), 1, 6, Fraction(-1, 6)),
        ((2,), 2, 3, Fraction(1, 6)),
        ((1, 1), 1, 8, Fraction(1, 8)),
    ],
)
def test_expansion_coefficients(parts, factorial_, tilde, coefficient):
    """Test lambda!, lambda~! and the signed coefficient."""

    lam = LambdaMulti(parts)
    assert lambda_factorial(lam) == factorial_
    assert lambda_tilde_factorial(lam) == tilde
    assert expansion_coefficient(lam) == coefficient


def test_d_lambda_zero_order():
    """Test that the empty multi-index gives str(f e^{-tD^2})."""

    geom = build_circle(ANTIPERIODIC, 1, 6)
    value = d_lambda_supertrace(geom, [_shifted_cos()], (), 0.2)
    assert value == pytest.approx(np.exp(-0.05), abs=1e-12)
    assert small_t_expansion(geom, [_shifted_cos()], 0.2, 0) == pytest.approx(value)


def test_d_lambda_length_mismatch():
    """Test that the multi-index must match the number of commutators."""

    geom = build_circle(PERIODIC, 1, 3)
    with pytest.raises(DomainValidationError):
        d_lambda_supertrace(geom, [FunctionSpec.constant(1.0, 1)], (1,), 0.2)


def test_fit_power_law():
    """Test recovery of c t^p and the zero-value check."""

    ts = [0.4, 0.2, 0.1]
    c, p = fit_power_law(ts, [3 * t**0.5 for t in ts])
    assert c == pytest.approx(3)
    assert p == pytest.approx(0.5)
    with pytest.raises(DomainValidationError):
        fit_power_law(ts, [1.0, 0.0, 1.0])


def test_tau_invariance_notes(mocker):
    """Test that a non-invariant function is noted and warned about."""

    warning = mocker.patch("oddindex._jlo.character.app_log.warning")
    geom = build_circle(PERIODIC, 1, 3)
    notes = tau_invariance_notes(geom, [FunctionSpec.cos(1, (1,)), FunctionSpec.sin(1, (1,))])
    assert notes == ["f^1 is not invariant under the involution"]
    warning.assert_called_once()


@pytest.mark.parametrize(
    "geom,f,g",
    [
        (
            build_torus3(2, [PERIODIC] * 3, 1, 3).with_padding(3),
            FunctionSpec.cos(3, (1, 0, 0)),
            FunctionSpec.constant(0.5, 3) + FunctionSpec.sin(3, (0, 1, 0)),
        ),
        (
            build_circle(ANTIPERIODIC, -1, 4).with_padding(3),
            _shifted_cos(),
            FunctionSpec.sin(1, (2,)),
        ),
    ],
    ids=["torus3", "circle"],
)
def test_commutator_obeys_the_leibniz_rule(geom, f, g):
    """Test [D, fg] = [D, f] g + f [D, g] on the core modes."""

    core = geom.basis.core_indices
    product = commutator_matrix(geom, f * g).toarray()[:, core]
    expanded = (
        commutator_matrix(geom, f) @ multiplication_matrix(geom, g)
        + multiplication_matrix(geom, f) @ commutator_matrix(geom, g)
    ).toarray()[:, core]
    assert np.allclose(product, expanded, rtol=0, atol=1e-12)


@pytest.mark.parametrize("t", [0.4, 0.1])
def test_doubling_the_nodes_stays_within_the_error_estimate(t):
    """Test that the reported quadrature error covers a finer simplex rule."""

    geom = build_torus3(2, [PERIODIC] * 3, 1, 12)
    fs = [
        FunctionSpec.cos(3, (1, 0, 0)) * FunctionSpec.cos(3, (0, 1, 0)),
        FunctionSpec.sin(3, (1, 0, 0)),
        FunctionSpec.sin(3, (0, 1, 0)),
    ]
    coarse = jlo_ch_k(geom, fs, t, quad_nodes=8)
    fine = jlo_ch_k(geom, fs, t, quad_nodes=16)
    assert coarse.quadrature_error > 0
    assert abs(fine.value - coarse.value) <= coarse.quadrature_error


def test_lambda_multi_entry_bound():
    """Test that max_entry cuts each entry as well as the total order."""

    parts = [lam.parts for lam in LambdaMulti.up_to(2, 2, max_entry=1)]
    assert parts == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert [lam.parts for lam in LambdaMulti.up_to(3, 2, max_entry=0)] == [(0, 0, 0)]


def test_small_t_expansion_entry_bound():
    """Test the entrywise box against the explicit sum over its multi-indices."""

    geom = build_circle(PERIODIC, 1, 4)
    fs = [FunctionSpec.constant(1.0, 1), FunctionSpec.cos(1, (1,)), FunctionSpec.sin(1, (1,))]
    t = 0.3
    expected = sum(
        float(expansion_coefficient(LambdaMulti(parts)))
        * d_lambda_supertrace(geom, fs, parts, t)
        for parts in [(0, 0), (0, 1), (1, 0), (1, 1)]
    )
    assert small_t_expansion(geom, fs, t, 2, max_entry=1) == pytest.approx(expected, abs=1e-12)
    assert small_t_expansion(geom, fs, t, 2, max_entry=0) == pytest.approx(
        small_t_expansion(geom, fs, t, 0), abs=1e-14
    )
    with pytest.raises(DomainValidationError):
        small_t_expansion(geom, fs, t, 2, max_entry=-1)
