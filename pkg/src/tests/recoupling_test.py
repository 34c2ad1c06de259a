"""Tests for tensor products and the spin/space recoupling identities."""
import math

import numpy as np
import pytest

from spin_chebyshev.angular.geometry import AngleAxis, Euler, UnitVector
from spin_chebyshev.angular.halfint import spin
from spin_chebyshev.chebyshev import first_rank_coefficient, second_rank_coefficient
from spin_chebyshev.exceptions import DomainError
from spin_chebyshev.recoupling import (
    CompositeTensor,
    compose,
    dipolar_diagonal_check,
    rank_coefficient_ratio,
    scalar_product,
    similarity_covariance_residual,
    spin_quadrupole,
    verify_rank1,
    verify_rank2_recoupling,
)


@pytest.fixture
def directions():
    """A handful of seeded directions plus the coordinate poles."""
    rng = np.random.default_rng(7)
    return [UnitVector.z_axis(), UnitVector(math.pi, 0.0)] + [
        UnitVector.random(rng) for _ in range(8)
    ]


@pytest.mark.parametrize("j", ["1", "3/2", "2", "5/2"])
def test_rank2_recoupling(j, directions):
    """Test that the direct, contracted and nested rank-2 forms coincide."""
    for n in directions:
        report = verify_rank2_recoupling(j, n)
        assert report.passed(), report.residuals
        assert set(report.residuals) == {
            "direct-contracted",
            "direct-nested",
            "contracted-nested",
        }


@pytest.mark.parametrize("j", ["1/2", "1", "7/2"])
def test_rank1_contraction(j, directions):
    """Test J.C_1(n) = n.J."""
    for n in directions:
        assert verify_rank1(j, n).max_residual < 1e-12


def test_dipolar_diagonal_along_z():
    """Test that along z the j=1 diagonal is 3m^2 - 2."""
    j = spin(1)
    assert dipolar_diagonal_check(j, UnitVector.z_axis()) < 1e-13


@pytest.mark.parametrize("j", ["1/2", "1", "3/2", "3"])
def test_dipolar_diagonal(j, directions):
    """Test <m|3(n.J)^2 - J.J|m> = P_2(cos theta)(3m^2 - j(j+1))."""
    for n in directions:
        assert dipolar_diagonal_check(j, n) < 1e-12


def test_vector_scalar_coupling(directions):
    """Test {a x b}^0_0 = -a.b / sqrt3."""
    a, b = directions[2], directions[3]
    A = CompositeTensor.from_vector(1, a)
    B = CompositeTensor.from_vector(1, b)
    coupled = compose(A, B, 0)[0].mat
    expected = -a.dot(b) / math.sqrt(3) * np.eye(3)
    np.testing.assert_allclose(coupled, expected, atol=1e-14)
    assert scalar_product(A, B).mat[0, 0].real == pytest.approx(a.dot(b))


def test_compose_rejects_bad_ranks():
    """Test triangle, mixed-spin and unequal-rank errors."""
    J = CompositeTensor.from_spin(1)
    with pytest.raises(DomainError):
        compose(J, J, 3)
    with pytest.raises(DomainError):
        compose(J, CompositeTensor.from_spin(2), 1)
    with pytest.raises(DomainError):
        scalar_product(J, spin_quadrupole(1))
    with pytest.raises(DomainError):
        CompositeTensor(1, 1, {0: J[0]})


@pytest.mark.parametrize("j", ["1", "3/2", "2", "9/2"])
def test_rank_coefficient_ratios(j):
    """Test T_{1 mu} = a_1 J_mu and T_{2 mu} = a_2 sqrt6 {J x J}^2_mu."""
    j = spin(j)
    first = rank_coefficient_ratio(j, 1)
    second = rank_coefficient_ratio(j, 2)
    assert first.spread < 1e-12
    assert second.spread < 1e-12
    assert first.ratio == pytest.approx(first_rank_coefficient(j), abs=1e-13)
    assert second.ratio == pytest.approx(second_rank_coefficient(j), abs=1e-13)
    assert first.expected == pytest.approx(first.ratio, abs=1e-13)


def test_rank_ratio_outside_low_ranks():
    """Test that only ranks 1 and 2 have a spin-component construction."""
    with pytest.raises(DomainError):
        rank_coefficient_ratio(2, 3)


@pytest.mark.parametrize("lam", [1, 2, 3])
def test_polarization_covariance(lam):
    """Test U T_{lam mu} U^dagger = sum_nu D^lam_{nu mu} T_{lam nu}."""
    rotations = [
        AngleAxis(0.9, 0.4, 2.1),
        AngleAxis.about(2.5, UnitVector(2.0, 0.3)),
        Euler(0.3, 1.2, -0.8),
    ]
    for r in rotations:
        assert similarity_covariance_residual(2, lam, r) < 1e-12
        assert CompositeTensor.from_spin(2).covariance_residual(r) < 1e-12
