"""Tests for the angular momentum primitives."""
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm
from scipy.special import eval_gegenbauer, eval_legendre
from sympy import Rational
from sympy.physics.wigner import clebsch_gordan as sympy_clebsch_gordan

from spin_chebyshev.angular.characters import generalized_character
from spin_chebyshev.angular.clebsch import clebsch_gordan, clebsch_gordan_rational
from spin_chebyshev.angular.geometry import (
    AngleAxis,
    Euler,
    UnitVector,
    cos_beta,
    to_euler,
)
from spin_chebyshev.angular.halfint import HalfInt, projection, rank, spin
from spin_chebyshev.angular.special import (
    character,
    double_factorial,
    gegenbauer_C,
    legendre_P,
    racah_C,
)
from spin_chebyshev.angular.wigner import wigner_D, wigner_small_d
from spin_chebyshev.exceptions import DomainError
from spin_chebyshev.operators.spin import n_dot_J, spin_matrices

SPINS = ["0", "1/2", "1", "3/2", "2", "5/2", "3"]


def _coupling_cases(max_twice: int):
    """Yield every allowed (a, alpha, b, beta, c) in twice-values."""
    for ta in range(max_twice + 1):
        for tb in range(max_twice + 1):
            for tc in range(abs(ta - tb), ta + tb + 1, 2):
                for talpha in range(-ta, ta + 1, 2):
                    for tbeta in range(-tb, tb + 1, 2):
                        if abs(talpha + tbeta) <= tc:
                            yield ta, talpha, tb, tbeta, tc


def test_halfint_parsing():
    """Test that strings, floats and Fractions coerce to the same HalfInt."""
    assert HalfInt.coerce("3/2") == HalfInt(3)
    assert HalfInt.coerce(1.5) == HalfInt(3)
    assert HalfInt.coerce(Fraction(3, 2)) == HalfInt(3)
    assert HalfInt.coerce(2) == HalfInt(4)
    assert str(HalfInt(3)) == "3/2"
    assert str(HalfInt(-4)) == "-2"


def test_halfint_rejects_invalid_values():
    """Test that values off the half-integer lattice raise DomainError."""
    with pytest.raises(DomainError):
        HalfInt.coerce(0.3)
    with pytest.raises(DomainError):
        HalfInt.coerce("abc")
    with pytest.raises(DomainError):
        spin(-1)
    with pytest.raises(DomainError):
        projection(spin(1), "1/2")
    with pytest.raises(DomainError):
        rank(spin("1/2"), 2)


def test_projections_and_index():
    """Test the ascending-m basis order."""
    j = spin("3/2")
    assert [str(m) for m in j.projections()] == ["-3/2", "-1/2", "1/2", "3/2"]
    assert j.index_of("-3/2") == 0
    assert j.index_of("3/2") == 3
    assert j.dim == 4


def test_clebsch_gordan_singlet():
    """Test C^{00}_{1 1 1 -1} = 1/sqrt3 exactly."""
    assert clebsch_gordan_rational(1, 1, 1, -1, 0, 0) == Fraction(1, 3)
    singlet = clebsch_gordan(1, 1, 1, -1, 0, 0)
    assert singlet == pytest.approx(1 / math.sqrt(3), abs=1e-15)


@pytest.mark.parametrize("twice_j", range(0, 9))
def test_clebsch_gordan_singlet_sign(twice_j):
    """Test C^{00}_{j m j -m} = (-1)^{j-m} / sqrt(2j+1)."""
    j = HalfInt(twice_j)
    for m in j.projections():
        sign = -1.0 if ((twice_j - m.twice) // 2) % 2 else 1.0
        expected = sign / math.sqrt(j.dim)
        assert clebsch_gordan(j, m, j, -m, 0, 0) == pytest.approx(expected, abs=1e-14)


def test_clebsch_gordan_projection_mismatch_is_zero():
    """Test that gamma != alpha + beta gives 0."""
    assert clebsch_gordan(1, 1, 1, 0, 2, 0) == 0.0


def test_clebsch_gordan_triangle_violation():
    """Test that a triangle violation raises DomainError."""
    with pytest.raises(DomainError):
        clebsch_gordan(1, 0, 1, 0, 3, 0)
    with pytest.raises(DomainError):
        clebsch_gordan("1/2", "3/2", "1/2", 0, 1, 0)


def test_clebsch_gordan_against_sympy():
    """Test every allowed coefficient with 2a, 2b <= 4 against sympy."""
    for ta, talpha, tb, tbeta, tc in _coupling_cases(4):
        ours = clebsch_gordan(
            *(HalfInt(t) for t in (ta, talpha, tb, tbeta, tc, talpha + tbeta))
        )
        reference = float(
            sympy_clebsch_gordan(
                Rational(ta, 2),
                Rational(tb, 2),
                Rational(tc, 2),
                Rational(talpha, 2),
                Rational(tbeta, 2),
                Rational(talpha + tbeta, 2),
            )
        )
        assert ours == pytest.approx(reference, abs=1e-14)


@pytest.mark.parametrize("twice_c", [0, 2, 4])
def test_clebsch_gordan_unitarity(twice_c):
    """Test that sum_{alpha, beta} (C^{c gamma}_{1 alpha 1 beta})^2 = 1."""
    c = HalfInt(twice_c)
    for gamma in c.projections():
        total = sum(
            clebsch_gordan(1, alpha, 1, gamma - alpha, c, gamma) ** 2
            for alpha in spin(1).projections()
            if spin(1).contains(gamma - alpha)
        )
        assert total == pytest.approx(1.0, abs=1e-14)


def test_clebsch_gordan_swap_symmetry():
    """Test C^{c gamma}_{a alpha b beta} = (-1)^{a+b-c} C^{c gamma}_{b beta a alpha}."""
    for ta, talpha, tb, tbeta, tc in _coupling_cases(6):
        a, alpha, b, beta, c = (HalfInt(t) for t in (ta, talpha, tb, tbeta, tc))
        gamma = HalfInt(talpha + tbeta)
        sign = -1 if ((ta + tb - tc) // 2) % 2 else 1
        swapped = clebsch_gordan_rational(b, beta, a, alpha, c, gamma)
        assert clebsch_gordan_rational(a, alpha, b, beta, c, gamma) == sign * swapped


def test_large_spin_clebsch_gordan_is_finite():
    """Test that exact factorials stay finite at 2j = 100."""
    value = clebsch_gordan(50, 0, 50, 0, 100, 0)
    assert math.isfinite(value)
    assert 0.0 < value < 1.0


@pytest.mark.parametrize("j", SPINS)
def test_small_d_at_zero_is_identity(j):
    """Test d^j(0) = 1."""
    d = wigner_small_d(j, 0.0)
    np.testing.assert_allclose(d, np.eye(spin(j).dim), atol=1e-15)


@pytest.mark.parametrize("j", SPINS)
def test_small_d_against_expm(j):
    """Test d^j(beta) against exp(-i beta J_y) from scipy."""
    _, jy, _ = spin_matrices(j)
    for beta in np.linspace(0.0, math.pi, 7):
        expected = expm(-1j * beta * jy.mat)
        np.testing.assert_allclose(wigner_small_d(j, beta), expected, atol=1e-12)


@pytest.mark.parametrize("j", SPINS)
def test_small_d_orthogonality(j):
    """Test sum_m'' d_{m' m''} d_{m m''} = delta_{m' m}."""
    d = wigner_small_d(j, 1.234)
    np.testing.assert_allclose(d @ d.T, np.eye(spin(j).dim), atol=1e-13)


def test_spin_half_small_d():
    """Test the explicit spin-1/2 reduced rotation matrix."""
    beta = 0.7
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    # rows and columns are m = -1/2, +1/2
    expected = [[c, s], [-s, c]]
    np.testing.assert_allclose(wigner_small_d("1/2", beta), expected, atol=1e-15)


@pytest.mark.parametrize("j", ["1/2", "1", "3/2", "2"])
def test_wigner_D_routes_agree(j):
    """Test that the angle-axis and Euler routes give the same D-matrix."""
    rng = np.random.default_rng(7)
    for _ in range(20):
        axis = UnitVector.random(rng)
        r = AngleAxis.about(rng.uniform(-2 * math.pi, 2 * math.pi), axis)
        direct = wigner_D(j, r)
        via_euler = wigner_D(j, r, route="euler")
        generator = n_dot_J(j, axis).mat
        np.testing.assert_allclose(direct, via_euler, atol=1e-11)
        np.testing.assert_allclose(direct, expm(-1j * r.psi * generator), atol=1e-11)


@pytest.mark.parametrize("twice_j", range(0, 13))
def test_wigner_D_is_unitary(twice_j):
    """Test D^dagger D = 1 for random rotations in both parametrizations."""
    j = HalfInt(twice_j)
    rng = np.random.default_rng(twice_j)
    for _ in range(5):
        r = AngleAxis.about(rng.uniform(0.0, 4 * math.pi), UnitVector.random(rng))
        alpha, gamma = rng.uniform(-math.pi, math.pi, size=2)
        e = Euler(alpha, rng.uniform(0.0, math.pi), gamma)
        for D in (wigner_D(j, r), wigner_D(j, e)):
            np.testing.assert_allclose(D.conj().T @ D, np.eye(j.dim), atol=1e-12)


def test_wigner_D_route_errors():
    """Test that an unknown route or mismatched parameters raise DomainError."""
    with pytest.raises(DomainError):
        wigner_D(1, Euler(0.1, 0.2, 0.3), route="angle_axis")
    with pytest.raises(DomainError):
        wigner_D(1, Euler(0.1, 0.2, 0.3), route="quaternion")


@pytest.mark.parametrize("lam", [0, 1, 2, 3])
def test_D_central_element_is_legendre(lam):
    """Test D^lam_{00}(psi; Theta, Phi) = P_lam(1 - 2 sin^2(psi/2) sin^2 Theta)."""
    r = AngleAxis(1.1, 0.6, 2.3)
    value = wigner_D(lam, r)[lam, lam]
    assert value.real == pytest.approx(legendre_P(lam, cos_beta(r)), abs=1e-13)
    assert abs(value.imag) < 1e-13


@pytest.mark.parametrize("lam", [1, 2, 3])
def test_D_column_is_racah_harmonic(lam):
    """Test D^lam_{mu 0}(theta about n_perp) = C*_{lam mu}(theta, phi)."""
    n = UnitVector(0.8, 1.9)
    d = wigner_D(lam, AngleAxis.about(n.theta, n.perpendicular()))
    for mu in range(-lam, lam + 1):
        expected = np.conj(racah_C(lam, mu, n))
        assert d[mu + lam, lam] == pytest.approx(expected, abs=1e-13)


@settings(max_examples=50, deadline=None)
@given(
    psi=st.floats(min_value=0.0, max_value=math.pi),
    theta=st.floats(min_value=0.0, max_value=math.pi),
    phi=st.floats(min_value=0.0, max_value=2 * math.pi),
)
def test_angle_axis_to_euler_invariants(psi, theta, phi):
    """Test sin(beta/2) = sin(Theta) sin(psi/2) after conversion."""
    euler = to_euler(AngleAxis(psi, theta, phi))
    assert math.sin(euler.beta / 2) == pytest.approx(
        math.sin(theta) * math.sin(psi / 2), abs=1e-12
    )
    expected = cos_beta(AngleAxis(psi, theta, phi))
    assert math.cos(euler.beta) == pytest.approx(expected, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    theta=st.floats(min_value=0.0, max_value=math.pi),
    phi=st.floats(min_value=-10.0, max_value=10.0),
)
def test_unit_vector_geometry(theta, phi):
    """Test that directions are unit length and n_perp is orthogonal to n."""
    n = UnitVector(theta, phi)
    assert np.linalg.norm(n.cartesian()) == pytest.approx(1.0, abs=1e-15)
    overlap = n.cartesian() @ n.perpendicular().cartesian()
    assert overlap == pytest.approx(0.0, abs=1e-15)
    assert 0.0 <= n.phi <= 2 * math.pi


def test_unit_vector_validation():
    """Test that invalid polar angles and zero vectors are rejected."""
    with pytest.raises(DomainError):
        UnitVector(4.0, 0.0)
    with pytest.raises(DomainError):
        UnitVector.from_cartesian(0.0, 0.0, 0.0)
    n = UnitVector.from_cartesian(0.0, 2.0, 0.0)
    assert n.theta == pytest.approx(math.pi / 2)
    assert n.phi == pytest.approx(math.pi / 2)


@pytest.mark.parametrize("lam", range(0, 12))
def test_legendre_against_scipy(lam):
    """Test the Legendre recurrence against scipy."""
    xs = np.linspace(-1.0, 1.0, 21)
    np.testing.assert_allclose(legendre_P(lam, xs), eval_legendre(lam, xs), atol=1e-13)


@pytest.mark.parametrize("n, alpha", [(0, 1), (1, 2), (4, 3), (7, 1), (5, 5)])
def test_gegenbauer_against_scipy(n, alpha):
    """Test the Gegenbauer recurrence against scipy."""
    xs = np.linspace(-1.0, 1.0, 11)
    np.testing.assert_allclose(
        gegenbauer_C(n, alpha, xs),
        eval_gegenbauer(n, alpha, xs),
        rtol=1e-12,
        atol=1e-11,
    )


def test_racah_low_ranks():
    """Test the explicit rank-1 Racah harmonics."""
    n = UnitVector(0.4, 1.3)
    assert racah_C(0, 0, n) == pytest.approx(1.0)
    assert racah_C(1, 0, n) == pytest.approx(math.cos(n.theta))
    expected = -math.sin(n.theta) * np.exp(1j * n.phi) / math.sqrt(2)
    assert racah_C(1, 1, n) == pytest.approx(expected, abs=1e-15)
    assert racah_C(1, -1, n) == pytest.approx(-np.conj(expected), abs=1e-15)


def test_double_factorial():
    """Test the double factorial with its conventions at -1 and 0."""
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(7) == 105
    assert double_factorial(8) == 384
    with pytest.raises(DomainError):
        double_factorial(-3)


@pytest.mark.parametrize("j", SPINS)
def test_character_at_identity(j):
    """Test chi^(j)(0) = 2j+1."""
    assert character(j, 0.0) == pytest.approx(spin(j).dim)


def test_spin_half_rank_one_character():
    """Test chi_1^(1/2)(psi) = (2/sqrt3) sin(psi/2)."""
    for psi in np.linspace(-math.pi, 3 * math.pi, 17):
        expected = 2 / math.sqrt(3) * math.sin(psi / 2)
        value = generalized_character("1/2", 1, psi)
        assert value == pytest.approx(expected, abs=1e-13)


@pytest.mark.parametrize("j", SPINS)
def test_generalized_character_routes(j):
    """Test the Gegenbauer and Chebyshev routes and that chi_0 is the character."""
    for psi in np.linspace(0.0, 2 * math.pi, 9):
        value = generalized_character(j, 0, psi)
        assert value == pytest.approx(character(j, psi), abs=1e-12)
        for lam in range(spin(j).dim):
            closed = generalized_character(j, lam, psi)
            summed = generalized_character(j, lam, psi, route="chebyshev")
            assert closed == pytest.approx(summed, abs=1e-11)
