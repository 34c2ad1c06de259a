"""Spin matrices, polarization operators and Chebyshev polynomial operators.

The spin components are taken from ``qutip.jmat`` and reordered into the
package's ascending-m basis. The spin polarization operators

    <jm'|T_{lam mu}|jm> = sqrt((2lam+1)/(2j+1)) C^{jm'}_{jm lam mu}

form an orthonormal basis of the operator space under Tr[A B^dagger],
and T_{lam 0} = f_lam(J_z). Rotating them gives the Chebyshev polynomial
operators

    f_lam(n.J) = sum_mu C*_{lam mu}(n) T_{lam mu}.
"""
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np
from qutip import jmat

from spin_chebyshev.angular.clebsch import clebsch_gordan
from spin_chebyshev.angular.geometry import AngleAxis, UnitVector
from spin_chebyshev.angular.halfint import HalfInt, SpinLike, rank, spin
from spin_chebyshev.angular.special import racah_C
from spin_chebyshev.angular.wigner import wigner_D
from spin_chebyshev.chebyshev import cheb_polynomial, cheb_table
from spin_chebyshev.exceptions import DomainError
from spin_chebyshev.operators.spin_operator import SpinOperator


@lru_cache(maxsize=128)
def _spin_matrices(twice_j: int) -> Tuple[SpinOperator, SpinOperator, SpinOperator]:
    j = HalfInt(twice_j)
    if twice_j == 0:
        zero = SpinOperator(j, np.zeros((1, 1)))
        return zero, zero, zero
    # qutip orders the basis m = j, ..., -j
    components = tuple(
        SpinOperator(j, jmat(twice_j / 2, axis).full()[::-1, ::-1]) for axis in "xyz"
    )
    return components


def spin_matrices(j: SpinLike) -> Tuple[SpinOperator, SpinOperator, SpinOperator]:
    """Return (J_x, J_y, J_z)."""
    return _spin_matrices(spin(j).twice)


def ladder(j: SpinLike) -> Tuple[SpinOperator, SpinOperator]:
    """Return (J_+, J_-)."""
    jx, jy, _ = spin_matrices(j)
    return jx + jy * 1j, jx - jy * 1j


def spherical_components(j: SpinLike) -> Dict[int, SpinOperator]:
    """Return J_{+1} = -(J_x + iJ_y)/sqrt2, J_0 = J_z, J_{-1} = (J_x - iJ_y)/sqrt2."""
    _, _, jz = spin_matrices(j)
    j_plus, j_minus = ladder(j)
    return {1: j_plus * (-(2**-0.5)), 0: jz, -1: j_minus * 2**-0.5}


def n_dot_J(j: SpinLike, n: UnitVector) -> SpinOperator:
    """Return n.J."""
    jx, jy, jz = spin_matrices(j)
    nx, ny, nz = n.cartesian()
    return jx * float(nx) + jy * float(ny) + jz * float(nz)


def casimir(j: SpinLike) -> Fraction:
    """Return kappa = j(j+1) exactly."""
    value = spin(j).value
    return value * (value + 1)


@lru_cache(maxsize=1024)
def _polarization_T(twice_j: int, lam: int, mu: int) -> SpinOperator:
    j = HalfInt(twice_j)
    scale = np.sqrt((2 * lam + 1) / j.dim)
    mat = np.zeros((j.dim, j.dim))
    for m in j.projections():
        m_out = m + HalfInt(2 * mu)
        if j.contains(m_out):
            mat[j.index_of(m_out), j.index_of(m)] = scale * clebsch_gordan(
                j, m, lam, mu, j, m_out
            )
    return SpinOperator(j, mat)


def polarization_T(j: SpinLike, lam: int, mu: int) -> SpinOperator:
    """Return the spin polarization operator T_{lam mu}^(j)."""
    j = spin(j)
    lam = rank(j, lam)
    if int(mu) != mu or abs(mu) > lam:
        raise DomainError(f"projection mu={mu} outside [-{lam}, {lam}]")
    return _polarization_T(j.twice, lam, int(mu))


def polarization_basis(j: SpinLike):
    """Yield ((lam, mu), T_{lam mu}) over the whole operator basis."""
    j = spin(j)
    for lam in range(j.dim):
        for mu in range(-lam, lam + 1):
            yield (lam, mu), polarization_T(j, lam, mu)


def expand_in_polarization_basis(op: SpinOperator) -> Dict[Tuple[int, int], complex]:
    """Return the coefficients Tr[M T^dagger_{lam mu}] of M."""
    return {
        key: complex(np.vdot(t.mat, op.mat)) for key, t in polarization_basis(op.j)
    }


def from_polarization_coefficients(
    j: SpinLike, coefficients: Dict[Tuple[int, int], complex]
) -> SpinOperator:
    """Return sum_{lam mu} c_{lam mu} T_{lam mu}."""
    j = spin(j)
    mat = np.zeros((j.dim, j.dim), dtype=complex)
    for (lam, mu), value in coefficients.items():
        mat += value * polarization_T(j, lam, mu).mat
    return SpinOperator(j, mat)


def statistical_tensors(rho: SpinOperator) -> Dict[Tuple[int, int], complex]:
    """Return the state multipoles rho_{lam mu} = Tr[rho T^dagger_{lam mu}]."""
    return expand_in_polarization_basis(rho)


def cheb_op_jz(j: SpinLike, lam: int) -> SpinOperator:
    """Return f_lam(J_z) = diag(f_lam(m))."""
    table = cheb_table(j)
    return SpinOperator.diagonal(table.j, table.row(lam))


def cheb_op_n(j: SpinLike, lam: int, n: UnitVector) -> SpinOperator:
    """Return f_lam(n.J) = sum_mu C*_{lam mu}(n) T_{lam mu}."""
    j = spin(j)
    lam = rank(j, lam)
    mat = np.zeros((j.dim, j.dim), dtype=complex)
    for mu in range(-lam, lam + 1):
        mat += np.conj(racah_C(lam, mu, n)) * polarization_T(j, lam, mu).mat
    return SpinOperator(j, mat)


def cheb_op_n_recursion(j: SpinLike, lam: int, n: UnitVector) -> SpinOperator:
    """Return f_lam(n.J) by evaluating the Chebyshev polynomial at the matrix n.J."""
    j = spin(j)
    poly = cheb_polynomial(j, lam)
    generator = n_dot_J(j, n).mat
    # Horner's scheme on matrices
    mat = np.zeros((j.dim, j.dim), dtype=complex)
    for coefficient in poly.coef[::-1]:
        mat = mat @ generator + coefficient * np.eye(j.dim)
    return SpinOperator(j, mat)


def direction_rotation(j: SpinLike, n: UnitVector) -> np.ndarray:
    """Return the matrix of exp(-i theta n_perp.J), which carries J_z into n.J."""
    perpendicular = n.perpendicular()
    return wigner_D(j, AngleAxis(n.theta, perpendicular.theta, perpendicular.phi))


def cheb_ops_all(j: SpinLike, n: UnitVector) -> np.ndarray:
    """Return the stack f_lam(n.J), lam = 0..2j, shape (2j+1, 2j+1, 2j+1)."""
    table = cheb_table(j)
    u = direction_rotation(table.j, n)
    return np.einsum("ik,lk,jk->lij", u, table.values, u.conj())


def cheb_op_trace_pair(
    j: SpinLike, lam: int, lam_prime: int, a: UnitVector, b: UnitVector
) -> float:
    """Return Tr[f_lam(a.J) f_lam'(b.J)], which equals delta_{lam lam'} P_lam(a.b)."""
    left = cheb_op_n(j, lam, a).mat
    right = cheb_op_n(j, lam_prime, b).mat
    return float(np.trace(left @ right).real)
