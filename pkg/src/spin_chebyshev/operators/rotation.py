"""Rotation operators.

``rotation_exact`` follows the exp(-i psi n.J) convention of ``wigner_D``.
``rotation_corio`` builds exp(+i psi n.J), the sign under which the
Chebyshev operator expansion

    exp(+i psi n.J) = sum_lam i^lam sqrt((2lam+1)/(2j+1)) chi_lam(psi) f_lam(n.J)

holds. Pass -psi to either function to get the other sign.
"""
import math

import numpy as np

from spin_chebyshev.angular.characters import generalized_character
from spin_chebyshev.angular.geometry import AngleAxis, Euler, RotationParams, UnitVector
from spin_chebyshev.angular.halfint import SpinLike, rank, spin
from spin_chebyshev.exceptions import DomainError
from spin_chebyshev.operators.spin import cheb_op_jz, cheb_op_n, n_dot_J, spin_matrices
from spin_chebyshev.operators.spin_operator import SpinOperator


def expm_hermitian(generator: np.ndarray, t: float) -> np.ndarray:
    """Return exp(-i t H) for Hermitian H via its eigendecomposition."""
    eigenvalues, vectors = np.linalg.eigh(generator)
    return (vectors * np.exp(-1j * t * eigenvalues)) @ vectors.conj().T


def rotation_exact(j: SpinLike, r: RotationParams) -> SpinOperator:
    """Return the rotation operator exp(-i psi n.J) (or its Euler-angle product)."""
    j = spin(j)
    if isinstance(r, AngleAxis):
        return SpinOperator(j, expm_hermitian(n_dot_J(j, r.axis).mat, r.psi))
    if isinstance(r, Euler):
        _, jy, jz = spin_matrices(j)
        mat = (
            expm_hermitian(jz.mat, r.alpha)
            @ expm_hermitian(jy.mat, r.beta)
            @ expm_hermitian(jz.mat, r.gamma)
        )
        return SpinOperator(j, mat)
    raise DomainError(f"unsupported rotation parameters {r!r}")


def corio_coefficient(j: SpinLike, lam: int, psi: float) -> complex:
    """Return i^lam sqrt((2lam+1)/(2j+1)) chi_lam(psi)."""
    j = spin(j)
    weight = math.sqrt((2 * lam + 1) / j.dim)
    return (1j**lam) * weight * generalized_character(j, lam, psi)


def rotation_corio(j: SpinLike, psi: float, n: UnitVector) -> SpinOperator:
    """Return exp(+i psi n.J) from its Chebyshev operator expansion."""
    j = spin(j)
    mat = np.zeros((j.dim, j.dim), dtype=complex)
    for lam in range(j.dim):
        mat += corio_coefficient(j, lam, psi) * cheb_op_n(j, lam, n).mat
    return SpinOperator(j, mat)


def cheb_op_n_similarity(j: SpinLike, lam: int, n: UnitVector) -> SpinOperator:
    """Return U f_lam(J_z) U^dagger with U = exp(-i theta n_perp.J)."""
    j = spin(j)
    u = rotation_exact(j, AngleAxis.about(n.theta, n.perpendicular()))
    return u @ cheb_op_jz(j, lam) @ u.dagger()


def rotation_generalized_character(
    j: SpinLike, lam: int, psi: float, n: UnitVector
) -> complex:
    """Return the expansion coefficient Tr[exp(+i psi n.J) f_lam(n.J)]."""
    j = spin(j)
    lam = rank(j, lam)
    forward = rotation_exact(j, AngleAxis.about(-psi, n))
    return complex(np.trace(forward.mat @ cheb_op_n(j, lam, n).mat))


def generalized_character_trace(
    j: SpinLike, lam: int, psi: float, n: UnitVector = None
) -> float:
    """Return chi_lam(psi) recovered as a trace.

    chi_lam = Tr[exp(+i psi n.J) f_lam(n.J)] / (i^lam sqrt((2lam+1)/(2j+1))),
    independent of the axis n (default z).
    """
    j = spin(j)
    overlap = rotation_generalized_character(j, lam, psi, n or UnitVector.z_axis())
    value = overlap / ((1j**lam) * math.sqrt((2 * lam + 1) / j.dim))
    return float(value.real)
