"""Density matrices and phase-space kernels.

All kernels are finite sums over Chebyshev polynomial operators f_lam(n.J):

    dequantizer  Pi(m, n) = sum_lam f_lam(m) f_lam(n.J)
    quantizer    Xi(m, n) = sum_lam (2lam+1) f_lam(m) f_lam(n.J)
    Stratonovich-Weyl  Delta(n) = (2j+1)^(-1/2) sum_lam sqrt(2lam+1) f_lam(n.J)
"""
import math
from dataclasses import dataclass

import numpy as np

from spin_chebyshev.angular.geometry import UnitVector
from spin_chebyshev.angular.halfint import SpinLike, projection, spin
from spin_chebyshev.angular.special import legendre_P
from spin_chebyshev.chebyshev import cheb_table
from spin_chebyshev.exceptions import DomainError
from spin_chebyshev.operators.projectors import coherent_state
from spin_chebyshev.operators.spin import cheb_ops_all
from spin_chebyshev.operators.spin_operator import HERMITIAN_TOL, SpinOperator

DENSITY_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DensityMatrix(SpinOperator):
    """A Hermitian, positive semidefinite, unit-trace SpinOperator."""

    tol: float = DENSITY_TOL

    def __post_init__(self):
        """Validate the density matrix constraints within tol."""
        super().__post_init__()
        residual = self.hermiticity_residual()
        if residual > max(self.tol, HERMITIAN_TOL):
            raise DomainError(
                f"density matrix is not Hermitian (residual {residual:.3g})"
            )
        trace = self.trace()
        if abs(trace - 1.0) > self.tol:
            raise DomainError(f"density matrix trace is {trace}, expected 1")
        smallest = float(np.min(np.linalg.eigvalsh(self.mat)))
        if smallest < -self.tol:
            raise DomainError(f"density matrix has negative eigenvalue {smallest:.3g}")

    @classmethod
    def from_operator(
        cls, op: SpinOperator, tol: float = DENSITY_TOL
    ) -> "DensityMatrix":
        """Validate an operator as a density matrix after symmetrizing it."""
        return cls(op.j, 0.5 * (op.mat + op.mat.conj().T), tol)

    @classmethod
    def maximally_mixed(cls, j: SpinLike) -> "DensityMatrix":
        """Return I / (2j+1)."""
        j = spin(j)
        return cls(j, np.eye(j.dim) / j.dim)

    @classmethod
    def pure(cls, j: SpinLike, ket: np.ndarray) -> "DensityMatrix":
        """Return |psi><psi| for a ket given in basis order (normalized here)."""
        j = spin(j)
        ket = np.asarray(ket, dtype=complex)
        if ket.shape != (j.dim,):
            raise DomainError(f"ket of shape {ket.shape} does not match j={j}")
        norm = np.linalg.norm(ket)
        if norm == 0:
            raise DomainError("zero ket")
        ket = ket / norm
        return cls(j, np.outer(ket, ket.conj()))

    @classmethod
    def basis_state(cls, j: SpinLike, m: SpinLike) -> "DensityMatrix":
        """Return |j m><j m|."""
        j = spin(j)
        ket = np.zeros(j.dim)
        ket[j.index_of(projection(j, m))] = 1.0
        return cls.pure(j, ket)

    @classmethod
    def coherent(cls, j: SpinLike, n: UnitVector) -> "DensityMatrix":
        """Return the spin coherent state |n, j><n, j|."""
        return cls.pure(j, coherent_state(j, n))

    @classmethod
    def random(cls, j: SpinLike, rng: np.random.Generator) -> "DensityMatrix":
        """Return A A^dagger / Tr(A A^dagger) for a complex Gaussian A."""
        j = spin(j)
        a = rng.normal(size=(j.dim, j.dim)) + 1j * rng.normal(size=(j.dim, j.dim))
        rho = a @ a.conj().T
        rho = 0.5 * (rho + rho.conj().T)
        return cls(j, rho / np.trace(rho).real)

    def __repr__(self) -> str:
        """Short summary."""
        return f"DensityMatrix(j={self.j}, dim={self.j.dim})"


def _combine(weights: np.ndarray, stack: np.ndarray, j) -> SpinOperator:
    return SpinOperator(j, np.tensordot(weights, stack, axes=1))


def sw_weights(j: SpinLike) -> np.ndarray:
    """Return sqrt((2lam+1)/(2j+1)) for lam = 0..2j."""
    j = spin(j)
    return np.sqrt((2 * np.arange(j.dim) + 1) / j.dim)


def sw_kernel(j: SpinLike, n: UnitVector) -> SpinOperator:
    """Return the Stratonovich-Weyl kernel Delta(n)."""
    j = spin(j)
    return _combine(sw_weights(j), cheb_ops_all(j, n), j)


def dequantizer(j: SpinLike, m: SpinLike, n: UnitVector) -> SpinOperator:
    """Return Pi(m, n) = sum_lam f_lam(m) f_lam(n.J)."""
    table = cheb_table(j)
    column = table.values[:, table.j.index_of(projection(table.j, m))]
    return _combine(column, cheb_ops_all(table.j, n), table.j)


def quantizer(j: SpinLike, m: SpinLike, n: UnitVector) -> SpinOperator:
    """Return Xi(m, n) = sum_lam (2lam+1) f_lam(m) f_lam(n.J)."""
    table = cheb_table(j)
    column = table.values[:, table.j.index_of(projection(table.j, m))]
    degeneracy = 2 * np.arange(table.j.dim) + 1
    return _combine(degeneracy * column, cheb_ops_all(table.j, n), table.j)


def _legendre_series(coefficients: np.ndarray, x: float) -> float:
    return math.fsum(c * legendre_P(lam, x) for lam, c in enumerate(coefficients))


def sw_traciality_delta(j: SpinLike, n: UnitVector, n_prime: UnitVector) -> float:
    """Return sum_lam ((2lam+1)/4pi) P_lam(n.n'), the Stratonovich-Weyl delta."""
    j = spin(j)
    degeneracy = (2 * np.arange(j.dim) + 1) / (4 * math.pi)
    return _legendre_series(degeneracy, n.dot(n_prime))


def sw_traciality_trace(j: SpinLike, n: UnitVector, n_prime: UnitVector) -> float:
    """Return ((2j+1)/4pi) Tr[Delta(n) Delta(n')]."""
    j = spin(j)
    product = sw_kernel(j, n).mat @ sw_kernel(j, n_prime).mat
    return j.dim * float(np.trace(product).real) / (4 * math.pi)


def sw_reproducing_kernel(j: SpinLike, n: UnitVector, grid) -> SpinOperator:
    """Return the quadrature of delta(n, n') Delta(n') over n'.

    The result reproduces Delta(n) when the grid is exact to degree 4j.
    """
    j = spin(j)
    mat = grid.integrate(
        lambda node: sw_traciality_delta(j, n, node) * sw_kernel(j, node).mat
    )
    return SpinOperator(j, mat)


def tomographic_kernel(
    j: SpinLike, m: SpinLike, n: UnitVector, m_prime: SpinLike, n_prime: UnitVector
) -> float:
    """Return Tr[Xi(m', n') Pi(m, n)].

    Equal to sum_lam (2lam+1) f_lam(m) f_lam(m') P_lam(n.n').
    """
    table = cheb_table(j)
    a = table.values[:, table.j.index_of(projection(table.j, m))]
    b = table.values[:, table.j.index_of(projection(table.j, m_prime))]
    degeneracy = 2 * np.arange(table.j.dim) + 1
    return _legendre_series(degeneracy * a * b, n.dot(n_prime))


def cheb_moments(rho: SpinOperator, n: UnitVector) -> np.ndarray:
    """Return F_lam(n) = Tr[rho f_lam(n.J)] for lam = 0..2j."""
    stack = cheb_ops_all(rho.j, n)
    return np.einsum("ij,lji->l", rho.mat, stack).real


def husimi_Q(rho: SpinOperator, n: UnitVector) -> float:
    """Return Q(n) = Tr[rho Pi(j, n)] = sum_lam f_lam(j) F_lam(n)."""
    table = cheb_table(rho.j)
    return float(table.values[:, -1] @ cheb_moments(rho, n))


def wigner_W(rho: SpinOperator, n: UnitVector) -> float:
    """Return W(n) = Tr[rho Delta(n)]."""
    return float(sw_weights(rho.j) @ cheb_moments(rho, n))

