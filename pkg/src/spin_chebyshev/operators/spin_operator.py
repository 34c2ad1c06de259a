"""Immutable dense operator on the spin-j Hilbert space."""
from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Union

import numpy as np

from spin_chebyshev.angular.halfint import HalfInt, SpinLike, spin
from spin_chebyshev.exceptions import DomainError

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SpinOperator:
    """A (2j+1)x(2j+1) complex matrix in ascending-m basis order."""

    j: HalfInt
    mat: np.ndarray

    def __post_init__(self):
        """Coerce j, copy the matrix and freeze it."""
        j = spin(self.j)
        mat = np.array(self.mat, dtype=complex)
        if mat.shape != (j.dim, j.dim):
            raise DomainError(f"matrix shape {mat.shape} does not match j={j}")
        mat.setflags(write=False)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "mat", mat)

    @classmethod
    def identity(cls, j: SpinLike) -> "SpinOperator":
        """Return the unit operator."""
        j = spin(j)
        return cls(j, np.eye(j.dim))

    @classmethod
    def diagonal(cls, j: SpinLike, entries) -> "SpinOperator":
        """Return diag(entries) in basis order."""
        return cls(spin(j), np.diag(np.asarray(entries, dtype=complex)))

    def _other(self, other: Union["SpinOperator", np.ndarray]) -> np.ndarray:
        if isinstance(other, SpinOperator):
            if other.j != self.j:
                raise DomainError(f"cannot combine j={self.j} with j={other.j}")
            return other.mat
        return np.asarray(other)

    def __matmul__(self, other) -> "SpinOperator":
        """Matrix product."""
        return SpinOperator(self.j, self.mat @ self._other(other))

    def __add__(self, other) -> "SpinOperator":
        """Sum."""
        return SpinOperator(self.j, self.mat + self._other(other))

    def __sub__(self, other) -> "SpinOperator":
        """Difference."""
        return SpinOperator(self.j, self.mat - self._other(other))

    def __mul__(self, scalar: Number) -> "SpinOperator":
        """Scale by a number."""
        if not isinstance(scalar, Number):
            return NotImplemented
        return SpinOperator(self.j, self.mat * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Number) -> "SpinOperator":
        """Divide by a number."""
        return SpinOperator(self.j, self.mat / scalar)

    def __neg__(self) -> "SpinOperator":
        """Negate."""
        return SpinOperator(self.j, -self.mat)

    def dagger(self) -> "SpinOperator":
        """Return the Hermitian conjugate."""
        return SpinOperator(self.j, self.mat.conj().T)

    def trace(self) -> complex:
        """Return the trace."""
        return complex(np.trace(self.mat))

    def hermiticity_residual(self) -> float:
        """Return max |M - M^dagger|."""
        return float(np.max(np.abs(self.mat - self.mat.conj().T)))

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        """Return True if max |M - M^dagger| < tol."""
        return self.hermiticity_residual() < tol

    def distance(self, other) -> float:
        """Return the entrywise max-norm distance."""
        return float(np.max(np.abs(self.mat - self._other(other))))

    def frobenius_distance(self, other) -> float:
        """Return the Frobenius-norm distance."""
        return float(np.linalg.norm(self.mat - self._other(other)))

    def __repr__(self) -> str:
        """Short summary, not the full matrix."""
        return f"SpinOperator(j={self.j}, dim={self.j.dim})"
