"""Projection operators onto eigenstates of n.J.

Pi(m, n) = |n, m><n, m| = sum_lam f_lam(m) f_lam(n.J). The coherent state
projector is the m = j member of the family.
"""
import math

import numpy as np

from spin_chebyshev.angular.clebsch import factorial
from spin_chebyshev.angular.geometry import UnitVector
from spin_chebyshev.angular.halfint import SpinLike, projection, spin
from spin_chebyshev.chebyshev import cheb_table
from spin_chebyshev.exceptions import DomainError
from spin_chebyshev.operators.spin import cheb_op_n, direction_rotation, n_dot_J
from spin_chebyshev.operators.spin_operator import SpinOperator

CANONICAL_MAX_TWICE_J = 12


def projector(j: SpinLike, m: SpinLike, n: UnitVector) -> SpinOperator:
    """Return Pi(m, n) from its Chebyshev operator expansion."""
    j = spin(j)
    m = projection(j, m)
    table = cheb_table(j)
    column = table.values[:, j.index_of(m)]
    mat = np.zeros((j.dim, j.dim), dtype=complex)
    for lam in range(j.dim):
        mat += column[lam] * cheb_op_n(j, lam, n).mat
    return SpinOperator(j, mat)


def projector_canonical(j: SpinLike, m: SpinLike, n: UnitVector) -> SpinOperator:
    """Return Pi(m, n) as the Sylvester product prod_{r != m} (n.J - r) / (m - r).

    The product amplifies roundoff through nearly cancelling factors, so
    it is restricted to 2j <= 12.
    """
    j = spin(j)
    m = projection(j, m)
    if j.twice > CANONICAL_MAX_TWICE_J:
        raise DomainError(
            f"Sylvester projector limited to 2j <= {CANONICAL_MAX_TWICE_J}, got j={j}"
        )
    generator = n_dot_J(j, n).mat
    mat = np.eye(j.dim, dtype=complex)
    for r in j.projections():
        if r == m:
            continue
        mat = mat @ (generator - float(r) * np.eye(j.dim)) / float(m - r)
    return SpinOperator(j, mat)


def coherent_state(j: SpinLike, n: UnitVector) -> np.ndarray:
    """Return the ket |n, j> = exp(-i theta n_perp.J) |j j>."""
    j = spin(j)
    return direction_rotation(j, n)[:, -1].copy()


def coherent_projector(j: SpinLike, n: UnitVector) -> SpinOperator:
    """Return |n, j><n, j| = Pi(j, n)."""
    j = spin(j)
    return projector(j, j, n)


def coherent_projector_ducloy(j: SpinLike, n: UnitVector) -> SpinOperator:
    """Return the coherent state projector in Ducloy's form.

    sum_lam (2j)! sqrt(2lam+1) / sqrt((2j+lam+1)! (2j-lam)!)
        * sum_mu C*_{lam mu}(n) T_{lam mu}
    """
    j = spin(j)
    mat = np.zeros((j.dim, j.dim), dtype=complex)
    for lam in range(j.dim):
        weight = math.sqrt(
            (2 * lam + 1)
            * factorial(j.twice) ** 2
            / (factorial(j.twice + lam + 1) * factorial(j.twice - lam))
        )
        mat += weight * cheb_op_n(j, lam, n).mat
    return SpinOperator(j, mat)
