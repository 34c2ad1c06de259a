"""Legendre polynomial operators of the spin vector.

Two normalizations are in use and they are kept apart:

* Zemach's P_bar_l(n.J), built from the operator recursion
  (2l+1)(n.J) P_bar_l = (l+1) P_bar_{l+1} + l [J^2 - (l^2-1)/4] P_bar_{l-1},
  which is sqrt((2j+1)[J^2]^l / (2l+1)) f_l(n.J).
* Schwinger's P_l(J) = sqrt((2j+1)/(2l+1)) f_l(J_z), the solid-harmonic
  normalization with diagonal entries P_l(j, m).

[J^2]^l is a product of l factors. Zemach writes it over n = 1..l with
factors J^2 - (n^2 - 1)/4; Schwinger writes it over n = 0..l-1 with
factors J^2 - (n/2)(n/2 + 1). The two are equal term by term after the
shift n -> n + 1, and both are provided.
"""
import math
from fractions import Fraction

import numpy as np

from spin_chebyshev.angular.geometry import UnitVector
from spin_chebyshev.angular.halfint import SpinLike, rank, spin
from spin_chebyshev.chebyshev import cheb_table
from spin_chebyshev.exceptions import DomainError
from spin_chebyshev.operators.spin import casimir, cheb_op_jz, n_dot_J
from spin_chebyshev.operators.spin_operator import SpinOperator


def zemach_norm_product(j: SpinLike, lam: int) -> Fraction:
    """Return [J^2]^lam = prod_{n=1}^{lam} (kappa - (n^2 - 1)/4)."""
    if lam < 0:
        raise DomainError(f"rank must be non-negative, got {lam}")
    kappa = casimir(j)
    product = Fraction(1)
    for n in range(1, lam + 1):
        product *= kappa - Fraction(n * n - 1, 4)
    return product


def schwinger_norm_product(j: SpinLike, lam: int) -> Fraction:
    """Return [J^2]^lam = prod_{n=0}^{lam-1} (kappa - (n/2)(n/2 + 1))."""
    if lam < 0:
        raise DomainError(f"rank must be non-negative, got {lam}")
    kappa = casimir(j)
    product = Fraction(1)
    for n in range(lam):
        half = Fraction(n, 2)
        product *= kappa - half * (half + 1)
    return product


def legendre_op_zemach(j: SpinLike, lam: int, n: UnitVector) -> SpinOperator:
    """Return P_bar_lam(n.J) from Zemach's operator recursion."""
    j = spin(j)
    if lam < 0:
        raise DomainError(f"rank must be non-negative, got {lam}")
    kappa = float(casimir(j))
    generator = n_dot_J(j, n).mat
    previous, current = np.eye(j.dim, dtype=complex), generator.astype(complex)
    if lam == 0:
        return SpinOperator(j, previous)
    for order in range(1, lam):
        previous, current = current, (
            (2 * order + 1) * generator @ current
            - order * (kappa - (order * order - 1) / 4) * previous
        ) / (order + 1)
    return SpinOperator(j, current)


def zemach_scale(j: SpinLike, lam: int) -> float:
    """Return sqrt((2j+1)[J^2]^lam / (2lam+1)), the factor P_bar_lam / f_lam."""
    j = spin(j)
    return math.sqrt(j.dim * zemach_norm_product(j, lam) / (2 * lam + 1))


def legendre_op_schwinger(j: SpinLike, lam: int) -> SpinOperator:
    """Return Schwinger's P_lam(J) = sqrt((2j+1)/(2lam+1)) f_lam(J_z)."""
    j = spin(j)
    lam = rank(j, lam)
    return cheb_op_jz(j, lam) * math.sqrt(j.dim / (2 * lam + 1))


def schwinger_matrix_element(j: SpinLike, lam: int, m: SpinLike) -> float:
    """Return P_lam(j, m) = <jm|P_lam(J)|jm>."""
    j = spin(j)
    lam = rank(j, lam)
    return math.sqrt(j.dim / (2 * lam + 1)) * cheb_table(j)(lam, m)
