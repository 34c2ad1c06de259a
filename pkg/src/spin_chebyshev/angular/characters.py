"""Generalized characters chi_lam^(j)(psi).

These are the expansion coefficients of exp(+i psi n.J) in the
Chebyshev operator basis, up to the factor i^lam sqrt((2lam+1)/(2j+1)).
chi_0 is the ordinary SU(2) character.
"""
import math

import numpy as np

from spin_chebyshev.angular.clebsch import factorial
from spin_chebyshev.angular.halfint import SpinLike, rank, spin
from spin_chebyshev.angular.special import gegenbauer_C
from spin_chebyshev.chebyshev import cheb_table
from spin_chebyshev.exceptions import DomainError


def _gegenbauer_route(j, lam: int, psi: float) -> float:
    """Return the closed Gegenbauer form of chi_lam(psi).

    (2lam)!! sqrt(2j+1) sqrt((2j-lam)!/(2j+lam+1)!) s^lam C^{lam+1}_{2j-lam}(c)
    """
    s, c = math.sin(0.5 * psi), math.cos(0.5 * psi)
    coefficient = (2**lam * factorial(lam)) * math.sqrt(
        factorial(j.twice - lam) / factorial(j.twice + lam + 1)
    )
    return (
        coefficient
        * math.sqrt(j.dim)
        * s**lam
        * gegenbauer_C(j.twice - lam, lam + 1, c)
    )


def _chebyshev_route(j, lam: int, psi: float) -> float:
    """Return i^lam sum_m exp(-i m psi) sqrt((2j+1)/(2lam+1)) f_lam(m)."""
    table = cheb_table(j)
    total = np.sum(np.exp(-1j * table.ms * psi) * table.row(lam))
    value = (1j**lam) * math.sqrt(j.dim / (2 * lam + 1)) * total
    return float(value.real)


def generalized_character(
    j: SpinLike, lam: int, psi: float, route: str = "gegenbauer"
) -> float:
    """Return chi_lam^(j)(psi) for 0 <= lam <= 2j.

    route is "gegenbauer" (closed form) or "chebyshev" (finite sum over
    the Chebyshev polynomials); both give the same real value.
    """
    j = spin(j)
    lam = rank(j, lam)
    if route == "gegenbauer":
        return _gegenbauer_route(j, lam, psi)
    if route == "chebyshev":
        return _chebyshev_route(j, lam, psi)
    raise DomainError(f"unknown route {route!r}")
