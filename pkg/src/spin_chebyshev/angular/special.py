"""Classical polynomials and renormalized spherical harmonics.

Legendre and Gegenbauer values come from their three-term recurrences,
which accept scalars or numpy arrays. Racah spherical harmonics
C_{lm} = sqrt(4 pi / (2l+1)) Y_{lm} carry the Condon-Shortley phase
through ``scipy.special.lpmv``.
"""
import cmath
import math

import numpy as np
from scipy.special import lpmv

from spin_chebyshev.angular.clebsch import factorial
from spin_chebyshev.angular.geometry import UnitVector
from spin_chebyshev.angular.halfint import SpinLike, spin
from spin_chebyshev.exceptions import DomainError


def double_factorial(n: int) -> int:
    """Return n!! with (-1)!! = 0!! = 1."""
    if n < -1:
        raise DomainError(f"double factorial undefined for {n}")
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def legendre_P(lam: int, x):
    """Return P_lam(x) from (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}."""
    if lam < 0:
        raise DomainError(f"Legendre degree must be non-negative, got {lam}")
    previous, current = np.ones_like(x, dtype=float), np.asarray(x, dtype=float)
    if lam == 0:
        return previous if np.ndim(x) else float(previous)
    for n in range(1, lam):
        following = ((2 * n + 1) * x * current - n * previous) / (n + 1)
        previous, current = current, following
    return current if np.ndim(x) else float(current)


def gegenbauer_C(n: int, alpha: int, x):
    """Return the Gegenbauer polynomial C_n^alpha(x) by recurrence."""
    if n < 0 or alpha < 1:
        raise DomainError(f"need n >= 0 and alpha >= 1, got n={n}, alpha={alpha}")
    previous = np.ones_like(x, dtype=float)
    current = 2.0 * alpha * np.asarray(x, dtype=float)
    if n == 0:
        return previous if np.ndim(x) else float(previous)
    for k in range(2, n + 1):
        previous, current = current, (
            2.0 * x * (k + alpha - 1) * current - (k + 2 * alpha - 2) * previous
        ) / k
    return current if np.ndim(x) else float(current)


def racah_C(lam: int, mu: int, n: UnitVector) -> complex:
    """Return the Racah spherical harmonic C_{lam mu}(n)."""
    if lam < 0 or abs(mu) > lam:
        raise DomainError(f"need |mu| <= lam, got lam={lam}, mu={mu}")
    m = abs(mu)
    norm = math.sqrt(factorial(lam - m) / factorial(lam + m))
    value = norm * float(lpmv(m, lam, math.cos(n.theta))) * cmath.exp(1j * m * n.phi)
    if mu < 0:
        value = (-1) ** m * value.conjugate()
    return value


def character(j: SpinLike, psi: float) -> float:
    """Return the SU(2) character sum_m exp(i m psi)."""
    j = spin(j)
    ms = np.arange(-j.twice, j.twice + 1, 2) / 2.0
    return float(np.sum(np.cos(ms * psi)))
