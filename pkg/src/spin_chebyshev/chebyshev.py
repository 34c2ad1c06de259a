"""Chebyshev polynomials of a discrete variable.

f_lam^(j)(m), lam = 0..2j, are orthonormal on the lattice m = -j..j:

    sum_m f_lam(m) f_lam'(m) = delta_{lam lam'}

Three independent constructions are provided. The three-term recursion
(``cheb_scalar_recursion``) is the production path. It runs on the
monic polynomials in exact rationals, so the table stays orthonormal to
roundoff for large j. The Clebsch-Gordan duality (``cheb_scalar_cg``)
and Bateman's finite-difference formula (``cheb_scalar_bateman``) exist
to cross-check it. The global sign is fixed by f_lam(j) > 0.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial

from spin_chebyshev.angular.clebsch import clebsch_gordan, factorial, signed_sqrt
from spin_chebyshev.angular.halfint import HalfInt, SpinLike, projection, rank, spin


def recursion_coefficient(a: int, b: float) -> float:
    """Return G(a, b) = sqrt(a^2 ((2b+1)^2 - a^2) / (4a^2 - 1))."""
    a2 = a * a
    return math.sqrt(a2 * ((2 * b + 1) ** 2 - a2) / (4 * a2 - 1))


def first_rank_coefficient(j: SpinLike) -> float:
    """Return a_1(j) = sqrt(3 / (j(j+1)(2j+1))), so that f_1(m) = a_1 m."""
    jf = float(spin(j))
    return math.sqrt(3.0 / (jf * (jf + 1) * (2 * jf + 1)))


def second_rank_coefficient(j: SpinLike) -> float:
    """Return a_2(j) = sqrt(5 / (j(j+1)(2j+3)(2j-1)(2j+1)))."""
    jf = float(spin(j))
    return math.sqrt(5.0 / (jf * (jf + 1) * (2 * jf + 3) * (2 * jf - 1) * (2 * jf + 1)))


def _monic_coefficient(j: HalfInt, lam: int) -> Fraction:
    """Return G(lam, j)^2 / 4, the exact coefficient of the monic recursion."""
    lam2 = lam * lam
    return Fraction(lam2 * ((j.twice + 1) ** 2 - lam2), 4 * (4 * lam2 - 1))


def _monic_values(j: HalfInt, x: Fraction) -> list:
    """Return p_0(x)..p_2j(x) with p_{lam+1} = x p_lam - (G_lam^2 / 4) p_{lam-1}."""
    values = [Fraction(1)]
    if j.twice >= 1:
        values.append(x)
    for lam in range(1, j.twice):
        values.append(x * values[lam] - _monic_coefficient(j, lam) * values[lam - 1])
    return values


def _recursion_rows(j: HalfInt, ms: np.ndarray) -> np.ndarray:
    """Return f_0..f_2j evaluated at the points ms, one row per rank.

    The recursion runs on the monic polynomials p_lam in exact rationals;
    f_lam(m) = f_lam(j) p_lam(m) / p_lam(j) with f_lam(j) in closed form.
    """
    top = _monic_values(j, Fraction(j.twice, 2))
    edge = [cheb_at_top(j, lam) for lam in range(j.dim)]
    rows = np.zeros((j.dim, len(ms)))
    for col, m in enumerate(ms):
        monic = _monic_values(j, Fraction(float(m)))
        rows[:, col] = [
            edge[lam] * float(monic[lam] / top[lam]) for lam in range(j.dim)
        ]
    return rows


def cheb_scalar_recursion(j: SpinLike, lam: int, m: SpinLike) -> float:
    """Return f_lam^(j)(m) from the three-term recursion."""
    j = spin(j)
    lam = rank(j, lam)
    m = projection(j, m)
    return float(_recursion_rows(j, np.array([float(m)]))[lam, 0])


def cheb_scalar_cg(j: SpinLike, lam: int, m: SpinLike) -> float:
    """Return f_lam^(j)(m) = (-1)^{j-m} C^{lam 0}_{j m j -m}."""
    j = spin(j)
    lam = rank(j, lam)
    m = projection(j, m)
    sign = -1.0 if ((j.twice - m.twice) // 2) % 2 else 1.0
    return sign * clebsch_gordan(j, m, j, -m, lam, 0)


def _binomial(top: int, k: int) -> int:
    """Return binom(top, k) by the product formula, valid for negative top."""
    numerator = 1
    for i in range(k):
        numerator *= top - i
    return numerator // factorial(k)


def _bateman_t(lam: int, x: int, n_points: int) -> int:
    """Return t_lam(x) = lam! Delta^lam [binom(x, lam) binom(x - N, lam)] exactly."""
    total = 0
    for k in range(lam + 1):
        y = x + k
        term = _binomial(lam, k) * _binomial(y, lam) * _binomial(y - n_points, lam)
        total += -term if (lam - k) % 2 else term
    return factorial(lam) * total


def cheb_scalar_bateman(j: SpinLike, lam: int, m: SpinLike) -> float:
    """Return f_lam^(j)(m) = F(lam, j) t_lam(j + m, 2j + 1).

    F(lam, j)^2 = (2 lam + 1)(2j - lam)! / (2j + lam + 1)!. The finite
    differences are exact integers, so no cancellation occurs.
    """
    j = spin(j)
    lam = rank(j, lam)
    m = projection(j, m)
    n_points = j.dim
    t = _bateman_t(lam, (j.twice + m.twice) // 2, n_points)
    if _bateman_t(lam, j.twice, n_points) < 0:
        t = -t
    norm = Fraction(
        (2 * lam + 1) * factorial(j.twice - lam), factorial(j.twice + lam + 1)
    )
    squared = norm * t * t
    return signed_sqrt(squared if t >= 0 else -squared)


def cheb_at_top(j: SpinLike, lam: int) -> float:
    """Return f_lam(j) = sqrt((2 lam + 1) [(2j)!]^2 / ((2j + lam + 1)! (2j - lam)!))."""
    j = spin(j)
    lam = rank(j, lam)
    return math.sqrt(
        Fraction(
            (2 * lam + 1) * factorial(j.twice) ** 2,
            factorial(j.twice + lam + 1) * factorial(j.twice - lam),
        )
    )


@dataclass(frozen=True)
class ChebTable:
    """All values f_lam^(j)(m), indexed [lam][index(m)]."""

    j: HalfInt
    values: np.ndarray

    def __call__(self, lam: int, m: SpinLike) -> float:
        """Return f_lam(m)."""
        return float(self.values[rank(self.j, lam), self.j.index_of(m)])

    def row(self, lam: int) -> np.ndarray:
        """Return f_lam over all m in basis order."""
        return self.values[rank(self.j, lam)]

    @property
    def ms(self) -> np.ndarray:
        """Return the projections as floats."""
        return np.arange(-self.j.twice, self.j.twice + 1, 2) / 2.0

    def orthonormality_residual(self) -> float:
        """Return max |sum_m f_lam f_lam' - delta|."""
        gram = self.values @ self.values.T
        return float(np.max(np.abs(gram - np.eye(self.j.dim))))

    def parity_residual(self) -> float:
        """Return max |f_lam(-m) - (-1)^lam f_lam(m)|."""
        signs = (-1.0) ** np.arange(self.j.dim)
        mirrored = self.values[:, ::-1]
        return float(np.max(np.abs(mirrored - signs[:, None] * self.values)))


@lru_cache(maxsize=256)
def _cheb_table(twice_j: int) -> ChebTable:
    j = HalfInt(twice_j)
    values = _recursion_rows(j, np.arange(-twice_j, twice_j + 1, 2) / 2.0)
    values.setflags(write=False)
    return ChebTable(j, values)


def cheb_table(j: SpinLike) -> ChebTable:
    """Return the cached, immutable table of f_lam^(j)(m)."""
    return _cheb_table(spin(j).twice)


def cheb_sum_over_m(j: SpinLike, lam: int) -> float:
    """Return sum_m f_lam(m), which equals sqrt(2j+1) delta_{lam 0}."""
    table = cheb_table(j)
    return math.fsum(table.row(lam))


@lru_cache(maxsize=256)
def _cheb_polynomials(twice_j: int):
    jf = twice_j / 2.0
    polys = [Polynomial([1.0 / math.sqrt(twice_j + 1)])]
    x2 = Polynomial([0.0, 2.0])
    if twice_j >= 1:
        polys.append(Polynomial([0.0, first_rank_coefficient(HalfInt(twice_j))]))
    for lam in range(1, twice_j):
        polys.append(
            (x2 * polys[lam] - recursion_coefficient(lam, jf) * polys[lam - 1])
            / recursion_coefficient(lam + 1, jf)
        )
    return tuple(polys)


def cheb_polynomial(j: SpinLike, lam: int) -> Polynomial:
    """Return f_lam^(j) as a polynomial in its argument (monomial basis)."""
    j = spin(j)
    return _cheb_polynomials(j.twice)[rank(j, lam)]
