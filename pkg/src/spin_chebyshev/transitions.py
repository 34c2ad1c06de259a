"""Spin transition probabilities.

The probability of a transition m -> m' under a rotation with polar
angle beta is the Fourier-Legendre series

    P_{m m'} = sum_lam f_lam(m) f_lam(m') P_lam(cos beta),

which equals |D_{m m'}|^2 for any parametrization of the rotation. The
closed forms and identities below are all expressed through it.
"""
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.special import hyp2f1

from spin_chebyshev.angular.clebsch import clebsch_gordan, factorial
from spin_chebyshev.angular.geometry import UnitVector
from spin_chebyshev.angular.halfint import HalfInt, SpinLike, projection, spin
from spin_chebyshev.angular.special import double_factorial, legendre_P
from spin_chebyshev.angular.wigner import wigner_small_d
from spin_chebyshev.chebyshev import cheb_table
from spin_chebyshev.exceptions import DomainError
from spin_chebyshev.operators.projectors import projector

PROBABILITY_SLACK = 1e-12


@dataclass(frozen=True)
class RfDrive:
    """A radiofrequency drive of strength omega1, detuning delta, applied for time t."""

    omega1: float
    detuning: float
    t: float

    @property
    def omega_e(self) -> float:
        """Return the effective field strength sqrt(omega1^2 + delta^2)."""
        return math.hypot(self.omega1, self.detuning)

    @property
    def sin_theta(self) -> float:
        """Return omega1 / omega_e, the tilt of the effective field."""
        omega_e = self.omega_e
        return self.omega1 / omega_e if omega_e > 0 else 0.0

    @property
    def psi(self) -> float:
        """Return the nutation angle omega_e t."""
        return self.omega_e * self.t


def rf_cos_beta(drive: RfDrive) -> float:
    """Return cos beta = 1 - 2 sin^2(psi/2) sin^2(Theta) for an rf drive."""
    if drive.omega_e == 0:
        return 1.0
    return 1.0 - 2.0 * math.sin(drive.psi / 2) ** 2 * drive.sin_theta**2


@dataclass(frozen=True)
class TransitionSpec:
    """A transition m -> m_prime in spin j under a rotation with polar angle beta."""

    j: HalfInt
    m: HalfInt
    m_prime: HalfInt
    cos_beta: float

    def __post_init__(self):
        j = spin(self.j)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "m", projection(j, self.m))
        object.__setattr__(self, "m_prime", projection(j, self.m_prime))
        if not -1.0 - PROBABILITY_SLACK <= self.cos_beta <= 1.0 + PROBABILITY_SLACK:
            raise DomainError(f"cos beta must lie in [-1, 1], got {self.cos_beta}")
        object.__setattr__(self, "cos_beta", float(np.clip(self.cos_beta, -1.0, 1.0)))

    @classmethod
    def from_beta(
        cls, j: SpinLike, m: SpinLike, m_prime: SpinLike, beta: float
    ) -> "TransitionSpec":
        """Build a spec from the polar angle beta."""
        return cls(j, m, m_prime, math.cos(beta))

    @classmethod
    def from_drive(
        cls, j: SpinLike, m: SpinLike, m_prime: SpinLike, drive: RfDrive
    ) -> "TransitionSpec":
        """Build a spec from an rf drive."""
        return cls(j, m, m_prime, rf_cos_beta(drive))

    @property
    def beta(self) -> float:
        """Return beta in [0, pi]."""
        return math.acos(self.cos_beta)


def _series(j: HalfInt, m: HalfInt, m_prime: HalfInt, x: float) -> float:
    table = cheb_table(j)
    a = table.values[:, j.index_of(m)]
    b = table.values[:, j.index_of(m_prime)]
    legendre = np.array([legendre_P(lam, x) for lam in range(j.dim)])
    return math.fsum(a * b * legendre)


def meckler_probability(spec: TransitionSpec, drive: Optional[RfDrive] = None) -> float:
    """Return P_{m m'} from the Fourier-Legendre series.

    If ``drive`` is given it replaces the spec's cos beta.
    """
    cos_beta = rf_cos_beta(drive) if drive is not None else spec.cos_beta
    return _series(spec.j, spec.m, spec.m_prime, cos_beta)


def meckler_via_projector_trace(
    j: SpinLike, m: SpinLike, m_prime: SpinLike, a: UnitVector, b: UnitVector
) -> float:
    """Return Tr[Pi(m, a) Pi(m', b)]."""
    left = projector(j, m, a).mat
    right = projector(j, m_prime, b).mat
    return float(np.trace(left @ right).real)


def majorana_probability(spec: TransitionSpec) -> float:
    """Return P_{m m'} from Majorana's factorial sum.

    Written in powers of cos(beta/2) and sin(beta/2) so that beta = pi
    needs no special case.
    """
    j, m, mp = spec.j, spec.m, spec.m_prime
    half = spec.beta / 2
    c, s = math.cos(half), math.sin(half)
    jm, jp = int(j - m), int(j + m)
    jmp, jpp = int(j - mp), int(j + mp)
    shift = int(mp - m)
    total = 0.0
    for k in range(max(0, -shift), min(jp, jmp) + 1):
        denominator = (
            factorial(k) * factorial(k + shift) * factorial(jmp - k) * factorial(jp - k)
        )
        total += (
            (-1) ** k
            * c ** (j.twice - shift - 2 * k)
            * s ** (2 * k + shift)
            / denominator
        )
    return factorial(jm) * factorial(jp) * factorial(jmp) * factorial(jpp) * total**2


def _legendre_term(lam: int, p: float, route: str) -> float:
    if route == "legendre":
        return legendre_P(lam, 2 * p - 1)
    if route == "hypergeometric":
        return float(hyp2f1(-lam, lam + 1, 1, 1 - p))
    raise DomainError(f"unknown route {route!r}")


def landau_zener_probability(
    S: SpinLike, m: SpinLike, m_prime: SpinLike, p: float, route: str = "legendre"
) -> float:
    """Return sum_L f_L(m) f_L(m') P_L(2p - 1) for a two-level probability p.

    route="hypergeometric" evaluates P_L(2p - 1) as 2F1(-L, L+1; 1; 1-p).
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"two-level probability must lie in [0, 1], got {p}")
    S = spin(S)
    m, m_prime = projection(S, m), projection(S, m_prime)
    table = cheb_table(S)
    a = table.values[:, S.index_of(m)]
    b = table.values[:, S.index_of(m_prime)]
    terms = np.array([_legendre_term(lam, p, route) for lam in range(S.dim)])
    return math.fsum(a * b * terms)


def spin_flip_extreme(j: SpinLike, beta: Union[float, RfDrive]) -> float:
    """Return P_{j,-j} = sin(beta/2)^(4j).

    Given an ``RfDrive`` it returns (omega1/omega_e)^(4j) sin^(4j)(omega_e t/2).
    """
    j = spin(j)
    if isinstance(beta, RfDrive):
        return (beta.sin_theta * math.sin(beta.psi / 2)) ** (2 * j.twice)
    return math.sin(beta / 2) ** (2 * j.twice)


def spin_flip_next(j: SpinLike, beta: float) -> float:
    """Return P_{j-1,-(j-1)} = sin^(4(j-1))(beta/2) [2j cos^2(beta/2) - 1]^2, j >= 1."""
    j = spin(j)
    if j.twice < 2:
        raise DomainError(f"next-to-extreme flip needs j >= 1, got j={j}")
    # 0**0 == 1 in Python, matching the series at j = 1
    return math.sin(beta / 2) ** (2 * (j.twice - 2)) * (
        j.twice * math.cos(beta / 2) ** 2 - 1
    ) ** 2


def squared_D_halfpi(
    j: SpinLike, m: SpinLike, m_prime: SpinLike, alpha: float, gamma: float
) -> complex:
    """Return [D_{m m'}(alpha, pi/2, gamma)]^2 from its even-rank Clebsch-Gordan sum."""
    j = spin(j)
    m, m_prime = projection(j, m), projection(j, m_prime)
    total = 0.0
    for L in range(0, j.twice + 1, 2):
        weight = (-1) ** (L // 2) * double_factorial(L - 1) / double_factorial(L)
        total += (
            weight
            * clebsch_gordan(j, m, j, -m, L, 0)
            * clebsch_gordan(j, m_prime, j, -m_prime, L, 0)
        )
    phase = np.exp(-2j * (float(m) * alpha + float(m_prime) * gamma))
    sign = (-1) ** int(m - m_prime)
    return complex(phase * sign * total)


def inverse_meckler(j: SpinLike, L: int, beta: float) -> float:
    """Return sum_{m m'} f_L(m) f_L(m') d_{m m'}(beta)^2, which is P_L(cos beta)."""
    table = cheb_table(j)
    row = table.row(L)
    d = wigner_small_d(table.j, beta)
    return float(row @ (d**2) @ row)


def transition_matrix(j: SpinLike, beta: float) -> np.ndarray:
    """Return the doubly stochastic matrix P[index(m), index(m')]."""
    table = cheb_table(j)
    x = math.cos(beta)
    legendre = np.array([legendre_P(lam, x) for lam in range(table.j.dim)])
    return table.values.T @ (legendre[:, None] * table.values)


def total_probability(j: SpinLike, m: SpinLike, beta: float) -> float:
    """Return sum_{m'} P_{m m'}, which is unity."""
    j = spin(j)
    row = transition_matrix(j, beta)[j.index_of(projection(j, m))]
    return math.fsum(row)


def fourier_legendre_power(n: int, x: float) -> float:
    """Return the terminating Fourier-Legendre series of ((1-x)/2)^n.

    sum_k (-1)^k (2k+1) (n!)^2 / ((n-k)! (n+k+1)!) P_k(x)
    """
    if n < 0:
        raise DomainError(f"power must be non-negative, got {n}")
    square = factorial(n) ** 2
    return math.fsum(
        (-1) ** k
        * (2 * k + 1)
        * (square / (factorial(n - k) * factorial(n + k + 1)))
        * legendre_P(k, x)
        for k in range(n + 1)
    )
