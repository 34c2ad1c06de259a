"""Irreducible tensor products and the spin/space recoupling identities.

Tensors are stored by spherical component, each component a SpinOperator.
Classical tensors such as the direction n enter as multiples of the unit
operator so that spin and spatial tensors compose the same way.

The rank-2 identity checked here is

    3(n.J)^2 - J.J = sqrt6 {J x J}^2 . C_2(n) = 3 sqrt5 {{J x J}^2 x {n x n}^2}^0_0.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from spin_chebyshev.angular.clebsch import clebsch_gordan
from spin_chebyshev.angular.geometry import RotationParams, UnitVector
from spin_chebyshev.angular.halfint import HalfInt, SpinLike, rank, spin
from spin_chebyshev.angular.special import legendre_P, racah_C
from spin_chebyshev.angular.wigner import wigner_D
from spin_chebyshev.chebyshev import first_rank_coefficient, second_rank_coefficient
from spin_chebyshev.exceptions import DomainError
from spin_chebyshev.operators.spin import (
    casimir,
    n_dot_J,
    polarization_T,
    spherical_components,
)
from spin_chebyshev.operators.spin_operator import SpinOperator

logger = logging.getLogger(__name__)

RECOUPLING_TOL = 1e-11


@dataclass
class CompositeTensor:
    """A rank-K spherical tensor with operator components indexed Q = -K..K."""

    j: HalfInt
    rank: int
    components: Dict[int, SpinOperator] = field(default_factory=dict)

    def __post_init__(self):
        """Check that exactly the components Q = -K..K are present."""
        self.j = spin(self.j)
        if sorted(self.components) != list(range(-self.rank, self.rank + 1)):
            raise DomainError(
                f"rank {self.rank} tensor needs components -{self.rank}..{self.rank}, "
                f"got {sorted(self.components)}"
            )

    def __getitem__(self, q: int) -> SpinOperator:
        """Return the component Q = q."""
        return self.components[q]

    @classmethod
    def from_vector(cls, j: SpinLike, n: UnitVector) -> "CompositeTensor":
        """Return a classical unit vector as a rank-1 tensor times the unit operator."""
        j = spin(j)
        nx, ny, nz = (float(c) for c in n.cartesian())
        unit = SpinOperator.identity(j)
        scalars = {
            1: -(nx + 1j * ny) / math.sqrt(2),
            0: nz,
            -1: (nx - 1j * ny) / math.sqrt(2),
        }
        return cls(j, 1, {q: unit * complex(v) for q, v in scalars.items()})

    @classmethod
    def from_spin(cls, j: SpinLike) -> "CompositeTensor":
        """Return the spin vector J in spherical components."""
        j = spin(j)
        return cls(j, 1, spherical_components(j))

    @classmethod
    def polarization(cls, j: SpinLike, lam: int) -> "CompositeTensor":
        """Return the polarization operators T_{lam mu}."""
        j = spin(j)
        lam = rank(j, lam)
        components = {mu: polarization_T(j, lam, mu) for mu in range(-lam, lam + 1)}
        return cls(j, lam, components)

    @classmethod
    def racah(cls, j: SpinLike, lam: int, n: UnitVector) -> "CompositeTensor":
        """Return the Racah harmonics C_{lam mu}(n) times the unit operator."""
        j = spin(j)
        unit = SpinOperator.identity(j)
        components = {
            mu: unit * complex(racah_C(lam, mu, n)) for mu in range(-lam, lam + 1)
        }
        return cls(j, lam, components)

    def max_norm(self) -> float:
        """Return the largest entry over all components."""
        return max(float(np.max(np.abs(c.mat))) for c in self.components.values())

    def covariance_residual(self, r: RotationParams) -> float:
        """Return max_Q |U X_Q U^dagger - sum_P D^K_{PQ} X_P|."""
        u = wigner_D(self.j, r)
        d = wigner_D(self.rank, r)
        worst = 0.0
        for q in range(-self.rank, self.rank + 1):
            rotated = u @ self[q].mat @ u.conj().T
            expected = sum(
                d[p + self.rank, q + self.rank] * self[p].mat
                for p in range(-self.rank, self.rank + 1)
            )
            worst = max(worst, float(np.max(np.abs(rotated - expected))))
        return worst


def compose(R: CompositeTensor, S: CompositeTensor, K: int) -> CompositeTensor:
    """Return {R x S}^K_Q = sum_{q+q'=Q} C^{KQ}_{k q k' q'} R_q S_q'."""
    if R.j != S.j:
        raise DomainError(f"cannot compose tensors on j={R.j} and j={S.j}")
    k, kp = R.rank, S.rank
    if not abs(k - kp) <= K <= k + kp:
        raise DomainError(f"triangle violated for ({k}, {kp}, {K})")
    components = {}
    for Q in range(-K, K + 1):
        mat = np.zeros((R.j.dim, R.j.dim), dtype=complex)
        for q in range(max(-k, Q - kp), min(k, Q + kp) + 1):
            coefficient = clebsch_gordan(k, q, kp, Q - q, K, Q)
            if coefficient:
                mat += coefficient * (R[q].mat @ S[Q - q].mat)
        components[Q] = SpinOperator(R.j, mat)
    return CompositeTensor(R.j, K, components)


def scalar_product(R: CompositeTensor, S: CompositeTensor) -> SpinOperator:
    """Return R.S = sum_q (-1)^q R_q S_{-q}."""
    if R.rank != S.rank:
        raise DomainError(
            f"scalar product needs equal ranks, got {R.rank} and {S.rank}"
        )
    mat = sum((-1) ** q * (R[q].mat @ S[-q].mat) for q in range(-R.rank, R.rank + 1))
    return SpinOperator(R.j, mat)


@dataclass
class RecouplingReport:
    """Pairwise max-norm differences between equivalent operator forms."""

    j: str
    residuals: Dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        """Return the largest residual."""
        return max(self.residuals.values(), default=0.0)

    def passed(self, tol: float = RECOUPLING_TOL) -> bool:
        """Return True if every residual is within tol."""
        return self.max_residual < tol


def spin_quadrupole(j: SpinLike) -> CompositeTensor:
    """Return {J x J}^2."""
    J = CompositeTensor.from_spin(j)
    return compose(J, J, 2)


def verify_rank2_recoupling(j: SpinLike, n: UnitVector) -> RecouplingReport:
    """Compare the three forms of the rank-2 spin/space recoupling."""
    j = spin(j)
    generator = n_dot_J(j, n).mat
    direct = 3 * generator @ generator - float(casimir(j)) * np.eye(j.dim)
    quadrupole = spin_quadrupole(j)
    harmonics = CompositeTensor.racah(j, 2, n)
    contracted = math.sqrt(6) * scalar_product(quadrupole, harmonics).mat
    N = CompositeTensor.from_vector(j, n)
    nested = 3 * math.sqrt(5) * compose(quadrupole, compose(N, N, 2), 0)[0].mat
    report = RecouplingReport(
        j=str(j),
        residuals={
            "direct-contracted": float(np.max(np.abs(direct - contracted))),
            "direct-nested": float(np.max(np.abs(direct - nested))),
            "contracted-nested": float(np.max(np.abs(contracted - nested))),
        },
    )
    logger.debug(f"rank-2 recoupling j={j}: max residual {report.max_residual:.3g}")
    return report


def verify_rank1(j: SpinLike, n: UnitVector) -> RecouplingReport:
    """Compare J.C_1(n) with n.J."""
    j = spin(j)
    J = CompositeTensor.from_spin(j)
    product = scalar_product(J, CompositeTensor.racah(j, 1, n))
    residual = float(np.max(np.abs(product.mat - n_dot_J(j, n).mat)))
    return RecouplingReport(j=str(j), residuals={"J.C1-n.J": residual})


@dataclass
class RankRatio:
    """The ratio T_{lam mu} / X_mu over all mu and its spread."""

    lam: int
    ratio: float
    spread: float
    expected: float


def rank_coefficient_ratio(j: SpinLike, lam: int) -> RankRatio:
    """Return the ratio between T_{lam mu} and its spin-component construction.

    lam = 1 compares with J_mu (expected a_1); lam = 2 with sqrt6 {J x J}^2_mu
    (expected a_2).
    """
    j = spin(j)
    lam = rank(j, lam)
    if lam == 1:
        construction, expected = CompositeTensor.from_spin(j), first_rank_coefficient(j)
    elif lam == 2:
        quadrupole = spin_quadrupole(j)
        construction = CompositeTensor(
            j, 2, {mu: quadrupole[mu] * math.sqrt(6) for mu in range(-2, 3)}
        )
        expected = second_rank_coefficient(j)
    else:
        raise DomainError(
            f"spin-component construction only for ranks 1 and 2, got {lam}"
        )
    ratios = []
    for mu in range(-lam, lam + 1):
        built = construction[mu].mat
        target = polarization_T(j, lam, mu).mat
        support = np.abs(built) > 1e-12
        ratios.extend((target[support] / built[support]).tolist())
    ratios = np.array(ratios)
    ratio = complex(np.mean(ratios))
    return RankRatio(
        lam=lam,
        ratio=ratio.real,
        spread=float(np.max(np.abs(ratios - ratio))),
        expected=expected,
    )


def dipolar_diagonal_check(j: SpinLike, n: UnitVector) -> float:
    """Return max_m |<m|3(n.J)^2 - J.J|m> - P_2(cos theta)(3m^2 - kappa)|."""
    j = spin(j)
    generator = n_dot_J(j, n).mat
    kappa = float(casimir(j))
    diagonal = np.diag(3 * generator @ generator).real - kappa
    ms = np.arange(-j.twice, j.twice + 1, 2) / 2.0
    expected = legendre_P(2, math.cos(n.theta)) * (3 * ms**2 - kappa)
    return float(np.max(np.abs(diagonal - expected)))


def similarity_covariance_residual(j: SpinLike, lam: int, r: RotationParams) -> float:
    """Return max_mu |U T_{lam mu} U^dagger - sum_nu D^lam_{nu mu} T_{lam nu}|."""
    return CompositeTensor.polarization(j, lam).covariance_residual(r)
