"""Tensor operator equivalents.

T_{lam k} is proportional to J_+^k g(J_z) for a polynomial g. Two
sources for g are compared against the exact polarization operator:
literal tabulated polynomials in kappa = j(j+1), and the Marinelli
construction, which applies g -> sum_{n>=1} (d/dx)^n g / n! (that is
g(x+1) - g(x)) k times to the Chebyshev polynomial f_lam.
"""
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from spin_chebyshev.angular.clebsch import factorial
from spin_chebyshev.angular.halfint import SpinLike, rank, spin
from spin_chebyshev.chebyshev import cheb_polynomial
from spin_chebyshev.exceptions import DomainError
from spin_chebyshev.operators.spin import casimir, ladder, polarization_T

EQUIVALENT_TOL = 1e-9
_SUPPORT_CUTOFF = 1e-10

_TABLE: Dict[Tuple[int, int], Callable[[float], Polynomial]] = {
    (0, 0): lambda K: Polynomial([1.0]),
    (2, 0): lambda K: Polynomial([-K, 0.0, 3.0]),
    (4, 0): lambda K: Polynomial([3 * K * (K - 2), 0.0, -5 * (6 * K - 5), 0.0, 35.0]),
    (4, 1): lambda K: Polynomial([3 * (2 - K), 19 - 6 * K, 21.0, 14.0]),
    (6, 0): lambda K: Polynomial(
        [
            -5 * K * (K * K - 8 * K + 12),
            0.0,
            21 * (5 * K * K - 25 * K + 14),
            0.0,
            -105 * (3 * K - 7),
            0.0,
            231.0,
        ]
    ),
}


def table_equivalent(lam: int, k: int, j: SpinLike) -> Polynomial:
    """Return the tabulated polynomial g with T_{lam k} ~ J_+^k g(J_z)."""
    try:
        builder = _TABLE[(lam, k)]
    except KeyError as e:
        raise DomainError(
            f"no tabulated equivalent for (lam, k)=({lam}, {k}); "
            f"available: {sorted(_TABLE)}"
        ) from e
    return builder(float(casimir(j)))


def marinelli_polynomial(f: Polynomial, k: int) -> Polynomial:
    """Apply g -> sum_{n>=1} g^(n) / n! to f, k times."""
    g = f
    for _ in range(k):
        g = sum(
            (g.deriv(n) / factorial(n) for n in range(1, g.degree() + 1)),
            Polynomial([0.0]),
        )
    return g


@dataclass
class EquivalentReport:
    """Outcome of comparing T_{lam k} with J_+^k g(J_z)."""

    j: str
    lam: int
    k: int
    route: str
    ratio: float
    spread: float
    support_residual: float

    def passed(self, tol: float = EQUIVALENT_TOL) -> bool:
        """Return True if the ratio is constant and the supports agree."""
        return self.spread < tol and self.support_residual < tol


def operator_equivalent_check(
    j: SpinLike, lam: int, k: int, route: str = "table"
) -> EquivalentReport:
    """Check that T_{lam k} is a single scalar multiple of J_+^k g(J_z).

    route="table" uses the tabulated g; route="marinelli" derives g from
    the Chebyshev polynomial f_lam.
    """
    j = spin(j)
    lam = rank(j, lam)
    if not 0 <= k <= lam:
        raise DomainError(f"need 0 <= k <= lam, got k={k}, lam={lam}")
    if route == "table":
        g = table_equivalent(lam, k, j)
    elif route == "marinelli":
        g = marinelli_polynomial(cheb_polynomial(j, lam), k)
    else:
        raise DomainError(f"unknown route {route!r}")

    ms = np.arange(-j.twice, j.twice + 1, 2) / 2.0
    j_plus, _ = ladder(j)
    candidate = np.linalg.matrix_power(j_plus.mat, k) @ np.diag(g(ms))
    target = polarization_T(j, lam, k).mat

    scale = np.max(np.abs(candidate))
    support = np.abs(candidate) > _SUPPORT_CUTOFF * max(scale, 1.0)
    if not support.any():
        raise DomainError(f"equivalent for (lam, k)=({lam}, {k}) vanishes at j={j}")
    ratios = target[support] / candidate[support]
    ratio = complex(np.mean(ratios))
    spread = float(np.max(np.abs(ratios - ratio)) / abs(ratio))
    support_residual = float(np.max(np.abs(target[~support]), initial=0.0))
    return EquivalentReport(
        j=str(j),
        lam=lam,
        k=k,
        route=route,
        ratio=ratio.real,
        spread=spread,
        support_residual=support_residual,
    )
