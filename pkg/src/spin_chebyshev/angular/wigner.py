"""Wigner rotation matrices.

``wigner_small_d(j, beta)[i', i]`` is d^j_{m'm}(beta) = <jm'|exp(-i beta Jy)|jm>
and ``wigner_D`` follows the exp(-i psi n.J) sign convention, with
rows and columns in ascending-m basis order.
"""
import math
from functools import lru_cache
from typing import Tuple

import numpy as np

from spin_chebyshev.angular.clebsch import factorial
from spin_chebyshev.angular.geometry import AngleAxis, Euler, RotationParams
from spin_chebyshev.angular.halfint import SpinLike, spin
from spin_chebyshev.exceptions import DomainError


@lru_cache(maxsize=128)
def _small_d_terms(twice_j: int) -> Tuple[np.ndarray, ...]:
    """Tabulate every term of the factorial sum for d^j.

    Returns parallel arrays (row, col, coefficient, cos power, sin power).
    """
    rows, cols, coeffs, cos_pows, sin_pows = [], [], [], [], []
    for row, tmp in enumerate(range(-twice_j, twice_j + 1, 2)):
        j_plus_mp, j_minus_mp = (twice_j + tmp) // 2, (twice_j - tmp) // 2
        for col, tm in enumerate(range(-twice_j, twice_j + 1, 2)):
            j_plus_m, j_minus_m = (twice_j + tm) // 2, (twice_j - tm) // 2
            shift = (tmp - tm) // 2
            root = (
                factorial(j_plus_mp)
                * factorial(j_minus_mp)
                * factorial(j_plus_m)
                * factorial(j_minus_m)
            )
            for s in range(max(0, -shift), min(j_plus_m, j_minus_mp) + 1):
                q = (
                    factorial(j_plus_m - s)
                    * factorial(s)
                    * factorial(shift + s)
                    * factorial(j_minus_mp - s)
                )
                sign = -1.0 if (shift + s) % 2 else 1.0
                rows.append(row)
                cols.append(col)
                coeffs.append(sign * math.sqrt(root / (q * q)))
                cos_pows.append(twice_j - shift - 2 * s)
                sin_pows.append(shift + 2 * s)
    return (
        np.array(rows, dtype=int),
        np.array(cols, dtype=int),
        np.array(coeffs),
        np.array(cos_pows),
        np.array(sin_pows),
    )


def projections_array(j: SpinLike) -> np.ndarray:
    """Return the float array (-j, ..., j)."""
    j = spin(j)
    return np.arange(-j.twice, j.twice + 1, 2) / 2.0


def wigner_small_d(j: SpinLike, beta: float) -> np.ndarray:
    """Return the real (2j+1)x(2j+1) reduced rotation matrix d^j(beta)."""
    j = spin(j)
    rows, cols, coeffs, cos_pows, sin_pows = _small_d_terms(j.twice)
    c, s = math.cos(0.5 * beta), math.sin(0.5 * beta)
    values = coeffs * np.power(c, cos_pows) * np.power(s, sin_pows)
    d = np.zeros((j.dim, j.dim))
    np.add.at(d, (rows, cols), values)
    return d


def _wigner_D_euler(j, r: Euler) -> np.ndarray:
    """Return exp(-i m' alpha) d_{m'm}(beta) exp(-i m gamma)."""
    ms = projections_array(j)
    d = wigner_small_d(j, r.beta)
    return np.exp(-1j * ms * r.alpha)[:, None] * d * np.exp(-1j * ms * r.gamma)[None, :]


def _wigner_D_angle_axis(j, r: AngleAxis) -> np.ndarray:
    """Return D^j(psi; Theta, Phi) from the explicit angle-axis form.

    D_{MM'} = i^{M-M'} exp(-i(M-M')Phi) (a/|a|)^{M+M'} d_{MM'}(xi) with
    a = cos(psi/2) - i sin(psi/2) cos(Theta) and sin(xi/2) = sin(psi/2) sin(Theta).
    A negative sin(xi/2) is folded into xi >= 0 with a factor (-1)^{M-M'}.
    """
    ms = projections_array(j)
    a, sb = r.cayley_klein()
    xi = 2.0 * math.atan2(abs(sb), abs(a))
    arg_a = math.atan2(a.imag, a.real) if abs(a) > 1e-14 else 0.0
    offset = math.pi / 2 - r.Phi + (math.pi if sb < 0 else 0.0)
    diff = ms[:, None] - ms[None, :]
    total = ms[:, None] + ms[None, :]
    return np.exp(1j * (diff * offset + total * arg_a)) * wigner_small_d(j, xi)


def wigner_D(j: SpinLike, r: RotationParams, route: str = "auto") -> np.ndarray:
    """Return the unitary matrix D^j of a rotation, D_{m'm} = <jm'|R|jm>.

    route="auto" uses the native form of r; "euler" converts angle-axis
    input to Euler angles first; "angle_axis" requires AngleAxis input.
    """
    j = spin(j)
    if route == "auto":
        route = "angle_axis" if isinstance(r, AngleAxis) else "euler"
    if route == "euler":
        return _wigner_D_euler(j, r.to_euler())
    if route == "angle_axis":
        if not isinstance(r, AngleAxis):
            raise DomainError("angle_axis route needs AngleAxis parameters")
        return _wigner_D_angle_axis(j, r)
    raise DomainError(f"unknown route {route!r}")
