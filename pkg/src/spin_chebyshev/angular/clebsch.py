"""Exact Clebsch-Gordan coefficients.

The Racah sum is evaluated in exact rational arithmetic with
``fractions.Fraction``; only the final square root is taken in floating
point. Factorials come from a shared memoised table, which keeps the
supported range (2j <= 100) cheap and avoids the 64-bit overflow that a
float factorial would hit near j ~ 10.
"""
import math
from fractions import Fraction
from functools import lru_cache

from spin_chebyshev.angular.halfint import HalfInt, SpinLike
from spin_chebyshev.exceptions import DomainError

MAX_TWICE_J = 200


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    """Return n! as an exact integer."""
    if n < 0:
        raise DomainError(f"factorial of negative number {n}")
    return math.factorial(n)


def signed_sqrt(q: Fraction) -> float:
    """Return sign(q) * sqrt(|q|) for an exact rational q."""
    if q == 0:
        return 0.0
    root = math.sqrt(abs(q))
    return root if q > 0 else -root


def _check_pair(name: str, a: HalfInt, alpha: HalfInt):
    """Validate one (j, m) pair of a coupling coefficient."""
    if a.twice < 0:
        raise DomainError(f"{name}={a} must be non-negative")
    if a.twice > MAX_TWICE_J:
        raise DomainError(f"{name}={a} exceeds the supported range 2j <= {MAX_TWICE_J}")
    if not a.contains(alpha):
        raise DomainError(f"projection {alpha} is not allowed for {name}={a}")


def clebsch_gordan_rational(
    a: SpinLike,
    alpha: SpinLike,
    b: SpinLike,
    beta: SpinLike,
    c: SpinLike,
    gamma: SpinLike,
) -> Fraction:
    """Return the signed square q of C^{c gamma}_{a alpha b beta}.

    The coefficient itself is sign(q) * sqrt(|q|). Raises DomainError
    when the triangle rule or a projection range is violated; returns 0
    when gamma != alpha + beta.
    """
    a, alpha, b, beta, c, gamma = (
        HalfInt.coerce(x) for x in (a, alpha, b, beta, c, gamma)
    )
    _check_pair("a", a, alpha)
    _check_pair("b", b, beta)
    _check_pair("c", c, gamma)
    if (a.twice + b.twice + c.twice) % 2 or not (
        abs(a.twice - b.twice) <= c.twice <= a.twice + b.twice
    ):
        raise DomainError(f"triangle rule violated for ({a}, {b}, {c})")
    if alpha.twice + beta.twice != gamma.twice:
        return Fraction(0)

    # every combination below is an integer once the checks above pass
    def h(*twices: int) -> int:
        return sum(twices) // 2

    abc = h(a.twice, b.twice, -c.twice)
    acb = h(a.twice, -b.twice, c.twice)
    bca = h(-a.twice, b.twice, c.twice)
    total = h(a.twice, b.twice, c.twice)
    a_p, a_m = h(a.twice, alpha.twice), h(a.twice, -alpha.twice)
    b_p, b_m = h(b.twice, beta.twice), h(b.twice, -beta.twice)
    c_p, c_m = h(c.twice, gamma.twice), h(c.twice, -gamma.twice)
    shift_1 = h(c.twice, -b.twice, alpha.twice)
    shift_2 = h(c.twice, -a.twice, -beta.twice)

    series = Fraction(0)
    for k in range(max(0, -shift_1, -shift_2), min(abc, a_m, b_p) + 1):
        denominator = (
            factorial(k)
            * factorial(abc - k)
            * factorial(a_m - k)
            * factorial(b_p - k)
            * factorial(shift_1 + k)
            * factorial(shift_2 + k)
        )
        series += Fraction((-1) ** k, denominator)
    if series == 0:
        return Fraction(0)

    prefactor = Fraction(
        (c.twice + 1) * factorial(abc) * factorial(acb) * factorial(bca),
        factorial(total + 1),
    ) * (
        factorial(a_p)
        * factorial(a_m)
        * factorial(b_p)
        * factorial(b_m)
        * factorial(c_p)
        * factorial(c_m)
    )
    squared = prefactor * series * series
    return squared if series > 0 else -squared


def clebsch_gordan(
    a: SpinLike,
    alpha: SpinLike,
    b: SpinLike,
    beta: SpinLike,
    c: SpinLike,
    gamma: SpinLike,
) -> float:
    """Return the Clebsch-Gordan coefficient C^{c gamma}_{a alpha b beta}."""
    return signed_sqrt(clebsch_gordan_rational(a, alpha, b, beta, c, gamma))
