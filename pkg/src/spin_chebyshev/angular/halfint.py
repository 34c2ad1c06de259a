"""Exact half-integer quantum numbers.

A HalfInt stores twice its value, so j = 3/2 is ``HalfInt(3)``. All
arithmetic on angular momentum quantum numbers (j, m, lambda, mu) goes
through this type, which keeps parity bookkeeping exact. Matrices
throughout the package use the basis order index(m) = (twice(m) +
twice(j)) / 2, i.e. m ascending from -j to +j.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

from spin_chebyshev.exceptions import DomainError

SpinLike = Union["HalfInt", int, float, Fraction, str]


@dataclass(frozen=True, order=True)
class HalfInt:
    """A value in (1/2)Z, stored as twice the value."""

    twice: int

    def __post_init__(self):
        """Reject non-integral twice-values."""
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise DomainError(
                f"HalfInt needs an integer twice-value, got {self.twice!r}"
            )

    @classmethod
    def coerce(cls, value: SpinLike) -> "HalfInt":
        """Build a HalfInt from an int, float, Fraction, string or HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            try:
                value = Fraction(value)
            except ValueError as e:
                raise DomainError(f"cannot parse {value!r} as a half-integer") from e
        if isinstance(value, (int, Fraction)):
            doubled = Fraction(value) * 2
        elif isinstance(value, float):
            doubled = Fraction(value * 2)
        else:
            # numpy integer and floating scalars
            try:
                doubled = Fraction(float(value) * 2)
            except (TypeError, ValueError) as e:
                raise DomainError(
                    f"cannot interpret {value!r} as a half-integer"
                ) from e
        if doubled.denominator != 1:
            raise DomainError(f"{value!r} is not a multiple of 1/2")
        return cls(int(doubled))

    @property
    def value(self) -> Fraction:
        """Return the exact value."""
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        """Return True for integer values."""
        return self.twice % 2 == 0

    @property
    def dim(self) -> int:
        """Return 2j+1, the dimension of the spin-j space."""
        return self.twice + 1

    def __int__(self) -> int:
        """Convert to int, only for integer values."""
        if not self.is_integer:
            raise DomainError(f"{self} is not an integer")
        return self.twice // 2

    def __float__(self) -> float:
        """Convert to float."""
        return self.twice / 2

    def __neg__(self) -> "HalfInt":
        """Negate."""
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        """Absolute value."""
        return HalfInt(abs(self.twice))

    def __add__(self, other: SpinLike) -> "HalfInt":
        """Add exactly."""
        return HalfInt(self.twice + HalfInt.coerce(other).twice)

    __radd__ = __add__

    def __sub__(self, other: SpinLike) -> "HalfInt":
        """Subtract exactly."""
        return HalfInt(self.twice - HalfInt.coerce(other).twice)

    def __rsub__(self, other: SpinLike) -> "HalfInt":
        """Subtract exactly."""
        return HalfInt(HalfInt.coerce(other).twice - self.twice)

    def __str__(self) -> str:
        """Render as '3/2' or '2'."""
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        """Render as HalfInt(3/2)."""
        return f"HalfInt({self})"

    def contains(self, m: SpinLike) -> bool:
        """Return True if m is a valid projection of this j."""
        m = HalfInt.coerce(m)
        return (m.twice - self.twice) % 2 == 0 and abs(m.twice) <= self.twice

    def projections(self) -> List["HalfInt"]:
        """Return m = -j, -j+1, ..., j in basis order."""
        return [HalfInt(t) for t in range(-self.twice, self.twice + 1, 2)]

    def index_of(self, m: SpinLike) -> int:
        """Return the basis index of m."""
        m = HalfInt.coerce(m)
        if not self.contains(m):
            raise DomainError(f"m={m} is not a projection of j={self}")
        return (m.twice + self.twice) // 2


def spin(j: SpinLike) -> HalfInt:
    """Coerce j and check that it is non-negative."""
    j = HalfInt.coerce(j)
    if j.twice < 0:
        raise DomainError(f"spin must be non-negative, got j={j}")
    return j


def projection(j: HalfInt, m: SpinLike) -> HalfInt:
    """Coerce m and check that it is a projection of j."""
    m = HalfInt.coerce(m)
    if not j.contains(m):
        raise DomainError(f"m={m} is not a projection of j={j}")
    return m


def rank(j: HalfInt, lam: int) -> int:
    """Check 0 <= lambda <= 2j and return lambda as int."""
    if isinstance(lam, HalfInt):
        lam = int(lam)
    if int(lam) != lam or not 0 <= lam <= j.twice:
        raise DomainError(f"rank lambda={lam} must satisfy 0 <= lambda <= 2j={j.twice}")
    return int(lam)
