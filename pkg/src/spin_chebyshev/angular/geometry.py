"""Directions on the sphere and rotation parametrizations."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from spin_chebyshev.exceptions import DomainError

TWO_PI = 2.0 * math.pi
_ANGLE_SLACK = 1e-12


@dataclass(frozen=True)
class UnitVector:
    """Direction n = (sin t cos p, sin t sin p, cos t), angles in radians."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        """Validate theta and wrap phi into [0, 2pi)."""
        theta, phi = float(self.theta), float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise DomainError(f"non-finite direction ({self.theta}, {self.phi})")
        if not -_ANGLE_SLACK <= theta <= math.pi + _ANGLE_SLACK:
            raise DomainError(f"polar angle {theta} outside [0, pi]")
        object.__setattr__(self, "theta", min(max(theta, 0.0), math.pi))
        object.__setattr__(self, "phi", phi % TWO_PI)

    @classmethod
    def z_axis(cls) -> "UnitVector":
        """Return the quantization axis."""
        return cls(0.0, 0.0)

    @classmethod
    def from_cartesian(cls, x: float, y: float, z: float) -> "UnitVector":
        """Build from a (not necessarily normalized) Cartesian vector."""
        norm = math.sqrt(x * x + y * y + z * z)
        if norm == 0.0:
            raise DomainError("zero vector has no direction")
        return cls(math.acos(max(-1.0, min(1.0, z / norm))), math.atan2(y, x))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "UnitVector":
        """Draw a direction uniformly on the sphere."""
        return cls(math.acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, TWO_PI))

    def cartesian(self) -> np.ndarray:
        """Return (n_x, n_y, n_z)."""
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )

    def dot(self, other: "UnitVector") -> float:
        """Return the cosine of the angle between two directions."""
        return float(np.clip(self.cartesian() @ other.cartesian(), -1.0, 1.0))

    def perpendicular(self) -> "UnitVector":
        """Return n_perp = (-sin phi, cos phi, 0).

        A rotation by theta about n_perp carries the z axis into this
        direction.
        """
        return UnitVector(math.pi / 2, self.phi + math.pi / 2)


@dataclass(frozen=True)
class Euler:
    """Euler angles (alpha, beta, gamma) of exp(-ia Jz) exp(-ib Jy) exp(-ig Jz)."""

    alpha: float
    beta: float
    gamma: float

    def to_euler(self) -> "Euler":
        """Return self."""
        return self


@dataclass(frozen=True)
class AngleAxis:
    """Rotation exp(-i psi n.J) by psi about the axis with polar angles (Theta, Phi)."""

    psi: float
    Theta: float = 0.0
    Phi: float = 0.0

    def __post_init__(self):
        """Validate the axis polar angle."""
        if not -_ANGLE_SLACK <= self.Theta <= math.pi + _ANGLE_SLACK:
            raise DomainError(f"axis polar angle {self.Theta} outside [0, pi]")

    @classmethod
    def about(cls, psi: float, axis: UnitVector) -> "AngleAxis":
        """Build from an angle and a UnitVector axis."""
        return cls(psi, axis.theta, axis.phi)

    @property
    def axis(self) -> UnitVector:
        """Return the rotation axis."""
        return UnitVector(self.Theta, self.Phi)

    def cayley_klein(self):
        """Return the Cayley-Klein pair (a, sb).

        a = cos(psi/2) - i sin(psi/2) cos(Theta) and sb = sin(psi/2) sin(Theta).

        These are the diagonal and off-diagonal magnitudes of the spin-1/2
        representation; cos(beta/2) = |a| and sin(beta/2) = |sb|.
        """
        half = 0.5 * self.psi
        a = complex(math.cos(half), -math.sin(half) * math.cos(self.Theta))
        sb = math.sin(half) * math.sin(self.Theta)
        return a, sb

    def to_euler(self) -> Euler:
        """Convert to Euler angles describing the same SU(2) element."""
        a, sb = self.cayley_klein()
        beta = 2.0 * math.atan2(abs(sb), abs(a))
        half_sum = -math.atan2(a.imag, a.real) if abs(a) > _ANGLE_SLACK else 0.0
        half_diff = self.Phi - math.pi / 2
        if sb < 0:
            half_diff += math.pi
        return Euler(half_sum + half_diff, beta, half_sum - half_diff)


RotationParams = Union[AngleAxis, Euler]


def to_euler(r: RotationParams) -> Euler:
    """Convert any rotation parametrization to Euler angles."""
    if not isinstance(r, (AngleAxis, Euler)):
        raise DomainError(f"unsupported rotation parameters {r!r}")
    return r.to_euler()


def cos_beta(r: RotationParams) -> float:
    """Return cos(beta) = 1 - 2 sin^2(psi/2) sin^2(Theta) of a rotation."""
    if isinstance(r, Euler):
        return math.cos(r.beta)
    half = math.sin(0.5 * r.psi) * math.sin(r.Theta)
    return 1.0 - 2.0 * half * half
