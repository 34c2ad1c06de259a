"""Product quadrature on the unit sphere.

Gauss-Legendre nodes in cos(theta) times a uniform azimuthal grid. With
(2j+1)k polar and (4j+2)k azimuthal nodes the rule integrates products
C_{lam mu} C*_{lam' mu'} exactly whenever lam + lam' <= 4j + 1 (k = 1).
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Optional, Tuple

import numpy as np

from spin_chebyshev.angular.geometry import UnitVector
from spin_chebyshev.angular.halfint import HalfInt, SpinLike, spin
from spin_chebyshev.exceptions import DomainError

logger = logging.getLogger(__name__)


def neumaier_sum(values) -> np.ndarray:
    """Return the compensated sum of a sequence of scalars or equal-shape arrays.

    Terms are added in the order given.
    """
    total, compensation = None, None
    for value in values:
        value = np.asarray(value)
        if np.iscomplexobj(value):
            value = np.stack([value.real, value.imag])
        else:
            value = np.stack([value, np.zeros_like(value)])
        if total is None:
            total = value.astype(float)
            compensation = np.zeros_like(total)
            continue
        t = total + value
        compensation += np.where(
            np.abs(total) >= np.abs(value), (total - t) + value, (value - t) + total
        )
        total = t
    if total is None:
        return np.asarray(0.0)
    result = total + compensation
    return result[0] + 1j * result[1]


@dataclass
class SphericalGrid:
    """Weighted nodes on the sphere with a known exactness degree."""

    j: HalfInt
    nodes: List[UnitVector] = field(default_factory=list)
    weights: np.ndarray = None
    exactness_degree: int = 0
    oversample: int = 1

    CONFIGS = {
        "minimal": {"oversample": 1},
        "doubled": {"oversample": 2},
    }

    @classmethod
    def build(cls, j: SpinLike, oversample: int = 1) -> "SphericalGrid":
        """Return the product rule for spin j, oversampled by an integer factor."""
        j = spin(j)
        if int(oversample) != oversample or oversample < 1:
            raise DomainError(
                f"oversample must be a positive integer, got {oversample}"
            )
        n_theta = j.dim * oversample
        n_phi = 2 * j.dim * oversample
        x, w_theta = np.polynomial.legendre.leggauss(n_theta)
        phis = 2.0 * math.pi * np.arange(n_phi) / n_phi
        w_phi = 2.0 * math.pi / n_phi
        nodes, weights = [], []
        for xi, wi in zip(x, w_theta):
            theta = math.acos(float(np.clip(xi, -1.0, 1.0)))
            for phi in phis:
                nodes.append(UnitVector(theta, float(phi)))
                weights.append(wi * w_phi)
        exactness = min(2 * n_theta - 1, n_phi - 1)
        logger.debug(
            f"grid j={j}: {n_theta} x {n_phi} nodes, exactness degree {exactness}"
        )
        return cls(
            j=j,
            nodes=nodes,
            weights=np.array(weights),
            exactness_degree=exactness,
            oversample=oversample,
        )

    @classmethod
    def from_predefined_config(
        cls, j: SpinLike, config: str = "minimal", **kwargs
    ) -> "SphericalGrid":
        """Create a grid from a named configuration."""
        settings = cls.CONFIGS.get(config)
        if not settings:
            raise DomainError(
                f"Invalid grid config. Choose from {list(cls.CONFIGS.keys())}."
            )
        settings = dict(settings)
        settings.update(kwargs)
        return cls.build(j, **settings)

    def __len__(self) -> int:
        """Return the number of nodes."""
        return len(self.nodes)

    def __iter__(self) -> Iterator[Tuple[UnitVector, float]]:
        """Yield (node, weight) pairs in fixed order."""
        return zip(self.nodes, (float(w) for w in self.weights))

    def integrate(
        self, fn: Callable[[UnitVector], object], workers: Optional[int] = None
    ):
        """Return the quadrature of fn over the sphere.

        fn may return a scalar or an array. With ``workers`` the integrand
        is evaluated in a thread pool; the reduction order never changes.
        """
        if workers and workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                values = list(pool.map(fn, self.nodes))
        else:
            values = [fn(n) for n in self.nodes]
        return self.quadrature(values)

    def quadrature(self, values):
        """Return sum_k w_k values[k] for integrand values given per node."""
        if len(values) != len(self.nodes):
            raise DomainError(
                f"expected {len(self.nodes)} node values, got {len(values)}"
            )
        result = neumaier_sum(w * np.asarray(v) for w, v in zip(self.weights, values))
        if np.iscomplexobj(values[0]):
            return complex(result) if np.ndim(result) == 0 else result
        return float(result.real) if np.ndim(result) == 0 else result.real

    def total_weight(self) -> float:
        """Return the sum of the weights, 4 pi for an exact rule."""
        return math.fsum(self.weights)


def build_grid(j: SpinLike, oversample: int = 1) -> SphericalGrid:
    """Return the product grid for spin j."""
    return SphericalGrid.build(j, oversample)
