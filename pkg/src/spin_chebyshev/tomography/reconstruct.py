"""Spin tomograms and density matrix reconstruction.

The tomogram w(m, n) = Tr[rho Pi(m, n)] determines rho through

    rho = (1/4pi) sum_m  integral  w(m, n) Xi(m, n) dn,

which needs a quadrature exact to degree 4j. The Husimi Q and Wigner W
distributions give the same operator after reweighting each rank, and the
group-theoretic route integrates over the full rotation group instead.
"""
import logging
import math
from dataclasses import dataclass
from logging import Logger

import numpy as np
from tqdm import tqdm

from spin_chebyshev.angular.geometry import UnitVector
from spin_chebyshev.angular.halfint import HalfInt, SpinLike, rank, spin
from spin_chebyshev.angular.special import legendre_P, racah_C
from spin_chebyshev.chebyshev import cheb_table
from spin_chebyshev.exceptions import DomainError, InsufficientGridError
from spin_chebyshev.operators.spin import (
    cheb_op_n,
    cheb_ops_all,
    direction_rotation,
    polarization_T,
)
from spin_chebyshev.operators.spin_operator import SpinOperator
from spin_chebyshev.tomography.grid import SphericalGrid
from spin_chebyshev.tomography.phase_space import (
    RECONSTRUCTION_TOL,
    DensityMatrix,
    husimi_Q,
    sw_weights,
    wigner_W,
)

TOMOGRAM_SLACK = 1e-12


def _require_exact(j: HalfInt, grid: SphericalGrid):
    if grid.exactness_degree < 2 * j.twice:
        raise InsufficientGridError(
            f"grid exactness degree {grid.exactness_degree} < 4j = {2 * j.twice}"
        )


@dataclass
class Tomogram:
    """Values w[index(m)][node] of a spin tomogram on a grid."""

    j: HalfInt
    values: np.ndarray
    grid: SphericalGrid

    def __post_init__(self):
        """Coerce j and check the shape against the grid."""
        self.j = spin(self.j)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.j.dim, len(self.grid)):
            raise DomainError(
                f"tomogram shape {self.values.shape} does not match "
                f"({self.j.dim}, {len(self.grid)})"
            )

    def normalization_residual(self) -> float:
        """Return max over nodes of |sum_m w(m, n) - 1|."""
        return float(np.max(np.abs(self.values.sum(axis=0) - 1.0)))

    def min_value(self) -> float:
        """Return the smallest entry."""
        return float(np.min(self.values))

    def is_valid(self, tol: float = TOMOGRAM_SLACK) -> bool:
        """Return True if every column is a probability distribution within tol."""
        return self.normalization_residual() < tol and self.min_value() >= -tol


@dataclass
class Reconstruction:
    """A reconstructed density matrix and the conditioning of its inversion.

    condition_number is max |r_lam| / min |r_lam| over the rank weights r_lam
    that the distribution carries, lam = 0..2j. For Husimi Q these are
    f_lam(j); for the Stratonovich-Weyl W they are sqrt((2lam+1)/(2j+1)),
    which gives sqrt(4j+1).
    """

    density: DensityMatrix
    condition_number: float

    def __str__(self) -> str:
        """Summary line."""
        return (
            f"Reconstruction(j={self.density.j}, "
            f"condition={self.condition_number:.3g})"
        )


def tomogram_of(rho: SpinOperator, grid: SphericalGrid) -> Tomogram:
    """Return w(m, n) = <n, m| rho |n, m> at every grid node."""
    columns = []
    for node in grid.nodes:
        u = direction_rotation(rho.j, node)
        columns.append(np.einsum("im,ij,jm->m", u.conj(), rho.mat, u).real)
    return Tomogram(rho.j, np.array(columns).T, grid)


def _rank_weighted_integral(
    j: HalfInt,
    grid: SphericalGrid,
    coefficients: np.ndarray,
    logger: Logger,
    progress: bool,
) -> np.ndarray:
    """Return the quadrature of sum_lam coefficients[lam, node] f_lam(n.J)."""
    values = []
    nodes = tqdm(grid.nodes, desc="nodes", disable=not progress)
    for k, node in enumerate(nodes):
        values.append(np.tensordot(coefficients[:, k], cheb_ops_all(j, node), axes=1))
    logger.debug(f"integrated {len(values)} nodes for j={j}")
    return grid.quadrature(values)


def reconstruct_density(
    w: Tomogram,
    grid: SphericalGrid = None,
    logger: Logger = None,
    progress: bool = False,
) -> DensityMatrix:
    """Return (1/4pi) sum_m integral w(m, n) Xi(m, n) dn.

    Raises InsufficientGridError if the grid is not exact to degree 4j.
    """
    logger = logger or logging.getLogger(__name__)
    grid = grid or w.grid
    j = w.j
    _require_exact(j, grid)
    logger.info(f"reconstructing j={j} density from a tomogram on {len(grid)} nodes")
    table = cheb_table(j)
    degeneracy = 2 * np.arange(j.dim) + 1
    # sum_m w(m, n) (2lam+1) f_lam(m), one column per node
    coefficients = degeneracy[:, None] * (table.values @ w.values)
    integral = _rank_weighted_integral(j, grid, coefficients, logger, progress)
    mat = integral / (4 * math.pi)
    return DensityMatrix.from_operator(SpinOperator(j, mat), RECONSTRUCTION_TOL)


def husimi_on_grid(rho: SpinOperator, grid: SphericalGrid) -> np.ndarray:
    """Return Q at every grid node."""
    return np.array([husimi_Q(rho, node) for node in grid.nodes])


def wigner_on_grid(rho: SpinOperator, grid: SphericalGrid) -> np.ndarray:
    """Return W at every grid node."""
    return np.array([wigner_W(rho, node) for node in grid.nodes])


def _reconstruct_from_distribution(
    j: HalfInt,
    values: np.ndarray,
    grid: SphericalGrid,
    rank_weights: np.ndarray,
    logger: Logger,
    progress: bool,
) -> Reconstruction:
    _require_exact(j, grid)
    values = np.asarray(values, dtype=float)
    if values.shape != (len(grid),):
        raise DomainError(
            f"expected {len(grid)} distribution values, got {values.shape}"
        )
    degeneracy = 2 * np.arange(j.dim) + 1
    coefficients = (degeneracy / rank_weights)[:, None] * values[None, :]
    integral = _rank_weighted_integral(j, grid, coefficients, logger, progress)
    mat = integral / (4 * math.pi)
    density = DensityMatrix.from_operator(SpinOperator(j, mat), RECONSTRUCTION_TOL)
    condition = float(np.max(np.abs(rank_weights)) / np.min(np.abs(rank_weights)))
    logger.debug(f"j={j} reconstruction condition number {condition:.3g}")
    return Reconstruction(density, condition)


def reconstruct_from_husimi(
    j: SpinLike,
    q_values: np.ndarray,
    grid: SphericalGrid,
    logger: Logger = None,
    progress: bool = False,
) -> Reconstruction:
    """Return rho = sum_lam f_lam(j)^(-1) ((2lam+1)/4pi) integral Q f_lam(n.J) dn."""
    j = spin(j)
    top = cheb_table(j).values[:, -1]
    return _reconstruct_from_distribution(
        j, q_values, grid, top, logger or logging.getLogger(__name__), progress
    )


def reconstruct_from_wigner(
    j: SpinLike,
    w_values: np.ndarray,
    grid: SphericalGrid,
    logger: Logger = None,
    progress: bool = False,
) -> Reconstruction:
    """Return rho from Wigner values on an exact grid.

    rho = sum_lam sqrt((2j+1)/(2lam+1)) ((2lam+1)/4pi) integral W f_lam(n.J) dn
    """
    j = spin(j)
    return _reconstruct_from_distribution(
        j,
        w_values,
        grid,
        sw_weights(j),
        logger or logging.getLogger(__name__),
        progress,
    )


def coherent_closure_check(j: SpinLike, grid: SphericalGrid) -> float:
    """Return max |((2j+1)/4pi) integral |n,j><n,j| dn - I|."""
    j = spin(j)

    def outer(node: UnitVector) -> np.ndarray:
        ket = direction_rotation(j, node)[:, -1]
        return np.outer(ket, ket.conj())

    total = grid.integrate(outer) * (j.dim / (4 * math.pi))
    return float(np.max(np.abs(total - np.eye(j.dim))))


def T_from_integral(
    j: SpinLike, lam: int, mu: int, grid: SphericalGrid, route: str = "chebyshev"
) -> SpinOperator:
    """Return T_{lam mu} as an integral over the sphere.

    route="chebyshev": ((2lam+1)/4pi) integral C_{lam mu}(n) f_lam(n.J) dn.
    route="coherent": the same with f_lam(n.J) replaced by Pi(j, n)/f_lam(j).
    """
    j = spin(j)
    lam = rank(j, lam)
    if abs(mu) > lam:
        raise DomainError(f"projection mu={mu} outside [-{lam}, {lam}]")
    if grid.exactness_degree < 2 * lam and route == "chebyshev":
        raise InsufficientGridError(
            f"grid exactness {grid.exactness_degree} < {2 * lam}"
        )
    if route == "chebyshev":

        def integrand(node: UnitVector) -> np.ndarray:
            return racah_C(lam, mu, node) * cheb_op_n(j, lam, node).mat

        scale = 1.0
    elif route == "coherent":
        _require_exact(j, grid)

        def integrand(node: UnitVector) -> np.ndarray:
            ket = direction_rotation(j, node)[:, -1]
            return racah_C(lam, mu, node) * np.outer(ket, ket.conj())

        scale = 1.0 / cheb_table(j).values[lam, -1]
    else:
        raise DomainError(f"unknown route {route!r}")
    mat = grid.integrate(integrand) * ((2 * lam + 1) / (4 * math.pi) * scale)
    return SpinOperator(j, mat)


def racah_from_trace(j: SpinLike, lam: int, mu: int, n: UnitVector) -> complex:
    """Return C_{lam mu}(n) = Tr[T_{lam mu} f_lam(n.J)]."""
    j = spin(j)
    return complex(np.trace(polarization_T(j, lam, mu).mat @ cheb_op_n(j, lam, n).mat))


def default_psi_nodes(j: SpinLike) -> int:
    """Return the Gauss-Legendre node count used for the rotation-angle integral."""
    return 8 * spin(j).twice + 28


def reconstruct_group_theoretic(
    rho: SpinOperator,
    grid: SphericalGrid,
    n_psi: int = None,
    logger: Logger = None,
) -> DensityMatrix:
    """Return ((2j+1)/4pi^2) integral sin^2(psi/2) Tr[rho e^{i psi n.J}] e^{-i psi n.J}.

    psi runs over [0, 2pi] on a Gauss-Legendre grid and n over the sphere.
    """
    logger = logger or logging.getLogger(__name__)
    j = rho.j
    _require_exact(j, grid)
    n_psi = n_psi or default_psi_nodes(j)
    x, w = np.polynomial.legendre.leggauss(n_psi)
    psis = math.pi * (x + 1.0)
    measure = math.pi * w * np.sin(psis / 2) ** 2
    ms = np.arange(-j.twice, j.twice + 1, 2) / 2.0
    # K[a, b] = sum_k measure_k exp(i psi_k (m_a - m_b))
    phases = np.exp(1j * np.subtract.outer(ms, ms)[None, :, :] * psis[:, None, None])
    kernel = np.tensordot(measure, phases, axes=1)
    logger.debug(f"group integral over {n_psi} angles and {len(grid)} directions")

    def integrand(node: UnitVector) -> np.ndarray:
        u = direction_rotation(j, node)
        populations = np.einsum("im,ij,jm->m", u.conj(), rho.mat, u)
        diagonal = populations @ kernel
        return (u * diagonal[None, :]) @ u.conj().T

    mat = grid.integrate(integrand) * (j.dim / (4 * math.pi**2))
    return DensityMatrix.from_operator(SpinOperator(j, mat), RECONSTRUCTION_TOL)


def tomographic_delta_residual(w: Tomogram, grid: SphericalGrid = None) -> float:
    """Return how far the tomographic delta is from reproducing w on the grid.

    The residual is the max over (m, n) of
    |(1/4pi) integral sum_m' delta_w(m, n; m', n') w(m', n') dn' - w(m, n)|.
    """
    grid = grid or w.grid
    j = w.j
    _require_exact(j, grid)
    table = cheb_table(j)
    cartesian = np.array([node.cartesian() for node in grid.nodes])
    cosines = np.clip(cartesian @ cartesian.T, -1.0, 1.0)
    legendre = np.array([legendre_P(lam, cosines) for lam in range(j.dim)])
    degeneracy = 2 * np.arange(j.dim) + 1
    moments = table.values @ w.values
    smeared = np.einsum("lab,b,lb->la", legendre, grid.weights, moments)
    rebuilt = table.values.T @ (degeneracy[:, None] * smeared) / (4 * math.pi)
    return float(np.max(np.abs(rebuilt - w.values)))
