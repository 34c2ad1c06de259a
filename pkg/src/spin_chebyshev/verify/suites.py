"""Concrete identity suites.

Each suite checks one family of identities on seeded random inputs. The
default sizes keep a full run to a few seconds; the tests drive the same
identities over wider ranges.
"""
import math

import numpy as np

from spin_chebyshev.angular.characters import generalized_character
from spin_chebyshev.angular.geometry import AngleAxis, Euler, UnitVector, cos_beta
from spin_chebyshev.angular.halfint import HalfInt
from spin_chebyshev.angular.special import character, legendre_P
from spin_chebyshev.angular.wigner import wigner_D, wigner_small_d
from spin_chebyshev.chebyshev import (
    cheb_at_top,
    cheb_polynomial,
    cheb_scalar_bateman,
    cheb_scalar_cg,
    cheb_table,
)
from spin_chebyshev.operators.equivalents import operator_equivalent_check
from spin_chebyshev.operators.legendre import (
    legendre_op_zemach,
    schwinger_norm_product,
    zemach_norm_product,
    zemach_scale,
)
from spin_chebyshev.operators.projectors import (
    coherent_projector,
    coherent_projector_ducloy,
    projector,
    projector_canonical,
)
from spin_chebyshev.operators.rotation import (
    generalized_character_trace,
    rotation_corio,
    rotation_exact,
)
from spin_chebyshev.operators.spin import (
    cheb_op_n,
    cheb_op_n_recursion,
    cheb_op_trace_pair,
    polarization_T,
)
from spin_chebyshev.recoupling import (
    dipolar_diagonal_check,
    rank_coefficient_ratio,
    similarity_covariance_residual,
    verify_rank1,
    verify_rank2_recoupling,
)
from spin_chebyshev.tomography.grid import SphericalGrid
from spin_chebyshev.tomography.phase_space import (
    DensityMatrix,
    sw_traciality_delta,
    sw_traciality_trace,
)
from spin_chebyshev.tomography.reconstruct import (
    T_from_integral,
    coherent_closure_check,
    husimi_on_grid,
    reconstruct_density,
    reconstruct_from_husimi,
    reconstruct_from_wigner,
    reconstruct_group_theoretic,
    tomogram_of,
    tomographic_delta_residual,
    wigner_on_grid,
)
from spin_chebyshev.transitions import (
    TransitionSpec,
    fourier_legendre_power,
    inverse_meckler,
    landau_zener_probability,
    majorana_probability,
    meckler_probability,
    meckler_via_projector_trace,
    spin_flip_extreme,
    spin_flip_next,
    squared_D_halfpi,
    total_probability,
    transition_matrix,
)
from spin_chebyshev.verify.abc_suite import IdentitySuite


def _spins(max_twice_j: int, start: int = 0):
    return [HalfInt(t) for t in range(start, max_twice_j + 1)]


def _random_projection(rng: np.random.Generator, j: HalfInt) -> HalfInt:
    return j.projections()[int(rng.integers(0, j.dim))]


def _random_rotation(rng: np.random.Generator) -> AngleAxis:
    return AngleAxis.about(rng.uniform(0.0, 2 * math.pi), UnitVector.random(rng))


class TracesSuite(IdentitySuite):
    """Traces of single and paired Chebyshev polynomial operators."""

    NAME = "traces"

    def __init__(self, max_twice_j: int = 8, n_pairs: int = 10, **kwargs):
        """Initialize with the spin range and number of random direction pairs."""
        super().__init__(**kwargs)
        self.max_twice_j = max_twice_j
        self.n_pairs = n_pairs

    def _run(self, rng):
        for j in _spins(self.max_twice_j):
            for lam in range(j.dim):
                n = UnitVector.random(rng)
                expected = math.sqrt(j.dim) if lam == 0 else 0.0
                self.record("trace-one", cheb_op_n(j, lam, n).trace() - expected, 1e-12)
            for _ in range(self.n_pairs):
                a, b = UnitVector.random(rng), UnitVector.random(rng)
                lam, lam_prime = rng.integers(0, j.dim, size=2)
                expected = legendre_P(int(lam), a.dot(b)) if lam == lam_prime else 0.0
                value = cheb_op_trace_pair(j, int(lam), int(lam_prime), a, b)
                self.record("trace-two", value - expected, 1e-10)


class RotationSuite(IdentitySuite):
    """Rotation operators, rotation matrices and the transition probability series."""

    NAME = "rotation"

    def __init__(self, max_twice_j: int = 8, n_rotations: int = 5, **kwargs):
        """Initialize with the spin range and number of random rotations."""
        super().__init__(**kwargs)
        self.max_twice_j = max_twice_j
        self.n_rotations = n_rotations

    def _run(self, rng):
        for j in _spins(self.max_twice_j):
            for _ in range(self.n_rotations):
                r = _random_rotation(rng)
                exact = rotation_exact(j, r)
                corio = rotation_corio(j, -r.psi, r.axis)
                self.record("corio-vs-eigen", corio.distance(exact), 1e-9)
                by_euler = wigner_D(j, r, route="euler")
                by_axis = wigner_D(j, r, route="angle_axis")
                self.record("wigner-routes", np.max(np.abs(by_euler - by_axis)), 1e-10)
                self.record("wigner-vs-expm", exact.distance(by_axis), 1e-10)

                squared = np.abs(by_axis) ** 2
                x = cos_beta(r)
                for m in j.projections():
                    for mp in j.projections():
                        series = meckler_probability(TransitionSpec(j, mp, m, x))
                        self.record(
                            "meckler-vs-oracle",
                            series - squared[j.index_of(mp), j.index_of(m)],
                            1e-10,
                        )
                a, b = UnitVector.random(rng), UnitVector.random(rng)
                m, mp = _random_projection(rng, j), _random_projection(rng, j)
                trace = meckler_via_projector_trace(j, m, mp, a, b)
                series = meckler_probability(TransitionSpec(j, m, mp, a.dot(b)))
                self.record("meckler-projector-trace", trace - series, 1e-10)


class CharactersSuite(IdentitySuite):
    """Generalized characters by three routes."""

    NAME = "characters"

    def __init__(self, max_twice_j: int = 10, n_angles: int = 12, **kwargs):
        """Initialize with the spin range and angle grid size."""
        super().__init__(**kwargs)
        self.max_twice_j = max_twice_j
        self.n_angles = n_angles

    def _run(self, rng):
        psis = np.linspace(0.0, 4 * math.pi, self.n_angles)
        for psi in psis:
            expected = 2 / math.sqrt(3) * math.sin(psi / 2)
            self.record(
                "spin-half-rank-one",
                generalized_character("1/2", 1, psi) - expected,
                1e-13,
            )
        for j in _spins(self.max_twice_j):
            for psi in psis:
                self.record(
                    "rank-zero-is-character",
                    generalized_character(j, 0, psi) - character(j, psi),
                    1e-10,
                )
                for lam in range(j.dim):
                    closed = generalized_character(j, lam, psi)
                    summed = generalized_character(j, lam, psi, route="chebyshev")
                    self.record("gegenbauer-vs-chebyshev", closed - summed, 1e-10)
            psi = rng.uniform(0.0, 4 * math.pi)
            n = UnitVector.random(rng)
            for lam in range(j.dim):
                self.record(
                    "trace-route",
                    generalized_character_trace(j, lam, psi, n)
                    - generalized_character(j, lam, psi),
                    1e-10,
                )


class RecouplingSuite(IdentitySuite):
    """Spin/space recoupling of rank-1 and rank-2 contractions."""

    NAME = "recoupling"

    SPINS = ("1", "3/2", "5/2")

    def __init__(self, n_directions: int = 20, **kwargs):
        """Initialize with the number of random directions per spin."""
        super().__init__(**kwargs)
        self.n_directions = n_directions

    def _run(self, rng):
        for j in self.SPINS:
            for _ in range(self.n_directions):
                n = UnitVector.random(rng)
                rank2 = verify_rank2_recoupling(j, n)
                self.record("rank2-forms", rank2.max_residual, 1e-11)
                self.record("rank1-form", verify_rank1(j, n).max_residual, 1e-12)
                self.record("dipolar-diagonal", dipolar_diagonal_check(j, n), 1e-12)
            for lam in (1, 2):
                ratio = rank_coefficient_ratio(j, lam)
                self.record(f"rank{lam}-ratio", ratio.ratio - ratio.expected, 1e-12)
                self.record(f"rank{lam}-ratio-spread", ratio.spread, 1e-12)
                self.record(
                    "covariance",
                    similarity_covariance_residual(j, lam, _random_rotation(rng)),
                    1e-10,
                )


class TransitionsSuite(IdentitySuite):
    """Closed forms, sum rules and alternative routes for transition probabilities."""

    NAME = "transitions"

    def __init__(self, max_twice_j: int = 12, n_angles: int = 100, **kwargs):
        """Initialize with the spin range and polar angle grid size."""
        super().__init__(**kwargs)
        self.max_twice_j = max_twice_j
        self.n_angles = n_angles

    def _run(self, rng):
        betas = np.linspace(0.0, math.pi, self.n_angles)
        for j in _spins(self.max_twice_j, start=1):
            top, bottom = j.projections()[-1], j.projections()[0]
            for beta in betas:
                spec = TransitionSpec.from_beta(j, top, bottom, beta)
                self.record(
                    "spin-flip-extreme",
                    spin_flip_extreme(j, beta) - meckler_probability(spec),
                    1e-11,
                )
                if j.twice >= 2:
                    spec = TransitionSpec.from_beta(j, top - 1, bottom + 1, beta)
                    self.record(
                        "spin-flip-next",
                        spin_flip_next(j, beta) - meckler_probability(spec),
                        1e-11,
                    )
            beta = rng.uniform(0.0, math.pi)
            d = wigner_small_d(j, beta)
            self.record("d-squared-sum", np.sum(d**2) - j.dim, 1e-11)
            matrix = transition_matrix(j, beta)
            column_sums = np.max(np.abs(matrix.sum(axis=0) - 1))
            self.record("doubly-stochastic", column_sums, 1e-11)
            m = _random_projection(rng, j)
            self.record("total-probability", total_probability(j, m, beta) - 1, 1e-12)
            mp = _random_projection(rng, j)
            spec = TransitionSpec.from_beta(j, m, mp, beta)
            self.record(
                "majorana-vs-series",
                majorana_probability(spec) - meckler_probability(spec),
                1e-10,
            )
            p = rng.uniform(0.0, 1.0)
            self.record(
                "landau-zener-routes",
                landau_zener_probability(j, m, mp, p)
                - landau_zener_probability(j, m, mp, p, route="hypergeometric"),
                1e-10,
            )
            alpha, gamma = rng.uniform(0.0, 2 * math.pi, size=2)
            expected = wigner_D(j, Euler(alpha, math.pi / 2, gamma))[
                j.index_of(m), j.index_of(mp)
            ]
            self.record(
                "squared-D-halfpi",
                abs(squared_D_halfpi(j, m, mp, alpha, gamma) - expected**2),
                1e-11,
            )
        for L in range(0, 5):
            beta = rng.uniform(0.0, math.pi)
            self.record(
                "inverse-meckler-j-independence",
                inverse_meckler(3, L, beta) - inverse_meckler(5, L, beta),
                1e-10,
            )
            self.record(
                "inverse-meckler",
                inverse_meckler(3, L, beta) - legendre_P(L, math.cos(beta)),
                1e-10,
            )
        for n in range(21):
            for x in np.linspace(-0.95, 0.95, 9):
                self.record(
                    "fourier-legendre-power",
                    fourier_legendre_power(n, x) - ((1 - x) / 2) ** n,
                    1e-11,
                )


class TomographySuite(IdentitySuite):
    """Tomographic, Husimi, Wigner and group-theoretic reconstructions."""

    NAME = "tomography"

    def __init__(self, max_twice_j: int = 4, n_states: int = 2, **kwargs):
        """Initialize with the spin range and number of random states per spin."""
        super().__init__(**kwargs)
        self.max_twice_j = max_twice_j
        self.n_states = n_states

    def _run(self, rng):
        for j in _spins(self.max_twice_j):
            grid = SphericalGrid.from_predefined_config(j)
            self.record("grid-weight", grid.total_weight() - 4 * math.pi, 1e-12)
            self.record("coherent-closure", coherent_closure_check(j, grid), 1e-11)
            for _ in range(self.n_states):
                rho = DensityMatrix.random(j, rng)
                w = tomogram_of(rho, grid)
                self.record("tomogram-normalization", w.normalization_residual(), 1e-12)
                rebuilt = reconstruct_density(w)
                self.record("tomogram-roundtrip", rebuilt.frobenius_distance(rho), 1e-9)
                from_q = reconstruct_from_husimi(j, husimi_on_grid(rho, grid), grid)
                error = from_q.density.frobenius_distance(rho)
                self.record("husimi-roundtrip", error, 1e-9)
                from_w = reconstruct_from_wigner(j, wigner_on_grid(rho, grid), grid)
                error = from_w.density.frobenius_distance(rho)
                self.record("wigner-roundtrip", error, 1e-9)
                self.record(
                    "group-theoretic",
                    reconstruct_group_theoretic(rho, grid).frobenius_distance(rho),
                    1e-7,
                )
                self.record("tomographic-delta", tomographic_delta_residual(w), 1e-9)
            a, b = UnitVector.random(rng), UnitVector.random(rng)
            self.record(
                "sw-traciality",
                sw_traciality_trace(j, a, b) - sw_traciality_delta(j, a, b),
                1e-11,
            )
            lam = int(rng.integers(0, j.dim))
            mu = int(rng.integers(-lam, lam + 1))
            target = polarization_T(j, lam, mu)
            for route in ("chebyshev", "coherent"):
                self.record(
                    f"T-from-integral-{route}",
                    T_from_integral(j, lam, mu, grid, route=route).distance(target),
                    1e-10,
                )


class ChebyshevSuite(IdentitySuite):
    """Independent constructions of the Chebyshev polynomials of a discrete variable."""

    NAME = "chebyshev"

    def __init__(
        self, max_twice_j: int = 24, max_twice_j_orthonormal: int = 40, **kwargs
    ):
        """Initialize with the spin ranges of the duality and orthonormality checks."""
        super().__init__(**kwargs)
        self.max_twice_j = max_twice_j
        self.max_twice_j_orthonormal = max_twice_j_orthonormal

    def _run(self, rng):
        for j in _spins(self.max_twice_j_orthonormal):
            table = cheb_table(j)
            self.record("orthonormality", table.orthonormality_residual(), 1e-11)
            self.record("parity", table.parity_residual(), 1e-11)
        for j in _spins(self.max_twice_j):
            table = cheb_table(j)
            for lam in range(j.dim):
                self.record("top-value", table(lam, j) - cheb_at_top(j, lam), 1e-12)
                for m in j.projections():
                    dual = cheb_scalar_cg(j, lam, m)
                    self.record("duality-cg", table(lam, m) - dual, 1e-12)
        for j in _spins(20):
            table = cheb_table(j)
            lam = int(rng.integers(0, j.dim))
            for m in j.projections():
                bateman = cheb_scalar_bateman(j, lam, m)
                self.record("bateman", table(lam, m) - bateman, 1e-11)
        for j in _spins(8):
            table = cheb_table(j)
            for lam in range(j.dim):
                values = cheb_polynomial(j, lam)(table.ms)
                error = np.max(np.abs(values - table.row(lam)))
                self.record("polynomial-form", error, 1e-9)
            n = UnitVector.random(rng)
            lam = int(rng.integers(0, j.dim))
            operator = cheb_op_n(j, lam, n)
            self.record(
                "tensor-vs-recursion",
                operator.distance(cheb_op_n_recursion(j, lam, n)),
                1e-9,
            )


class EquivalentsSuite(IdentitySuite):
    """Operator equivalents, Legendre operators and projector forms."""

    NAME = "equivalents"

    CASES = (
        (6, 0, ("3", "7/2", "4")),
        (4, 1, ("2", "5/2", "3")),
        (4, 0, ("2", "3")),
        (2, 0, ("1", "2")),
        (0, 0, ("1/2", "1")),
    )

    def _run(self, rng):
        for lam, k, spins in self.CASES:
            for j in spins:
                for route in ("table", "marinelli"):
                    report = operator_equivalent_check(j, lam, k, route=route)
                    self.record(f"equivalent-{route}", report.spread, 1e-9)
                    self.record(
                        f"equivalent-{route}-support", report.support_residual, 1e-9
                    )
        for twice_j in range(0, 9):
            j = HalfInt(twice_j)
            n = UnitVector.random(rng)
            for lam in range(j.dim):
                zemach = legendre_op_zemach(j, lam, n)
                scale = zemach_scale(j, lam)
                scaled = cheb_op_n(j, lam, n) * scale
                error = zemach.distance(scaled) / max(1.0, scale)
                self.record("zemach-legendre", error, 1e-9)
                self.record(
                    "norm-products",
                    float(zemach_norm_product(j, lam) - schwinger_norm_product(j, lam)),
                    0.0,
                )
            m = _random_projection(rng, j)
            self.record(
                "projector-sylvester",
                projector(j, m, n).distance(projector_canonical(j, m, n)),
                1e-9,
            )
            self.record(
                "coherent-ducloy",
                coherent_projector(j, n).distance(coherent_projector_ducloy(j, n)),
                1e-10,
            )


SUITES = {
    suite.NAME: suite
    for suite in (
        TracesSuite,
        RotationSuite,
        RecouplingSuite,
        CharactersSuite,
        TransitionsSuite,
        TomographySuite,
        ChebyshevSuite,
        EquivalentsSuite,
    )
}
