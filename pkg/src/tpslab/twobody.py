"""Two trapped, harmonically coupled particles in one dimension.

The Hamiltonian is ``p1^2/2m1 + p2^2/2m2 + (w^2/2)(m1 x1^2 + m2 x2^2)
+ (kappa/2)(x1 - x2)^2``: both particles sit in a trap of common angular
frequency ``w`` and are coupled by a spring ``kappa``.  One dimension
carries the full story since quadratic Hamiltonians factor per Cartesian
axis.

States are handled as Gaussian states in mass-scaled particle quadratures
``x~ = sqrt(m w_ref) x``, ``p~ = p / sqrt(m w_ref)`` (``w_ref`` is the trap
frequency, or 1 when untrapped), which puts uncoupled ground states at the
identity covariance.  The scaling is local to each particle, so it changes
no entanglement quantity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .gaussian import (
    CovarianceMatrix,
    GaussianState,
    SymplecticMatrix,
    gaussian_entropy_across,
    symplectic_form,
)

__all__ = [
    "TwoBodyParams",
    "QuadraticHamiltonian",
    "com_rel_transform",
    "mass_scaling",
    "build_hamiltonian_matrix",
    "transform_quadratic_hamiltonian",
    "scaled_hamiltonian",
    "ground_state_covariance",
    "interparticle_entanglement",
    "internal_external_entropy",
    "internal_external_entanglement",
    "evolve_gaussian",
    "galilean_boost",
]

UNBOUND_FREQUENCY_RATIO = 1e-10


@dataclass(frozen=True)
class TwoBodyParams:
    """Masses, common trap frequency and coupling strength.

    Both masses must be positive and at least one of ``omega_trap``,
    ``kappa`` nonzero, otherwise nothing binds.
    """

    m1: float
    m2: float
    omega_trap: float
    kappa: float

    def __post_init__(self):
        if self.m1 <= 0.0 or self.m2 <= 0.0:
            raise ValueError(f"masses must be positive, got {self.m1}, {self.m2}")
        if self.omega_trap < 0.0 or self.kappa < 0.0:
            raise ValueError("trap frequency and coupling must be nonnegative")
        if self.omega_trap == 0.0 and self.kappa == 0.0:
            raise ValueError("need omega_trap > 0 or kappa > 0 for a bound system")

    @property
    def total_mass(self) -> float:
        return self.m1 + self.m2

    @property
    def reduced_mass(self) -> float:
        return self.m1 * self.m2 / (self.m1 + self.m2)

    @property
    def reference_frequency(self) -> float:
        """Scaling frequency: the trap frequency, or 1 when untrapped."""
        return self.omega_trap if self.omega_trap > 0.0 else 1.0


@dataclass(frozen=True)
class QuadraticHamiltonian:
    """``H = (1/2) xi^T M xi`` with M real symmetric, xi interleaved."""

    n_modes: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=float)
        size = 2 * self.n_modes
        if mat.shape != (size, size):
            raise ValueError(f"expected a {size}x{size} matrix, got {mat.shape}")
        if np.abs(mat - mat.T).max() > 1e-12:
            raise ValueError("Hamiltonian matrix must be symmetric")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


def com_rel_transform(m1: float, m2: float) -> SymplecticMatrix:
    """Canonical map from particle to center-of-mass/relative coordinates.

    ``x_c = (m1 x1 + m2 x2)/M``, ``x_r = x1 - x2``, ``p_c = p1 + p2``,
    ``p_r = (m2 p1 - m1 p2)/M``; output ordering is (x_c, p_c, x_r, p_r),
    so mode 0 is the center of mass.  The map is a symplectic point
    transformation for every mass pair.
    """
    if m1 <= 0.0 or m2 <= 0.0:
        raise ValueError(f"masses must be positive, got {m1}, {m2}")
    total = m1 + m2
    s = np.array(
        [
            [m1 / total, 0.0, m2 / total, 0.0],
            [0.0, 1.0, 0.0, 1.0],
            [1.0, 0.0, -1.0, 0.0],
            [0.0, m2 / total, 0.0, -m1 / total],
        ]
    )
    return SymplecticMatrix(2, s)


def mass_scaling(params: TwoBodyParams) -> SymplecticMatrix:
    """Local symplectic scaling to the module's mass-scaled quadratures."""
    w = params.reference_frequency
    diag = []
    for m in (params.m1, params.m2):
        root = np.sqrt(m * w)
        diag.extend([root, 1.0 / root])
    return SymplecticMatrix(2, np.diag(diag))


def build_hamiltonian_matrix(params: TwoBodyParams) -> QuadraticHamiltonian:
    """Hamiltonian matrix in unscaled particle coordinates (x1, p1, x2, p2)."""
    m1, m2 = params.m1, params.m2
    w2, kappa = params.omega_trap**2, params.kappa
    mat = np.array(
        [
            [m1 * w2 + kappa, 0.0, -kappa, 0.0],
            [0.0, 1.0 / m1, 0.0, 0.0],
            [-kappa, 0.0, m2 * w2 + kappa, 0.0],
            [0.0, 0.0, 0.0, 1.0 / m2],
        ]
    )
    return QuadraticHamiltonian(2, mat)


def transform_quadratic_hamiltonian(
    ham: QuadraticHamiltonian, s: SymplecticMatrix
) -> QuadraticHamiltonian:
    """Hamiltonian matrix in the coordinates ``xi' = S xi``."""
    if ham.n_modes != s.n_modes:
        raise ValueError(f"mode mismatch: {ham.n_modes} != {s.n_modes}")
    inv = np.linalg.inv(s.matrix)
    mat = inv.T @ ham.matrix @ inv
    return QuadraticHamiltonian(ham.n_modes, 0.5 * (mat + mat.T))


def scaled_hamiltonian(params: TwoBodyParams) -> QuadraticHamiltonian:
    """The two-body Hamiltonian in mass-scaled particle quadratures."""
    return transform_quadratic_hamiltonian(build_hamiltonian_matrix(params), mass_scaling(params))


def _normal_mode_data(params: TwoBodyParams) -> tuple[SymplecticMatrix, np.ndarray, np.ndarray]:
    """COM/relative transform with the (a, b) coefficient pairs of each mode.

    The common-frequency trap makes the conjugated Hamiltonian block
    diagonal for every mass pair, so the modes can be read off the
    diagonal.  Zero-frequency modes (the free center of mass when the trap
    is off) have no normalizable ground state and raise.
    """
    s_cr = com_rel_transform(params.m1, params.m2)
    h_cr = transform_quadratic_hamiltonian(build_hamiltonian_matrix(params), s_cr).matrix
    coeff_x = np.array([h_cr[0, 0], h_cr[2, 2]])
    coeff_p = np.array([h_cr[1, 1], h_cr[3, 3]])
    freqs = np.sqrt(np.clip(coeff_x, 0.0, None) * coeff_p)
    if freqs.max() == 0.0 or freqs.min() < UNBOUND_FREQUENCY_RATIO * freqs.max():
        raise ValueError(
            f"system is unbound: normal-mode frequencies {freqs} include a zero mode"
        )
    return s_cr, coeff_x, coeff_p


def ground_state_covariance(params: TwoBodyParams) -> GaussianState:
    """Gaussian ground state in mass-scaled particle quadratures.

    Each normal mode (center of mass and relative) is placed in its
    vacuum, then the state is mapped back to particle coordinates.  The
    result is pure; with coupling it is entangled across the particles
    while remaining a product across center of mass and relative motion.
    """
    s_cr, coeff_x, coeff_p = _normal_mode_data(params)
    diag = []
    for a, b in zip(coeff_x, coeff_p):
        ratio = np.sqrt(b / a)
        diag.extend([ratio, 1.0 / ratio])
    sigma_cr = np.diag(diag)
    inv = np.linalg.inv(s_cr.matrix)
    sigma_particle = inv @ sigma_cr @ inv.T
    scale = mass_scaling(params).matrix
    sigma = scale @ sigma_particle @ scale.T
    return GaussianState(CovarianceMatrix(2, 0.5 * (sigma + sigma.T)), np.zeros(4))


def interparticle_entanglement(params: TwoBodyParams) -> float:
    """Ground-state entanglement entropy (nats) across the particle split."""
    return gaussian_entropy_across(ground_state_covariance(params), (0,))


def internal_external_entropy(state: GaussianState, params: TwoBodyParams) -> float:
    """Entropy (nats) across the center-of-mass/relative split of a pure state.

    The state is expected in mass-scaled particle quadratures; it is
    unscaled, moved to center-of-mass/relative coordinates and cut between
    the two modes.
    """
    if state.n_modes != 2:
        raise ValueError(f"expected a two-mode state, got {state.n_modes}")
    unscale = np.linalg.inv(mass_scaling(params).matrix)
    s_cr = com_rel_transform(params.m1, params.m2).matrix
    to_cr = s_cr @ unscale
    sigma = to_cr @ state.cov.sigma @ to_cr.T
    moved = GaussianState(
        CovarianceMatrix(2, 0.5 * (sigma + sigma.T)), to_cr @ state.mean
    )
    return gaussian_entropy_across(moved, (0,))


def internal_external_entanglement(params: TwoBodyParams) -> float:
    """Ground-state entropy across the center-of-mass/relative split.

    Zero for this Hamiltonian family: a common-frequency trap separates in
    center-of-mass/relative coordinates for every mass pair.
    """
    return internal_external_entropy(ground_state_covariance(params), params)


def evolve_gaussian(state: GaussianState, ham: QuadraticHamiltonian, t: float) -> GaussianState:
    """Evolve a Gaussian state under a quadratic Hamiltonian for time t.

    The flow is the symplectic map ``S_t = exp(t Omega M)``; covariance
    and mean transform as ``S_t sigma S_t^T`` and ``S_t mean``.
    Symplectic eigenvalues, and with them purity, are preserved.
    """
    if state.n_modes != ham.n_modes:
        raise ValueError(f"mode mismatch: {state.n_modes} != {ham.n_modes}")
    s_t = expm(t * symplectic_form(ham.n_modes) @ ham.matrix)
    sigma = s_t @ state.cov.sigma @ s_t.T
    return GaussianState(
        CovarianceMatrix(state.n_modes, 0.5 * (sigma + sigma.T)), s_t @ state.mean
    )


def galilean_boost(state: GaussianState, velocity: float, params: TwoBodyParams) -> GaussianState:
    """Boost both particles by a common velocity.

    Adds ``m_i v`` to each particle's momentum mean (expressed in the
    module's scaled quadratures) and leaves the covariance untouched, so
    every entanglement quantity is exactly invariant.
    """
    if state.n_modes != 2:
        raise ValueError(f"expected a two-mode state, got {state.n_modes}")
    w = params.reference_frequency
    shift = np.zeros(4)
    shift[1] = params.m1 * velocity / np.sqrt(params.m1 * w)
    shift[3] = params.m2 * velocity / np.sqrt(params.m2 * w)
    return GaussianState(state.cov, state.mean + shift)
