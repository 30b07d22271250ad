"""Gaussian states in the covariance formalism.

Quadratures are ordered mode by mode, ``xi = (x1, p1, ..., xn, pn)``, with
hbar = 1 and the vacuum covariance equal to the identity, so the
uncertainty bound reads "all symplectic eigenvalues >= 1".  A Gaussian
state is a covariance matrix plus a mean vector; every entanglement
quantity here reads only the covariance, which is why phase-space
displacements (Galilean boosts and translations included) change nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .findim import random_unitary

__all__ = [
    "InvalidCovarianceError",
    "WilliamsonError",
    "SymplecticMatrix",
    "CovarianceMatrix",
    "GaussianState",
    "symplectic_form",
    "symplectic_eigenvalues",
    "williamson",
    "is_pure",
    "gaussian_purity",
    "reduce_modes",
    "thermal_entropy",
    "gaussian_entropy_across",
    "log_negativity_two_mode",
    "mode_separating_transform",
    "vacuum_state",
    "two_mode_squeezed",
    "random_symplectic",
    "random_covariance",
]

SYMMETRY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-10
NU_CONSTRUCTOR_TOL = 1e-8
NU_OPERATION_TOL = 1e-6
PURITY_NU_TOL = 1e-8
WILLIAMSON_RESIDUAL_TOL = 1e-8


class InvalidCovarianceError(ValueError):
    """Covariance matrix violates symmetry or the uncertainty bound."""


class WilliamsonError(RuntimeError):
    """Williamson decomposition failed its residual check."""


def symplectic_form(n_modes: int) -> np.ndarray:
    """The 2n x 2n form Omega, block diagonal in [[0, 1], [-1, 0]]."""
    if n_modes < 1:
        raise ValueError(f"mode count must be positive, got {n_modes}")
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for i in range(n_modes):
        omega[2 * i, 2 * i + 1] = 1.0
        omega[2 * i + 1, 2 * i] = -1.0
    omega.setflags(write=False)
    return omega


def _spectrum_of(sigma: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a symmetric matrix, descending, no validity check."""
    n = sigma.shape[0] // 2
    eigs = np.linalg.eigvals(1j * symplectic_form(n) @ sigma)
    moduli = np.sort(np.abs(eigs))[::-1]
    return moduli[::2].copy()


@dataclass(frozen=True)
class SymplecticMatrix:
    """Real linear phase-space map preserving the canonical form Omega."""

    n_modes: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=float)
        size = 2 * self.n_modes
        if mat.shape != (size, size):
            raise ValueError(f"expected a {size}x{size} matrix, got {mat.shape}")
        omega = symplectic_form(self.n_modes)
        defect = np.linalg.norm(mat.T @ omega @ mat - omega)
        if defect > SYMPLECTIC_TOL:
            raise ValueError(f"matrix is not symplectic: ||S^T Omega S - Omega||_F = {defect!r}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetric covariance matrix satisfying the uncertainty bound.

    Validity means symmetric and all symplectic eigenvalues >= 1 (up to
    1e-8 of roundoff); the constructor rejects anything else.
    """

    n_modes: int
    sigma: np.ndarray

    def __post_init__(self):
        mat = np.array(self.sigma, dtype=float)
        size = 2 * self.n_modes
        if mat.shape != (size, size):
            raise ValueError(f"expected a {size}x{size} matrix, got {mat.shape}")
        if np.abs(mat - mat.T).max() > SYMMETRY_TOL:
            raise InvalidCovarianceError("covariance matrix is not symmetric")
        smallest = _spectrum_of(mat)[-1]
        if smallest < 1.0 - NU_CONSTRUCTOR_TOL:
            raise InvalidCovarianceError(
                f"uncertainty bound violated: smallest symplectic eigenvalue {smallest!r} < 1"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "sigma", mat)


@dataclass(frozen=True)
class GaussianState:
    """Covariance matrix plus mean vector."""

    cov: CovarianceMatrix
    mean: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float)
        if mean.shape != (2 * self.cov.n_modes,):
            raise ValueError(f"mean must have length {2 * self.cov.n_modes}, got {mean.shape}")
        mean.setflags(write=False)
        object.__setattr__(self, "mean", mean)

    @property
    def n_modes(self) -> int:
        return self.cov.n_modes


def symplectic_eigenvalues(cov: CovarianceMatrix) -> np.ndarray:
    """Symplectic spectrum: moduli of the eigenvalues of i*Omega*sigma.

    The 2n moduli come in equal pairs and are deduplicated into n values,
    descending.  All are >= 1 for a physical state; anything below
    1 - 1e-6 raises.
    """
    nu = _spectrum_of(cov.sigma)
    if nu[-1] < 1.0 - NU_OPERATION_TOL:
        raise InvalidCovarianceError(
            f"uncertainty bound violated: smallest symplectic eigenvalue {nu[-1]!r} < 1"
        )
    return nu


def williamson(cov: CovarianceMatrix) -> tuple[SymplecticMatrix, np.ndarray]:
    """Symplectic transform to thermal normal form.

    Returns ``(S, nu)`` with ``S sigma S^T = diag(nu_1, nu_1, ..., nu_n,
    nu_n)`` and nu descending.  S is built from the real Schur form of
    ``sigma^(-1/2) Omega sigma^(-1/2)``; it is not unique when the
    spectrum is degenerate, so callers should assert the reconstruction
    rather than S itself.

    Raises
    ------
    WilliamsonError
        If the final reconstruction residual or symplectic defect exceeds
        tolerance; the failure is reported, never silent.
    """
    sigma = cov.sigma
    n = cov.n_modes
    evals, evecs = np.linalg.eigh(sigma)
    if evals[0] <= 0.0:
        raise InvalidCovarianceError(f"covariance is not positive definite: {evals[0]!r}")
    inv_sqrt = evecs @ np.diag(evals**-0.5) @ evecs.T
    skew = inv_sqrt @ symplectic_form(n) @ inv_sqrt
    skew = 0.5 * (skew - skew.T)
    t, k = schur(skew)
    # The Schur form of a real antisymmetric matrix is block diagonal in
    # [[0, mu], [-mu, 0]]; normalize block signs, then order by descending
    # symplectic eigenvalue nu = 1/mu.
    k = k.copy()
    mu = np.empty(n)
    for i in range(n):
        entry = t[2 * i, 2 * i + 1]
        if entry < 0.0:
            k[:, [2 * i, 2 * i + 1]] = k[:, [2 * i + 1, 2 * i]]
        mu[i] = abs(entry)
    nu = 1.0 / mu
    order = np.argsort(-nu, kind="stable")
    nu = nu[order]
    column_order = np.empty(2 * n, dtype=int)
    column_order[0::2] = 2 * order
    column_order[1::2] = 2 * order + 1
    k = k[:, column_order]
    scale = np.sqrt(np.repeat(nu, 2))
    s = scale[:, None] * (k.T @ inv_sqrt)

    normal_form = np.diag(np.repeat(nu, 2))
    residual = np.linalg.norm(s @ sigma @ s.T - normal_form) / np.linalg.norm(sigma)
    if residual > WILLIAMSON_RESIDUAL_TOL:
        raise WilliamsonError(f"reconstruction residual {residual!r} exceeds tolerance")
    omega = symplectic_form(n)
    defect = np.linalg.norm(s.T @ omega @ s - omega)
    if defect > SYMPLECTIC_TOL:
        raise WilliamsonError(f"symplectic defect {defect!r} exceeds tolerance")
    return SymplecticMatrix(n, s), nu


def is_pure(cov: CovarianceMatrix) -> bool:
    """True when every symplectic eigenvalue equals 1 within 1e-8."""
    return bool(np.all(np.abs(symplectic_eigenvalues(cov) - 1.0) <= PURITY_NU_TOL))


def gaussian_purity(cov: CovarianceMatrix) -> float:
    """``Tr(rho^2) = 1/sqrt(det sigma)``."""
    sign, logdet = np.linalg.slogdet(cov.sigma)
    if sign <= 0.0:
        raise InvalidCovarianceError("covariance determinant is not positive")
    return float(np.exp(-0.5 * logdet))


def reduce_modes(state: GaussianState, keep) -> GaussianState:
    """Marginal Gaussian state on a subset of modes.

    The reduced covariance is the principal submatrix on the kept modes,
    the reduced mean the matching subvector.
    """
    indices = sorted(set(int(i) for i in keep))
    if not indices:
        raise ValueError("must keep at least one mode")
    if indices[0] < 0 or indices[-1] >= state.n_modes:
        raise ValueError(f"mode indices {indices} out of range for {state.n_modes} modes")
    rows = np.array([2 * i + off for i in indices for off in (0, 1)])
    sub = state.cov.sigma[np.ix_(rows, rows)]
    return GaussianState(CovarianceMatrix(len(indices), sub), state.mean[rows])


def thermal_entropy(nu: float) -> float:
    """Von Neumann entropy (nats) of a single thermal mode with eigenvalue nu.

    ``f(nu) = ((nu+1)/2) ln((nu+1)/2) - ((nu-1)/2) ln((nu-1)/2)``, with
    f(1) = 0; values of nu below 1 are treated as roundoff.
    """
    if nu <= 1.0:
        return 0.0
    plus = 0.5 * (nu + 1.0)
    minus = 0.5 * (nu - 1.0)
    return float(plus * np.log(plus) - minus * np.log(minus))


def gaussian_entropy_across(state: GaussianState, side_a) -> float:
    """Entanglement entropy (nats) of a pure Gaussian state across a mode cut.

    Parameters
    ----------
    state : GaussianState
        Must be globally pure; for mixed states this quantity is not the
        entanglement and the call raises, pointing at
        ``log_negativity_two_mode``.
    side_a : iterable of int
        Mode indices on one side of the bipartition (proper nonempty
        subset).

    Returns
    -------
    float
        Sum of ``thermal_entropy`` over the symplectic spectrum of the
        reduced covariance.
    """
    indices = sorted(set(int(i) for i in side_a))
    if not 0 < len(indices) < state.n_modes:
        raise ValueError("bipartition must be a proper nonempty subset of the modes")
    if not is_pure(state.cov):
        raise ValueError(
            "state is not pure, so the reduced entropy is not an entanglement "
            "measure; use log_negativity_two_mode for mixed two-mode states"
        )
    reduced = reduce_modes(state, indices)
    return float(sum(thermal_entropy(nu) for nu in symplectic_eigenvalues(reduced.cov)))


def log_negativity_two_mode(state: GaussianState) -> float:
    """Logarithmic negativity of a two-mode Gaussian state.

    Partial transposition flips the sign of the second mode's momentum;
    the result is ``max(0, -ln nu_minus)`` with nu_minus the smaller
    symplectic eigenvalue of the transposed covariance.  Valid for pure
    and mixed states.
    """
    if state.n_modes != 2:
        raise ValueError(f"defined for exactly two modes, got {state.n_modes}")
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    transposed = flip @ state.cov.sigma @ flip
    nu_minus = _spectrum_of(transposed)[-1]
    if nu_minus >= 1.0 - 1e-12:  # roundoff guard: separable states report exactly 0
        return 0.0
    return float(-np.log(nu_minus))


def mode_separating_transform(state: GaussianState) -> tuple[SymplecticMatrix, GaussianState]:
    """Symplectic transform after which the state is a product of thermal modes.

    Applies the Williamson transform to the state: the transformed
    covariance is ``diag(nu_1, nu_1, ...)`` with every cross-mode block
    zero, so the state is separable across every mode bipartition.  Works
    for pure and mixed states.
    """
    s, _ = williamson(state.cov)
    mat = s.matrix
    sigma = mat @ state.cov.sigma @ mat.T
    sigma = 0.5 * (sigma + sigma.T)
    transformed = GaussianState(CovarianceMatrix(state.n_modes, sigma), mat @ state.mean)
    return s, transformed


def vacuum_state(n_modes: int) -> GaussianState:
    """Product vacuum: identity covariance, zero mean."""
    return GaussianState(CovarianceMatrix(n_modes, np.eye(2 * n_modes)), np.zeros(2 * n_modes))


def two_mode_squeezed(r: float) -> GaussianState:
    """Two-mode squeezed vacuum with squeezing parameter r.

    Diagonal blocks cosh(2r) I, off-diagonal blocks sinh(2r) diag(1, -1):
    positions correlated, momenta anticorrelated.  Pure for every r.
    """
    c, s = np.cosh(2.0 * r), np.sinh(2.0 * r)
    sigma = np.array(
        [
            [c, 0.0, s, 0.0],
            [0.0, c, 0.0, -s],
            [s, 0.0, c, 0.0],
            [0.0, -s, 0.0, c],
        ]
    )
    return GaussianState(CovarianceMatrix(2, sigma), np.zeros(4))


def _interleave(n: int) -> np.ndarray:
    # map interleaved position -> xxpp position
    order = np.empty(2 * n, dtype=int)
    order[0::2] = np.arange(n)
    order[1::2] = np.arange(n) + n
    return order


def random_symplectic(n_modes: int, seed, max_squeeze: float = 0.8) -> SymplecticMatrix:
    """Random symplectic matrix from the Euler decomposition O1 Z O2.

    The orthogonal factors are images of Haar unitaries, Z squeezes each
    mode by a uniform r in [-max_squeeze, max_squeeze].
    """
    rng = np.random.default_rng(seed)

    def orthogonal() -> np.ndarray:
        u = random_unitary(n_modes, rng)
        xxpp = np.block([[u.real, -u.imag], [u.imag, u.real]])
        order = _interleave(n_modes)
        return xxpp[np.ix_(order, order)]

    o1 = orthogonal()
    o2 = orthogonal()
    r = rng.uniform(-max_squeeze, max_squeeze, n_modes)
    z = np.diag(np.repeat(np.exp(r), 2) ** np.tile([1.0, -1.0], n_modes))
    return SymplecticMatrix(n_modes, o1 @ z @ o2)


def random_covariance(
    n_modes: int, seed, pure: bool = False, max_squeeze: float = 0.8, max_thermal: float = 2.0
) -> CovarianceMatrix:
    """Random valid covariance ``S D S^T`` with a random symplectic S.

    D holds the symplectic eigenvalues: all 1 when ``pure``, otherwise
    uniform in [1, max_thermal].  The construction makes the intended
    spectrum known, so it doubles as an oracle for the decompositions.
    """
    rng = np.random.default_rng(seed)
    s = random_symplectic(n_modes, rng, max_squeeze).matrix
    nu = np.ones(n_modes) if pure else rng.uniform(1.0, max_thermal, n_modes)
    sigma = s @ np.diag(np.repeat(nu, 2)) @ s.T
    return CovarianceMatrix(n_modes, 0.5 * (sigma + sigma.T))
