"""Tests for the Gaussian covariance formalism.

The two-mode squeezed checks run against explicitly written 4x4 matrices,
and the entropy formula is cross-checked by building the same state in a
truncated number basis and pushing it through the finite-dimensional
Schmidt machinery, a path that shares no code with the covariance one.
"""

import numpy as np
import pytest
from scipy.linalg import expm

import tpslab as tl
from tpslab.gaussian import InvalidCovarianceError

OMEGA4 = np.array(
    [
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, -1, 0],
    ],
    dtype=float,
)


def tms_sigma(r: float) -> np.ndarray:
    """Two-mode squeezed covariance written out by hand."""
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    return np.array(
        [
            [c, 0, s, 0],
            [0, c, 0, -s],
            [s, 0, c, 0],
            [0, -s, 0, c],
        ]
    )


def tms_number_basis(r: float, cutoff: int) -> tl.PureState:
    """Two-mode squeezed state built from its generator in a truncated ladder.

    The squeezing generator acts within the |n, n> subspace, where it is the
    antisymmetric matrix K[n+1, n] = r (n+1); exponentiating it on the
    vacuum gives the state without using any closed-form amplitude.
    """
    ladder = np.zeros((cutoff, cutoff))
    for n in range(cutoff - 1):
        ladder[n + 1, n] = r * (n + 1)
        ladder[n, n + 1] = -r * (n + 1)
    weights = expm(ladder)[:, 0]
    psi = np.zeros(cutoff * cutoff, dtype=complex)
    psi[np.arange(cutoff) * cutoff + np.arange(cutoff)] = weights
    return tl.PureState(cutoff**2, psi / np.linalg.norm(psi))


class TestSymplecticForm:
    def test_squares_to_minus_identity(self):
        for n in (1, 2, 3):
            omega = tl.symplectic_form(n)
            np.testing.assert_allclose(omega @ omega, -np.eye(2 * n))

    def test_matches_hand_written_form(self):
        np.testing.assert_array_equal(tl.symplectic_form(2), OMEGA4)


class TestValidation:
    def test_symplectic_matrix_rejects_non_symplectic(self):
        with pytest.raises(ValueError, match="symplectic"):
            tl.SymplecticMatrix(1, np.diag([2.0, 2.0]))

    def test_covariance_rejects_asymmetric(self):
        sigma = np.eye(2)
        sigma[0, 1] = 1e-6
        with pytest.raises(InvalidCovarianceError, match="symmetric"):
            tl.CovarianceMatrix(1, sigma)

    def test_covariance_rejects_uncertainty_violation(self):
        with pytest.raises(InvalidCovarianceError, match="uncertainty"):
            tl.CovarianceMatrix(1, 0.5 * np.eye(2))

    def test_random_covariances_always_valid(self):
        for seed in range(10):
            cov = tl.random_covariance(3, seed)
            assert tl.symplectic_eigenvalues(cov)[-1] >= 1 - 1e-8


class TestSymplecticEigenvalues:
    def test_vacuum(self):
        cov = tl.CovarianceMatrix(3, np.eye(6))
        np.testing.assert_allclose(tl.symplectic_eigenvalues(cov), np.ones(3))

    def test_pure_squeezed_single_mode(self):
        for a in (0.3, 1.0, 4.2):
            cov = tl.CovarianceMatrix(1, np.diag([a, 1 / a]))
            np.testing.assert_allclose(tl.symplectic_eigenvalues(cov), [1.0], atol=1e-12)

    def test_two_mode_squeezed_against_explicit_matrix(self):
        sigma = tms_sigma(0.7)
        oracle = np.abs(np.linalg.eigvals(1j * OMEGA4 @ sigma))
        oracle = np.sort(oracle)[::-1][::2]
        nu = tl.symplectic_eigenvalues(tl.CovarianceMatrix(2, sigma))
        np.testing.assert_allclose(nu, oracle, atol=1e-12)
        np.testing.assert_allclose(nu, [1.0, 1.0], atol=1e-10)

    def test_descending_order(self):
        cov = tl.random_covariance(4, 17)
        nu = tl.symplectic_eigenvalues(cov)
        assert np.all(np.diff(nu) <= 1e-12)

    def test_invariance_under_random_symplectic(self):
        for seed in range(8):
            cov = tl.random_covariance(3, seed)
            s = tl.random_symplectic(3, 100 + seed).matrix
            moved = tl.CovarianceMatrix(3, s @ cov.sigma @ s.T)
            np.testing.assert_allclose(
                tl.symplectic_eigenvalues(moved),
                tl.symplectic_eigenvalues(cov),
                atol=1e-9,
            )


class TestWilliamson:
    def test_vacuum_reconstruction(self):
        cov = tl.CovarianceMatrix(2, np.eye(4))
        s, nu = tl.williamson(cov)
        np.testing.assert_allclose(nu, [1.0, 1.0])
        np.testing.assert_allclose(s.matrix @ cov.sigma @ s.matrix.T, np.eye(4), atol=1e-10)

    def test_single_mode_squeezer(self):
        r = 0.9
        cov = tl.CovarianceMatrix(1, np.diag([np.exp(2 * r), np.exp(-2 * r)]))
        s, nu = tl.williamson(cov)
        np.testing.assert_allclose(nu, [1.0], atol=1e-12)
        np.testing.assert_allclose(s.matrix @ cov.sigma @ s.matrix.T, np.eye(2), atol=1e-10)

    def test_random_covariances_reconstruct(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            n = int(rng.integers(1, 5))
            cov = tl.random_covariance(n, rng)
            s, nu = tl.williamson(cov)
            normal_form = np.diag(np.repeat(nu, 2))
            residual = np.linalg.norm(s.matrix @ cov.sigma @ s.matrix.T - normal_form)
            assert residual / np.linalg.norm(cov.sigma) < 1e-8
            omega = tl.symplectic_form(n)
            assert np.linalg.norm(s.matrix.T @ omega @ s.matrix - omega) < 1e-10

    def test_recovers_generator_spectrum(self):
        # the random covariance is built as S diag(nu) S^T, so the intended
        # spectrum is known exactly and doubles as the oracle
        rng = np.random.default_rng(4)
        for _ in range(10):
            s = tl.random_symplectic(2, rng).matrix
            planted = np.sort(rng.uniform(1.0, 2.5, 2))[::-1]
            sigma = s @ np.diag(np.repeat(planted, 2)) @ s.T
            cov = tl.CovarianceMatrix(2, 0.5 * (sigma + sigma.T))
            _, nu = tl.williamson(cov)
            np.testing.assert_allclose(nu, planted, atol=1e-9)

    def test_degenerate_spectrum_reconstructs(self):
        s = tl.random_symplectic(2, 55).matrix
        sigma = s @ (1.5 * np.eye(4)) @ s.T
        cov = tl.CovarianceMatrix(2, 0.5 * (sigma + sigma.T))
        smat, nu = tl.williamson(cov)
        np.testing.assert_allclose(nu, [1.5, 1.5], atol=1e-9)
        np.testing.assert_allclose(
            smat.matrix @ cov.sigma @ smat.matrix.T, 1.5 * np.eye(4), atol=1e-8
        )


class TestPurity:
    def test_vacuum_is_pure(self):
        cov = tl.CovarianceMatrix(2, np.eye(4))
        assert tl.is_pure(cov)
        assert abs(tl.gaussian_purity(cov) - 1.0) < 1e-12

    def test_thermal_mode_purity(self):
        nu = 1.7
        cov = tl.CovarianceMatrix(1, nu * np.eye(2))
        assert not tl.is_pure(cov)
        assert abs(tl.gaussian_purity(cov) - 1 / nu) < 1e-12

    def test_two_mode_squeezed_is_pure(self):
        sigma = tms_sigma(1.0)
        det = np.linalg.det(sigma)
        assert abs(det - 1.0) < 1e-8
        assert abs(tl.gaussian_purity(tl.CovarianceMatrix(2, sigma)) - 1.0) < 1e-10

    def test_purity_is_product_of_inverse_eigenvalues(self):
        for seed in range(8):
            cov = tl.random_covariance(3, seed)
            nu = tl.symplectic_eigenvalues(cov)
            assert abs(tl.gaussian_purity(cov) - np.prod(1.0 / nu)) < 1e-9


class TestReduceModes:
    def test_product_vacuum_marginal(self):
        state = tl.vacuum_state(2)
        reduced = tl.reduce_modes(state, [1])
        np.testing.assert_allclose(reduced.cov.sigma, np.eye(2))

    def test_two_mode_squeezed_marginal_is_thermal(self):
        r = 0.8
        reduced = tl.reduce_modes(tl.two_mode_squeezed(r), [0])
        np.testing.assert_allclose(reduced.cov.sigma, np.cosh(2 * r) * np.eye(2), atol=1e-12)

    def test_keep_all_is_identity(self):
        state = tl.two_mode_squeezed(0.5)
        reduced = tl.reduce_modes(state, [0, 1])
        np.testing.assert_array_equal(reduced.cov.sigma, state.cov.sigma)

    def test_invalid_indices(self):
        with pytest.raises(ValueError):
            tl.reduce_modes(tl.vacuum_state(2), [])
        with pytest.raises(ValueError):
            tl.reduce_modes(tl.vacuum_state(2), [2])


class TestEntropyAcross:
    def test_product_vacuum_zero(self):
        assert tl.gaussian_entropy_across(tl.vacuum_state(2), [0]) == 0.0

    def test_unsqueezed_zero(self):
        assert tl.gaussian_entropy_across(tl.two_mode_squeezed(0.0), [0]) < 1e-12

    def test_two_mode_squeezed_closed_form(self):
        r = 1.0
        entropy = tl.gaussian_entropy_across(tl.two_mode_squeezed(r), [0])
        c2, s2 = np.cosh(r) ** 2, np.sinh(r) ** 2
        closed = c2 * np.log(c2) - s2 * np.log(s2)
        assert abs(entropy - closed) < 1e-10
        assert abs(entropy - tl.thermal_entropy(np.cosh(2 * r))) < 1e-12

    @pytest.mark.parametrize("r", [0.3, 1.0])
    def test_cross_oracle_truncated_number_basis(self, r):
        cutoff = 60
        psi = tms_number_basis(r, cutoff)
        frame = tl.TpsFrame.identity(tl.Factorization(cutoff**2, (cutoff, cutoff)))
        discrete = tl.entanglement_entropy(psi, frame)
        continuous = tl.gaussian_entropy_across(tl.two_mode_squeezed(r), [0])
        assert abs(discrete - continuous) < 1e-6

    def test_mixed_state_raises_towards_log_negativity(self):
        mixed = tl.GaussianState(tl.CovarianceMatrix(2, 1.5 * np.eye(4)), np.zeros(4))
        with pytest.raises(ValueError, match="log_negativity"):
            tl.gaussian_entropy_across(mixed, [0])

    def test_bad_partition(self):
        with pytest.raises(ValueError, match="bipartition"):
            tl.gaussian_entropy_across(tl.vacuum_state(2), [0, 1])


class TestLogNegativity:
    def test_vacuum_zero(self):
        assert tl.log_negativity_two_mode(tl.vacuum_state(2)) == 0.0

    @pytest.mark.parametrize("r", [0.2, 0.7, 1.3])
    def test_two_mode_squeezed_is_2r(self, r):
        # oracle: flip p2 by hand and take the explicit spectrum
        flip = np.diag([1.0, 1.0, 1.0, -1.0])
        transposed = flip @ tms_sigma(r) @ flip
        moduli = np.sort(np.abs(np.linalg.eigvals(1j * OMEGA4 @ transposed)))
        assert abs(moduli[0] - np.exp(-2 * r)) < 1e-10
        value = tl.log_negativity_two_mode(tl.two_mode_squeezed(r))
        assert abs(value - 2 * r) < 1e-10

    def test_thermal_product_zero(self):
        sigma = np.diag([1.3, 1.3, 2.0, 2.0])
        state = tl.GaussianState(tl.CovarianceMatrix(2, sigma), np.zeros(4))
        assert tl.log_negativity_two_mode(state) == 0.0

    def test_wrong_mode_count(self):
        with pytest.raises(ValueError, match="two modes"):
            tl.log_negativity_two_mode(tl.vacuum_state(3))


class TestModeSeparation:
    def test_two_mode_squeezed_becomes_separable(self):
        state = tl.two_mode_squeezed(1.0)
        _, moved = tl.mode_separating_transform(state)
        off = moved.cov.sigma[:2, 2:]
        assert np.abs(off).max() < 1e-8
        assert tl.gaussian_entropy_across(moved, [0]) < 1e-8
        assert tl.log_negativity_two_mode(moved) == 0.0

    def test_already_diagonal_state(self):
        state = tl.GaussianState(tl.CovarianceMatrix(2, np.diag([2, 2, 1.2, 1.2])), np.zeros(4))
        s, moved = tl.mode_separating_transform(state)
        normal_form = np.diag(np.repeat(tl.symplectic_eigenvalues(state.cov), 2))
        assert np.linalg.norm(moved.cov.sigma - normal_form) < 1e-8

    def test_random_mixed_two_mode_state(self):
        for seed in range(6):
            cov = tl.random_covariance(2, seed)
            state = tl.GaussianState(cov, np.zeros(4))
            _, moved = tl.mode_separating_transform(state)
            assert np.abs(moved.cov.sigma[:2, 2:]).max() < 1e-8
            assert tl.log_negativity_two_mode(moved) == 0.0

    def test_mean_transforms_along(self):
        state = tl.GaussianState(tl.two_mode_squeezed(0.6).cov, np.array([1.0, 0.0, -2.0, 0.5]))
        s, moved = tl.mode_separating_transform(state)
        np.testing.assert_allclose(moved.mean, s.matrix @ state.mean)


class TestDisplacementInvariance:
    def test_measures_ignore_the_mean(self):
        cov = tl.two_mode_squeezed(0.9).cov
        displaced = tl.GaussianState(cov, np.array([3.0, -1.0, 0.2, 5.0]))
        centered = tl.GaussianState(cov, np.zeros(4))
        assert tl.gaussian_entropy_across(displaced, [0]) == tl.gaussian_entropy_across(
            centered, [0]
        )
        assert tl.log_negativity_two_mode(displaced) == tl.log_negativity_two_mode(centered)
        assert tl.gaussian_purity(displaced.cov) == tl.gaussian_purity(centered.cov)
