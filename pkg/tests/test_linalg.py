"""Tests for the dense Hermitian eigensolvers and singular value kernels."""

import numpy as np
import pytest

from tests.conftest import random_hermitian

CASES = 500


def _gaussian(rng, size: int) -> np.ndarray:
    return rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))


class TestJacobi:
    """Test the cyclic Jacobi eigensolver."""

    def test_random_reconstruction(self, rng):
        """V diag(lambda) V* reproduces A and eigenvalues match LAPACK up to dimension 32."""
        from src.linalg import hermitian_eig

        for _ in range(CASES):
            size = int(rng.integers(1, 33))
            a = random_hermitian(rng, size)
            scale = 1.0 + np.linalg.norm(a, 2)
            dec = hermitian_eig(a)
            assert np.linalg.norm(dec.reconstruct() - a) <= 1e-8 * scale
            assert np.allclose(dec.eigenvalues, np.linalg.eigvalsh(a), atol=1e-8 * scale, rtol=0)

    @pytest.mark.parametrize(
        "a, b, d",
        [(3.0, 1e-9, 1.0), (1.0, 2.0 - 1.0j, -2.0), (0.5, 1e-300, 0.5), (-4.0, 3.0j, 4.0)],
    )
    def test_two_by_two_closed_form(self, a, b, d):
        """[[a, b], [conj b, d]] has eigenvalues (a + d) / 2 +- sqrt(((a - d) / 2)^2 + |b|^2)."""
        from src.linalg import hermitian_eig

        mat = np.array([[a, b], [np.conj(b), d]], dtype=np.complex128)
        radius = np.hypot((a - d) / 2.0, abs(b))
        expected = [(a + d) / 2.0 - radius, (a + d) / 2.0 + radius]
        with np.errstate(over="raise", invalid="raise", divide="raise"):
            dec = hermitian_eig(mat)
        assert np.allclose(dec.eigenvalues, expected, atol=1e-12, rtol=0)
        assert np.linalg.norm(dec.reconstruct() - mat) <= 1e-12

    def test_three_by_three_closed_form(self):
        """[[2, i, 0], [-i, 2, i], [0, -i, 2]] has eigenvalues 2 - sqrt2, 2 and 2 + sqrt2."""
        from src.linalg import hermitian_eig

        mat = np.array([[2.0, 1.0j, 0.0], [-1.0j, 2.0, 1.0j], [0.0, -1.0j, 2.0]])
        dec = hermitian_eig(mat)
        expected = [2.0 - np.sqrt(2.0), 2.0, 2.0 + np.sqrt(2.0)]
        assert np.allclose(dec.eigenvalues, expected, atol=1e-13, rtol=0)
        assert np.linalg.norm(dec.reconstruct() - mat) <= 1e-12

    def test_near_diagonal_is_rotated(self):
        """An off-diagonal entry of 1e-9 is measured exactly and annihilated."""
        from src.linalg import hermitian_eig
        from src.linalg.hermitian import _off_norm

        mat = np.diag([3.0, 1.0]).astype(np.complex128)
        mat[0, 1] = mat[1, 0] = 1e-9
        assert _off_norm(mat) == pytest.approx(np.sqrt(2.0) * 1e-9, rel=1e-12)
        dec = hermitian_eig(mat)
        assert dec.sweeps >= 1
        assert dec.off_norm < 1e-12 * (1.0 + np.linalg.norm(mat))
        assert np.linalg.norm(dec.reconstruct() - mat) <= 1e-13

    def test_tiny_coupling_does_not_overflow(self):
        """A subnormal off-diagonal entry next to an O(1) pair rotates without overflow."""
        from src.linalg import hermitian_eig

        rows = [[1.0, 1.0, 0.0], [1.0, 2.0, 1e-320], [0.0, 1e-320, 5.0]]
        mat = np.array(rows, dtype=np.complex128)
        with np.errstate(over="raise", invalid="raise", divide="raise"):
            dec = hermitian_eig(mat)
        assert np.allclose(dec.eigenvalues, np.linalg.eigvalsh(mat), atol=1e-13, rtol=0)

    def test_eigenvalues_ascending(self, rng):
        """Eigenvalues come back sorted with orthonormal eigenvectors."""
        from src.linalg import hermitian_eig

        dec = hermitian_eig(random_hermitian(rng, 9))
        assert np.all(np.diff(dec.eigenvalues) >= 0)
        assert np.allclose(dec.basis.conj().T @ dec.basis, np.eye(9), atol=1e-10)

    def test_reproducible(self, rng):
        """Two runs on the same input are bit-identical."""
        from src.linalg import hermitian_eig

        a = random_hermitian(rng, 8)
        first, second = hermitian_eig(a), hermitian_eig(a)
        assert np.array_equal(first.eigenvalues, second.eigenvalues)
        assert np.array_equal(first.basis, second.basis)

    def test_residuals_small(self, rng):
        """A v = lambda v for every returned pair."""
        from src.linalg import hermitian_eig

        a = random_hermitian(rng, 6)
        dec = hermitian_eig(a)
        assert dec.residuals(a).max() <= 1e-8 * (1.0 + np.linalg.norm(a, 2))

    def test_one_by_one(self):
        """A 1 x 1 matrix needs no sweep."""
        from src.linalg import hermitian_eig

        dec = hermitian_eig(np.array([[3.0]]))
        assert dec.eigenvalues.tolist() == [3.0]
        assert dec.sweeps == 0

    def test_sweep_budget_exhausted(self, rng):
        """No sweeps allowed on a non-diagonal matrix is a numerical error."""
        from src.errors import NumericalError
        from src.linalg import hermitian_eig

        with pytest.raises(NumericalError) as exc_info:
            hermitian_eig(random_hermitian(rng, 4), max_sweeps=0)
        assert exc_info.value.off_norm > 0

    def test_non_hermitian_rejected(self):
        """Jacobi requires Hermitian input."""
        from src.errors import ContractViolation
        from src.linalg import hermitian_eig

        with pytest.raises(ContractViolation):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_non_positive_tolerance_rejected(self):
        """tol must be positive."""
        from src.errors import ContractViolation
        from src.linalg import hermitian_eig

        with pytest.raises(ContractViolation):
            hermitian_eig(np.eye(2), tol=0.0)

    def test_is_hermitian(self):
        """is_hermitian tolerates tiny defects and rejects non-square input."""
        from src.linalg import is_hermitian

        a = np.array([[1.0, 2.0], [2.0 + 1e-14, 1.0]])
        assert is_hermitian(a)
        assert not is_hermitian(np.ones((2, 3)))
        assert not is_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestTridiagonal:
    """Test Householder reduction and Sturm counts."""

    def test_reduction_keeps_eigenvalues(self, rng):
        """The tridiagonal matrix has the eigenvalues of the input."""
        from src.linalg import tridiagonalize

        for _ in range(50):
            size = int(rng.integers(2, 12))
            a = random_hermitian(rng, size)
            diag, offdiag = tridiagonalize(a)
            t = np.diag(diag) + np.diag(offdiag, 1) + np.diag(offdiag, -1)
            assert np.allclose(
                np.linalg.eigvalsh(t), np.linalg.eigvalsh(a), atol=1e-10 * (1 + np.abs(a).max())
            )

    def test_sturm_counts_tridiagonal_toeplitz(self):
        """Eigenvalues 2cos(k pi / 11) of the 10 x 10 second difference matrix."""
        from src.linalg import sturm_counts

        diag, offdiag = np.zeros(10), np.ones(9)
        counts = sturm_counts(diag, offdiag, [-2.5, -1.0, 0.0, 1.0, 2.5])
        expected = [
            int(np.sum(2 * np.cos(np.arange(1, 11) * np.pi / 11) < x))
            for x in (-2.5, -1.0, 0.0, 1.0, 2.5)
        ]
        assert counts.tolist() == expected
        assert counts.tolist() == [0, 3, 5, 7, 10]

    def test_selected_eigenvalues(self, rng):
        """hermitian_eigvals matches LAPACK, in full or for selected indices."""
        from src.linalg import hermitian_eigvals

        a = random_hermitian(rng, 11)
        reference = np.linalg.eigvalsh(a)
        assert np.allclose(hermitian_eigvals(a), reference, atol=1e-10)
        assert np.allclose(hermitian_eigvals(a, indices=[0, 10]), reference[[0, 10]], atol=1e-10)

    def test_banded_input_stays_exact(self):
        """Already tridiagonal input is read off directly."""
        from src.linalg import tridiagonalize

        t = np.diag([1.0, 2.0, 3.0]) + np.diag([0.5, 0.25], 1) + np.diag([0.5, 0.25], -1)
        diag, offdiag = tridiagonalize(t)
        assert diag.tolist() == [1.0, 2.0, 3.0]
        assert offdiag.tolist() == [0.5, 0.25]


class TestSingularValues:
    """Test singular values from A*A."""

    def test_random_against_numpy(self, rng):
        """All singular values agree with LAPACK."""
        from src.linalg import svd_values

        for _ in range(CASES):
            size = int(rng.integers(1, 13))
            a = _gaussian(rng, size)
            norm = np.linalg.norm(a, 2)
            values = svd_values(a).descending
            assert np.allclose(
                values, np.linalg.svd(a, compute_uv=False), atol=1e-6 * (1 + norm), rtol=0
            )

    def test_adjoint_has_same_values(self, rng):
        """Sigma_k(A) = Sigma_k(A*)."""
        from src.linalg import svd_values

        for _ in range(CASES):
            size = int(rng.integers(1, 13))
            a = _gaussian(rng, size)
            tol = 1e-6 * (1 + np.linalg.norm(a, 2))
            assert np.allclose(
                svd_values(a).descending, svd_values(a.conj().T).descending, atol=tol, rtol=0
            )

    def test_weyl_perturbation_bound(self, rng):
        """|Sigma_k(A) - Sigma_k(B)| <= ||A - B||."""
        from src.linalg import svd_values

        for _ in range(CASES):
            size = int(rng.integers(1, 13))
            a = _gaussian(rng, size)
            b = a + 10.0 ** rng.uniform(-3, 0) * _gaussian(rng, size)
            gap = np.abs(svd_values(a).descending - svd_values(b).descending).max()
            assert gap <= np.linalg.norm(a - b, 2) + 1e-6 * (1 + np.linalg.norm(a, 2))

    def test_methods_agree(self, rng):
        """Jacobi and multisection give the same values."""
        from src.linalg import svd_values
        from src.linalg.singular import SvdMethod

        a = _gaussian(rng, 7)
        assert np.allclose(
            svd_values(a, method=SvdMethod.JACOBI).descending,
            svd_values(a).descending,
            atol=1e-7,
        )

    def test_rank_deficient_values_small(self, rng):
        """Missing rank shows up as singular values below sqrt(eps) scale."""
        from src.linalg import extreme_singular_values
        from tests.conftest import random_low_rank

        a = random_low_rank(rng, 8, 3)
        top, bottom = extreme_singular_values(a, 3)
        assert np.all(top >= 0.5 - 1e-8)
        assert np.all(bottom < 1e-6)

    def test_hermitian_path_exact_zero(self):
        """The Hermitian path reads |lambda| directly and clamps exact zeros."""
        from src.linalg import extreme_singular_values

        a = np.diag([2.0, -1.0, 0.0])
        top, bottom = extreme_singular_values(a, 2, hermitian=True)
        assert top == pytest.approx([2.0, 1.0])
        assert bottom[0] == 0.0
        assert bottom[1] == pytest.approx(1.0)

    def test_hermitian_and_general_paths_agree(self, rng):
        """Both paths of extreme_singular_values agree on Hermitian input."""
        from src.linalg import extreme_singular_values

        a = random_hermitian(rng, 10)
        top_h, bottom_h = extreme_singular_values(a, 3, hermitian=True)
        top_g, bottom_g = extreme_singular_values(a, 3)
        assert np.allclose(top_h, top_g, atol=1e-6)
        assert np.allclose(bottom_h, bottom_g, atol=1e-6)

    def test_k_capped_at_dimension(self):
        """Asking for more values than the dimension returns dim values."""
        from src.linalg import extreme_singular_values

        top, bottom = extreme_singular_values(np.eye(2), 5)
        assert top.size == bottom.size == 2

    def test_largest_and_smallest_indexing(self):
        """Sigma_k counts from the top, sigma_k from the bottom."""
        from src.linalg import SingularValues

        values = SingularValues(np.array([3.0, 2.0, 1.0]))
        assert values.largest(1) == 3.0
        assert values.smallest(1) == 1.0
        assert values.ascending.tolist() == [1.0, 2.0, 3.0]
        with pytest.raises(IndexError):
            values.largest(4)

    def test_spectral_norm_of_shift(self):
        """The lower shift has norm 1."""
        from src.linalg import spectral_norm

        assert spectral_norm(np.eye(5, k=-1)) == pytest.approx(1.0)
        assert spectral_norm(np.zeros((0, 0))) == 0.0

    def test_non_square_rejected(self):
        """Singular values are only defined here for square matrices."""
        from src.errors import ContractViolation
        from src.linalg import svd_values

        with pytest.raises(ContractViolation):
            svd_values(np.ones((2, 3)))
