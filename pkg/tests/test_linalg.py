"""Tests for the dense linear-algebra layer."""

import numpy as np
import pytest

from tanglekit.linalg import (
    DensityMatrix,
    StateVector,
    haar_random_pure,
    hermitian_eig,
    kron,
    matrix_sqrt_psd,
    partial_trace,
    permute_qubits,
    reduced_density,
)


def random_density(n_qubits, rank, seed):
    """Random mixed state as a convex mix of Haar-random pure states."""
    rng = np.random.default_rng(seed)
    dim = 2**n_qubits
    w = rng.random(rank)
    w /= w.sum()
    rho = np.zeros((dim, dim), dtype=complex)
    for k in range(rank):
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        v /= np.linalg.norm(v)
        rho += w[k] * np.outer(v, v.conj())
    return DensityMatrix(rho)


def brute_force_partial_trace(mat, n, keep):
    """Index-sum definition of the partial trace, as an independent oracle."""
    traced = [q for q in range(n) if q not in keep]
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)

    def full_index(keep_bits, traced_bits):
        bits = [0] * n
        for q, b in zip(keep, keep_bits):
            bits[q] = b
        for q, b in zip(traced, traced_bits):
            bits[q] = b
        idx = 0
        for b in bits:
            idx = 2 * idx + b
        return idx

    for i in range(dk):
        ib = [(i >> (len(keep) - 1 - k)) & 1 for k in range(len(keep))]
        for j in range(dk):
            jb = [(j >> (len(keep) - 1 - k)) & 1 for k in range(len(keep))]
            for t in range(2 ** len(traced)):
                tb = [(t >> (len(traced) - 1 - k)) & 1 for k in range(len(traced))]
                out[i, j] += mat[full_index(ib, tb), full_index(jb, tb)]
    return out


class TestTypes:
    def test_state_vector_rejects_bad_norm(self):
        with pytest.raises(ValueError):
            StateVector([0.9, 0.0])

    def test_state_vector_rejects_bad_length(self):
        with pytest.raises(ValueError):
            StateVector([1.0, 0.0, 0.0])

    def test_density_matrix_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            DensityMatrix([[0.5, 0.5], [0.0, 0.5]])

    def test_density_matrix_rejects_bad_trace(self):
        with pytest.raises(ValueError):
            DensityMatrix([[0.6, 0.0], [0.0, 0.6]])

    def test_pure_density_roundtrip(self):
        psi = haar_random_pure(2, seed=5)
        rho = psi.density()
        assert abs(np.trace(rho.matrix @ rho.matrix) - 1.0) < 1e-12


class TestKron:
    def test_identity(self):
        assert np.allclose(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_diagonal(self):
        got = kron(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
        assert np.allclose(got, np.diag([3.0, 4.0, 6.0, 8.0]))

    def test_shape_law(self):
        a = np.ones((2, 2))
        b = np.ones((4, 4))
        assert kron(a, b).shape == (8, 8)

    def test_trace_multiplicative(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        b = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        assert abs(np.trace(kron(a, b)) - np.trace(a) * np.trace(b)) < 1e-12


class TestPartialTrace:
    def test_bell_reduces_to_maximally_mixed(self):
        bell = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2))
        red = partial_trace(bell.density(), [0])
        assert np.allclose(red.matrix, np.eye(2) / 2, atol=1e-12)

    def test_product_state_factors(self):
        rho_a = random_density(1, 2, seed=1)
        rho_b = random_density(2, 2, seed=2)
        joint = DensityMatrix(kron(rho_a.matrix, rho_b.matrix))
        red = partial_trace(joint, [0])
        assert np.allclose(red.matrix, rho_a.matrix, atol=1e-12)

    def test_ghz4_keep_three(self):
        amps = np.zeros(16)
        amps[0] = amps[15] = 1 / np.sqrt(2)
        ghz4 = StateVector(amps)
        red = partial_trace(ghz4.density(), [0, 1, 2])
        want = np.zeros((8, 8))
        want[0, 0] = want[7, 7] = 0.5
        assert np.allclose(red.matrix, want, atol=1e-12)

    def test_matches_brute_force(self):
        rho = random_density(3, 3, seed=3)
        for keep in ([0], [1], [2], [0, 1], [0, 2], [1, 2]):
            got = partial_trace(rho, keep).matrix
            want = brute_force_partial_trace(rho.matrix, 3, keep)
            assert np.max(np.abs(got - want)) < 1e-12

    def test_sequential_equals_joint(self):
        rho = random_density(4, 2, seed=4)
        via_two_steps = partial_trace(partial_trace(rho, [0, 1, 2]), [0, 1])
        direct = partial_trace(rho, [0, 1])
        assert np.max(np.abs(via_two_steps.matrix - direct.matrix)) < 1e-12

    def test_preserves_hermiticity_and_trace(self):
        rho = random_density(4, 3, seed=5)
        red = partial_trace(rho, [1, 3]).matrix
        assert np.max(np.abs(red - red.conj().T)) < 1e-12
        assert abs(np.trace(red) - 1.0) < 1e-12

    def test_reduced_density_matches_partial_trace(self):
        psi = haar_random_pure(4, seed=6)
        got = reduced_density(psi, [1, 2]).matrix
        want = partial_trace(psi.density(), [1, 2]).matrix
        assert np.max(np.abs(got - want)) < 1e-12

    def test_keep_order_permutes(self):
        psi = haar_random_pure(3, seed=7)
        ab = reduced_density(psi, [0, 1]).matrix
        ba = reduced_density(psi, [1, 0]).matrix
        swap = ab.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
        assert np.max(np.abs(ba - swap)) < 1e-12

    def test_invalid_index_raises(self):
        rho = random_density(2, 1, seed=8)
        with pytest.raises(ValueError):
            partial_trace(rho, [2])
        with pytest.raises(ValueError):
            partial_trace(rho, [])
        with pytest.raises(ValueError):
            partial_trace(rho, [0, 0])


class TestHermitianEig:
    def test_diagonal_sorted_descending(self):
        eig = hermitian_eig(np.diag([3.0, 1.0, 2.0]))
        assert np.allclose(eig.eigenvalues, [3.0, 2.0, 1.0])

    def test_pauli_x(self):
        eig = hermitian_eig(np.array([[0, 1], [1, 0]], dtype=complex))
        assert np.allclose(eig.eigenvalues, [1.0, -1.0])

    def test_reconstruction_random_16(self):
        rng = np.random.default_rng(9)
        z = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
        q, _ = np.linalg.qr(z)
        d = np.diag(rng.standard_normal(16))
        h = q @ d @ q.conj().T
        h = (h + h.conj().T) / 2
        eig = hermitian_eig(h)
        v = eig.eigenvectors
        recon = (v * eig.eigenvalues) @ v.conj().T
        assert np.linalg.norm(recon - h) < 1e-10
        assert np.linalg.norm(v.conj().T @ v - np.eye(16)) < 1e-10

    def test_eigenvalue_sum_is_trace(self):
        rho = random_density(3, 4, seed=10)
        eig = hermitian_eig(rho.matrix)
        assert abs(eig.eigenvalues.sum() - np.trace(rho.matrix).real) < 1e-10

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestMatrixSqrt:
    def test_identity(self):
        assert np.allclose(matrix_sqrt_psd(np.eye(4)), np.eye(4))

    def test_diagonal(self):
        assert np.allclose(matrix_sqrt_psd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))

    def test_square_reconstructs(self):
        rho = random_density(2, 3, seed=11)
        s = matrix_sqrt_psd(rho.matrix)
        assert np.linalg.norm(s @ s - rho.matrix) < 1e-9
        assert np.max(np.abs(s - s.conj().T)) < 1e-10

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            matrix_sqrt_psd(np.diag([1.0, -1e-6]))


class TestHaarSampling:
    def test_unit_norm(self):
        for n in (1, 3, 6):
            psi = haar_random_pure(n, seed=12)
            assert abs(np.linalg.norm(psi.amplitudes) - 1.0) < 1e-12

    def test_deterministic(self):
        a = haar_random_pure(4, seed=7)
        b = haar_random_pure(4, seed=7)
        assert np.array_equal(a.amplitudes, b.amplitudes)

    def test_distinct_seeds_differ(self):
        a = haar_random_pure(4, seed=7)
        b = haar_random_pure(4, seed=8)
        assert not np.allclose(a.amplitudes, b.amplitudes)

    def test_rejects_bad_size(self):
        with pytest.raises(ValueError):
            haar_random_pure(0, seed=0)
        with pytest.raises(ValueError):
            haar_random_pure(7, seed=0)

    def test_mean_single_qubit_purity_matches_haar_formula(self):
        # mean purity of a 2 x 8 bipartition of Haar states is
        # (d_A + d_B) / (d_A d_B + 1) = 10/17
        total = 0.0
        n_samples = 10_000
        for seed in range(n_samples):
            vec = haar_random_pure(4, seed=seed).amplitudes
            m = vec.reshape(2, 8)
            g = m @ m.conj().T
            total += float(np.trace(g @ g).real)
        mean_purity = total / n_samples
        assert abs(mean_purity - 10 / 17) < 0.01


class TestPermuteQubits:
    def test_identity_permutation(self):
        psi = haar_random_pure(3, seed=13)
        assert np.allclose(permute_qubits(psi, [0, 1, 2]).amplitudes, psi.amplitudes)

    def test_swap_on_basis_state(self):
        # |01> -> |10> under qubit swap
        psi = StateVector([0, 1, 0, 0])
        got = permute_qubits(psi, [1, 0])
        assert np.allclose(got.amplitudes, [0, 0, 1, 0])

    def test_roundtrip(self):
        psi = haar_random_pure(4, seed=14)
        perm = [2, 0, 3, 1]
        inv = [perm.index(q) for q in range(4)]
        back = permute_qubits(permute_qubits(psi, perm), inv)
        assert np.allclose(back.amplitudes, psi.amplitudes)

    def test_rejects_non_permutation(self):
        psi = haar_random_pure(2, seed=15)
        with pytest.raises(ValueError):
            permute_qubits(psi, [0, 0])
