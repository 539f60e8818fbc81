import numpy as np
import pytest

from spinpulse import linalg

from conftest import expm_series, random_hermitian, random_unitary

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def test_multiply_identity():
    m = np.arange(4, dtype=complex).reshape(2, 2)
    np.testing.assert_array_equal(linalg.multiply(np.eye(2), m), m)


def test_multiply_pauli_product():
    np.testing.assert_allclose(linalg.multiply(SX, SY), 1j * SZ, atol=1e-15)


def test_multiply_matches_triple_loop(rng):
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    b = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    expected = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        for j in range(4):
            for k in range(4):
                expected[i, j] += a[i, k] * b[k, j]
    np.testing.assert_allclose(linalg.multiply(a, b), expected, atol=1e-12)


def test_multiply_dimension_mismatch():
    with pytest.raises(ValueError):
        linalg.multiply(np.eye(2), np.eye(4))


def test_tensor_identities():
    np.testing.assert_array_equal(linalg.tensor(np.eye(2), np.eye(2)), np.eye(4))
    iz = np.diag([0.5, -0.5])
    np.testing.assert_array_equal(
        np.diag(linalg.tensor(iz, np.eye(2))), [0.5, 0.5, -0.5, -0.5]
    )
    np.testing.assert_array_equal(
        np.diag(linalg.tensor(iz, iz)), [0.25, -0.25, -0.25, 0.25]
    )


def test_tensor_associative(rng):
    a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    c = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    left = linalg.tensor(linalg.tensor(a, b), c)
    right = linalg.tensor(a, linalg.tensor(b, c))
    assert linalg.max_abs_diff(left, right) < 1e-12


def test_adjoint():
    m = np.array([[1, 2j], [3, 4]], dtype=complex)
    np.testing.assert_array_equal(linalg.adjoint(m), m.conj().T)


def test_max_abs_diff_shape_check():
    with pytest.raises(ValueError):
        linalg.max_abs_diff(np.eye(2), np.eye(4))


def test_eig_diagonal_fast_path():
    decomp = linalg.eig_unitary(np.diag([1.0 + 0j, -1.0 + 0j]))
    np.testing.assert_array_equal(decomp.t, np.eye(2))
    np.testing.assert_array_equal(decomp.eigenvalues, [1, -1])


def test_eig_hadamard_like():
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    decomp = linalg.eig_unitary(h)
    np.testing.assert_allclose(sorted(decomp.eigenvalues.real), [-1, 1], atol=1e-12)
    np.testing.assert_allclose(decomp.eigenvalues.imag, 0, atol=1e-12)


def test_eig_toffoli_spectrum():
    toffoli = np.eye(8, dtype=complex)[[0, 1, 2, 3, 4, 5, 7, 6]]
    decomp = linalg.eig_unitary(toffoli)
    values = sorted(decomp.eigenvalues.real)
    np.testing.assert_allclose(values, [-1] + [1] * 7, atol=1e-12)


@pytest.mark.parametrize("dim", [2, 4, 8])
def test_eig_reconstruction(rng, dim):
    for _ in range(5):
        u = random_unitary(rng, dim)
        decomp = linalg.eig_unitary(u)
        t = decomp.t
        assert linalg.max_abs_diff(t @ t.conj().T, np.eye(dim)) < 1e-9
        rebuilt = t.conj().T @ np.diag(decomp.eigenvalues) @ t
        assert linalg.max_abs_diff(rebuilt, u) < 1e-9
        assert np.max(np.abs(np.abs(decomp.eigenvalues) - 1)) < 1e-9


def test_eig_degenerate_complex_pairs(rng):
    # cos(theta) is identical for all four eigenvalues; only the second
    # Hermitian stage can split them.
    v = random_unitary(rng, 4)
    u = v @ np.diag([1j, 1j, -1j, -1j]) @ v.conj().T
    decomp = linalg.eig_unitary(u)
    rebuilt = decomp.t.conj().T @ np.diag(decomp.eigenvalues) @ decomp.t
    assert linalg.max_abs_diff(rebuilt, u) < 1e-9


def test_eig_rejects_nonunitary():
    with pytest.raises(ValueError):
        linalg.eig_unitary(np.diag([2.0 + 0j, 1.0]))


def test_exp_zero_is_identity():
    np.testing.assert_array_equal(
        linalg.matrix_exp_hermitian(np.zeros((2, 2))), np.eye(2)
    )


def test_exp_diagonal():
    m = linalg.matrix_exp_hermitian(np.pi * np.diag([0.0, 1.0]))
    np.testing.assert_allclose(m, np.diag([1, -1]), atol=1e-12)


def test_exp_spin_x_closed_form():
    # exp(-i*phi*I_x) = cos(phi/2) - i*sin(phi/2)*sigma_x; at phi=pi this
    # is -i*sigma_x.
    m = linalg.matrix_exp_hermitian(np.pi * SX / 2)
    np.testing.assert_allclose(m, -1j * SX, atol=1e-12)


def test_exp_inverse_pair(rng):
    h = random_hermitian(rng, 8)
    product = linalg.matrix_exp_hermitian(h) @ linalg.matrix_exp_hermitian(-h)
    assert linalg.max_abs_diff(product, np.eye(8)) < 1e-9


def test_exp_matches_series_oracle(rng):
    for dim in (2, 4, 8):
        h = random_hermitian(rng, dim)
        np.testing.assert_allclose(
            linalg.matrix_exp_hermitian(h), expm_series(-1j * h), atol=1e-12
        )


def test_exp_rejects_non_hermitian():
    with pytest.raises(ValueError):
        linalg.matrix_exp_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))


def test_num_spins_for_dim():
    assert linalg.num_spins_for_dim(8) == 3
    with pytest.raises(ValueError):
        linalg.num_spins_for_dim(6)
