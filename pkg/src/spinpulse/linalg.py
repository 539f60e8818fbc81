"""Dense complex linear algebra for small spin-system operators.

All matrices are plain complex numpy arrays of shape (2**n, 2**n) in the
computational basis, spin 1 being the most significant bit.  Sizes stay
small (n <= 10), so everything is done densely and eagerly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Eigenvalues of the Hermitian part closer than this are treated as one
# degenerate cluster.  Gate spectra are exact multiples of pi, so 1e-8
# cleanly separates genuinely distinct phases at this scale.
DEGENERACY_TOL = 1e-8

DEFAULT_TOL = 1e-9


def num_spins_for_dim(dim: int) -> int:
    """Return n with 2**n == dim, or raise if dim is not a power of two."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"matrix dimension {dim} is not a power of two")
    return n


def multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with a dimension check."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the first factor is the most significant spin."""
    return np.kron(a, b)


def adjoint(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def max_abs_diff(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def is_unitary(u: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return max_abs_diff(u @ u.conj().T, np.eye(u.shape[0])) < tol


def require_unitary(u: np.ndarray, tol: float = DEFAULT_TOL) -> None:
    if not is_unitary(u, tol):
        raise ValueError(f"matrix is not unitary within tolerance {tol}")


def require_hermitian(h: np.ndarray, tol: float = DEFAULT_TOL) -> None:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if max_abs_diff(h, h.conj().T) >= tol:
        raise ValueError(f"matrix is not Hermitian within tolerance {tol}")


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral data of a unitary: t's rows are eigen-bras, so t @ u @ t† is
    diagonal and equals diag(eigenvalues)."""

    eigenvalues: np.ndarray
    t: np.ndarray


def eig_unitary(u: np.ndarray, tol: float = DEFAULT_TOL) -> EigenDecomposition:
    """Orthonormal eigendecomposition of a unitary (normal) matrix.

    Diagonalizes the Hermitian pair h1 = (u + u†)/2 and h2 = (u - u†)/2i:
    h1 first, then h2 restricted to each degenerate eigenspace of h1.  The
    result is a common orthonormal eigenbasis, valid for any normal matrix,
    using only Hermitian eigensolvers.
    """
    u = np.asarray(u, dtype=complex)
    require_unitary(u, tol)
    dim = u.shape[0]

    off_diag = max_abs_diff(u, np.diag(np.diag(u)))
    if off_diag < tol:
        # Already diagonal: keep the input basis and ordering.
        return EigenDecomposition(np.diag(u).copy(), np.eye(dim, dtype=complex))

    h1 = (u + u.conj().T) / 2
    h2 = (u - u.conj().T) / 2j
    w, v = np.linalg.eigh(h1)

    start = 0
    for stop in range(1, dim + 1):
        if stop < dim and w[stop] - w[stop - 1] <= DEGENERACY_TOL:
            continue
        if stop - start > 1:
            block = v[:, start:stop]
            sub = block.conj().T @ h2 @ block
            sub = (sub + sub.conj().T) / 2
            _, rot = np.linalg.eigh(sub)
            v[:, start:stop] = block @ rot
        start = stop

    t = v.conj().T
    diag = t @ u @ t.conj().T
    eigenvalues = np.diag(diag).copy()
    residual = max_abs_diff(diag, np.diag(eigenvalues))
    if residual > max(10 * tol, 1e-10):
        raise np.linalg.LinAlgError(
            f"failed to diagonalize (off-diagonal residual {residual:.3e}); "
            "input may not be normal"
        )
    return EigenDecomposition(eigenvalues, t)


def matrix_exp_hermitian(h: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """exp(-i*h) for Hermitian h, via eigendecomposition."""
    h = np.asarray(h, dtype=complex)
    require_hermitian(h, tol)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w)) @ v.conj().T
