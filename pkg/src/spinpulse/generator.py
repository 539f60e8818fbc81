"""Extraction of the Hermitian generator of a unitary and its expansion in
the product-operator basis.

Every unitary satisfies u = exp(-i*g) for a Hermitian g.  The eigenphase of
each eigenvalue lambda = e^{-i*theta} is only defined modulo 2*pi; the
branch convention pins theta to a half-open interval.  The expansion writes
g as identity_coeff * Id plus a real combination of nonzero-weight basis
operators; the identity part never becomes a pulse, it is carried as the
global phase e^{-i*identity_coeff}.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import linalg, pauli
from .linalg import DEGENERACY_TOL
from .pauli import PauliString

# Coefficients below this are numerical noise: exact gate inputs produce
# exact multiples of pi/8 or zeros.
COEFF_TOL = 1e-10


class BranchConvention(enum.Enum):
    """Interval the eigenphases are folded into."""

    PRINCIPAL_LOWER = "lower"  # theta in [-pi, pi)
    PRINCIPAL_UPPER = "upper"  # theta in (-pi, pi]


@dataclass(frozen=True)
class GeneratorExpansion:
    """Real coefficients of a Hermitian operator over the basis words.

    `coeffs` maps nonzero-weight words to their coefficients; the identity
    component is kept apart in `identity_coeff`, expressed as the
    coefficient of the full identity matrix.
    """

    num_spins: int
    coeffs: dict[PauliString, float] = field(default_factory=dict)
    identity_coeff: float = 0.0

    def terms(self) -> list[tuple[PauliString, float]]:
        """Nonzero-weight terms in deterministic basis order."""
        return sorted(self.coeffs.items())

    def all_commuting(self) -> bool:
        items = list(self.coeffs)
        return all(
            pauli.commutes(items[i], items[j])
            for i in range(len(items))
            for j in range(i + 1, len(items))
        )


def eigenphase(eigenvalue: complex, branch: BranchConvention) -> float:
    """Fold the phase of lambda = e^{-i*theta} into the branch interval."""
    theta = -float(np.angle(eigenvalue))  # lands in [-pi, pi)
    if branch is BranchConvention.PRINCIPAL_UPPER and theta <= -np.pi:
        theta += 2 * np.pi
    return theta


def _cluster_indices(values: np.ndarray, tol: float) -> list[list[int]]:
    """Group indices whose complex values chain within tol of each other."""
    order = np.argsort(np.angle(values), kind="stable")
    clusters: list[list[int]] = []
    for idx in order:
        if clusters and abs(values[idx] - values[clusters[-1][-1]]) <= tol:
            clusters[-1].append(int(idx))
        else:
            clusters.append([int(idx)])
    # The angle sort cuts the unit circle at -pi; merge across the seam.
    if len(clusters) > 1 and abs(values[clusters[0][0]] - values[clusters[-1][-1]]) <= tol:
        clusters[0].extend(clusters.pop())
    return clusters


def extract_generator(
    u: np.ndarray,
    branch: BranchConvention = BranchConvention.PRINCIPAL_LOWER,
    tol: float = linalg.DEFAULT_TOL,
) -> np.ndarray:
    """Hermitian g with exp(-i*g) == u, eigenphases folded per `branch`.

    Eigenvalues within the degeneracy tolerance of each other get one common
    phase so g stays well defined on degenerate subspaces.
    """
    u = np.asarray(u, dtype=complex)
    decomp = linalg.eig_unitary(u, tol)
    lam = decomp.eigenvalues
    phases = np.empty(lam.shape[0], dtype=float)
    for cluster in _cluster_indices(lam, DEGENERACY_TOL):
        rep = np.mean(lam[cluster])
        rep /= abs(rep)
        phases[cluster] = eigenphase(rep, branch)
    g = decomp.t.conj().T @ np.diag(phases.astype(complex)) @ decomp.t
    g = (g + g.conj().T) / 2
    residual = linalg.max_abs_diff(linalg.matrix_exp_hermitian(g), u)
    if residual > 10 * tol:
        raise ValueError(
            f"generator reconstruction residual {residual:.3e} exceeds {10 * tol:.1e}"
        )
    return g


def _sigma_coefficients(m: np.ndarray) -> np.ndarray:
    """Flat array c with c[w] = trace(m @ sigma_w) / dim over all 4**n axis
    words w in basis order, computed by recursive 2x2 block reduction."""

    def rec(block: np.ndarray) -> np.ndarray:
        if block.shape[0] == 1:
            return block.reshape(1)
        h = block.shape[0] // 2
        a, b = block[:h, :h], block[:h, h:]
        c, d = block[h:, :h], block[h:, h:]
        return np.concatenate([rec(a + d), rec(b + c), rec(1j * (b - c)), rec(a - d)])

    return rec(np.asarray(m, dtype=complex)) / m.shape[0]


def _word_for_index(index: int, num_spins: int) -> PauliString:
    axes = []
    for shift in range(num_spins - 1, -1, -1):
        axes.append(pauli.AXES[(index >> (2 * shift)) & 3])
    return PauliString(tuple(axes))


def expand(
    g: np.ndarray, num_spins: int | None = None, tol: float = COEFF_TOL
) -> GeneratorExpansion:
    """Expand Hermitian g over the basis words.

    The coefficient of a nonzero-weight word s is
    trace(g @ materialize(s)) / 2**(n-2); imaginary residues above tol are
    an error, magnitudes below tol are dropped.
    """
    g = np.asarray(g, dtype=complex)
    n = linalg.num_spins_for_dim(g.shape[0])
    if num_spins is not None and num_spins != n:
        raise ValueError(f"dimension {g.shape[0]} does not match {num_spins} spins")
    linalg.require_hermitian(g, max(tol, linalg.DEFAULT_TOL))

    sigma_coeffs = _sigma_coefficients(g)
    worst_imag = float(np.max(np.abs(sigma_coeffs.imag))) if sigma_coeffs.size else 0.0
    if worst_imag > tol:
        raise ValueError(f"imaginary coefficient residue {worst_imag:.3e} exceeds {tol:.1e}")

    # Basis operators are sigma-strings over two, so their coefficients are
    # twice the sigma coefficients; the identity keeps the raw value.
    identity_coeff = float(sigma_coeffs[0].real)
    if abs(identity_coeff) < tol:
        identity_coeff = 0.0
    values = 2 * sigma_coeffs.real
    coeffs: dict[PauliString, float] = {}
    for index in np.nonzero(np.abs(values) >= tol)[0]:
        if index == 0:
            continue
        coeffs[_word_for_index(int(index), n)] = float(values[index])
    return GeneratorExpansion(num_spins=n, coeffs=coeffs, identity_coeff=identity_coeff)


def reconstruct(expansion: GeneratorExpansion) -> np.ndarray:
    """Inverse of expand: materialize and sum every term, identity included."""
    dim = 2**expansion.num_spins
    g = expansion.identity_coeff * np.eye(dim, dtype=complex)
    for word, value in expansion.coeffs.items():
        g = g + value * pauli.materialize(word)
    return g


def format_expansion(expansion: GeneratorExpansion) -> str:
    """Render one `<word> <coefficient>` line per term in basis order, the
    identity row first when present, plus a trailing commutation flag."""
    lines = []
    if expansion.identity_coeff != 0.0:
        lines.append(f"{'0' * expansion.num_spins} {expansion.identity_coeff:.12g}")
    for word, value in expansion.terms():
        lines.append(f"{word} {value:.12g}")
    lines.append(f"# exact {'true' if expansion.all_commuting() else 'false'}")
    return "\n".join(lines)
