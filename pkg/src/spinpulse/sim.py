"""Matrix simulation of pulse sequences and global-phase comparison.

Time order versus matrix order is the one convention everything hinges on:
the first op of a sequence is applied first, so it is the rightmost factor
of the matrix product.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from . import linalg, pauli
from .decompose import DecompositionPlan
from .pulse import Coupling, PulseOp, PulseSequence, Rotation


def op_matrix(op: PulseOp, num_spins: int) -> np.ndarray:
    """Closed-form matrix of one pulse.

    A rotation embeds cos(a/2)*E - i*sin(a/2)*sigma_axis at its spin; a
    coupling is diagonal with entries e^{-i*a/2} where the two bits agree
    and e^{+i*a/2} where they differ.
    """
    dim = 2**num_spins
    if isinstance(op, Rotation):
        if op.spin > num_spins:
            raise ValueError(f"spin {op.spin} out of range 1..{num_spins}")
        half = op.angle / 2
        local = math.cos(half) * np.eye(2, dtype=complex) - 1j * math.sin(
            half
        ) * pauli.SIGMA[op.axis]
        return np.kron(
            np.kron(np.eye(2 ** (op.spin - 1)), local),
            np.eye(2 ** (num_spins - op.spin)),
        )
    if isinstance(op, Coupling):
        if op.j > num_spins:
            raise ValueError(f"spin {op.j} out of range 1..{num_spins}")
        indices = np.arange(dim)
        bit_i = (indices >> (num_spins - op.i)) & 1
        bit_j = (indices >> (num_spins - op.j)) & 1
        signs = np.where(bit_i == bit_j, 1.0, -1.0)
        return np.diag(np.exp(-1j * op.angle / 2 * signs))
    raise TypeError(f"unknown pulse op {op!r}")


def simulate(seq: PulseSequence) -> np.ndarray:
    """Product of op matrices, last time step leftmost; empty -> identity.
    The sequence's global-phase ledger is not applied."""
    m = np.eye(2**seq.num_spins, dtype=complex)
    for op in seq.ops:
        m = op_matrix(op, seq.num_spins) @ m
    return m


def simulate_plan(plan: DecompositionPlan) -> np.ndarray:
    """Product of exp(-i*angle*B) over the plan's single operators, last op
    leftmost.  The dropped identity weight is not applied."""
    m = np.eye(2**plan.num_spins, dtype=complex)
    for op in plan.ops:
        m = linalg.matrix_exp_hermitian(op.angle * pauli.materialize(op.s)) @ m
    return m


class PhaseComparison(NamedTuple):
    equal: bool
    phase: float
    residual: float


def equal_up_to_phase(
    a: np.ndarray, b: np.ndarray, tol: float = linalg.DEFAULT_TOL
) -> PhaseComparison:
    """Decide a == e^{i*phase} * b.

    The candidate phase comes from the largest-magnitude entry of b (robust
    against the zeros of permutation-like gates); equality requires the
    residual below tol and the ratio on the unit circle.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    r, c = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if b[r, c] == 0:
        raise ValueError("cannot compare against the zero matrix")
    ratio = a[r, c] / b[r, c]
    residual = linalg.max_abs_diff(a, ratio * b)
    equal = residual < tol and abs(abs(ratio) - 1.0) < tol
    return PhaseComparison(equal, float(np.angle(ratio)), residual)
