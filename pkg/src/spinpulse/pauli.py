"""Product-operator basis for N spin-1/2 particles.

A basis operator is named by an axis word with one letter per spin, each
slot being one of '0' (identity), 'x', 'y', 'z'.  Spin 1 is the leftmost
slot and the most significant bit of the basis index.  The materialized
operator for a word of weight q is 2**(q-1) times the tensor product of E
(for '0') and the spin operators sigma/2 (for 'x','y','z'), which works out
to one half of the corresponding sigma-string for every word, including the
all-zero one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import linalg

AXES = "0xyz"

SIGMA = {
    "0": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# Largest register materialize() will build matrices for (2**10 = 1024).
MAX_MATERIALIZE_SPINS = 10

# Single-sigma products: (a, b) -> (c, phase) with sigma_a sigma_b = phase * sigma_c.
_SLOT_PRODUCT = {}
for _a in AXES:
    for _b in AXES:
        if _a == "0":
            _SLOT_PRODUCT[(_a, _b)] = (_b, 1.0 + 0j)
        elif _b == "0":
            _SLOT_PRODUCT[(_a, _b)] = (_a, 1.0 + 0j)
        elif _a == _b:
            _SLOT_PRODUCT[(_a, _b)] = ("0", 1.0 + 0j)
for _a, _b, _c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
    _SLOT_PRODUCT[(_a, _b)] = (_c, 1j)
    _SLOT_PRODUCT[(_b, _a)] = (_c, -1j)


@dataclass(frozen=True, order=True)
class PauliString:
    """Axis word naming one basis operator; orderable so that the natural
    sort gives the deterministic basis order (0 < x < y < z, spin 1 most
    significant)."""

    axes: tuple[str, ...]

    def __post_init__(self):
        if not self.axes:
            raise ValueError("empty axis word")
        bad = [a for a in self.axes if a not in AXES]
        if bad:
            raise ValueError(f"invalid axes {bad!r}; expected one of '0xyz'")

    @classmethod
    def from_string(cls, text: str) -> "PauliString":
        return cls(tuple(text))

    @classmethod
    def single(cls, num_spins: int, spin: int, axis: str) -> "PauliString":
        """Word with one nonzero slot: `axis` on `spin` (1-indexed)."""
        if not 1 <= spin <= num_spins:
            raise ValueError(f"spin {spin} out of range 1..{num_spins}")
        axes = ["0"] * num_spins
        axes[spin - 1] = axis
        return cls(tuple(axes))

    @classmethod
    def z_on(cls, num_spins: int, spins) -> "PauliString":
        """All-z word on the given 1-indexed spins."""
        axes = ["0"] * num_spins
        for spin in spins:
            if not 1 <= spin <= num_spins:
                raise ValueError(f"spin {spin} out of range 1..{num_spins}")
            axes[spin - 1] = "z"
        return cls(tuple(axes))

    @property
    def num_spins(self) -> int:
        return len(self.axes)

    @property
    def weight(self) -> int:
        return sum(1 for a in self.axes if a != "0")

    def support(self) -> list[int]:
        """1-indexed spins with a nonzero axis."""
        return [i + 1 for i, a in enumerate(self.axes) if a != "0"]

    def __str__(self) -> str:
        return "".join(self.axes)


@dataclass(frozen=True)
class Commutator:
    """Outcome of [A, B] for two basis operators: either zero, or a single
    basis operator with coefficient +/-i."""

    vanishes: bool
    result: PauliString | None = None
    coefficient: complex = 0j


def materialize(s: PauliString) -> np.ndarray:
    """Dense matrix of the basis operator named by `s`."""
    if s.num_spins > MAX_MATERIALIZE_SPINS:
        raise ValueError(
            f"refusing to materialize {s.num_spins} spins "
            f"(limit {MAX_MATERIALIZE_SPINS})"
        )
    m = SIGMA[s.axes[0]]
    for axis in s.axes[1:]:
        m = linalg.tensor(m, SIGMA[axis])
    return m / 2


def commutes(a: PauliString, b: PauliString) -> bool:
    """True iff the two basis operators commute: the number of slots where
    both axes are nonzero and different must be even."""
    if a.num_spins != b.num_spins:
        raise ValueError(f"length mismatch: {a} vs {b}")
    clashes = sum(
        1 for x, y in zip(a.axes, b.axes) if x != "0" and y != "0" and x != y
    )
    return clashes % 2 == 0


def commutator(a: PauliString, b: PauliString) -> Commutator:
    """[A, B] as a Commutator; the coefficient is exactly +/-i when the pair
    anticommutes and the reconstruction identity
    [materialize(a), materialize(b)] == coefficient * materialize(result)
    holds."""
    if a.num_spins != b.num_spins:
        raise ValueError(f"length mismatch: {a} vs {b}")
    phase = 1.0 + 0j
    axes = []
    for x, y in zip(a.axes, b.axes):
        c, p = _SLOT_PRODUCT[(x, y)]
        axes.append(c)
        phase *= p
    if phase.imag == 0:
        return Commutator(vanishes=True)
    return Commutator(vanishes=False, result=PauliString(tuple(axes)), coefficient=phase)


def enumerate_basis(num_spins: int) -> list[PauliString]:
    """All 4**n axis words in deterministic lexicographic order."""
    if num_spins < 1:
        raise ValueError("need at least one spin")
    return [PauliString(axes) for axes in product(AXES, repeat=num_spins)]
