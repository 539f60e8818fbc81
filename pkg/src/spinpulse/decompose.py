"""Decomposition of exp(-i * sum of basis terms) into single operators.

A single operator is exp(-i*angle*B) for one basis word B.  Three exact
routes are available: a term-by-term product when all words commute, an
Euler sandwich when exactly two anticommuting words remain, and the
conjugation scheme for generators given as a product of per-spin linear
forms.  Anything else falls back to a first-order product formula.

Plans store ops in time order: the first list element is applied first, so
the matrix product reads right to left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import pauli
from .generator import GeneratorExpansion
from .pauli import PauliString

DEFAULT_TROTTER_STEPS = 64

STRATEGY_COMMUTING = "commuting"
STRATEGY_EULER = "euler"
STRATEGY_FACTORIZED = "factorized"
STRATEGY_TROTTER = "trotter"


class NotAllCommutingError(Exception):
    """The expansion has at least one non-commuting pair of words."""


@dataclass(frozen=True)
class SingleOp:
    """exp(-i * angle * B) for the basis word `s` (nonzero weight)."""

    s: PauliString
    angle: float

    def __post_init__(self):
        if self.s.weight == 0:
            raise ValueError("identity words are phase, not single operators")
        if not math.isfinite(self.angle):
            raise ValueError(f"non-finite angle {self.angle}")


@dataclass(frozen=True)
class DecompositionPlan:
    """Ordered single operators whose product realizes the source unitary.

    `dropped_identity` is the identity-generator weight left out of the
    ops: the represented unitary equals
    e^{-i*dropped_identity} * (product of ops).
    """

    num_spins: int
    ops: tuple[SingleOp, ...]
    exact: bool
    strategy: str
    trotter_steps: int = 0
    dropped_identity: float = 0.0


@dataclass(frozen=True)
class FactorizedGenerator:
    """Generator given as a product over spins of
    (phi0 * E + phi_x I_x + phi_y I_y + phi_z I_z), one 4-vector
    (phi0, phi_x, phi_y, phi_z) per spin."""

    per_spin: tuple[tuple[float, float, float, float], ...]

    def __post_init__(self):
        if not self.per_spin:
            raise ValueError("need at least one spin")
        for entry in self.per_spin:
            if len(entry) != 4:
                raise ValueError(f"expected 4-vectors, got {entry!r}")

    @property
    def num_spins(self) -> int:
        return len(self.per_spin)

    def matrix(self) -> np.ndarray:
        """Dense Hermitian matrix of the factorized generator."""
        n = self.num_spins
        g = np.eye(2**n, dtype=complex)
        for spin, (phi0, *spin_part) in enumerate(self.per_spin, start=1):
            factor = phi0 * np.eye(2**n, dtype=complex)
            for axis, value in zip("xyz", spin_part):
                if value != 0.0:
                    factor += value * pauli.materialize(
                        PauliString.single(n, spin, axis)
                    )
            g = g @ factor
        return g


def decompose_commuting(expansion: GeneratorExpansion) -> DecompositionPlan:
    """One op per term, in basis order; valid only when all terms commute."""
    if not expansion.all_commuting():
        raise NotAllCommutingError("expansion terms do not all commute")
    ops = tuple(SingleOp(word, value) for word, value in expansion.terms())
    return DecompositionPlan(
        num_spins=expansion.num_spins,
        ops=ops,
        exact=True,
        strategy=STRATEGY_COMMUTING,
        dropped_identity=expansion.identity_coeff,
    )


def euler_decompose(a: SingleOp, b: SingleOp) -> list[SingleOp]:
    """Rewrite exp(-i*(a + b)) for anticommuting words as a three-op sandwich.

    The pair closes a rotation triple with the word of its commutator, so the
    sum is a single rotation about a tilted axis: conjugating by the
    commutator word tilts the first axis onto it.  Time order; the first and
    third angles are negatives of each other.
    """
    comm = pauli.commutator(a.s, b.s)
    if comm.vanishes:
        raise ValueError(f"{a.s} and {b.s} commute; no rotation triple")
    orientation = 1.0 if comm.coefficient.imag > 0 else -1.0
    radius = math.hypot(a.angle, b.angle)
    theta = math.atan2(b.angle * orientation, a.angle)
    assert comm.result is not None
    return [
        SingleOp(comm.result, -theta),
        SingleOp(a.s, radius),
        SingleOp(comm.result, theta),
    ]


def _axis_ops(num_spins: int, spin: int, spin_part: tuple[float, float, float]):
    """Time-ordered rotations mapping the z axis of `spin` onto the direction
    of `spin_part`, plus their inverses (also time-ordered)."""
    x, y, z = spin_part
    polar = math.atan2(math.hypot(x, y), z)
    azimuth = math.atan2(y, x) if (x, y) != (0.0, 0.0) else 0.0
    forward = []
    if polar != 0.0:
        forward.append(SingleOp(PauliString.single(num_spins, spin, "y"), polar))
    if azimuth != 0.0:
        forward.append(SingleOp(PauliString.single(num_spins, spin, "z"), azimuth))
    inverse = [SingleOp(op.s, -op.angle) for op in reversed(forward)]
    return forward, inverse


def decompose_factorized(fg: FactorizedGenerator) -> DecompositionPlan:
    """Exact plan for a factorized generator.

    Per spin, rotate the linear form onto the z axis; the conjugated core is
    a product of (phi0 E + |spin part| I_z) factors, which distributes into
    mutually commuting z-words.  Output is the time-ordered sandwich
    inverse-rotations, core, rotations.
    """
    n = fg.num_spins
    norms = []
    pre: list[SingleOp] = []
    post: list[SingleOp] = []
    for spin, (phi0, *spin_part) in enumerate(fg.per_spin, start=1):
        spin_part = tuple(float(v) for v in spin_part)
        norm = math.sqrt(sum(v * v for v in spin_part))
        norms.append((float(phi0), norm))
        if norm > 0.0:
            forward, inverse = _axis_ops(n, spin, spin_part)
            pre.extend(inverse)
            post = forward + post
    # Distribute the core product into z-words: one term per subset of spins
    # taking the I_z part, everyone else contributing its scalar.
    coeffs: dict[PauliString, float] = {}
    identity = 0.0
    for mask in range(2**n):
        value = 1.0
        spins = []
        for spin in range(1, n + 1):
            phi0, norm = norms[spin - 1]
            if mask & (1 << (spin - 1)):
                value *= norm
                spins.append(spin)
            else:
                value *= phi0
        if value == 0.0:
            continue
        if not spins:
            identity = value
        else:
            word = PauliString.z_on(n, spins)
            coeffs[word] = coeffs.get(word, 0.0) + value / 2 ** (len(spins) - 1)
    core = decompose_commuting(
        GeneratorExpansion(num_spins=n, coeffs=coeffs, identity_coeff=identity)
    )
    return DecompositionPlan(
        num_spins=n,
        ops=tuple(pre) + core.ops + tuple(post),
        exact=True,
        strategy=STRATEGY_FACTORIZED,
        dropped_identity=identity,
    )


def trotterize(expansion: GeneratorExpansion, steps: int) -> DecompositionPlan:
    """First-order product formula: per-term ops with angles divided by
    `steps`, the whole list repeated `steps` times."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    cycle = [SingleOp(word, value / steps) for word, value in expansion.terms()]
    return DecompositionPlan(
        num_spins=expansion.num_spins,
        ops=tuple(cycle * steps),
        exact=False,
        strategy=STRATEGY_TROTTER,
        trotter_steps=steps,
        dropped_identity=expansion.identity_coeff,
    )


def plan(
    expansion: GeneratorExpansion, trotter_steps: int = DEFAULT_TROTTER_STEPS
) -> DecompositionPlan:
    """Pick a decomposition route: all-commuting product, Euler sandwich for
    exactly two anticommuting terms, first-order formula otherwise."""
    try:
        return decompose_commuting(expansion)
    except NotAllCommutingError:
        pass
    terms = expansion.terms()
    if len(terms) == 2:
        ops = euler_decompose(SingleOp(*terms[0]), SingleOp(*terms[1]))
        return DecompositionPlan(
            num_spins=expansion.num_spins,
            ops=tuple(ops),
            exact=True,
            strategy=STRATEGY_EULER,
            dropped_identity=expansion.identity_coeff,
        )
    return trotterize(expansion, trotter_steps)
