"""Top-level compilation: generator extraction, decomposition, reduction,
and verification by direct simulation up to global phase."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import decompose, generator, linalg, reduction, sim
from .decompose import FactorizedGenerator
from .generator import BranchConvention
from .pulse import PulseSequence

# Simulating costs 2**n; above this verification is forced off.
DEFAULT_VERIFY_LIMIT = 6


@dataclass(frozen=True)
class CompileOptions:
    branch: BranchConvention = BranchConvention.PRINCIPAL_LOWER
    allow_z: bool = False
    use_pseudo_cnot: bool = True
    trotter_steps: int = decompose.DEFAULT_TROTTER_STEPS
    tol: float = linalg.DEFAULT_TOL
    verify: bool = True
    max_verify_spins: int = DEFAULT_VERIFY_LIMIT

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.trotter_steps < 1:
            raise ValueError("trotter_steps must be at least 1")


@dataclass
class CompileReport:
    """Compilation outcome.

    `verified` is None when verification was skipped; otherwise it records
    whether the simulated sequence matched the target up to global phase
    within 10x the working tolerance.
    """

    sequence: PulseSequence
    exact: bool
    strategy: str
    global_phase: float
    op_count: int
    verification_residual: float | None = None
    verification_phase: float | None = None
    verified: bool | None = None


def _finish(
    plan: decompose.DecompositionPlan, target: np.ndarray | None, options: CompileOptions
) -> CompileReport:
    seq = reduction.reduce_plan(
        plan, allow_z=options.allow_z, use_pseudo_cnot=options.use_pseudo_cnot
    )
    report = CompileReport(
        sequence=seq,
        exact=plan.exact,
        strategy=plan.strategy,
        global_phase=seq.global_phase,
        op_count=len(seq.ops),
    )
    should_verify = (
        options.verify
        and target is not None
        and seq.num_spins <= options.max_verify_spins
    )
    if should_verify:
        comparison = sim.equal_up_to_phase(target, sim.simulate(seq), 10 * options.tol)
        report.verification_residual = comparison.residual
        report.verification_phase = comparison.phase
        report.verified = comparison.equal
    return report


def compile_unitary(u: np.ndarray, options: CompileOptions | None = None) -> CompileReport:
    """Compile a unitary matrix into a pulse sequence.

    A verification failure does not raise: the report carries the residual
    and the sequence either way.
    """
    options = options or CompileOptions()
    u = np.asarray(u, dtype=complex)
    linalg.num_spins_for_dim(u.shape[0])
    linalg.require_unitary(u, options.tol)
    g = generator.extract_generator(u, options.branch, options.tol)
    expansion = generator.expand(g)
    plan = decompose.plan(expansion, trotter_steps=options.trotter_steps)
    return _finish(plan, u, options)


def compile_factorized(
    fg: FactorizedGenerator, options: CompileOptions | None = None
) -> CompileReport:
    """Compile a factorized generator via the conjugation route."""
    options = options or CompileOptions()
    plan = decompose.decompose_factorized(fg)
    target = None
    if options.verify and fg.num_spins <= options.max_verify_spins:
        target = linalg.matrix_exp_hermitian(fg.matrix())
    return _finish(plan, target, options)
