"""Text and JSON file formats for matrices and pulse sequences.

Matrix files: a `spins N` header, then 2**N rows of 2**N whitespace
separated complex entries written like `0.5-0.5i`, `1`, `-1i`.  Sequence
files: a `spins N` header, an optional `# phase <real>` line, then one op
per line in time order, `R <spin> <x|y|z> <angle>` or
`J <spin_i> <spin_j> <angle>`.  `#` starts a comment.  Floats are written
with shortest round-trip precision so re-parsing reproduces the in-memory
values exactly.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .linalg import num_spins_for_dim
from .pulse import Coupling, PulseOp, PulseSequence, Rotation


def format_float(x: float) -> str:
    if x == 0:
        return "0"
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


def format_complex(z: complex) -> str:
    re, im = z.real, z.imag
    if im == 0:
        return format_float(re)
    if re == 0:
        return format_float(im) + "i"
    sign = "+" if im > 0 else "-"
    return f"{format_float(re)}{sign}{format_float(abs(im))}i"


def parse_complex(token: str) -> complex:
    try:
        return complex(token.replace("i", "j"))
    except ValueError:
        raise ValueError(f"malformed complex entry {token!r}") from None


def _content_lines(text: str):
    """(lineno, line) pairs with comments and blanks stripped; `# phase`
    lines are yielded too since they carry data."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#") and not line[1:].lstrip().startswith("phase"):
            continue
        yield lineno, line


def _parse_header(lineno: int, line: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != "spins":
        raise ValueError(f"line {lineno}: expected 'spins N' header, got {line!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise ValueError(f"line {lineno}: bad spin count {parts[1]!r}") from None
    if n < 1:
        raise ValueError(f"line {lineno}: spin count must be positive")
    return n


def format_matrix(m: np.ndarray) -> str:
    m = np.asarray(m, dtype=complex)
    n = num_spins_for_dim(m.shape[0])
    lines = [f"spins {n}"]
    for row in m:
        lines.append(" ".join(format_complex(z) for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = list(_content_lines(text))
    if not lines:
        raise ValueError("empty matrix file")
    n = _parse_header(*lines[0])
    dim = 2**n
    rows = []
    for lineno, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != dim:
            raise ValueError(f"line {lineno}: expected {dim} entries, got {len(tokens)}")
        rows.append([parse_complex(tok) for tok in tokens])
    if len(rows) != dim:
        raise ValueError(f"expected {dim} matrix rows, got {len(rows)}")
    return np.array(rows, dtype=complex)


def format_sequence(seq: PulseSequence) -> str:
    lines = [f"spins {seq.num_spins}"]
    if seq.global_phase != 0.0:
        lines.append(f"# phase {format_float(seq.global_phase)}")
    for op in seq.ops:
        if isinstance(op, Rotation):
            lines.append(f"R {op.spin} {op.axis} {format_float(op.angle)}")
        else:
            lines.append(f"J {op.i} {op.j} {format_float(op.angle)}")
    return "\n".join(lines) + "\n"


def parse_sequence(text: str) -> PulseSequence:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return sequence_from_dict(json.loads(text))
    lines = list(_content_lines(text))
    if not lines:
        raise ValueError("empty sequence file")
    n = _parse_header(*lines[0])
    phase = 0.0
    ops: list[PulseOp] = []
    for lineno, line in lines[1:]:
        if line.startswith("#"):
            tokens = line[1:].split()
            if tokens[:1] != ["phase"]:
                continue  # ordinary comment that merely starts with "phase..."
            if len(tokens) != 2:
                raise ValueError(f"line {lineno}: malformed phase line {line!r}")
            try:
                phase = float(tokens[1])
            except ValueError:
                raise ValueError(f"line {lineno}: bad phase value {tokens[1]!r}") from None
            continue
        parts = line.split()
        try:
            ops.append(_parse_op(parts, n))
        except (ValueError, IndexError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return PulseSequence(n, ops, phase)


def _parse_op(parts: list[str], num_spins: int) -> PulseOp:
    kind = parts[0]
    if kind == "R":
        if len(parts) != 4:
            raise ValueError(f"expected 'R <spin> <axis> <angle>', got {parts!r}")
        spin, axis, angle = int(parts[1]), parts[2], float(parts[3])
        if spin > num_spins:
            raise ValueError(f"spin {spin} out of range 1..{num_spins}")
        return Rotation(spin, axis, angle)
    if kind == "J":
        if len(parts) != 4:
            raise ValueError(f"expected 'J <i> <j> <angle>', got {parts!r}")
        i, j, angle = int(parts[1]), int(parts[2]), float(parts[3])
        if max(i, j) > num_spins:
            raise ValueError(f"spin {max(i, j)} out of range 1..{num_spins}")
        return Coupling(i, j, angle)
    raise ValueError(f"unknown op kind {kind!r}")


def sequence_to_dict(seq: PulseSequence) -> dict[str, Any]:
    ops: list[dict[str, Any]] = []
    for op in seq.ops:
        if isinstance(op, Rotation):
            ops.append(
                {"kind": "rotation", "spin": op.spin, "axis": op.axis, "angle": op.angle}
            )
        else:
            ops.append({"kind": "coupling", "spins": [op.i, op.j], "angle": op.angle})
    return {"spins": seq.num_spins, "phase": seq.global_phase, "ops": ops}


def sequence_from_dict(data: dict[str, Any]) -> PulseSequence:
    try:
        n = int(data["spins"])
        phase = float(data.get("phase", 0.0))
        ops: list[PulseOp] = []
        for entry in data["ops"]:
            if entry["kind"] == "rotation":
                ops.append(Rotation(int(entry["spin"]), entry["axis"], float(entry["angle"])))
            elif entry["kind"] == "coupling":
                i, j = entry["spins"]
                ops.append(Coupling(int(i), int(j), float(entry["angle"])))
            else:
                raise ValueError(f"unknown op kind {entry['kind']!r}")
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed sequence object: {exc}") from None
    for op in ops:
        top = op.spin if isinstance(op, Rotation) else op.j
        if top > n:
            raise ValueError(f"spin {top} out of range 1..{n}")
    return PulseSequence(n, ops, phase)


def matrix_to_dict(m: np.ndarray) -> dict[str, Any]:
    m = np.asarray(m, dtype=complex)
    n = num_spins_for_dim(m.shape[0])
    rows = [[[z.real, z.imag] for z in row] for row in m]
    return {"spins": n, "matrix": rows}


def matrix_from_dict(data: dict[str, Any]) -> np.ndarray:
    try:
        n = int(data["spins"])
        rows = data["matrix"]
        m = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from None
    if m.shape != (2**n, 2**n):
        raise ValueError(f"matrix shape {m.shape} does not match {n} spins")
    return m
