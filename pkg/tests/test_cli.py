import json

import numpy as np
import pytest

from spinpulse import formats, gates, linalg, pauli, sim
from spinpulse.cli import main, parse_angle
from spinpulse.pauli import PauliString


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_angle_forms():
    assert parse_angle("1.5") == 1.5
    assert parse_angle("pi") == pytest.approx(np.pi)
    assert parse_angle("-pi/4") == pytest.approx(-np.pi / 4)
    assert parse_angle("3pi/2") == pytest.approx(3 * np.pi / 2)
    assert parse_angle("0.5pi") == pytest.approx(np.pi / 2)
    with pytest.raises(Exception):
        parse_angle("two")


def test_compile_toffoli_round_trips_through_verify(capsys, tmp_path):
    out = tmp_path / "toffoli.seq"
    code, stdout, stderr = run(
        capsys, "compile", "--gate", "toffoli", "--out", str(out)
    )
    assert code == 0
    assert "strategy commuting" in stderr
    code, stdout, _ = run(capsys, "verify", str(out), "--gate", "toffoli")
    assert code == 0
    assert stdout.splitlines()[0].startswith("residual")


def test_compile_writes_parseable_sequence(capsys):
    code, stdout, _ = run(capsys, "compile", "--gate", "cnot", "--control", "1", "--target", "2")
    assert code == 0
    seq = formats.parse_sequence(stdout)
    # five logical pulses, with the one z rotation expanded into three
    assert len(seq.ops) == 7
    m = sim.simulate(seq)
    assert sim.equal_up_to_phase(gates.cnot(1, 2), m, 1e-9).equal


def test_compile_verify_round_trip_four_spins(capsys, tmp_path):
    out = tmp_path / "swap24.seq"
    code, _, _ = run(
        capsys, "compile", "--gate", "swap", "--spins", "2", "4",
        "--num-spins", "4", "--out", str(out),
    )
    assert code == 0
    code, stdout, _ = run(
        capsys, "verify", str(out), "--gate", "swap", "--spins", "2", "4",
        "--num-spins", "4",
    )
    assert code == 0


def test_compile_json_format(capsys):
    code, stdout, _ = run(capsys, "compile", "--gate", "swap", "--format", "json")
    assert code == 0
    seq = formats.sequence_from_dict(json.loads(stdout))
    assert sim.equal_up_to_phase(gates.swap(1, 2), sim.simulate(seq), 1e-9).equal


def test_compile_identity_matrix(capsys, tmp_path):
    path = tmp_path / "id4.txt"
    path.write_text(formats.format_matrix(np.eye(4, dtype=complex)))
    code, stdout, _ = run(capsys, "compile", "--matrix", str(path))
    assert code == 0
    assert formats.parse_sequence(stdout).ops == []


def test_compile_trotter_exit_code(capsys, tmp_path):
    g = 0.3 * pauli.materialize(PauliString.from_string("x")) + 0.4 * pauli.materialize(
        PauliString.from_string("y")
    ) + 0.5 * pauli.materialize(PauliString.from_string("z"))
    u = linalg.matrix_exp_hermitian(g)
    path = tmp_path / "generic.txt"
    path.write_text(formats.format_matrix(u))
    code, stdout, stderr = run(capsys, "compile", "--matrix", str(path))
    assert code == 2
    assert "exact False" in stderr


def test_compile_rejects_non_unitary(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text(formats.format_matrix(np.diag([1.0, 2.0]).astype(complex)))
    code, _, stderr = run(capsys, "compile", "--matrix", str(path))
    assert code == 1
    assert "error" in stderr


def test_expand_toffoli_table(capsys):
    code, stdout, _ = run(capsys, "expand", "--gate", "toffoli", "--branch", "lower")
    assert code == 0
    lines = [l for l in stdout.splitlines() if l and not l.startswith("#")]
    assert len(lines) == 8
    table = {line.split()[0]: float(line.split()[1]) for line in lines}
    assert table["000"] == pytest.approx(-np.pi / 8, abs=1e-9)
    assert table["zzx"] == pytest.approx(np.pi / 4, abs=1e-9)
    assert stdout.splitlines()[-1] == "# exact true"


def test_expand_identity_is_empty(capsys, tmp_path):
    path = tmp_path / "id4.txt"
    path.write_text(formats.format_matrix(np.eye(4, dtype=complex)))
    code, stdout, _ = run(capsys, "expand", "--matrix", str(path))
    assert code == 0
    assert [l for l in stdout.splitlines() if not l.startswith("#")] == []


def test_expand_swap_flags_exact(capsys):
    code, stdout, _ = run(capsys, "expand", "--gate", "swap")
    assert code == 0
    assert stdout.splitlines()[-1] == "# exact true"
    table = {
        line.split()[0]: float(line.split()[1])
        for line in stdout.splitlines()
        if not line.startswith("#")
    }
    assert table["xx"] == pytest.approx(np.pi / 2, abs=1e-9)
    assert table["yy"] == pytest.approx(np.pi / 2, abs=1e-9)
    assert table["zz"] == pytest.approx(np.pi / 2, abs=1e-9)


def test_simulate_empty_sequence(capsys, tmp_path):
    path = tmp_path / "empty.seq"
    path.write_text("spins 2\n")
    code, stdout, _ = run(capsys, "simulate", str(path))
    assert code == 0
    np.testing.assert_array_equal(formats.parse_matrix(stdout), np.eye(4))


def test_simulate_json_output(capsys, tmp_path):
    path = tmp_path / "one.seq"
    path.write_text("spins 1\nR 1 x 3.141592653589793\n")
    code, stdout, _ = run(capsys, "simulate", str(path), "--format", "json")
    assert code == 0
    m = formats.matrix_from_dict(json.loads(stdout))
    np.testing.assert_allclose(m, -1j * pauli.SIGMA["x"], atol=1e-12)


def test_verify_mismatch_exits_3(capsys, tmp_path):
    seq_path = tmp_path / "cnot.seq"
    code, stdout, _ = run(capsys, "compile", "--gate", "cnot", "--out", str(seq_path))
    assert code == 0
    other = tmp_path / "swap.txt"
    other.write_text(formats.format_matrix(gates.swap(1, 2)))
    code, stdout, _ = run(capsys, "verify", str(seq_path), "--matrix", str(other))
    assert code == 3
    assert stdout.splitlines()[0].startswith("residual")


def test_verify_reports_phase(capsys, tmp_path):
    seq_path = tmp_path / "cnot_raw.seq"
    seq_path.write_text(
        "spins 2\n"
        "R 2 y -1.5707963267948966\n"
        "J 1 2 -1.5707963267948966\n"
        "R 2 y 1.5707963267948966\n"
        "R 2 x 1.5707963267948966\n"
        "R 1 z 1.5707963267948966\n"
    )
    code, stdout, _ = run(capsys, "verify", str(seq_path), "--gate", "cnot")
    assert code == 0
    phase = float(stdout.splitlines()[1].split()[1])
    assert phase == pytest.approx(-np.pi / 4, abs=1e-12)


def test_fphase_requires_register_size(capsys):
    code, _, stderr = run(capsys, "expand", "--gate", "fphase", "--marked", "0")
    assert code == 1 and "num-spins" in stderr


def test_fphase_accepts_bitstrings(capsys):
    code, stdout, _ = run(
        capsys, "expand", "--gate", "fphase", "--num-spins", "2", "--marked", "10"
    )
    assert code == 0
    # marked |10> only: the generator is diagonal, all-z words
    words = [l.split()[0] for l in stdout.splitlines() if not l.startswith("#")]
    assert set(words) <= {"00", "0z", "z0", "zz"}


def test_missing_input_file(capsys):
    code, _, stderr = run(capsys, "simulate", "/nonexistent/path.seq")
    assert code == 1 and "error" in stderr


def test_allow_z_flag(capsys):
    code, stdout, _ = run(capsys, "compile", "--gate", "toffoli", "--allow-z")
    assert code == 0
    assert any(line.startswith("R") and " z " in line for line in stdout.splitlines())


def test_full_cnot_flag(capsys):
    code, stdout, _ = run(capsys, "compile", "--gate", "toffoli", "--full-cnot")
    assert code == 0
    seq = formats.parse_sequence(stdout)
    assert sim.equal_up_to_phase(gates.toffoli(), sim.simulate(seq), 1e-9).equal
