import json

import numpy as np
import pytest

from fradeco.catalog import binary_example_35, waring_quartic
from fradeco.cli import main
from fradeco.funtf import TETRA_B, read_frame, write_frame
from fradeco.tensor import SymTensor, synthesize, write_symtensor


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def result_line(out):
    lines = [ln for ln in out.splitlines() if ln.startswith("result:")]
    assert len(lines) == 1
    return int(lines[0].split(":")[1])


@pytest.fixture
def ex35(tmp_path):
    p = tmp_path / "ex35.txt"
    write_symtensor(p, binary_example_35())
    return str(p)


def test_dim(capsys):
    code, out, _ = run(capsys, "dim", "--r", "4", "--n", "3", "--d", "4")
    assert code == 0
    assert "expected_dim: 6" in out and result_line(out) == 6


def test_dim_tangent_json(capsys):
    code, out, _ = run(capsys, "dim", "--r", "5", "--n", "3", "--d", "4", "--tangent", "--json")
    data = json.loads(out)
    assert code == 0 and data["tangent_dim"] == 9 and data["result"] == 9


def test_decompose_full_rank_exits_1(capsys, ex35):
    code, out, err = run(capsys, "decompose", "--in", ex35, "--rank", "5")
    assert code == 1
    assert "M_5 has full rank: no funtf of rank 5" in err
    assert "M_5 has full rank: no funtf of rank 5" in out


def test_decompose_and_verify(capsys, ex35, tmp_path):
    dec = str(tmp_path / "dec.txt")
    code, out, _ = run(capsys, "decompose", "--in", ex35, "--out", dec)
    assert code == 0 and result_line(out) == 4
    code, out, _ = run(capsys, "verify", "--in", ex35, "--dec", dec)
    assert code == 0 and "passed: True" in out and result_line(out) == 1


def test_verify_failure_exits_1(capsys, ex35, tmp_path):
    dec = tmp_path / "dec.txt"
    run(capsys, "decompose", "--in", ex35, "--out", str(dec))
    text = dec.read_text().replace("weights: ", "weights: 3.0 ", 1)
    parts = text.splitlines()
    parts = [" ".join(ln.split()[:-1]) if ln.startswith("weights:") else ln for ln in parts]
    dec.write_text("\n".join(parts) + "\n")
    code, out, _ = run(capsys, "verify", "--in", ex35, "--dec", str(dec))
    assert code == 1 and "passed: False" in out


def test_decompose_ternary_quartic(capsys, tmp_path):
    p = tmp_path / "q.txt"
    write_symtensor(p, waring_quartic().astype(float))
    code, out, _ = run(capsys, "decompose", "--in", str(p), "--seed", "0")
    assert code == 0 and result_line(out) == 5


def test_decompose_unsupported_shape_is_usage_error(capsys, tmp_path):
    p = tmp_path / "t.txt"
    write_symtensor(p, SymTensor(3, 5, np.ones(21)))
    code, _, err = run(capsys, "decompose", "--in", str(p))
    assert code == 2 and "error" in err


def test_sample_is_deterministic(capsys):
    a = run(capsys, "sample", "--r", "5", "--n", "2", "--count", "1", "--seed", "7")
    b = run(capsys, "sample", "--r", "5", "--n", "2", "--count", "1", "--seed", "7")
    assert a == b and a[0] == 0
    assert a[1].startswith("frame n=2 r=5")


def test_sample_to_directory_and_synth(capsys, tmp_path):
    code, out, _ = run(capsys, "sample", "--r", "5", "--n", "3", "--count", "3", "--seed", "1",
                       "--out", str(tmp_path / "frames"))
    assert code == 0 and result_line(out) == 3
    files = sorted((tmp_path / "frames").iterdir())
    assert len(files) == 3
    f = read_frame(files[0])
    assert f.residual < 1e-10
    out_t = tmp_path / "t.txt"
    code, out, _ = run(capsys, "synth", "--frame", str(files[0]), "--d", "4", "--weights", "1,2,3,4,5",
                       "--out", str(out_t))
    assert code == 0
    code, out, _ = run(capsys, "check-eq", "--name", "cubic_534", "--in", str(out_t))
    assert code == 0 and "vanishes: True" in out


def test_synth_stdout_parses_back(capsys, tmp_path):
    fp = tmp_path / "f.txt"
    write_frame(fp, TETRA_B / (3 * np.sqrt(3)))
    code, out, _ = run(capsys, "synth", "--frame", str(fp), "--d", "4", "--weights", ",".join(["60.75"] * 4))
    assert code == 0
    tp = tmp_path / "t.txt"
    tp.write_text(out)
    code, out, _ = run(capsys, "check-eq", "--name", "quadric_434", "--in", str(tp))
    assert code == 0 and "vanishes: True" in out


def test_check_eq_negative(capsys, tmp_path):
    p = tmp_path / "t.txt"
    write_symtensor(p, SymTensor(3, 4, np.arange(1.0, 16.0)))
    code, out, _ = run(capsys, "check-eq", "--name", "quadric_434", "--in", str(p))
    assert code == 1 and "vanishes: False" in out and result_line(out) == 0


def test_check_eq_shape_mismatch(capsys, ex35):
    code, _, err = run(capsys, "check-eq", "--name", "quadric_434", "--in", ex35)
    assert code == 2


def test_eigen(capsys, tmp_path):
    p = tmp_path / "t.txt"
    write_symtensor(p, synthesize(TETRA_B, np.ones(4), 5))
    code, out, _ = run(capsys, "eigen", "--in", str(p), "--trials", "300", "--seed", "1")
    assert code == 0 and result_line(out) == 4
    code, out, _ = run(capsys, "eigen", "--in", str(p), "--trials", "50", "--seed", "1", "--json")
    data = json.loads(out)
    assert all(len(pt["x"]) == 3 for pt in data["points"])


def test_hilbert(capsys, monkeypatch):
    monkeypatch.setenv("FRADECO_THREADS", "2")
    code, out, _ = run(capsys, "hilbert", "--r", "4", "--n", "3", "--d", "4", "--e", "2", "--seed", "0")
    assert code == 0 and result_line(out) == 6 and "kernel_dim: 6" in out


def test_hilbert_indeterminate_exit_3(capsys):
    # far too few samples: the rank is capped by the sample count with no gap
    code, out, err = run(capsys, "hilbert", "--r", "4", "--n", "3", "--d", "4", "--e", "2",
                         "--samples", "100", "--seed", "0")
    assert code == 3
    assert "indeterminate" in err


def test_hilbert_budget_is_usage_error(capsys):
    code, _, err = run(capsys, "hilbert", "--r", "4", "--n", "3", "--d", "5", "--e", "4")
    assert code == 2


def test_usage_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["dim", "--r", "4"])
    assert e.value.code == 2
    code, _, _ = run(capsys, "decompose", "--in", str(tmp_path / "missing.txt"))
    assert code == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("symtensor n=2 d=3\n1 1 1.0\n")
    code, _, _ = run(capsys, "decompose", "--in", str(bad))
    assert code == 2
