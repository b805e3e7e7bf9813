import json
import subprocess
import sys

import pytest

from htqft.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,first_line", [
    (["homology", "--space", "klein", "--coeff", "Z/2", "--q", "1"], "Z/2+Z/2"),
    (["homology", "--space", "torus", "--coeff", "Z/3", "--q", "2"], "Z/3"),
    (["cohomology", "--space", "rp2", "--coeff", "Z/2", "--q", "2"], "Z/2"),
    (["homology", "--space", "point", "--coeff", "Z/5", "--q", "3"], "0"),
    (["dw", "--manifold", "torus"], "2"),
    (["dw", "--manifold", "s3"], "1/2"),
    (["dw", "--manifold", "rp2", "--coeff", "Z/3"], "1/3"),
])
def test_outputs(capsys, argv, first_line):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[0] == first_line


def test_omega_heegaard(capsys):
    code, out, _ = run(capsys, "omega", "--pair", "heegaard")
    assert code == 0
    assert out.split() == ["omega_hat", "=", "1/2", "omega_check", "=", "1", "delta", "theta", "=", "1/2"]


def test_theta_and_lift(capsys):
    code, out, _ = run(capsys, "theta", "--cospan", "closed:sphere1")
    assert code == 0 and "theta     = 1/2" in out
    code, out, _ = run(capsys, "lift", "--cospan", "flip", "--kind", "ordinary", "--coeff", "Z/3")
    assert code == 0 and out.startswith("Z (ordinary), scale 1")


def test_pi_hat_and_check(capsys):
    for cmd in ("pi-hat", "pi-check"):
        code, out, _ = run(capsys, cmd, "--cospan", "heegaard-in", "--flavor", "group")
        assert code == 0 and "->" in out.splitlines()[0]


def test_pairing(capsys):
    code, out, _ = run(capsys, "pairing", "--manifold", "circle", "--coeff", "Z/3")
    assert code == 0
    assert "[1/3, 0, 0]" in out and "[0, 0, 1/3]" in out


def test_invalid_inputs_exit_2(capsys):
    assert run(capsys, "homology", "--space", "nonsense")[0] == 2
    assert run(capsys, "brown", "--space", "torus", "--coeff", "Z/2", "--field", "F2")[0] == 2
    assert run(capsys, "homology", "--space", "torus", "--coeff", "Z2")[0] == 2
    assert run(capsys, "verify", "nosuch")[0] == 2


def test_json_is_deterministic(capsys):
    argv = ["verify", "pairing", "--json", "--seed", "3"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b
    rep = json.loads(a)
    assert rep["status"] == "pass" and rep["seed"] == 3
    assert all(c["status"] == "pass" for c in rep["checks"])
    assert len(rep["input_digest"]) == 64


def test_verify_small_suite(capsys):
    code, out, _ = run(capsys, "verify", "char2", "--n", "5")
    assert code == 0 and out.strip().endswith("ALL PASS")


def test_corpus_export(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus", "--export", str(tmp_path))
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert "torus.json" in files
    code, out, _ = run(capsys, "homology", "--file", str(tmp_path / "klein.json"), "--q", "1")
    assert code == 0 and out.startswith("Z/2+Z/2")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "htqft", "dw", "--manifold", "klein", "--coeff", "Z/3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip().splitlines()[0] == "1"
