import subprocess
import sys

import pytest

from fomod.cli import main
from fomod.graphio import read_gadget


@pytest.fixture
def files(tmp_path):
    (tmp_path / "K3.el").write_text("0 1\n1 2\n0 2\n")
    (tmp_path / "P3.el").write_text("0 1\n1 2\n")
    (tmp_path / "P4.el").write_text("0 1\n1 2\n2 3\n")
    (tmp_path / "vc.fol").write_text("# no edges\nA u. A v. !(u ~ v)\n")
    (tmp_path / "pi3.fol").write_text("A x. E y. A z. (x ~ y) & !(y ~ z)\n")
    (tmp_path / "diam2.fol").write_text("A u. A v. E w. (u = v) | (u ~ v) | ((u ~ w) & (v ~ w))\n")
    (tmp_path / "qf.fol").write_text("true\n")
    (tmp_path / "bad.fol").write_text("A u. u ~\n")
    return tmp_path


def run(capsys, *args):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


def test_classify(files, capsys):
    assert run(capsys, "classify", files / "vc.fol")[:2] == (0, "Pi 1, 2 variables\n")
    assert run(capsys, "classify", "clique-neighborhood")[1] == "Sigma 2, 3 variables\n"
    assert run(capsys, "classify", files / "qf.fol")[1].startswith("Sigma 0 (= Pi 0)")
    code, _, err = run(capsys, "classify", files / "bad.fol")
    assert code == 3 and "error" in err


def test_check(files, capsys):
    assert run(capsys, "check", files / "P4.el", files / "diam2.fol")[:2] == (1, "false\n")
    assert run(capsys, "check", files / "K3.el", files / "diam2.fol")[:2] == (0, "true\n")
    assert run(capsys, "check", files / "P4.el", files / "diam2.fol", "--engine", "naive")[0] == 1


def test_solve_yes_no_unsupported(files, capsys):
    code, out, _ = run(capsys, "solve", "vertex", files / "K3.el", files / "vc.fol", 2)
    rep = report(out)
    assert code == 0 and rep["outcome"] == "YES" and rep["certificate_size"] == "2" and rep["verified"] == "true"
    assert {"nodes", "tuples", "depth", "wall_ms", "class", "n", "m", "k"} <= rep.keys()
    code, out, _ = run(capsys, "solve", "vertex", files / "K3.el", files / "vc.fol", 1)
    assert code == 1 and report(out)["outcome"] == "NO" and "certificate" not in report(out)
    code, out, _ = run(capsys, "solve", "vertex", files / "P4.el", files / "pi3.fol", 1)
    rep = report(out)
    assert code == 2 and rep["outcome"] == "UNSUPPORTED" and "W[2]-hard" in rep["reason"]
    code, out, _ = run(capsys, "solve", "vertex", files / "P4.el", files / "pi3.fol", 1, "--brute-force")
    assert code in (0, 1) and report(out)["method"] == "brute-force"


def test_solve_edge_variants(files, capsys):
    code, out, _ = run(capsys, "solve", "edge-removal", files / "K3.el", files / "vc.fol", 3)
    assert code == 0 and report(out)["certificate"] == "0-1,0-2,1-2"
    code, out, _ = run(capsys, "solve", "edge-completion", files / "P3.el", "cluster", 1)
    assert code == 0 and report(out)["certificate"] == "0-2"
    code, out, _ = run(capsys, "solve", "edge-editing", files / "P3.el", "cluster", 0)
    assert code == 1


def test_errors(files, capsys):
    assert run(capsys, "solve", "bogus", files / "K3.el", files / "vc.fol", 1)[0] == 3
    assert run(capsys, "solve", "vertex", files / "missing.el", files / "vc.fol", 1)[0] == 3
    assert run(capsys, "solve", "vertex", files / "K3.el", "no-such-formula", 1)[0] == 3
    assert run(capsys, "solve", "vertex", files / "K3.el", files / "vc.fol", -1)[0] == 3
    assert main([]) == 3
    assert main(["--version"]) == 0


def test_reduce_edge_to_vertex(files, capsys, tmp_path):
    prefix = tmp_path / "red"
    code, out, _ = run(capsys, "reduce", "edge-to-vertex", files / "K3.el", "no-isolated", 1, "--out", prefix)
    rep = report(out)
    assert code == 0 and rep["n"] == "18" and rep["k"] == "1"
    gg = read_gadget(f"{prefix}.el")
    assert gg.graph.n == 18
    # the emitted instance can be fed back to the solver
    code, out, _ = run(capsys, "solve", "vertex", f"{prefix}.el", f"{prefix}.fol", 1, "--brute-force")
    assert report(out)["outcome"] == "YES"
    assert "SUBDIVISION" in (tmp_path / "red.witness").read_text()


def test_reduce_to_stdout_and_duality(files, capsys):
    code, out, _ = run(capsys, "reduce", "removal-to-completion", files / "K3.el", files / "vc.fol", 3)
    assert code == 0 and "[graph]" in out and "[formula]" in out and report(out)["m"] == "0"
    code, out, _ = run(capsys, "reduce", "completion-to-removal", files / "P3.el", files / "vc.fol", 1)
    assert code == 0 and report(out)["variant"] == "edge-removal"


def test_kernelize(files, capsys):
    code, out, _ = run(capsys, "kernelize", files / "K3.el", files / "vc.fol", 1)
    rep = report(out)
    assert code == 0 and rep["family_size"] == "3" and rep["bound"] == "16"
    assert out.count("set ") == 3


def test_gen(files, capsys, tmp_path):
    prefix = tmp_path / "cc"
    code, out, _ = run(capsys, "gen", "cross-clique", "--k", 3, files / "K3.el", files / "P3.el", "--out", prefix)
    rep = report(out)
    assert code == 0 and rep["k_prime"] == "0" and rep["t"] == "2" and rep["n"] == "10"
    assert run(capsys, "solve", "vertex", f"{prefix}.el", f"{prefix}.fol", 0)[0] == 0
    code, out, _ = run(capsys, "gen", "graph", "petersen")
    assert code == 0 and len(out.splitlines()) == 15
    code, out, _ = run(capsys, "gen", "formula", "vertex-cover")
    assert out.strip() == "A u. A v. !(u ~ v)"
    code, out, _ = run(capsys, "gen", "cross-clique", "--k", 3, files / "K3.el", files / "P4.el")
    assert code == 3


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "fomod.cli", "solve", "vertex", str(files / "K3.el"),
                           str(files / "vc.fol"), "1"], capture_output=True, text=True)
    assert proc.returncode == 1 and "outcome=NO" in proc.stdout


def test_deterministic_output(files, capsys):
    args = ("solve", "vertex", files / "P4.el", files / "diam2.fol", 1)
    first = [l for l in run(capsys, *args)[1].splitlines() if not l.startswith("wall_ms")]
    second = [l for l in run(capsys, *args)[1].splitlines() if not l.startswith("wall_ms")]
    assert first == second
