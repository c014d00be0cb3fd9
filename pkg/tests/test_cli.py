import subprocess
import sys

import pytest

from frifc import read_problem, write_problem
from frifc.appendix import appendix_problem
from frifc.cli import main


@pytest.fixture
def a1_file(tmp_path):
    path = tmp_path / "a1.txt"
    path.write_text(write_problem(appendix_problem("A.1")))
    return path


def test_solve_prints_table_values(a1_file, capsys):
    assert main(["solve", str(a1_file), "--d", "0.1", "--d0", "0.1", "--v", "0.5"]) == 0
    out = capsys.readouterr().out
    assert "mu_T = 0.9910" in out
    assert "c'x**  = -0.923" in out
    assert "x** = [0.1964, 0.1215, 0.0174, 0.0000, 0.0000, 0.0000]" in out


def test_solve_d_list(a1_file, capsys):
    assert main(["solve", str(a1_file), "--d-list", "0.1,0.1,0.1,0.1"]) == 0
    assert "mu_T = 0.9910" in capsys.readouterr().out


def test_solve_no_simplify(a1_file, capsys):
    assert main(["solve", str(a1_file), "--no-simplify"]) == 0
    assert "lambda* = 0.9910" in capsys.readouterr().out


def test_crisp(a1_file, capsys):
    assert main(["crisp", str(a1_file)]) == 0
    out = capsys.readouterr().out
    assert "z*    = -0.8741" in out
    assert "x*    = [0.1859, 0.1150, 0.0165" in out


def test_simplify(a1_file, capsys):
    assert main(["simplify", str(a1_file)]) == 0
    out = capsys.readouterr().out
    assert "J'  = {1, 2, 3}" in out
    assert "fixed: x4=0, x5=0, x6=0" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "missing.txt"],
        ["solve", "{a1}", "--v", "1.5"],
        ["solve", "{a1}", "--d", "0"],
        ["solve", "{a1}", "--d-list", "0.1,0.1"],
        ["solve", "{a1}", "--d-list", "a,b,c,d"],
        ["solve", "{a1}", "--bogus"],
        ["heuristic", "{a1}", "--algo", "ga"],
        ["heuristic", "{a1}", "--algo", "pso", "--runs", "0"],
        ["heuristic", "{a1}", "--algo", "pso", "--seed", "-3"],
        ["gen", "--m", "0", "--n", "2", "--seed", "1", "--out", "x.txt"],
        [],
    ],
)
def test_input_errors_exit_1(argv, a1_file, capsys):
    argv = [a.replace("{a1}", str(a1_file)) for a in argv]
    assert main(argv) == 1
    err = capsys.readouterr().err
    assert err


def test_missing_file_message(capsys):
    assert main(["solve", "missing.txt"]) == 1
    assert "file not found" in capsys.readouterr().err


def test_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 1\n-1\n1.7\n0.5\n")
    assert main(["crisp", str(bad)]) == 1
    assert "line 3" in capsys.readouterr().err


def test_heuristic_traces(a1_file, tmp_path, capsys):
    out_dir = tmp_path / "traces"
    assert main(["heuristic", str(a1_file), "--algo", "hs", "--runs", "3", "--iters", "12",
                 "--seed", "5", "--trace-out", str(out_dir)]) == 0
    files = sorted(out_dir.iterdir())
    assert [f.name for f in files] == [f"trace_a1_hs_{r}.csv" for r in range(3)]
    assert len(files[0].read_text().splitlines()) == 13
    assert "best mu_T" in capsys.readouterr().out


def test_gen_round_trip(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["gen", "--m", "3", "--n", "4", "--seed", "9", "--out", str(out)]) == 0
    p = read_problem(out)
    assert (p.m, p.n) == (3, 4)
    out2 = tmp_path / "g2.txt"
    main(["gen", "--m", "3", "--n", "4", "--seed", "9", "--out", str(out2)])
    assert out.read_bytes() == out2.read_bytes()


def test_compare(a1_file, capsys):
    assert main(["compare", str(a1_file), "--runs", "2", "--iters", "5"]) == 0
    out = capsys.readouterr().out
    assert "exact mu_T = 0.9910" in out
    for algo in ("pso", "acor", "de", "hs"):
        assert f"{algo}:" in out


def test_reproduce_writes_tables(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    args = ["reproduce", "--suite", "appendix-a", "--runs", "2", "--iters", "5", "--format", "tsv"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    out = capsys.readouterr().out
    assert "reproduction OK" in out and "FAIL" not in out
    for f in sorted(a.iterdir()):
        assert f.suffix == ".tsv"
        if f.name != "table6.tsv":
            assert f.read_bytes() == (b / f.name).read_bytes(), f.name


def test_reproduce_exits_nonzero_on_mismatch(monkeypatch, capsys):
    import frifc.cli as cli

    monkeypatch.setattr(cli, "TABLE1_TOL", -1.0)
    assert main(["reproduce", "--suite", "appendix-a", "--runs", "1", "--iters", "2", "--algos", "pso"]) == 2
    assert "reproduction FAILED" in capsys.readouterr().out


def test_solver_failure_exit_2(a1_file, monkeypatch, capsys):
    import frifc.cli as cli
    from frifc.lp import LpError

    def boom(*args, **kwargs):
        raise LpError("forced")

    monkeypatch.setattr(cli, "solve_fri_fc", boom)
    assert main(["solve", str(a1_file)]) == 2
    assert "solver failure" in capsys.readouterr().err


def test_module_entry_point(a1_file):
    res = subprocess.run([sys.executable, "-m", "frifc", "crisp", str(a1_file)],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert "z*    = -0.8741" in res.stdout


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "reproduce" in capsys.readouterr().out
