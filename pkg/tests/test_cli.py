"""In-process tests of the command-line interface: exit codes and report shape."""

import json

import numpy as np
import pytest

from quivrep import cli, verify
from quivrep.textio import format_matrix

KRONECKER_REP = """\
quiver K2
vertex 1
vertex 2
arrow a: 1 -> 2
arrow b: 1 -> 2
dim 1 = 2
dim 2 = 2
mat a = [[1, 0]; [0, 1]]
mat b = [[0, 0]; [1, 0]]
"""

CYCLE_REP = """\
quiver C3
vertex 1
vertex 2
vertex 3
arrow a1: 1 -> 2
arrow a2: 2 -> 3
arrow a3: 3 -> 1
dim 1 = 1
dim 2 = 1
dim 3 = 0
mat a1 = [[1]]
"""


@pytest.fixture
def rep_file(tmp_path):
    def write(text, name="input.rep"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run_lines(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code = cli.run(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_analyze_text(rep_file, capsys):
    code, out = run_lines(capsys, ["analyze", rep_file(KRONECKER_REP)])
    assert code == 0
    assert "end_dim: 2" in out
    assert "transitive: false" in out
    assert "indecomposable: true" in out


def test_analyze_json(rep_file, capsys):
    code, report = run_json(capsys, ["analyze", rep_file(KRONECKER_REP)])
    assert code == 0
    assert report["end_dim"] == 2
    assert report["dims"] == {"1": 2, "2": 2}
    assert report["verdict"] == "indecomposable"
    assert report["max_residual"] <= 1e-8


def test_analyze_decomposable_emits_witness(rep_file, capsys):
    text = KRONECKER_REP.replace("mat b = [[0, 0]; [1, 0]]", "mat b = [[1, 0]; [0, 2]]")
    code, report = run_json(capsys, ["analyze", rep_file(text)])
    assert code == 0
    assert report["verdict"] == "decomposable"
    assert "idempotent_witness" in report
    assert report["idempotent_witness"].startswith("hom 1 = [[")


def test_analyze_missing_file(capsys):
    assert cli.run(["analyze", "/nonexistent/path.rep"]) == 2


def test_analyze_malformed_file(rep_file, capsys):
    assert cli.run(["analyze", rep_file("vertex 1\nvertex 1\n")]) == 2


def test_reflect_at_sink(rep_file, capsys):
    code, report = run_json(
        capsys, ["reflect", rep_file(KRONECKER_REP), "--vertex", "2", "--dir", "plus", "--verify-end-iso"]
    )
    assert code == 0
    assert report["dims_before"] == {"1": 2, "2": 2}
    assert report["dims_after"]["2"] == 2
    assert report["end_iso"]["ok"] is True
    assert report["end_iso"]["dims_equal"] is True
    assert "arrow a~: 2 -> 1" in report["reflected"]


def test_reflect_error_codes(rep_file, capsys):
    path = rep_file(KRONECKER_REP)
    # unknown vertex is a parse-level error
    assert cli.run(["reflect", path, "--vertex", "9", "--dir", "plus"]) == 2
    # vertex 1 is a source, so the forward reflection is a precondition failure
    assert cli.run(["reflect", path, "--vertex", "1", "--dir", "plus"]) == 3
    # bad direction never reaches the command
    assert cli.run(["reflect", path, "--vertex", "2", "--dir", "sideways"]) == 2


def test_build_jordan(capsys):
    code, report = run_json(capsys, ["build", "--family", "d4tilde", "--op", "jordan:2"])
    assert code == 0
    assert report["end_dim"] == 2
    assert report["indecomposable"] is True
    assert report["dims"]["5"] == 4


def test_build_from_matrix_file(tmp_path, capsys):
    mat = tmp_path / "op.mat"
    mat.write_text(format_matrix(np.diag([1.0, 2.0])))
    code, report = run_json(capsys, ["build", "--family", "e6tilde", "--op", f"file:{mat}"])
    assert code == 0
    assert report["verdict"] == "decomposable"


def test_build_antilde(capsys):
    code, report = run_json(capsys, ["build", "--family", "antilde", "--op", "jordan:2"])
    assert code == 0
    assert report["end_dim"] == 2
    assert report["arrow_a"] != report["arrow_b"]


def test_build_bad_operator_literals(capsys):
    assert cli.run(["build", "--family", "d4tilde", "--op", "jordan:zero"]) == 2
    assert cli.run(["build", "--family", "d4tilde", "--op", "jordan:0"]) == 2
    assert cli.run(["build", "--family", "d4tilde", "--op", "hankel:3"]) == 2
    assert cli.run(["build", "--family", "other", "--op", "jordan:2"]) == 2  # argparse choice


def test_cycle_command(rep_file, capsys):
    code, report = run_json(capsys, ["cycle", rep_file(CYCLE_REP)])
    assert code == 0
    assert report["criterion"] is True
    assert report["direct_transitive"] is True
    assert report["agree"] is True
    assert report["components"] == ["1,2"]


def test_cycle_on_higher_dims_skips_components(rep_file, capsys):
    text = """\
quiver C2
vertex 1
vertex 2
arrow a1: 1 -> 2
arrow a2: 2 -> 1
dim 1 = 2
dim 2 = 2
mat a1 = [[1, 0]; [0, 1]]
mat a2 = [[0, 1]; [0, 0]]
"""
    code, report = run_json(capsys, ["cycle", rep_file(text)])
    assert code == 0
    assert report["criterion"] is False
    assert "components" not in report


def test_opmodel_full_report(capsys):
    code, report = run_json(
        capsys,
        [
            "opmodel", "--pair", "shift-rank-one",
            "--lambda", "seq:reciprocal", "--w", "seq:reciprocal", "--n", "6",
            "--density", "--four-subspace", "--phi",
        ],
    )
    assert code == 0
    assert report["sigma_min_a"] > 0
    assert report["density"]["dense"] is True
    assert report["four_subspace"]["agree"] is True
    assert report["phi"]["surjective"] is True


def test_opmodel_error_codes(capsys):
    base = ["opmodel", "--pair", "shift-rank-one", "--w", "seq:reciprocal", "--n", "4"]
    # repeated diagonal value violates the construction hypothesis
    assert cli.run(base + ["--lambda", "seq:const:1"]) == 3
    # malformed sequence literal
    assert cli.run(base + ["--lambda", "seq:wat"]) == 2
    # n below the window minimum
    assert cli.run(["opmodel", "--pair", "shift-rank-one", "--lambda", "seq:reciprocal",
                    "--w", "seq:reciprocal", "--n", "0"]) == 2


def test_common_flag_validation(rep_file, capsys):
    path = rep_file(KRONECKER_REP)
    assert cli.run(["analyze", path, "--seed", "-1"]) == 2
    assert cli.run(["analyze", path, "--tol", "0"]) == 2
    assert cli.run(["analyze", path, "--tol", "-3"]) == 2


def test_argparse_level_exits(capsys):
    assert cli.run(["frobnicate"]) == 2
    assert cli.run([]) == 2
    assert cli.run(["-h"]) == 0
    capsys.readouterr()


def test_verify_small_run_json(capsys):
    code, report = run_json(capsys, ["verify", "--suite", "cyclic", "--trials", "2", "--seed", "3"])
    assert code == 0
    assert report["ok"] is True
    assert report["failed"] == 0
    assert report["total_checks"] == len(report["suites"]["cyclic"]["checks"])


def test_verify_repeat_runs_are_byte_identical(capsys):
    argv = ["verify", "--suite", "reflection", "--trials", "3", "--seed", "7"]
    code1, out1 = run_lines(capsys, argv)
    code2, out2 = run_lines(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_failure_exit_code(capsys, monkeypatch):
    def forced(trials, seed):
        return [verify.Check("forced", False, "boom")]

    monkeypatch.setitem(verify.SUITES, "cyclic", forced)
    code, out = run_lines(capsys, ["verify", "--suite", "cyclic"])
    assert code == 1
    assert "FAIL forced" in out


def test_text_rendering_of_check_lines(capsys):
    code, out = run_lines(capsys, ["verify", "--suite", "cyclic", "--trials", "2"])
    assert code == 0
    for line in out.splitlines():
        if line.strip().startswith("ok  "):
            break
    else:
        raise AssertionError("no check lines rendered")
