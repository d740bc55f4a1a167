import json
import shutil
import subprocess
import sys

import pytest

from kgsystems import serialize
from kgsystems.cli import main
from kgsystems.matrix import ExactMatrix
import worked_examples as P


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write_json(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def entries(text):
    return serialize.matrix_from_json(json.loads(text))


@pytest.fixture
def cols_file(tmp_path):
    return write_json(tmp_path / "A.json", {"rows": 2, "cols": 2, "entries": [["1", "3"], ["2", "4"]]})


def system_file(tmp_path, name, system, rs=None):
    reflect = serialize.reflect_to_json(rs.v, rs.s.diagonal()) if rs else None
    return write_json(tmp_path / f"{name}.json", serialize.system_to_json(system, reflect))


# --- sympow / gamma ---------------------------------------------------------


def test_sympow_example(cols_file, capsys):
    code, out, _ = run(["sympow", "--matrix", cols_file, "--degree", "2"], capsys)
    assert code == 0
    assert entries(out) == P.COLS_BAR2
    obj = json.loads(out)
    assert list(obj) == ["rows", "cols", "entries", "degree", "dim"]
    assert (obj["degree"], obj["dim"]) == (2, 1)


def test_sympow_degree_zero(cols_file, capsys):
    code, out, _ = run(["sympow", "--matrix", cols_file, "--degree", "0"], capsys)
    assert code == 0 and entries(out) == ExactMatrix([[1]])


@pytest.mark.parametrize("command", ["sympow", "gamma"])
def test_engines_give_identical_bytes(tmp_path, command, capsys):
    path = write_json(tmp_path / "M.json", [["1/2", "2i", "0"], ["-1", "3+i", "1/3"], ["0", "5", "-2i"]])
    _, main_out, _ = run([command, "--matrix", path, "--degree", "3"], capsys)
    _, oracle_out, _ = run([command, "--matrix", path, "--degree", "3", "--engine", "oracle"], capsys)
    assert main_out == oracle_out


def test_gamma_examples(tmp_path, capsys):
    x1 = write_json(tmp_path / "X1.json", [[0, -12], [1, 7]])
    code, out, _ = run(["gamma", "--matrix", x1, "--degree", "2"], capsys)
    assert code == 0 and entries(out) == P.QV_GAMMA_X1
    z = write_json(tmp_path / "Z.json", [[0, 0], [0, 0]])
    _, out, _ = run(["gamma", "--matrix", z, "--degree", "3"], capsys)
    assert entries(out) == ExactMatrix.zeros(4)
    dg = write_json(tmp_path / "D.json", [[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    _, out, _ = run(["gamma", "--matrix", dg, "--degree", "2"], capsys)
    assert entries(out) == ExactMatrix.diag([2, 3, 4, 4, 5, 6])


def test_csv_output(cols_file, tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = run(["sympow", "--matrix", cols_file, "--degree", "2", "--format", "csv",
                        "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text() == "1,6,9\n2,10,12\n4,16,16\n"


def test_output_is_byte_stable(cols_file, capsys):
    outs = {run(["sympow", "--matrix", cols_file, "--degree", "3"], capsys)[1] for _ in range(3)}
    assert len(outs) == 1


# --- build / verify ---------------------------------------------------------


def test_build_reflect_matches_worked_example(capsys):
    code, out, _ = run(["build", "--reflect", "1,2i", "--scale", "1,6", "--degree", "3"], capsys)
    assert code == 0
    bundle = json.loads(out)
    assert list(bundle) == ["system", "degree", "Phi", "B", "pbar", "Dbar", "Rec", "Spec"]
    assert serialize.matrix_from_json(bundle["Phi"]) == P.CPX_PHI3
    assert bundle["system"]["reflect"] == {"v": ["1", "2i"], "s": ["1", "6"]}


def test_build_classical(capsys):
    code, out, _ = run(["build", "--classical", "4"], capsys)
    bundle = json.loads(out)
    assert code == 0 and bundle["degree"] == 4
    assert serialize.matrix_from_json(bundle["Phi"]) == P.BIN_PHI4
    # Rec and Spec are listed for j = 0..d; j = 0 is the scalar N I
    assert serialize.matrix_from_json(bundle["Rec"][0]) == ExactMatrix.identity(5) * 4
    assert serialize.matrix_from_json(bundle["Rec"][1]) == P.BIN_REC
    assert serialize.matrix_from_json(bundle["Spec"][1]) == P.BIN_SPEC


def test_build_degree_zero(tmp_path, capsys):
    path = system_file(tmp_path, "two", P.worked_systems()[2][1])
    code, out, _ = run(["build", "--system", path, "--degree", "0"], capsys)
    assert code == 0
    assert serialize.matrix_from_json(json.loads(out)["Phi"]) == ExactMatrix([[1]])


def test_build_invalid_system_exits_1(tmp_path, capsys):
    path = write_json(tmp_path / "bad.json", {"A": [[1, 1], [1, 1]], "p": ["1/2", "1/2"], "D": [1, 1]})
    code, out, _ = run(["build", "--system", path, "--degree", "2"], capsys)
    assert code == 1
    assert any(c["pass"] is False for c in json.loads(out)["checks"])


@pytest.mark.parametrize("name, N", [("classical", 4), ("two_variable", 2)])
def test_verify_examples(tmp_path, name, N, capsys):
    system = dict((n, s) for n, s, _ in P.worked_systems())[name]
    path = system_file(tmp_path, name, system)
    code, out, _ = run(["verify", "--system", path, "--degree", str(N)], capsys)
    report = json.loads(out)
    assert code == 0, report
    assert all(c["pass"] is not False for c in report["checks"])
    assert all(list(c) == ["name", "pass", "detail"] for c in report["checks"])


def test_verify_inapplicable_checks_are_null(tmp_path, capsys):
    path = system_file(tmp_path, "two", P.worked_systems()[2][1])
    _, out, _ = run(["verify", "--system", path, "--degree", "2", "--checks", "reflection,classical"], capsys)
    checks = json.loads(out)["checks"]
    assert [(c["name"], c["pass"]) for c in checks] == [("reflection", None), ("classical", None)]


@pytest.mark.parametrize("index", range(5))
def test_build_verify_round_trip(tmp_path, index, capsys):
    name, system, rs = P.worked_systems()[index]
    path = system_file(tmp_path, name, system, rs)
    code, out, _ = run(["build", "--system", path, "--degree", "3"], capsys)
    assert code == 0
    bundle = write_json(tmp_path / "bundle.json", json.loads(out))
    code, out, _ = run(["verify", "--system", bundle], capsys)
    report = json.loads(out)
    assert code == 0, report
    names = {c["name"] for c in report["checks"] if c["pass"]}
    assert "bundle" in names and "orthogonality" in names
    if rs is not None:
        assert {"reflection_involution", "reflection_selfadjoint"} <= names


def test_tampered_bundle_fails(tmp_path, capsys):
    _, out, _ = run(["build", "--classical", "3"], capsys)
    bundle = json.loads(out)
    bundle["Phi"]["entries"][1][2] = "5"
    path = write_json(tmp_path / "b.json", bundle)
    code, out, _ = run(["verify", "--system", path, "--checks", "kcondition"], capsys)
    check = {c["name"]: c for c in json.loads(out)["checks"]}["bundle"]
    assert code == 1 and check["pass"] is False and "(1, 2)" in check["detail"]


def test_inject_fault_is_located(capsys):
    code, out, _ = run(["verify", "--classical", "4", "--inject-fault", "2,3"], capsys)
    assert code == 1
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert checks["orthogonality"]["pass"] is False
    assert "suspect row 2" in checks["orthogonality"]["detail"]
    assert "suspect column 3" in checks["dual_orthogonality"]["detail"]
    assert checks["kcondition" if "kcondition" in checks else "first_column_ones"]["pass"] is True


def test_verify_invalid_system_skips_rest(tmp_path, capsys):
    path = write_json(tmp_path / "bad.json", {"A": [[1, 1], [1, 1]], "p": ["1/2", "1/2"], "D": [1, 1]})
    code, out, _ = run(["verify", "--system", path, "--degree", "2"], capsys)
    checks = json.loads(out)["checks"]
    assert code == 1
    assert [c["pass"] for c in checks if c["name"] == "orthogonality"] == [None]


# --- exit codes -------------------------------------------------------------


def test_capacity_guard(cols_file, capsys):
    # d = 1, degree 5 has 6 indices
    assert run(["sympow", "--matrix", cols_file, "--degree", "5", "--guard", "5"], capsys)[0] == 3
    assert run(["sympow", "--matrix", cols_file, "--degree", "4", "--guard", "5"], capsys)[0] == 0
    assert run(["build", "--classical", "5", "--guard", "5"], capsys)[0] == 3
    assert run(["verify", "--classical", "5", "--guard", "5"], capsys)[0] == 3


@pytest.mark.parametrize(
    "payload",
    [
        [[1, 2], [3]],
        {"rows": 2, "cols": 2, "entries": [["1", "2"], ["3", "x"]]},
        [["1.5", "0"], ["0", "1"]],
        [[0.5, 0], [0, 1]],
        [[1, 2, 3], [4, 5, 6]],
        "nonsense",
    ],
)
def test_malformed_matrix_exits_2(tmp_path, payload, capsys):
    path = write_json(tmp_path / "m.json", payload)
    code, _, err = run(["sympow", "--matrix", path, "--degree", "2"], capsys)
    assert code == 2 and err.startswith("kgsys:")


def test_malformed_files_exit_2(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(["sympow", "--matrix", str(broken), "--degree", "1"], capsys)[0] == 2
    assert run(["sympow", "--matrix", str(tmp_path / "missing.json"), "--degree", "1"], capsys)[0] == 2
    sysfile = write_json(tmp_path / "s.json", {"A": [[1, 1], [1, -1]], "p": ["1/2"]})
    assert run(["verify", "--system", sysfile, "--degree", "1"], capsys)[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["sympow", "--matrix", "A.json", "--degree", "2", "--float"],
        ["sympow", "--matrix", "A.json", "--degree", "-1"],
        ["verify", "--classical", "2", "--checks", "speed"],
        ["verify", "--classical", "2", "--reflect", "1,2i"],
        ["build", "--degree", "2"],
        ["sympow", "--matrix", "A.json", "--degree", "2", "--guard", "0"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_reflect_errors_exit_2(capsys):
    assert run(["build", "--reflect", "1,0", "--degree", "2"], capsys)[0] == 2
    assert run(["build", "--reflect", "1,2i", "--scale", "2,6", "--degree", "2"], capsys)[0] == 2
    assert run(["build", "--reflect", "1,2i"], capsys)[0] == 2


def test_inject_fault_out_of_range(capsys):
    assert run(["verify", "--classical", "2", "--inject-fault", "9,9"], capsys)[0] == 2


def test_console_script(cols_file):
    exe = shutil.which("kgsys")
    argv = [exe] if exe else [sys.executable, "-m", "kgsystems"]
    proc = subprocess.run(argv + ["sympow", "--matrix", cols_file, "--degree", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert entries(proc.stdout) == P.COLS_BAR2
