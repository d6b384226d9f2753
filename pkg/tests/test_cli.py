import json
import subprocess
import sys

import pytest

from matgroup_interp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_verify_steinberg(capsys):
    code, out, _ = run(capsys, "verify", "steinberg", "--ring", "gf:5", "--n", "3")
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] and rep["suite"] == "steinberg"
    assert set(rep["records"][0]) == {"check", "anchor", "expected", "observed", "pass"}


def test_verify_a4_index(capsys, tmp_path):
    path = str(tmp_path / "report.json")
    code, _, _ = run(capsys, "verify", "a4", "--ring", "gf:7", "--n", "3", "--out", path)
    assert code == 0
    rep = json.load(open(path))
    obs = {r["check"]: r["observed"] for r in rep["records"]}
    assert obs["coset_count"] == 3 and obs["index_G_mod_GZ"] == 3


def test_suite_flag_and_formats(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cohom", "--out", "csv")
    assert code == 0 and out.startswith("check,anchor,expected,observed,pass")
    code, out, _ = run(capsys, "verify", "cohom", "--out", "md")
    assert code == 0 and "overall: PASS" in out


def test_reports_are_byte_stable(capsys):
    first = run(capsys, "verify", "interp", "--ring", "gf:5", "--pairs", "50", "--seed", "7")[1]
    second = run(capsys, "verify", "interp", "--ring", "gf:5", "--pairs", "50", "--seed", "7")[1]
    assert first == second


def test_timing_is_opt_in(capsys):
    out = run(capsys, "verify", "steinberg", "--timing")[1]
    assert "wall_time_s" in json.loads(out)
    out = run(capsys, "verify", "steinberg")[1]
    assert "wall_time_s" not in json.loads(out)


def test_check_failure_exit_code(capsys):
    code, _, err = run(capsys, "verify", "decompose", "--ring", "zmod:6")
    assert code == 1 and "FAIL" in err


def test_usage_errors(capsys):
    assert run(capsys, "verify", "bogus")[0] == 2
    assert run(capsys, "verify")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "steinberg", "--ring", "gf:9"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["interpret", "--ring", "gf:7", "--op", "pow", "--x", "1", "--y", "2"])
    assert exc.value.code == 2


def test_decompose_identity(capsys, tmp_path):
    path = write(tmp_path, "id.json", {"ring": "gf:5", "n": 3, "entries": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    code, out, _ = run(capsys, "decompose", path)
    assert code == 0 and json.loads(out)["letters"] == []


def test_decompose_gl_and_pad(capsys, tmp_path):
    path = write(tmp_path, "a.json", {"ring": "gf:7", "n": 3, "entries": [[2, 1, 0], [0, 1, 3], [1, 0, 1]]})
    code, out, _ = run(capsys, "decompose", path)
    w = json.loads(out)
    assert code == 0 and w["diag"]["index"] == 3
    code, out, _ = run(capsys, "decompose", path, "--pad")
    assert code == 0 and len(json.loads(out)["letters"]) == 13


def test_decompose_singular(capsys, tmp_path):
    path = write(tmp_path, "s.json", {"ring": "gf:5", "n": 2, "entries": [[1, 2], [2, 4]]})
    code, _, err = run(capsys, "decompose", path)
    assert code == 1 and "NotInvertible" in err


@pytest.mark.parametrize("text", ['{"ring": "gf:5", "n": 2, "entries": [[1, 2], [2, 4]', "", "[1, 2,]", "{'a': 1}"])
def test_malformed_json(capsys, tmp_path, text):
    path = write(tmp_path, "bad.json", text)
    code, _, err = run(capsys, "decompose", path)
    assert code == 2 and "ParseError" in err and "bad.json:" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "decompose", str(tmp_path / "nope.json"))
    assert code == 2


def test_interpret_mul(capsys):
    code, out, _ = run(capsys, "interpret", "--ring", "gf:7", "--n", "3", "--carrier", "1,3", "--op", "mul", "--x", "2", "--y", "3")
    res = json.loads(out)
    assert code == 0 and res["value"] == "6"
    assert res["matrix"]["entries"][0][2] == "6"


def test_interpret_other_carrier(capsys):
    code, out, _ = run(capsys, "interpret", "--ring", "zmod:6", "--carrier", "3,2", "--op", "add", "--x", "4", "--y", "5")
    assert code == 0 and json.loads(out)["value"] == "3"


def test_interpret_bad_carrier(capsys):
    code, _, err = run(capsys, "interpret", "--ring", "gf:7", "--carrier", "2,2", "--op", "add", "--x", "1", "--y", "1")
    assert code == 1 and "BadIndices" in err


def test_deform_build_flags(capsys):
    code, out, _ = run(capsys, "deform", "build", "--ring", "gf:3", "--n", "3", "--Z", "2", "--carry")
    rep = json.loads(out)
    assert code == 0 and rep["parameters"]["order"] == 216 and not rep["parameters"]["f_trivial"]


def test_deform_build_file(capsys, tmp_path):
    table = {k: "(1)" for k in ["(1,0)|(1,0)", "(1,1)|(1,0)", "(1,0)|(1,1)", "(1,1)|(1,1)"]}
    path = write(tmp_path, "d.json", {"ring": "gf:3", "n": 3, "Z": [2], "cocycle": {"table": table}})
    code, out, _ = run(capsys, "deform", "build", path, "--check", "all")
    assert code == 0 and json.loads(out)["pass"]


def test_deform_build_invalid_cocycle(capsys, tmp_path):
    path = write(tmp_path, "d.json", {"ring": "gf:3", "n": 3, "Z": [2], "cocycle": {"table": {"(1,0)|(0,1)": "(1)"}}})
    code, _, err = run(capsys, "deform", "build", path)
    assert code == 1 and "InvalidCocycle" in err


def test_deform_bad_check_name(capsys):
    assert run(capsys, "deform", "build", "--ring", "gf:3", "--n", "3", "--check", "nope")[0] == 2


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "matgroup_interp.cli", "verify", "steinberg", "--ring", "zmod:6"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["pass"]
