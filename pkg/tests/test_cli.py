import io
import json
import subprocess
import sys

import pytest

from amalgam.cli import run
from amalgam.quotient import sl2_mod

SL2 = ["--m", "4", "--n", "6", "--d", "2"]
PSL2 = ["--m", "2", "--n", "3", "--d", "1"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_reduce():
    assert call("reduce", *SL2, "--word", "s^2 t^-3") == (0, "1\n", "")
    code, out, _ = call("reduce", *SL2, "--word", "s t s^-1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["normal_form"] == "r s t s" and data["central_power"] == 1
    code, out, _ = call("reduce", *SL2, "--word", "t^4", "--format", "csv")
    assert out.splitlines() == ["input,normal_form,syllable_length", "t^4,r t,1"]


def test_betti_table():
    code, out, _ = call("betti", *SL2)
    assert code == 0
    assert "1/12   g = 1 or g in <r>" in out
    assert "-1/4   g in <s>, <s^3>" in out
    assert "-1/6   g in <t>, <t^2>, <t^4>, <t^5>" in out
    assert "0   otherwise" in out


def test_betti_single_class_and_formats():
    code, out, _ = call("betti", *PSL2, "--class", "t^2", "--format", "json")
    assert code == 0 and json.loads(out)["value"] == "-1/3"
    code, out, _ = call("betti", *PSL2, "--format", "csv")
    assert code == 0 and out.splitlines()[1].endswith(",1/6")


def test_domain_errors_exit_1():
    code, out, err = call("betti", "--m", "4", "--n", "6", "--d", "3")
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "DivisibilityError"
    code, _, err = call("reduce", *SL2, "--word", "s^")
    data = json.loads(err)
    assert code == 1 and data["error"] == "SyntaxError" and data["offset"] == 2
    code, _, err = call("betti", "--m", "1", "--n", "6", "--d", "1")
    assert code == 1 and json.loads(err)["error"] == "RangeError"


def test_usage_errors_exit_2(capsys):
    assert call("reduce", "--word", "s")[0] == 2
    assert call("reduce", "--m", "4", "--word", "s")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("betti", *SL2, "--format", "xml")[0] == 2
    code, _, err = call("verify", *SL2, "--seed", "-1")
    assert code == 2


def test_usage_error_prints_grammar():
    code, _, err = call("reduce", "--word", "s")
    assert code == 2 and "word grammar" in err


def test_conj():
    code, out, _ = call("conj", *SL2, "s", "s^3")
    assert code == 0 and json.loads(out)["conjugate"] is False
    code, out, _ = call("conj", *SL2, "t s t^-1", "s")
    assert json.loads(out)["conjugate"] is True


def test_trace(tmp_path):
    element = json.dumps([{"word": "1", "num": 1, "den": 2}, {"word": "r", "num": 1, "den": 2}])
    assert call("trace", *SL2, "--element", element, "--class", "1") == (0, "1/2\n", "")
    path = tmp_path / "p.json"
    path.write_text(json.dumps([{"word": w, "num": 1, "den": 4} for w in ("1", "s", "s^2", "s^3")]))
    code, out, _ = call("trace", *SL2, "--element", "@" + str(path), "--class", "s", "--format", "json")
    assert code == 0 and json.loads(out)["value"] == "1/4"
    assert call("trace", *SL2, "--element", "{bad", "--class", "s")[0] == 2


def test_fox():
    code, out, _ = call("fox", *SL2)
    assert code == 0 and "d1" in out and "laplacian" in out
    code, out, _ = call("fox", *SL2, "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["d1"][2][0] == [{"word": "1", "num": -1, "den": 1}, {"word": "s", "num": -1, "den": 1}]


def test_verify_quick():
    code, out, _ = call("verify", *PSL2)
    assert code == 0 and "FAIL" not in out
    code, out, _ = call("verify", *SL2, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["schema"] == "amalgam.verify/1"


def test_verify_grid_small():
    code, out, _ = call("verify", "--grid", "--grid-limit", "4")
    assert code == 0
    assert out.splitlines()[0] == "(2,3,1) PASS"


def test_json_is_byte_identical():
    for argv in (["betti", *SL2], ["verify", *PSL2], ["fox", *PSL2], ["quotient", "--builtin", "psl2_z_mod2"]):
        first = call(*argv, "--format", "json")
        assert first == call(*argv, "--format", "json")


def test_quotient(tmp_path):
    code, out, _ = call("quotient", "--builtin", "sl2_z_mod2", "--check", "kernel", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["checks"]["kernel"]["laplacian_nullity"] == 2
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(sl2_mod(2).to_json()))
    code, out, _ = call("quotient", *SL2, "--rep", str(path))
    assert code == 0 and out.startswith("PASS  kernel on rep")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"degree": 3, "s": [1, 2, 0], "t": [0, 1, 2]}))
    code, _, err = call("quotient", *SL2, "--rep", str(bad))
    assert code == 1 and json.loads(err) == {"error": "RelationViolation", "message": "relation s^4 = 1 does not hold",
                                             "relation": "s^4 = 1"}
    assert call("quotient", *PSL2, "--builtin", "sl2_z_mod2")[0] == 1
    assert call("quotient", "--builtin", "nope")[0] == 2
    assert call("quotient", *SL2, "--rep", str(tmp_path / "missing.json"))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "amalgam", "reduce", *SL2, "--word", "s^2 t^-3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"
