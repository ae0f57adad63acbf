import json
import os
import subprocess
import sys

import pytest
from hypothesis import given

from semiselfdual.cli import FileFormatError, format_code_file, main, parse_code_file, parse_perm_file
from strategies import codes as code_st

SAMPLES = os.path.join(os.path.dirname(__file__), "..", "samples")


def sample(name):
    return os.path.join(SAMPLES, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_worked_example(capsys):
    code, out, _ = run(capsys, "analyze", sample("example6.code"), "--json")
    assert code == 0
    res = json.loads(out)["results"]
    flags = (res["self_orthogonal"], res["doubly_even"], res["contains_all_ones"], res["semi_self_dual"])
    assert flags == ("yes", "no", "yes", "yes")
    assert res["dual_distance"] == 2
    assert res["eps"] == [2]
    assert res["F"] == "2*y + 2*y^5"


def test_analyze_self_dual_pair(capsys):
    code, out, _ = run(capsys, "analyze", sample("rep2.code"))
    assert code == 0
    assert "self_dual: yes" in out and "semi_self_dual: no" in out


def test_analyze_bad_header(capsys, tmp_path):
    p = tmp_path / "bad.code"
    p.write_text("# comment\n6 x\n111111\n")
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 2 and ":2:" in err


def test_analyze_bad_row_reports_line(tmp_path):
    with pytest.raises(FileFormatError) as exc:
        parse_code_file("2 2\n11\n1a\n")
    assert exc.value.line == 3


def test_analyze_rank_deficient_warns(capsys, tmp_path):
    p = tmp_path / "dup.code"
    p.write_text("4 3\n1100\n0011\n1111\n")
    code, out, err = run(capsys, "analyze", str(p))
    assert code == 0 and "rank 2" in err and "dim: 2" in out


def test_analyze_cap_reported(capsys):
    code, out, _ = run(capsys, "analyze", sample("golay24.code"), "--cap", "4")
    assert code == 0 and "not computed" in out


def test_bound_commands(capsys):
    code, out, _ = run(capsys, "bound", "22")
    assert code == 0 and "bound: 6" in out
    code, out, _ = run(capsys, "bound", "24", "--prove", "--json")
    res = json.loads(out)["results"]
    assert res["bound"] == 4 and res["certificate_index"] == 2 and "3/2" in res["certificate"]
    code, out, _ = run(capsys, "bound", "72", "--prove")
    assert "bound: 12" in out and "certificate_index: 6" in out
    code, _, err = run(capsys, "bound", "7")
    assert code == 2 and "odd" in err


def test_involution_commands(capsys):
    code, out, _ = run(capsys, "involution", "23")
    assert code == 0 and "FREE; pi-image self-dual [12,6]" in out
    code, out, _ = run(capsys, "involution", "--code", sample("block4.code"), "--perm", sample("pairs4.perm"))
    assert "NOT FREE" in out
    code, out, _ = run(capsys, "involution", "--code", sample("block4.code"), "--perm", sample("cross4.perm"))
    assert "FREE; pi-image self-dual [2,1]" in out
    code, _, _ = run(capsys, "involution", "17")
    assert code == 2


def test_series_commands(capsys):
    assert run(capsys, "series", "alpha", "2", "12")[1].strip().endswith("value: 6")
    assert run(capsys, "series", "gamma", "2", "0", "14")[1].strip().endswith("value: 6")
    assert run(capsys, "series", "parity", "5")[1].strip().endswith("value: even")
    assert run(capsys, "series", "alpha", "2")[0] == 2


def test_coverage_command(capsys):
    code, out, _ = run(capsys, "coverage")
    assert code == 0 and "covered 110/153 ≈ 0.72" in out


def test_feasible_command(capsys):
    code, out, _ = run(capsys, "feasible", "120", "11", "--cap", "2", "--json")
    res = json.loads(out)["results"]
    assert code == 0 and res["solutions"] > 0 and res["all_F_ok"] == "yes"
    assert run(capsys, "feasible", "24", "3")[0] == 2


def test_sharpness_byte_identical(capsys):
    a = run(capsys, "sharpness", "14", "--seed", "5", "--json")
    b = run(capsys, "sharpness", "14", "--seed", "5", "--json")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["results"]["sharp"] == "yes"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_perm_file_parsing():
    assert parse_perm_file("2 1 4 3\n").images == (2, 1, 4, 3)
    with pytest.raises(FileFormatError):
        parse_perm_file("1 1 2\n")
    with pytest.raises(FileFormatError):
        parse_perm_file("2 3 1\n")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "semiselfdual", "bound", "16"],
                         capture_output=True, text=True, check=True)
    assert "bound: 4" in out.stdout


@given(code_st(max_n=16))
def test_code_file_roundtrip(C):
    again = parse_code_file(format_code_file(C, "round trip"))
    assert again.rows == C.rows and again.n == C.n
