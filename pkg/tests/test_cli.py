import io
import json

import pytest

from cli import HeffterCLI
from utils.decorators import ExitCode


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = HeffterCLI(out=out, err=err).run(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_generate_writes_grid():
    code, out, _ = run("generate", "--n", "13", "--k", "3")
    assert code == ExitCode.OK
    lines = out.splitlines()
    assert lines[0] == "H 13 3 ladder-3"
    assert lines[1] == "-12 26 . . . . . . . . . . -14"


def test_generate_json_to_file(tmp_path):
    target = tmp_path / "h.json"
    code, out, _ = run("generate", "--n", "7", "--k", "4", "--format", "json", "--out", str(target))
    assert code == ExitCode.OK
    assert out == ""
    data = json.loads(target.read_text())
    assert (data["n"], data["k"], data["provenance"]) == (7, 4, "diagonal-4")


@pytest.mark.parametrize(
    "n,k,code,fragment",
    [
        (10, 3, ExitCode.NEGATIVE, "2 (mod 4)"),
        (28, 5, ExitCode.UNKNOWN, "Unknown"),
        (5, 7, ExitCode.OUT_OF_SCOPE, "OutOfScope"),
    ],
)
def test_generate_without_construction(n, k, code, fragment):
    result, out, err = run("generate", "--n", str(n), "--k", str(k))
    assert result == code
    assert out == ""
    assert fragment in err


def test_generate_unwritable_target(tmp_path):
    code, _, _ = run("generate", "--n", "4", "--k", "3", "--out", str(tmp_path / "missing" / "h.txt"))
    assert code == ExitCode.IO_ERROR


def test_verify_valid_file(golden_path):
    code, out, _ = run("verify", str(golden_path("h_4_3.txt")))
    assert code == ExitCode.OK
    assert out.strip() == "valid H(4;3)"


def test_verify_reports_violations(tmp_path, golden_path):
    text = golden_path("h_4_3.txt").read_text().replace("4 8 . -12", "5 8 . -12")
    path = tmp_path / "edited.txt"
    path.write_text(text)

    code, out, _ = run("verify", str(path))
    assert code == ExitCode.NEGATIVE
    assert out.startswith("invalid H(4;3)")
    assert "sum: row 0 sums to +1" in out
    assert "support: missing {4}" in out


def test_verify_shiftable(golden_path):
    code, out, _ = run("verify", str(golden_path("hs_8_6.txt")), "--shiftable")
    assert code == ExitCode.OK
    assert "shiftable: yes" in out

    code, out, _ = run("verify", str(golden_path("h_4_3.txt")), "--shiftable")
    assert code == ExitCode.NEGATIVE
    assert "shiftable: no" in out


def test_verify_strippable(golden_path):
    code, out, _ = run("verify", str(golden_path("h_13_3.txt")), "--strippable")
    assert code == ExitCode.OK
    assert "strippable: yes, transversal (0,0) (1,1)" in out

    code, out, _ = run("verify", str(golden_path("hs_7_4.txt")), "--strippable")
    assert code == ExitCode.NEGATIVE
    assert "undefined for even k" in out


def test_verify_unreadable_inputs(tmp_path):
    code, _, _ = run("verify", str(tmp_path / "nothing.txt"))
    assert code == ExitCode.IO_ERROR

    broken = tmp_path / "broken.txt"
    broken.write_text("H 2 1\n1 x\n. 1\n")
    code, _, _ = run("verify", str(broken))
    assert code == ExitCode.IO_ERROR


def test_verify_wrong_shape_json_is_an_io_error(tmp_path):
    short = tmp_path / "short.json"
    short.write_text('{"n": 3, "k": 1, "rows": [[1, null, -1]]}')
    code, out, _ = run("verify", str(short))
    assert code == ExitCode.IO_ERROR
    assert out == ""


def test_search_none_exists():
    code, out, _ = run("search", "--n", "3", "--k", "3", "--exhaust")
    assert code == ExitCode.NEGATIVE
    assert out.startswith("NoneExists")
    assert "solutions=0" in out


def test_search_found_prints_array():
    code, out, _ = run("search", "--n", "4", "--k", "3")
    assert code == ExitCode.OK
    lines = out.splitlines()
    assert lines[0].startswith("Found")
    assert lines[1] == "H 4 3 search"
    assert len(lines) == 6


def test_search_budget_is_inconclusive():
    code, out, _ = run("search", "--n", "4", "--k", "4", "--budget", "5")
    assert code == ExitCode.UNKNOWN
    assert out.startswith("Inconclusive")


def test_coverage_table():
    code, out, _ = run("coverage", "--max-n", "13")
    assert code == ExitCode.OK
    lines = out.splitlines()
    assert lines[0].split() == [str(k) for k in range(3, 14)]
    assert lines[1].split() == ["3", "|", "x", ".", ".", ".", ".", ".", ".", ".", ".", ".", "."]
    assert "counts: Exists=" in out
    assert "n=0 k=3: ladder-3, ladder-3-stacked" in out
    assert out.rstrip().splitlines()[-1].startswith("conjecture: ")


def test_coverage_json():
    code, out, _ = run("coverage", "--max-n", "6", "--format", "json")
    assert code == ExitCode.OK
    data = json.loads(out)
    assert data["n_max"] == 6
    assert len(data["cells"]) == 16
    assert {"n": 4, "k": 3, "verdict": "Exists", "route": "ladder-3", "verified": None} in data["cells"]
    assert sum(data["counts"].values()) == 16


def test_coverage_rejects_tiny_bound():
    code, _, _ = run("coverage", "--max-n", "2")
    assert code == ExitCode.NEGATIVE


def test_unknown_command_exits():
    with pytest.raises(SystemExit):
        run("plot")
