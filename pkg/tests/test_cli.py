import csv
import io
import json
import math
import subprocess
import sys

import pytest
from scipy import special

from lfrac import cli

ERFC_2 = 0.24212784385868789396  # 1 - sqrt(pi) e erfc(1), mpmath


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_eval_lfunc(capsys):
    code, out, _ = run(capsys, "eval", "lfunc", "--alpha", "0.5", "--beta", "1", "--z", "2")
    assert code == 0
    r = rows(out)
    assert len(r) == 1 and abs(float(r[0]["value"]) - ERFC_2) < 1e-13
    assert set(r[0]) == {"z", "value", "err_est", "method"}


def test_eval_closed_form(capsys):
    code, out, _ = run(capsys, "eval", "lfunc", "--alpha", "1", "--beta", "2", "--z", "1")
    assert code == 0 and float(rows(out)[0]["value"]) == 0.25


def test_eval_violation_exit_2(capsys):
    code, _, err = run(capsys, "eval", "lfunc", "--alpha", "-1", "--beta", "1", "--z", "1")
    assert code == 2 and "n=" in err and "m=" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "eval", "lfunc", "--alpha", "0.5", "--beta", "1", "--z", "1", "--bogus", "3")[0] == 2
    assert run(capsys, "eval", "lfunc", "--alpha", "0.5", "--beta", "1")[0] == 2
    assert run(capsys, "eval", "nothing", "--z", "1")[0] == 2
    assert run(capsys, "verify", "no-such-suite")[0] == 2
    assert run(capsys, "eval", "lfunc", "--alpha", "abc", "--beta", "1", "--z", "1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_csv_three_rows_four_lines(capsys):
    code, out, _ = run(capsys, "eval", "lfunc", "--alpha", "0.5", "--beta", "1", "--z", "0.5,1,2")
    assert code == 0 and len(out.strip().splitlines()) == 4


def test_complex_input(capsys):
    code, out, _ = run(capsys, "eval", "lfunc", "--alpha", "1", "--beta", "1", "--z", "1+1i")
    v = complex(rows(out)[0]["value"])
    assert code == 0 and abs(v - 1 / (2 + 1j)) < 1e-15


def test_json_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "eval", "lfunc", "--alpha", "0.4", "--beta", "1+0.5i", "--z", "0.5,3",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 2
    path = tmp_path / "t.json"
    path.write_text(out)
    code, out2, _ = run(capsys, "table", "--input", str(path), "--format", "json")
    assert code == 0 and json.loads(out2) == data
    back = cli.load_table(str(path))
    assert isinstance(back[0]["value"], complex)


def test_determinism(capsys):
    args = ("eval", "lfunc", "--alpha", "0.3", "--beta", "1.5", "--z", "0.1,1,10,100")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args, "--workers", "3")
    assert a == b


def test_output_file_and_io_error(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, out, _ = run(capsys, "eval", "cauchy-phi", "--alpha", "1", "--x", "0,1", "--output", str(path))
    assert code == 0 and out == ""
    r = rows(path.read_text())
    assert abs(float(r[1]["value"]) - 0.5) < 1e-12
    code, _, _ = run(capsys, "eval", "cauchy-phi", "--alpha", "1", "--x", "1", "--output",
                     str(tmp_path / "missing" / "x.csv"))
    assert code == 3
    assert run(capsys, "table", "--input", str(tmp_path / "absent.json"))[0] == 3


def test_env_tolerances(capsys, monkeypatch):
    monkeypatch.setenv("LFRAC_REL_TOL", "1e-6")
    monkeypatch.setenv("LFRAC_ABS_TOL", "1e-8")
    code, out, _ = run(capsys, "eval", "subordinator", "--alpha", "0.5", "--t", "1", "--y", "1")
    levy = math.exp(-0.25) / (2 * math.sqrt(math.pi))
    assert code == 0 and abs(float(rows(out)[0]["value"]) - levy) < 1e-6
    monkeypatch.setenv("LFRAC_REL_TOL", "nope")
    assert run(capsys, "eval", "subordinator", "--alpha", "0.5", "--y", "1")[0] == 2


def test_other_eval_targets(capsys):
    code, out, _ = run(capsys, "eval", "wright", "--alpha", "1", "--beta", "1", "--z", "1")
    assert code == 0 and abs(complex(rows(out)[0]["value"]) - special.i0(2)) < 1e-13
    code, out, _ = run(capsys, "eval", "stable-pdf", "--alpha", "1.5", "--gamma", "0.4", "--x", "1")
    assert code == 0 and abs(float(rows(out)[0]["value"]) - 0.12686726874657007375) < 1e-10
    assert run(capsys, "eval", "stable-pdf", "--alpha", "1", "--x", "1")[0] == 2


def test_apply_riemann_liouville(capsys):
    code, out, _ = run(capsys, "apply", "riemann-liouville", "--r", "0.5", "--f", "power:1", "--x", "1")
    assert code == 0 and abs(float(rows(out)[0]["value"]) - 1 / special.gamma(2.5)) < 1e-12


def test_apply_B_with_oracle(capsys):
    code, out, _ = run(capsys, "apply", "B", "--alpha", "0.5", "--f", "phi:1,1,0", "--x", "1", "--oracle")
    r = rows(out)[0]
    assert code == 0 and abs(complex(r["value"]) - complex(r["oracle"])) < 1e-5


def test_apply_frac_diff(capsys):
    code, out, _ = run(capsys, "apply", "frac-diff", "--h", "1", "--F", "lp:psi:0,1", "--z", "1", "--oracle")
    r = rows(out)[0]
    # F = 1/(1+z), -F'(1) = 1/4
    assert code == 0 and abs(complex(r["value"]) - 0.25) < 1e-8 and abs(complex(r["oracle"]) - 0.25) < 1e-8


def test_apply_holo_targets(capsys):
    for target, extra in (("A", ("--alpha", "0.5")), ("R", ("--h", "0.5", "--alpha", "0.5", "--a", "2")),
                          ("T", ("--beta", "0.5", "--s", "1"))):
        code, out, _ = run(capsys, "apply", target, *extra, "--F", "lp:phi:1,1,0", "--z", "1", "--oracle")
        r = rows(out)[0]
        assert code == 0 and abs(complex(r["value"]) - complex(r["oracle"])) < 1e-5
    assert run(capsys, "apply", "A", "--alpha", "0.5", "--F", "phi:1,1,0", "--z", "1")[0] == 2


def test_apply_Q(capsys):
    code, out, _ = run(capsys, "apply", "Q", "--theta", "0.5", "--alpha", "0.5", "--a", "1", "--f", "phi:1,1,0",
                       "--x", "2")
    assert code == 0 and abs(float(complex(rows(out)[0]["value"]).real) + 0.0073313219155417330185) < 1e-8
    assert run(capsys, "apply", "Q", "--theta", "0", "--alpha", "0.5", "--a", "-1", "--f", "phi", "--x", "1")[0] == 2


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "group-laws", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["overall"] is True
    assert data["suites"][0]["suite"] == "group-laws"
    assert all(c["pass"] for c in data["suites"][0]["cases"])


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "group-laws")
    r = rows(out)
    assert code == 0 and r and set(r[0]) == {"suite", "name", "max_abs_err", "tolerance", "pass"}


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "lfrac.cli", "eval", "lfunc", "--alpha", "1", "--beta", "2", "--z", "1"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "0.25" in p.stdout
