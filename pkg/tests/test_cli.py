import json
import shutil

from ncfilt.acceptance import FIXTURE_DIR
from ncfilt.cli import run_command


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "--n", "2", "--d", "2", "x2*x1")
    assert code == 0 and out.strip() == "x1*x2 - [x1,x2]"


def test_nf_localized_and_fraction(capsys):
    code, out, _ = run(capsys, "nf", "--d", "1", "--g", "x1", "x2*inv(x1)")
    assert out.strip() == "{x2/x1} + {1/x1^2} · [x1,x2]"
    code, out, _ = run(capsys, "nf", "--d", "1", "--g", "x1", "--fraction", "x2*inv(x1)")
    assert out.strip() == "x1^-2 * ( x1*x2 + [x1,x2] )"


def test_nf_json(capsys):
    code, out, _ = run(capsys, "nf", "--format", "json", "x2*x1")
    assert json.loads(out)["type"] == "nf"


def test_inv_without_context(capsys):
    code, _, err = run(capsys, "nf", "inv(x1)")
    assert code == 1 and "inversion requires a localization context" in err


def test_syntax_error_exit(capsys):
    code, _, err = run(capsys, "nf", "x1 +* x2")
    assert code == 1 and "position" in err


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "matinv")[0] == 2


def test_hall(capsys):
    code, out, _ = run(capsys, "hall", "--n", "2", "--max-deg", "3")
    lines = out.strip().splitlines()
    assert len(lines) == 5 and lines[-1].endswith("[[x1,x2],x2]")


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--n", "2", "--d", "2", "--format", "json")
    assert json.loads(out)["q_dimension"] == [1, 1, 3]


def test_ord(capsys):
    assert run(capsys, "ord", "--d", "3", "[x1,[x1,x2]]*x2")[1].strip() == "2"
    assert run(capsys, "ord", "--d", "0", "[x1,x2]")[1].strip() == "inf"


def test_invert(capsys):
    code, out, _ = run(capsys, "invert", "--g", "x1 + x2", "--d", "1", "x1 + x2")
    assert out.strip() == "{1/(x2 + x1)} + {-1/(x2 + x1)^3} · [x1,x2]"


def test_matinv(capsys):
    code, out, _ = run(capsys, "matinv", "--tautological", "2", "--verify")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "matinv", "--n", "2", "--g", "x1", "--rows", "x1,x2;0,x1",
                       "--route", "fraction", "--verify")
    assert code == 0 and "C21 = 0" in out


def test_cocycle_check(capsys):
    code, out, _ = run(capsys, "cocycle-check", "--n", "1", "--d", "2", "--line-bundle")
    assert code == 0 and out.count("PASS") == 2


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--n", "2", "--d", "1", "--max-deg", "1", "--reps", "1",
                       "--format", "json")
    assert code == 0 and len(json.loads(out)["rows"]) == 1


def test_selftest_exit_code_reflects_status(capsys, tmp_path):
    code, out, _ = run(capsys, "selftest", "--criteria", "4,6")
    assert code == 0 and "selftest: PASS" in out
    # a corrupted golden file must turn the suite red
    bad = tmp_path / "fixtures"
    shutil.copytree(FIXTURE_DIR, bad)
    cases = json.loads((bad / "cli.json").read_text())
    cases[0]["expected"] = "x1*x2 + [x1,x2]"
    (bad / "cli.json").write_text(json.dumps(cases))
    code, out, _ = run(capsys, "selftest", "--criteria", "10", "--fixtures", str(bad))
    assert code == 1 and "fixture cli/swap_two_generators" in out


def test_certificate_bound_env(capsys, monkeypatch):
    monkeypatch.setenv("NCFILT_CERT_BOUND", "0")
    code, _, err = run(capsys, "invert", "--g", "x1*x2", "--d", "1", "x1^2")
    assert code == 1
