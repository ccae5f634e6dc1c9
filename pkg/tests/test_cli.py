import contextlib
import csv
import io
import json
import subprocess
import sys

from fftower.cli import SURVEY_COLUMNS, main, run_survey, run_verify


def run_cli(argv):
    buf = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, buf.getvalue(), err.getvalue()


SCHEMA_KEYS = ["input", "admissibility", "gamma", "rikuna_checks", "ramification",
               "genus", "l_poly", "class_number", "ell_divides", "status",
               "timings_ms", "version"]


def test_verify_ok():
    code, out, _ = run_cli(["verify", "--q", "5", "--ell", "3", "--m", "2", "--n", "1"])
    assert code == 0
    doc = json.loads(out)
    assert list(doc)[: len(SCHEMA_KEYS)] == SCHEMA_KEYS
    assert doc["status"] == "ok"
    assert doc["gamma"]["gamma"] == 1
    assert doc["genus"] == {"riemann_hurwitz": 2, "l_degree_half": 2}
    assert doc["l_poly"] == [1, -3, 8, -15, 25]
    assert doc["class_number"] == "16"
    assert doc["ell_divides"] is False
    assert doc["input"]["seed"] == 20259
    assert doc["zeta_checks"] == {"functional_equation": True,
                                  "weil_root_moduli": True,
                                  "weil_count_bounds": True}


def test_verify_deterministic_modulo_timings(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    for p in (p1, p2):
        code, _, _ = run_cli(["verify", "--q", "5", "--ell", "3", "--m", "2",
                              "--n", "1", "--json", str(p)])
        assert code == 0
    d1, d2 = json.loads(p1.read_text()), json.loads(p2.read_text())
    d1.pop("timings_ms"), d2.pop("timings_ms")
    assert d1 == d2


def test_verify_congruence_violation_exits_2():
    code, out, err = run_cli(["verify", "--q", "7", "--ell", "3", "--m", "2", "--n", "1"])
    assert code == 2
    assert "congruence" in err


def test_verify_budget_refusal_exits_2():
    code, out, err = run_cli(["verify", "--q", "5", "--ell", "3", "--m", "2", "--n", "3"])
    assert code == 2
    doc = json.loads(out)
    assert doc["status"] == "budget"
    assert "evaluations" in doc["error"]


def test_verify_deep_check():
    code, out, _ = run_cli(["verify", "--q", "5", "--ell", "3", "--m", "2",
                            "--n", "1", "--deep-check"])
    assert code == 0
    doc = json.loads(out)
    assert doc["deep_checked_through"] == 4


def test_survey_csv_shape():
    code, out, _ = run_cli(["survey", "--ell", "3", "--m", "2",
                            "--q-max", "50", "--n-max", "1"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == SURVEY_COLUMNS
    assert [r["q"] for r in rows] == ["5", "11", "17", "23", "29", "41", "47"]
    assert all(r["ell_divides_h"] == "False" for r in rows)
    assert all(r["status"] == "ok" for r in rows)


def test_survey_budget_rows():
    rows = run_survey(3, 2, 10, 3)
    by_n = {r["n"]: r for r in rows}
    assert by_n[1]["status"] == "ok"
    assert by_n[3]["status"] == "BUDGET"


def test_survey_json_format():
    code, out, _ = run_cli(["survey", "--ell", "3", "--m", "2",
                            "--q-max", "20", "--n-max", "1", "--format", "json"])
    assert code == 0
    rows = json.loads(out)
    assert [r["q"] for r in rows] == [5, 11, 17]
    assert all(set(SURVEY_COLUMNS) <= set(r) for r in rows)


def test_survey_ell5():
    rows = run_survey(5, 2, 20, 1)
    assert [r["q"] for r in rows] == [9, 19]
    assert all(r["ell_divides_h"] is False for r in rows if r["status"] == "ok")


def test_admissible_command():
    code, out, _ = run_cli(["admissible", "--ell", "3", "--m", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["C"] == "4" and doc["threshold"] == "64"
    assert (doc["residue"], doc["modulus"]) == (5, 6)
    code, out, _ = run_cli(["admissible", "--ell", "3", "--m", "77"])
    doc = json.loads(out)
    assert abs(doc["corollary"]["rhs_float"] - 0.0677) < 1e-4
    assert doc["corollary"]["rhs_ok"] is True


def test_admissible_with_q():
    code, out, _ = run_cli(["admissible", "--ell", "3", "--m", "2", "--q", "71"])
    doc = json.loads(out)
    assert doc["admissible"] is True
    assert doc["q_report"]["kummer_cyclic"] is True


def test_gamma_command():
    code, out, _ = run_cli(["gamma", "--q", "5", "--ell", "3", "--m", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["gamma"] == 1 and doc["direct_check"] is True
    assert doc["witnesses"] == {"2": True}
    assert doc["power_sets"]["t_size"] == 2


def test_gamma_bad_input_exits_2():
    code, _, err = run_cli(["gamma", "--q", "7", "--ell", "3", "--m", "2"])
    assert code == 2 and err


def test_eq5_command():
    code, out, _ = run_cli(["eq5", "--q", "5", "--ell", "3", "--n", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["quotient"] == "156" and doc["verified"] is True
    code, _, err = run_cli(["eq5", "--q", "7", "--ell", "3", "--n", "1"])
    assert code == 2


def test_run_verify_returns_certificate():
    cert, code = run_verify(11, 3, 2, 1)
    assert code == 0 and cert["status"] == "ok"
    assert cert["rikuna_checks"]["inert_all_levels"]
    assert cert["ramification"]["all_ok"]


def test_console_script_end_to_end():
    proc = subprocess.run(
        [sys.executable, "-m", "fftower.cli", "verify", "--q", "5", "--ell", "3",
         "--m", "2", "--n", "1"],
        capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["status"] == "ok"
    proc2 = subprocess.run(
        [sys.executable, "-m", "fftower.cli", "verify", "--q", "7", "--ell", "3",
         "--m", "2", "--n", "1"],
        capture_output=True, text=True, timeout=60)
    assert proc2.returncode == 2
