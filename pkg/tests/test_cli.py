import csv
import importlib
import io
import json
import math
from fractions import Fraction
from pathlib import Path

import pytest

from exactsize.cli import EXIT_INFEASIBLE, EXIT_INVALID, EXIT_OK, EXIT_VERIFY, main
from exactsize.coverage import AcceptanceWindow, ErrorCriterion, coverage

GOLDEN = Path(__file__).parent / "golden"
# the package re-exports the coverage() function under the submodule name
coverage_mod = importlib.import_module("exactsize.coverage")


def run(cmd):
    out, err = io.StringIO(), io.StringIO()
    code = main(cmd.split(), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_size_census_case():
    code, out, _ = run("size --population 2 --lower 0 --upper 2 --criterion abs --eps 3/5 --delta 1/100")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["n_min"] == 2


def test_size_matches_golden():
    code, out, _ = run("size --population 100 --lower 0 --upper 100 --criterion abs --eps 0.1 --delta 0.1")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc.pop("timing")["seconds"] >= 0
    assert doc == json.loads((GOLDEN / "size_N100_abs.json").read_text())


def test_size_accelerated_same_answer():
    _, a, _ = run("size --population 100 --lower 0 --upper 100 --criterion abs --eps 0.1 --delta 0.1")
    _, b, _ = run("size --population 100 --lower 0 --upper 100 --criterion abs --eps 0.1 --delta 0.1 --search accelerated")
    ra, rb = json.loads(a)["result"], json.loads(b)["result"]
    assert (ra["n_min"], ra["worst_M"], ra["min_coverage"]) == (rb["n_min"], rb["worst_M"], rb["min_coverage"])


def test_min_coverage_round_trips():
    _, out, _ = run("size --population 60 --lower 10 --upper 50 --criterion mixed --eps-abs 1/20 --eps-rel 1/5 --delta 1/10")
    res = json.loads(out)["result"]
    exact = Fraction(res["min_coverage"]["exact"])
    assert res["min_coverage"]["exact"] == f"{exact.numerator}/{exact.denominator}"
    assert float(res["min_coverage"]["decimal"]) == pytest.approx(float(exact), rel=1e-11)
    crit = ErrorCriterion.mixed(Fraction(1, 20), Fraction(1, 5))
    assert coverage(res["n_min"], res["worst_M"], 60, crit) == exact


def test_size_relative_zero_lower_is_infeasible():
    code, out, err = run("size --population 50 --lower 0 --upper 20 --criterion rel --eps 1/10 --delta 1/10")
    assert code == EXIT_INFEASIBLE
    assert out == ""
    assert json.loads(err)["witness_M"] == 0


@pytest.mark.parametrize(
    "cmd,flag",
    [
        ("size --population 10 --criterion abs --eps 3/2 --delta 1/10", "--eps"),
        ("size --population 10 --criterion abs --eps 1/10 --delta 0", "--delta"),
        ("size --population 10 --lower 7 --upper 3 --criterion abs --eps 1/10 --delta 1/10", "--upper"),
        ("size --population 10 --criterion mixed --eps-abs 1/10 --delta 1/10", "--eps-rel"),
        ("coverage --population 10 --sample 11 --criterion abs --eps 1/10", "--sample"),
    ],
)
def test_invalid_input(cmd, flag):
    code, out, err = run(cmd)
    assert code == EXIT_INVALID
    assert flag in err


def test_unparseable_ratio_is_invalid():
    code, _, _ = run("size --population 10 --criterion abs --eps abc --delta 1/10")
    assert code == EXIT_INVALID


def test_coverage_rows_json_and_csv():
    code, out, _ = run("coverage --population 4 --sample 2 --criterion abs --eps 1/4 --m 0,2,4")
    assert code == EXIT_OK
    rows = json.loads(out)["rows"]
    assert [r["M"] for r in rows] == [0, 2, 4]
    assert rows[1]["coverage"] == "2/3"
    assert (rows[1]["g"], rows[1]["h"]) == (1, 1)
    _, out, _ = run("coverage --population 4 --sample 2 --criterion abs --eps 1/4 --format csv")
    table = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["M"]) for r in table] == [0, 1, 2, 3, 4]
    assert table[2]["coverage"] == "2/3"


def test_human_format_is_aligned_text():
    code, out, _ = run("coverage --population 4 --sample 2 --criterion abs --eps 1/4 --format human")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].split() == ["M", "g", "h", "coverage", "decimal"]
    assert len(lines) == 6


def test_candidates_example():
    code, out, _ = run("candidates --population 10 --lower 0 --upper 10 --sample 4 --criterion abs --eps 1/10")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert [m["M"] for m in doc["members"]] == [0, 1, 4, 6, 9, 10]
    assert doc["bound"] == "56/5" and doc["within_bound"]


def test_candidates_mixed_fallback_warns():
    code, out, err = run(
        "candidates --population 50 --lower 10 --upper 40 --sample 12 --criterion mixed --eps-abs 1/100 --eps-rel 1/2"
    )
    assert code == EXIT_OK
    assert err.startswith("warning:")
    assert "relative" in json.loads(out)["fallback"]


def test_verify_smoke_deterministic():
    a = run("verify --tier smoke --seed 7 --threads 1")
    b = run("verify --tier smoke --seed 7 --threads 1")
    assert a[0] == b[0] == EXIT_OK
    assert a[1] == b[1]
    doc = json.loads(a[1])
    assert doc["pass"] and doc["instances_checked"] > 0


def _non_strict_window(n, M, N, crit, _orig=coverage_mod.acceptance_window):
    if crit.kind != "absolute":
        return _orig(n, M, N, crit)
    lo, hi = n * (Fraction(M, N) - crit.eps), n * (Fraction(M, N) + crit.eps)
    return AcceptanceWindow(math.ceil(lo), math.floor(hi))


def test_verify_catches_injected_bug(monkeypatch):
    monkeypatch.setattr(coverage_mod, "acceptance_window", _non_strict_window)
    code, out, _ = run("verify --tier smoke --seed 7 --threads 1")
    assert code == EXIT_VERIFY
    assert json.loads(out)["failure_count"] > 0


def test_missing_subcommand_is_invalid():
    assert run("")[0] == EXIT_INVALID
