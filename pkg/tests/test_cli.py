import csv
import io
import json
import subprocess
import sys
from decimal import Decimal
from fractions import Fraction as F

import pytest

from hiddenbasis import cli
from hiddenbasis.exact import to_decimal
from hiddenbasis.verification import CheckResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(out):
    return json.loads(out)["rows"]


def test_dist_csv_example(capsys):
    code, out, _ = run(capsys, "dist", "--n", "4", "--k", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == [
        "l,prob,prob_decimal",
        "0,1/6,0.166666666667",
        "1,1/2,0.5",
        "2,1/3,0.333333333333",
    ]
    assert "\r\n" in out


def test_dist_domain_error(capsys):
    code, out, err = run(capsys, "dist", "--n", "4", "--k", "3")
    assert code == 2 and out == ""
    assert "|x| <= floor(n/2)" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["dist", "--n", "4"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["char", "--lambda", "2,3", "--rho", "5"])
    assert exc.value.code == 2


def test_threshold_example(capsys):
    code, out, _ = run(capsys, "threshold", "--n", "4", "--t", "1", "--format", "json")
    assert code == 0
    rows = rows_of(out)
    assert {r["worst_case_success"] for r in rows} == {"4/5"}
    assert [r["one_sided_success"] for r in rows] == ["1", "3/4", "5/6"]
    assert min(F(r["two_sided_success"]) for r in rows) == F(4, 5)


def test_threshold_degenerate(capsys):
    code, _, err = run(capsys, "threshold", "--n", "4", "--t", "0")
    assert code == 2 and "constant" in err


def test_parity(capsys):
    code, out, _ = run(capsys, "parity", "--n", "4", "--format", "json")
    rows = rows_of(out)
    assert code == 0
    assert [r["prob_guess_even"] for r in rows] == ["1", "1/4", "1/2"]
    assert F(rows[0]["worst_case_success"]) >= F(3, 5)


def test_char_and_dims(capsys):
    code, out, _ = run(capsys, "char", "--lambda", "2,1", "--rho", "3", "--format", "json")
    assert code == 0 and rows_of(out) == [{"lambda": "(2,1)", "rho": "(3)", "character": -1}]
    code, out, _ = run(capsys, "dims", "--n", "6", "--format", "csv")
    table = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["dim_two_row"]) for r in table] == [1, 5, 9, 5]
    assert table[2]["partition"] == "(4,2)" and table[2]["hooks"] == "5/4/2/1 2/1"
    assert all(r["agree"] == "true" for r in table)


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--n", "4", "--format", "json")
    rows = rows_of(out)
    assert [(r["l1"], r["success_bound"]) for r in rows] == [("3/2", "7/8"), ("2/3", "2/3")]
    assert all(r["l1_direct_agrees"] for r in rows)


def test_verify_pass_and_fail(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "--n", "3", "--format", "json")
    assert code == 0 and all(r["passed"] for r in rows_of(out))
    code, out, _ = run(capsys, "verify", "--n", "9", "--level", "character", "--format", "json")
    assert code == 0
    code, _, err = run(capsys, "verify", "--n", "9", "--level", "projector")
    assert code == 2
    monkeypatch.setattr(cli, "run_suite", lambda n, level, seed: [CheckResult.exact("broken", 1)])
    code, _, err = run(capsys, "verify", "--n", "3")
    assert code == 1 and "failed" in err


def test_strategy_worst_case(capsys):
    code, out, _ = run(capsys, "strategy", "--n", "4", "--format", "json")
    rows = rows_of(out)
    assert code == 0 and {r["objective"] for r in rows} == {"6/11"}
    for ell in range(3):
        assert sum(F(r[f"O_l{ell}"]) for r in rows) == 1


def test_strategy_bayes_prior_file(capsys, tmp_path):
    prior = tmp_path / "prior.csv"
    prior.write_text("k,weight\n0,0.5\n1,0.25\n2,0.25\n")
    code, out, _ = run(capsys, "strategy", "--n", "4", "--objective", "bayes", "--prior", str(prior), "--format", "json")
    assert code == 0
    rows = rows_of(out)
    assert [[r[f"O_l{ell}"] for ell in range(3)] for r in rows] == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
    # 1/2 + 1/4 * 3/4 + 1/4 * 1/3
    assert rows[0]["objective"] == str(F(1, 2) + F(3, 16) + F(1, 12))


def test_strategy_bayes_uniform_default(capsys):
    code, out, _ = run(capsys, "strategy", "--n", "4", "--objective", "bayes", "--format", "json")
    assert rows_of(out)[0]["objective"] == "25/36"


@pytest.mark.parametrize(
    "content", ["k,weight\n0,abc\n", "0,1,2\n", "0,1\n0,1\n", "0,-1\n1,2\n", "7,1\n", "k,weight\n"]
)
def test_malformed_prior_is_an_error(capsys, tmp_path, content):
    prior = tmp_path / "prior.csv"
    prior.write_text(content)
    code, out, err = run(capsys, "strategy", "--n", "4", "--objective", "bayes", "--prior", str(prior))
    assert code == 2 and out == "" and err


def test_simulate_single_and_sweep(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "4", "--k", "0", "--trials", "100", "--format", "json")
    (row,) = rows_of(out)
    assert code == 0 and row["rate"] == 1.0 and row["theory"] == "1"
    code, out, _ = run(capsys, "simulate", "--n", "6", "--trials", "500", "--task", "parity", "--format", "json")
    assert [r["k"] for r in rows_of(out)] == [0, 1, 2, 3]
    code, _, err = run(capsys, "simulate", "--n", "8", "--k", "1", "--mode", "statevector", "--trials", "5")
    assert code == 2
    code, _, err = run(capsys, "simulate", "--n", "8", "--k", "1", "--task", "threshold")
    assert code == 2 and "--t" in err


def test_json_meta_and_timestamp(capsys):
    _, out, _ = run(capsys, "dist", "--n", "2", "--k", "1", "--format", "json", "--seed", "9")
    meta = json.loads(out)["meta"]
    assert meta["command"] == "dist" and meta["seed"] == 9 and meta["version"] and "timestamp" in meta
    _, out, _ = run(capsys, "dist", "--n", "2", "--k", "1", "--format", "json", "--deterministic")
    assert "timestamp" not in json.loads(out)["meta"]


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--format", "csv", "dist", "--n", "2", "--k", "1")
    assert code == 0 and out.startswith("l,prob")


def test_format_from_environment(capsys, monkeypatch):
    monkeypatch.setenv(cli.FORMAT_ENV, "csv")
    _, out, _ = run(capsys, "dist", "--n", "2", "--k", "1")
    assert out.startswith("l,prob")
    monkeypatch.setenv(cli.FORMAT_ENV, "yaml")
    code, _, err = run(capsys, "dist", "--n", "2", "--k", "1")
    assert code == 2


def test_output_file(capsys, tmp_path):
    target = tmp_path / "table.csv"
    code, out, _ = run(capsys, "dist", "--n", "4", "--k", "1", "--format", "csv", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_bytes().startswith(b"l,prob,prob_decimal\r\n")


def _check_decimal(rational: str, decimal: str):
    x = F(rational)
    d = Decimal(decimal)
    if x == 0:
        assert d == 0
        return
    # half a unit in the 12th significant digit
    exponent = Decimal(abs(x.numerator)).adjusted() - Decimal(x.denominator).adjusted()
    if abs(x) < F(10) ** exponent:
        exponent -= 1
    assert abs(F(d) - x) <= F(10) ** (exponent - 11) / 2


@pytest.mark.parametrize(
    "argv",
    [
        ["dist", "--n", "9", "--k", "4"],
        ["bounds", "--n", "13"],
        ["threshold", "--n", "11", "--t", "3"],
        ["parity", "--n", "13"],
        ["strategy", "--n", "7"],
    ],
)
def test_decimal_cells_reparse(capsys, argv):
    _, out, _ = run(capsys, *argv, "--format", "json")
    for row in rows_of(out):
        for key, value in row.items():
            if key.endswith("_decimal"):
                _check_decimal(row[key[: -len("_decimal")]], value)


def test_to_decimal_rendering():
    assert to_decimal(F(1, 6)) == "0.166666666667"
    assert to_decimal(F(1, 2)) == "0.5"
    assert to_decimal(1) == "1"
    assert to_decimal(F(200)) == "200"
    assert to_decimal(F(-2, 3)) == "-0.666666666667"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hiddenbasis", "dist", "--n", "2", "--k", "1", "--format", "csv"],
        capture_output=True,
        check=True,
    )
    assert proc.stdout == b"l,prob,prob_decimal\r\n0,1/2,0.5\r\n1,1/2,0.5\r\n"
