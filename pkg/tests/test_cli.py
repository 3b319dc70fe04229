import csv
import io
import json
import math
import subprocess
import sys

import pytest

from lemniscatic import extensions as ext
from lemniscatic.cli import main, parse_complex
from lemniscatic.ivp_series import eval_s

from .conftest import OMEGA_REF


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def run_csv(*argv):
    code, text = run("--format", "csv", *argv)
    return code, list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize(
    "text, value",
    [
        ("1", 1 + 0j),
        ("-2.5", -2.5 + 0j),
        ("3i", 3j),
        ("i", 1j),
        ("-i", -1j),
        ("1+2i", 1 + 2j),
        ("1-2i", 1 - 2j),
        ("-.5-1e-3i", -0.5 - 0.001j),
        ("1.5e2+i", 150 + 1j),
    ],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "1 + 2i", "2j", "abc", "1+", "i1"])
def test_parse_complex_rejects(text):
    with pytest.raises(Exception):
        parse_complex(text)


def test_constants():
    code, rec = run_json("constants")
    assert code == 0
    assert abs(rec["omega"] - 1.85407467730) < 1e-10
    assert abs(rec["picard_radius"] - 4 / 27) < 1e-12
    assert rec["g2"] == 1 and rec["g3"] == 0
    assert abs(rec["omega_over_sqrt2"] - OMEGA_REF / math.sqrt(2)) < 1e-12
    code, rows = run_csv("constants")
    assert {r["name"] for r in rows} >= {"omega", "picard_radius", "g3"}


def test_eval_examples(ctx):
    assert run_json("eval", "--fn", "c", "--z", "0")[1]["value"] == [1.0, 0.0]
    code, rec = run_json("eval", "--fn", "wp", "--z", "1.85407467730")
    assert code == 0
    assert abs(rec["value"][0] - 0.5) < 1e-9 and rec["value"][1] == 0
    rec = run_json("eval", "--fn", "S", "--z", "0.1")[1]
    assert rec["value"][0] == float(f"{ext.S_eval(ctx, 0.1).real:.15g}")


def test_eval_negative_and_digits():
    code, rec = run_json("--digits", "5", "eval", "--fn", "s", "--z=-0.5")
    assert code == 0
    assert rec["value"] == [-0.49539, 0.0]
    code, rows = run_csv("eval", "--fn", "P", "--z", "0.3+0.4i", "--digits", "17")
    assert code == 0 and len(rows) == 1


def test_eval_series_far_out_picks_order(tp):
    # 1.2 needs more than the default 128 terms for a 1e-13 tail
    code, rec = run_json("eval", "--fn", "s", "--z", "1.2")
    assert code == 0
    assert abs(rec["value"][0] - 0.9560378063910032) < 1e-12


def test_eval_errors(capsys):
    code, _ = run("eval", "--fn", "S", "--z", "0.9270373386506859+0.9270373386506859i")
    assert code == 3
    assert "nearest singular point" in capsys.readouterr().err
    assert run("eval", "--fn", "s", "--z", "1.3")[0] == 3
    assert run("eval", "--fn", "wp", "--z", "0")[0] == 3


def test_usage_errors(capsys):
    for argv in (
        ["eval", "--fn", "s", "--z", "1 + i"],
        ["eval", "--fn", "tan", "--z", "1"],
        ["--digits", "18", "constants"],
        ["bogus"],
    ):
        with pytest.raises(SystemExit) as info:
            main(argv, out=io.StringIO())
        assert info.value.code == 2
    assert run("grid", "--fn", "S", "--points", "1")[0] == 2
    assert run("coeffs", "--n", "0")[0] == 2
    assert run("poles", "--m", "1", "0")[0] == 2


def test_grid_basic():
    code, rows = run_csv("grid", "--fn", "C", "--points", "2", "--half-width", "0.1")
    assert code == 0 and len(rows) == 4
    assert all(abs(float(r["re_f"]) - 1) < 1e-3 and r["excluded"] == "0" for r in rows)
    code, payload = run_json("grid", "--fn", "C", "--points", "3")
    assert len(payload) == 9 and all(len(p) == 4 for p in payload)


def test_grid_excludes_pole(ctx):
    h = 0.5 * ctx.omega
    code, rows = run_csv(
        "grid", "--fn", "S", "--center", f"{h!r}+{h!r}i", "--half-width", "0.2", "--points", "5", "--exclusion", "0.05"
    )
    assert code == 0 and len(rows) == 25
    excluded = [r for r in rows if r["excluded"] == "1"]
    assert len(excluded) == 1
    assert excluded[0]["re_f"] == "" and excluded[0]["im_f"] == ""
    z = complex(float(excluded[0]["re_z"]), float(excluded[0]["im_z"]))
    assert abs(z - complex(h, h)) < 1e-12


def test_grid_series_matches_library(tp):
    code, rows = run_csv("grid", "--fn", "s", "--half-width", "0.35", "--points", "5", "--digits", "17")
    assert code == 0
    for r in rows:
        z = complex(float(r["re_z"]), float(r["im_z"]))
        v = complex(float(r["re_f"]), float(r["im_f"]))
        assert abs(v - eval_s(tp, z)) < 1e-15


def test_coeffs():
    code, rows = run_csv("coeffs", "--n", "5")
    assert code == 0 and len(rows) == 6
    assert float(rows[5]["a_n"]) == -0.15
    assert float(rows[4]["b_n"]) == -0.25
    code, rows = run_csv("coeffs", "--n", "1")
    assert float(rows[1]["a_n"]) == 1 and float(rows[0]["b_n"]) == 1
    code, rec = run_json("coeffs", "--n", "9")
    assert rec["n"] == list(range(10)) and rec["a"][9] == pytest.approx(57 / 1440, rel=1e-15)


def test_poles():
    code, rows = run_csv("poles", "--m", "0", "0", "--n", "0", "0")
    assert code == 0 and len(rows) == 4
    assert all(abs(abs(complex(float(r["re"]), float(r["im"]))) - OMEGA_REF / math.sqrt(2)) < 1e-13 for r in rows)
    code, pts = run_json("poles", "--m", "-1", "1", "--n", "0", "1")
    assert len(pts) == 24


def test_verify_single_and_list():
    code, reports = run_json("verify", "--suite", "quartic")
    assert code == 0 and len(reports) == 1 and reports[0]["passed"]
    code, reports = run_json("verify", "--suite", "thm6_C,thm7_S", "--suite", "wp_antisym")
    assert [r["suite"] for r in reports] == ["thm6_C", "thm7_S", "wp_antisym"]


def test_verify_failure_exit_and_csv():
    code, rows = run_csv("verify", "--suite", "quartic", "--tol", "quartic=1e-30")
    assert code == 1
    assert rows[0]["passed"] == "false"


def test_verify_unknown(capsys):
    code, _ = run("verify", "--suite", "bogus")
    assert code == 2
    assert "quartic" in capsys.readouterr().err
    assert run("verify", "--suite", "quartic", "--tol", "bogus=1")[0] == 2


def test_verify_all_with_override():
    code, reports = run_json("verify", "--suite", "all", "--tol", "sd_oracle=1e-8")
    assert code == 0 and len(reports) == 20
    assert {r["suite"]: r["tolerance"] for r in reports}["sd_oracle"] == 1e-8


@pytest.mark.parametrize(
    "argv",
    [
        ["constants"],
        ["--format", "csv", "grid", "--fn", "P", "--points", "4"],
        ["coeffs", "--n", "40"],
        ["verify", "--suite", "reality,briot_bouquet"],
    ],
)
def test_output_is_byte_identical(argv):
    assert run(*argv) == run(*argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lemniscatic", "eval", "--fn", "c", "--z", "0"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == [1.0, 0.0]
