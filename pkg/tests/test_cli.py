import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from eqlines.cli import main
from eqlines.exact import rational_from_string

DATA = Path(__file__).resolve().parent.parent / "data"


def run(argv):
    out = io.StringIO()
    code = main(argv, stdout=out)
    return code, out.getvalue()


def envelope(argv):
    code, text = run(argv)
    assert code == 0
    return json.loads(text)


def by_method(env):
    return {b["method"]: b for b in env["results"]["bounds"]}


def test_bound_all():
    env = envelope(["bound", "--n", "23", "--alpha", "1/3", "--method", "all"])
    b = by_method(env)
    assert b["gerzon"]["value"]["exact"] == "276"
    assert not b["lemmens_seidel"]["applicable"]
    assert b["okuda_yu"]["value"]["exact"] == "58"
    assert b["okuda_yu_integer_l"]["value"]["exact"] == "58"
    assert env["results"]["best"]["exact"] == "58"
    assert env["command"] == "bound" and env["parameters"]["alpha"] == "1/3"


def test_bound_ls_with_decimal_alpha():
    env = envelope(["bound", "--n", "23", "--alpha", "0.2", "--method", "ls"])
    assert by_method(env)["lemmens_seidel"]["value"]["exact"] == "276"


def test_bound_rejects_small_n(capsys):
    code, _ = run(["bound", "--n", "2", "--alpha", "1/3", "--method", "okuda-yu"])
    assert code == 2
    assert "n must be >= 3" in capsys.readouterr().err


def test_bad_rational_is_a_parse_error():
    with pytest.raises(SystemExit) as exc:
        run(["bound", "--n", "5", "--alpha", "1/0"])
    assert exc.value.code == 2


def test_exact_strings_round_trip():
    env = envelope(["bound", "--n", "3", "--alpha", "9/10", "--method", "okuda-yu"])
    value = by_method(env)["okuda_yu"]["value"]
    assert rational_from_string(value["exact"]) == Fraction(20521, 6831)
    assert isinstance(value["approx"], float)


def test_table_rows_and_formats():
    env = envelope(["table", "--k-min", "2", "--k-max", "5", "--format", "json"])
    rows = env["results"]["rows"]
    assert [rows[0][f] for f in ("n_k", "alpha_k", "bound", "tight_cardinality", "verdict")] == \
        [23, "1/3", "58", 100, "nonexistent"]
    assert [rows[1][f] for f in ("n_k", "alpha_k", "bound", "tight_cardinality")] == \
        [71, "1/5", "416", 876]
    code, text = run(["table", "--k-min", "2", "--k-max", "5", "--format", "csv"])
    assert code == 0
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert [{k: str(v) for k, v in r.items()} for r in rows] == parsed
    code, text = run(["table", "--k-min", "2", "--k-max", "3"])
    assert code == 0 and "nonexistent" in text


def test_table_bad_range():
    assert run(["table", "--k-min", "1", "--k-max", "3"])[0] == 2
    assert run(["table", "--k-min", "5", "--k-max", "3"])[0] == 2


def test_lp_minimal():
    env = envelope(["lp", "--n", "23", "--alpha", "1/3", "--minimal", "--tol", "1/1048576"])
    res = env["results"]
    upper = rational_from_string(res["upper"]["exact"])
    assert 58 - Fraction(1, 2**20) <= upper <= 58
    assert res["proof_replay"]["ok"]
    assert res["triangle_bound"]["upper_certificate"]["multipliers"]


def test_lp_more_constraints_not_worse():
    minimal = envelope(["lp", "--n", "23", "--alpha", "1/3", "--minimal"])
    full = envelope(["lp", "--n", "23", "--alpha", "1/3", "--lmax-s", "6", "--imax-s", "3"])
    assert rational_from_string(full["results"]["upper"]["exact"]) <= \
        rational_from_string(minimal["results"]["upper"]["exact"])


def test_lp_resource_cap_exit_code():
    assert run(["lp", "--n", "23", "--alpha", "1/3", "--max-pivots", "1"])[0] == 3


def test_lp_minimal_rejects_other_beta():
    assert run(["lp", "--n", "23", "--alpha", "1/3", "--beta", "1/5", "--minimal"])[0] == 2


def test_check_s1_pair():
    res = envelope(["check", "--file", str(DATA / "s1_pair.json"), "--t", "4"])["results"]
    assert res["design_test"]["is_design"]
    assert res["tightness"]["is_tight"]
    assert not res["tightness"]["contradicts_nonexistence"]


def test_check_simplex():
    res = envelope(["check", "--file", str(DATA / "simplex_n4.json"), "--t", "2"])["results"]
    assert res["design_test"]["is_design"]
    assert res["design_test"]["kernel_sum"] == "0"


def test_check_lines28():
    res = envelope(["check", "--file", str(DATA / "lines28_gram.json")])["results"]
    assert res["profile"]["equiangular_alpha"] == "1/3"
    assert res["profile"]["rank"] == 7


def test_check_schema_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dimension": 2, "points": [[1, 0], [1, "q"]]}))
    assert run(["check", "--file", str(bad)])[0] == 2
    assert "points[1][1]" in capsys.readouterr().err
    broken = tmp_path / "broken.json"
    broken.write_text("{\n  \"points\": [\n")
    assert run(["check", "--file", str(broken)])[0] == 2
    assert "line" in capsys.readouterr().err
    assert run(["check", "--file", str(tmp_path / "missing.json")])[0] == 2


def test_deterministic_modulo_timing():
    argv = ["lp", "--n", "11", "--alpha", "1/2", "--minimal"]
    a, b = envelope(argv), envelope(argv)
    a.pop("timing"), b.pop("timing")
    assert a == b
