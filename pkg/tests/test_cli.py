import json
import subprocess
import sys

import pytest

from cda.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, ParseError, main, parse_bounds, run

SYM_236 = json.dumps({"epsilon": 1, "arms": [{"p": 2}, {"p": 3}, {"p": 6}]})
RC = json.dumps({"epsilon": 1, "arms": [{"p": 2, "e": 1, "f": 2}]})


def checks(out):
    return {c["name"]: c["pass"] for c in out["checks"]}


def test_symbol_command():
    code, out = run(["symbol", SYM_236])
    assert code == EXIT_OK and out["ok"]
    assert out["results"]["delta"] == 0
    assert out["results"]["signature"] == [8, 2, 0]
    assert out["results"]["rep_type"] == "tubular"
    code, out = run(["symbol", RC])
    assert code == EXIT_OK
    assert out["results"]["delta"] == -2 and out["results"]["rep_type"] == "domestic"


def test_symbol_matrices_are_exact_strings():
    _, out = run(["symbol", RC])
    m = out["matrices"]["gram_canonical_basis"]
    assert m["entries"] == [["1", "2", "2"], ["0", "2", "2"], ["0", "0", "1"]]


@pytest.mark.parametrize(
    "argv,where",
    [
        (["symbol", "{not json"], "line 1 column 2"),
        (["symbol", '{"arms": 3}'], "$.arms"),
        (["symbol", '{"arms": [{"p": "2"}]}'], "$.arms[0].p"),
        (["tilt", '{"weights": [2, 2], "lambdas": ["0", "1", "2"]}'], "$.weights"),
        (["tilt", '{"weights": [1, 2], "lambdas": ["0", "1"]}'], "$.weights[0]"),
        (["tilt", '{"weights": [2, 2], "lambdas": ["0", "0"]}'], "$.lambdas"),
        (["tilt", '{"weights": [2, 2], "lambdas": ["0", "inf"]}'], "$.lambdas"),
        (["tilt", '{"weights": [2], "lambdas": ["0"]}', "--field", "Fp:6"], "--field"),
        (["sweep", '{"max_rank": 99}'], "$.max_rank"),
        (["sweep", '{"instances": {"tilt": 1}}'], "$.instances.tilt"),
        (["symbol"], "$"),
    ],
)
def test_input_errors_exit_two(argv, where, capsys):
    code, out = run(argv)
    assert code == EXIT_INPUT and out is None
    err = capsys.readouterr().err
    assert f"input error at {where}" in err


def test_missing_file(tmp_path, capsys):
    assert main(["symbol", "--json", str(tmp_path / "nope.json")]) == EXIT_INPUT
    assert "cannot read" in capsys.readouterr().err


def test_json_file_and_out(tmp_path):
    src = tmp_path / "in.json"
    src.write_text(SYM_236)
    dst = tmp_path / "out.json"
    code, out = run(["symbol", "--json", str(src), "--out", str(dst)])
    assert code == EXIT_OK
    assert json.loads(dst.read_text()) == out


def test_lattice_verify_symbol_and_bounds():
    code, out = run(["lattice-verify", SYM_236])
    assert code == EXIT_OK
    assert checks(out)["all lattice checks pass"] and out["results"]["index_conventions"] == ["1..p-1"]
    code, out = run(["lattice-verify", '{"max_rank": 5, "max_d": 2}'])
    assert code == EXIT_OK and out["results"]["symbols"] > 0


def test_congruence_command():
    code, out = run(["congruence", SYM_236])
    assert code == EXIT_OK
    assert out["results"]["lemma_table_differences"]
    # a single arm of weight 3 violates the cd dimension condition, so cd is skipped
    code, out = run(["congruence", '{"epsilon": 1, "arms": [{"p": 3}]}'])
    assert code == EXIT_OK


@pytest.mark.parametrize("target", ["cd", "canonical"])
def test_tilt_two_points(target):
    code, out = run(["tilt", '{"weights": [2, 2], "lambdas": ["0", "1"]}', "--target", target])
    assert code == EXIT_OK
    c = checks(out)
    assert c["end_dims equals target Cartan"] and c["base change carries Euler form to target"]
    assert out["matrices"]["end_dims"] == out["matrices"]["target_cartan"]


def test_tilt_cd_ext2():
    code, out = run(["tilt", '{"weights": [2, 3, 4], "lambdas": ["0", "1", "3"]}'])
    assert code == EXIT_OK
    assert checks(out)["Ext^2(S_F, S_G) over B has dim 2"]


def test_tilt_canonical_three_points_is_cotilting_only():
    code, out = run(["tilt", '{"weights": [2, 2, 2], "lambdas": ["0", "1", "2"]}', "--target", "canonical"])
    assert code == EXIT_FAIL
    c = checks(out)
    assert not c["classical tilting (pd <= 1)"]
    assert c["end_dims equals target Cartan"]
    assert out["results"]["cotilting"] and out["results"]["self_ext_vanishes"]


def test_tilt_conditions_fail_for_one_point():
    code, _ = run(["tilt", '{"weights": [3], "lambdas": ["0"]}'])
    assert code == EXIT_FAIL


def test_tilt_over_prime_field():
    code, out = run(["tilt", '{"weights": [2, 3, 4], "lambdas": ["0", "1", "3"]}', "--field", "Fp:101"])
    assert code == EXIT_OK
    code, _ = run(["tilt", '{"weights": [2, 2, 2], "lambdas": ["0", "1", "2"], "field": {"Fp": 7}}'])
    assert code == EXIT_OK


def test_sweep_finds_tubular_and_is_deterministic(monkeypatch, capsys):
    bounds = '{"max_rank": 8, "max_d": 1, "instances": {"max_t": 3, "max_p": 3, "points": ["0", "1", "2"]}}'
    monkeypatch.setenv("CDA_THREADS", "1")
    code, out = run(["sweep", bounds])
    first = capsys.readouterr().out
    assert code == EXIT_OK
    assert out["results"]["tubular_symbols"] >= 1
    monkeypatch.setenv("CDA_THREADS", "4")
    code2, _ = run(["sweep", bounds])
    assert code2 == code and capsys.readouterr().out == first


def test_sweep_with_tilt_reports_canonical_failures():
    bounds = '{"instances": {"max_t": 3, "max_p": 2, "points": ["0", "1", "2"], "tilt": true}}'
    code, out = run(["sweep", bounds])
    assert code == EXIT_FAIL
    failed = {f["check"] for f in out["results"]["failures"]}
    assert failed and all("classical tilting" in f for f in failed)


def test_sweep_empty_bounds_is_vacuous():
    code, out = run(["sweep", "{}"])
    assert code == EXIT_OK
    assert out["results"]["symbols"] == 0 and out["results"]["instances"] == 0


def test_parse_bounds_defaults():
    b = parse_bounds({})
    assert b["max_d"] == 1 and b["instances"]["max_p"] == 2
    with pytest.raises(ParseError):
        parse_bounds([])


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cda.cli", "symbol", RC], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["delta"] == -2
