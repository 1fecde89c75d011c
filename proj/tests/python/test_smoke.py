from pathlib import Path

import pytest

import divseq

SPECS = Path(__file__).resolve().parents[2] / "specs"


def test_factor():
    r = divseq.factor("T^4 - 1")
    assert r["constant"] == "1"
    assert [f["text"] for f in r["factors"]] == ["T - 1", "T + 1", "T^2 + 1"]
    assert r["factors"][2]["coeffs"] == ["1", "0", "1"]


def test_lucas_terms_match_cli():
    terms = divseq.lucas_terms(9, f="T^2 + 2", g="1")
    assert terms[0]["text"] == "1"
    assert terms[3]["text"] == "(T^2 + 3)*(T^4 + 4*T^2 + 5)"
    code, out, _ = divseq.run_command(["lucas", "gen", "--spec", str(SPECS / "fib-like.spec"), "--n-max", "9"])
    assert code == 0
    assert out.splitlines()[8] == "L_9 = " + terms[8]["text"]


def test_amenability():
    r = divseq.amenability(s="2*T", q="1")
    assert r["case"] == 2
    assert r["verdict"] is False
    assert r["conditions"][0]["detail"] == "s^2 - 4q = 4*(T^2 - 1), degree 2"


def test_division_polynomial():
    r = divseq.division_polynomial(["0", "0", "0", "-7", "6"], 3)
    assert r["p"] == "3*x^4 - 42*x^2 + 72*x - 49"
    assert divseq.division_polynomial(["0", "0", "0", "-7", "6"], 4)["psi2_factor"] is True


def test_structured_wrappers():
    d = divseq.eds_divisor(SPECS / "split.spec", 1)
    assert d["degree"] == 6
    assert d["components"][0]["place"] == "u^3 + 2"
    survey = divseq.lucas_survey(SPECS / "fib-like.spec", 20)
    assert survey["command"] == "lucas survey"


def test_errors():
    with pytest.raises(divseq.InputError, match="column 6"):
        divseq.factor("T^4+5T^2+7")
    with pytest.raises(ValueError):
        divseq.lucas_terms(3, f="T", g="T")
    with pytest.raises(divseq.UnsupportedInput):
        divseq.structured("lucas", "survey", "--spec", str(SPECS / "quadratic.spec"), "--q-max", "20")
    assert issubclass(divseq.ResourceLimit, divseq.Error)
