import json

import pytest

from oreext.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--output", "json")
    return code, json.loads(out)


def test_normalize_jordanian(capsys):
    assert run(capsys, "normalize", "-p", "jordanian", "y*x")[:2] == (0, "x*y + y^2")


def test_normalize_uq(capsys):
    code, out, _ = run(capsys, "normalize", "-p", "uq_sl2", "-q", "3/5+4/5i", "E*F")
    assert code == 0
    assert out == "F*E - 5/8i*K + 5/8i*K^-1"


def test_normalize_free(capsys):
    assert run(capsys, "normalize", "-p", "free2", "x*y")[:2] == (0, "x*y")


def test_flags_before_subcommand(capsys):
    code, doc = run_json(capsys, "-p", "jordanian", "normalize", "y*x")
    assert doc == {"schema": 1, "presentation": "jordanian", "input": "y*x", "result": "x*y + y^2", "terms": 2}


def test_mul(capsys):
    code, doc = run_json(capsys, "mul", "-p", "weyl", "d", "x")
    assert code == 0 and doc["result"] == "x*d + 1"


def test_seminorm(capsys):
    code, out, _ = run(capsys, "seminorm", "-p", "jordanian", "--family", "jordanian_full", "--rho", "1", "y^3")
    assert code == 0 and float(out) == pytest.approx(1 / 6)
    code, out, _ = run(capsys, "seminorm", "-p", "jordanian", "--family", "jordanian_full", "--rho", "1", "0")
    assert float(out) == 0
    code, doc = run_json(
        capsys, "seminorm", "-p", "uq_sl2", "-q", "3/5+4/5i", "--family", "uq_full", "--rho", "3", "K^-2*F*E"
    )
    assert doc["value"] == 1.0 and doc["schema"] == 1


def test_seminorm_mismatch(capsys):
    code, _, err = run(capsys, "seminorm", "-p", "jordanian", "--family", "uq_full", "x")
    assert code == 1 and "does not fit" in err


def test_commute_and_snk(capsys):
    code, doc = run_json(capsys, "commute", "2", "y")
    assert [t["coefficient"] for t in doc["terms"]] == ["y", "-2*y^2", "2*y^3"]
    code, doc = run_json(capsys, "snk", "3", "3", "y")
    assert doc["result"] == "-6*y^4" and doc["agree"] and doc["summands"] == 1
    code, doc = run_json(capsys, "snk", "4", "2", "K*F", "-p", "uq_sl2")
    assert code == 0 and doc["summands"] == 6


def test_verify(capsys):
    code, doc = run_json(capsys, "verify", "jordanian_stability")
    # the bound is attained on monomials, so only float rounding separates the ratio from 1
    assert code == 0 and doc["passed"] and doc["max_ratio"] <= 1 + 1e-9
    code, doc = run_json(capsys, "verify", "uq_delta_closed_form", "-q", "3/5+4/5i")
    assert code == 0 and doc["parameters"]["discrepancies"] == 0
    code, doc = run_json(capsys, "verify", "weyl_identity")
    assert code == 0 and doc["parameters"]["parts"][0]["parameters"]["nmax"] == 30


def test_verify_failure_exit_code(capsys):
    # q = i has q^4 = 1, where the closed form is undefined
    code, doc = run_json(capsys, "verify", "uq_delta_closed_form", "-q", "i")
    assert code == 4 and not doc["passed"]


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "uq_delta_bound", "--seed", "7", "--output", "json")[1]
    second = run(capsys, "verify", "uq_delta_bound", "--seed", "7", "--output", "json")[1]
    assert first == second


def test_irrep_and_envelope(capsys):
    code, doc = run_json(capsys, "irrep", "2")
    assert doc["H"] == [["1", "0"], ["0", "-1"]]
    code, doc = run_json(capsys, "envelope", "E*F - F*E - H", "--lambda-max", "3", "--k-poly", "1,1")
    assert all(x == "0" for b in doc["blocks"] for row in b for x in row)
    assert doc["k_component"] == ["2", "0"]


def test_exit_codes(capsys):
    assert run(capsys, "normalize", "-p", "jordanian", "y*+x")[0] == 3
    assert run(capsys, "normalize", "-p", "nope", "x")[0] == 2
    assert run(capsys, "normalize", "-p", "uq_sl2", "-q", "1+", "E")[0] == 3
    assert run(capsys, "snk", "2", "5", "y")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "bogus"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["normalize", "x", "--fuel", "0"])
    assert info.value.code == 2


def test_parse_error_json(capsys):
    code, doc = run_json(capsys, "normalize", "-p", "jordanian", "x*(y")
    assert code == 3 and doc["error"] == "parse" and doc["schema"] == 1 and "position" in doc


def test_fuel_flag(capsys, tmp_path):
    path = tmp_path / "j.json"
    path.write_text(
        json.dumps(
            {"generators": [{"symbol": "x"}, {"symbol": "y"}], "rules": [{"lhs": ["y", "x"], "rhs": [{"word": "x*y"}, {"word": "y^2"}]}]}
        )
    )
    code, _, err = run(capsys, "normalize", "-p", str(path), "--fuel", "5", "y^5*x^5")
    assert code == 1 and "did not terminate" in err
    code, out, _ = run(capsys, "normalize", "-p", str(path), "y*x")
    assert out == "x*y + y^2"
