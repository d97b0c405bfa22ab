import json

import pytest

from cofibred.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def structured(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "structured")
    return code, json.loads(out)


def test_minimal_yes_and_no(capsys):
    code, out, _ = run(capsys, "minimal", "z^2", "z^3")
    assert code == 0 and out.startswith("verdict: yes") and "H: z^6" in out
    code, _, _ = run(capsys, "minimal", "z + 1/z", "(1 - z)/(z^4 - 1)")
    assert code == 1


def test_structured_output_shape(capsys):
    code, doc = structured(capsys, "minimal", "z + 1/z", "(1 - z)/(z^4 - 1)")
    assert set(doc) == {"version", "tool_version", "command", "field", "verdict", "exit_code", "result"}
    assert doc["command"] == "minimal" and doc["verdict"] == "no" and doc["exit_code"] == code == 1
    assert doc["field"] == "Q"


def test_undecided_exit_code(capsys):
    code, out, _ = run(capsys, "deck", "z^4")
    assert code == 2 and out.startswith("verdict: lower_bound")
    code, doc = structured(capsys, "deck", "z^4", "--field", "Q(zeta_4)")
    assert code == 0 and doc["field"] == "Q(zeta_4)"


def test_infinite_closure_is_negative(capsys):
    code, out, _ = run(capsys, "closure", "1/z", "(z - 2)/(z - 1)")
    assert code == 1 and "infinite_group" in out
    code, out, _ = run(capsys, "closure", "--", "1/z", "-z")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["compositum", "z +", "z^2"],
        ["minimal", "z^2", "z + x"],
        ["minimal", "z^2", "z", "--field", "R"],
        ["nonexistent"],
        ["minimal", "z^2"],
    ],
)
def test_usage_and_parse_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 3


def test_parse_error_reports_position(capsys):
    code, out, err = run(capsys, "compositum", "z +", "z^2")
    assert code == 3 and "position 3" in out + err


@pytest.mark.parametrize(
    "primary, alias, args, expected",
    [
        ("galois-pair", "thm1", ["z^2", "z^3 + 1", "z", "z^3 + 1", "--field", "Q(zeta_3)"], 0),
        ("normal-form", "thm2", ["z^2*(z^3 + 2)", "3", "--field", "Q(zeta_3)"], 0),
        ("obstruction", "thm5", ["z^2", "z^2*(z - 1)"], 0),
        ("semiconjugacy", "thm8", ["z^2", "2*(z^3 + z)", "4*(z^3 + 2*z^2 + z)", "z^2"], 0),
    ],
)
def test_named_commands_and_aliases_agree(capsys, primary, alias, args, expected):
    c1, d1 = structured(capsys, primary, *args)
    c2, d2 = structured(capsys, alias, *args)
    assert c1 == c2 == expected
    assert d1["result"] == d2["result"] and d1["verdict"] == d2["verdict"]


def test_obstruction_absent_is_negative(capsys):
    code, out, _ = run(capsys, "obstruction", "z^2", "z^3")
    assert code == 1 and out.startswith("verdict: no_obstruction")


def test_series_commands(capsys):
    code, doc = structured(capsys, "boettcher", "z^2 + z^3", "--truncation", "6")
    assert code == 0
    code, doc = structured(capsys, "transition", "z^3 + z^4", "--truncation", "8")
    assert code == 0


def test_other_commands_run(capsys):
    assert run(capsys, "compositum", "z^2", "z^3")[0] == 0
    assert run(capsys, "member", "z^6", "z^2")[0] == 0
    assert run(capsys, "galois", "z + 1/z")[0] == 0
    assert run(capsys, "galois", "(1 - z)/(z^4 - 1)")[0] == 1
    assert run(capsys, "solve", "z^2", "z^3")[0] == 0


@pytest.mark.parametrize("name", ["groups", "chebyshev.yaml"])
def test_corpus_builtin(capsys, name):
    code, out, _ = run(capsys, "corpus", name)
    assert code == 0 and out.startswith("verdict: pass")


def test_corpus_default_runs_everything(capsys):
    code, doc = structured(capsys, "corpus")
    assert code == 0
