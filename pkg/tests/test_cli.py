import json

import pytest

from main import run


def output(capsys):
    captured = capsys.readouterr()
    return captured.out, captured.err


def test_starfree_on_parity(capsys):
    assert run(["starfree", "--dfa", "data/parity.json"]) == 0
    out, _ = output(capsys)
    assert "star-free: no" in out
    assert "u=ε v=a k=2 w=ε" in out


def test_starfree_json(capsys):
    assert run(["starfree", "--dfa", "data/parity.json", "--json"]) == 0
    report = json.loads(output(capsys)[0])
    assert report["star_free"] is False
    assert report["witness"] == {"u": [], "v": ["a"], "k": 2, "w": []}


def test_sc_check_genus2(capsys):
    assert run(["sc-check", "--pres", "data/genus2.pres", "--lambda", "1/6"]) == 0
    assert "C'(1/6): pass" in output(capsys)[0]


def test_sc_check_failure_exits_one(capsys):
    assert run(["sc-check", "--pres", "data/z2.pres", "--lambda", "1/4", "--q", "4"]) == 1
    out, _ = output(capsys)
    assert "C'(1/4): fail" in out
    assert "T(4): pass" in out


def test_bad_lambda(capsys):
    assert run(["sc-check", "--group", "genus2", "--lambda", "one sixth"]) == 2
    assert output(capsys)[1].startswith("error:")


def test_geodesic(capsys):
    assert run(["geodesic", "--group", "b3", "abAB"]) == 0
    assert "distance 2, not geodesic" in output(capsys)[0]


def test_probe_garside(capsys):
    assert run(["probe", "--group", "b3-garside", "-u", "ba", "-v", "aba", "-w", "a", "-n", "4"]) == 0
    assert "10101 (alternating)" in output(capsys)[0]


def test_ball_growth(capsys):
    assert run(["ball", "--group", "free2", "--radius", "2", "--json"]) == 0
    assert json.loads(output(capsys)[0])["sphere_sizes"] == [1, 4, 12]


def test_budget_exit_code(capsys):
    assert run(["ball", "--group", "free2", "--radius", "5", "--max-elements", "100"]) == 3
    assert "ball_max_elements" in output(capsys)[1]


def test_missing_file_exit_code(capsys):
    assert run(["starfree", "--dfa", "data/no_such_file.json"]) == 2
    assert "error: " in output(capsys)[1]


def test_usage_error():
    assert run([]) == 2
    assert run(["ball", "--group", "free2"]) == 2


def test_abelian_pe(capsys):
    assert run(["abelian-pe", "--group", "z-pm", "--json"]) == 0
    assert json.loads(output(capsys)[0])["excluded"] == [["a", "b"], ["b", "a"]]


def test_verify(capsys, tmp_path):
    out_path = str(tmp_path / "z2.json")
    assert run(["abelian-pe", "--group", "z2", "--out", out_path]) == 0
    capsys.readouterr()
    assert run(["verify", "--group", "z2", "--dfa", out_path, "--maxlen", "5"]) == 0
    assert "matched" in output(capsys)[0]


def test_verify_mismatch_exits_one(capsys):
    assert run(["verify", "--group", "z", "--dfa", "data/graphs/z_a.json", "--maxlen", "3"]) == 0
    capsys.readouterr()
    assert run(["verify", "--group", "z", "--dfa", "data/parity.json", "--maxlen", "3"]) == 1
    assert "mismatch on a: automaton rejects, word is geodesic" in output(capsys)[0]


def test_verify_foreign_symbols(capsys):
    assert run(["verify", "--group", "z", "--dfa", "data/graphs/z_b.json"]) == 2


def test_vab_check(capsys):
    assert run(["vab-check", "--group", "dinf", "--x", "t,T", "--y", "s"]) == 0
    assert "|G:N| = 2" in output(capsys)[0]
    assert run(["vab-check", "--group", "dinf", "--x", "t", "--y", "s"]) == 1


def test_vab_check_needs_a_subgroup(capsys):
    assert run(["vab-check", "--group", "free2", "--x", "a,A", "--y", "b,B"]) == 2


def test_graphprod(capsys):
    assert run(["graphprod", "--graph", "data/graphs/path3.graph"]) == 0
    assert "graph product:" in output(capsys)[0]


def test_compile_expr(capsys):
    assert run(["compile-expr", "--gens", "ab", "--file", "data/free2_reduced.expr"]) == 0
    assert output(capsys)[0].startswith("6 states")


def test_compile_expr_syntax_error(capsys):
    assert run(["compile-expr", "--gens", "ab", "a.*"]) == 2
    assert "position" in output(capsys)[1]


def test_monoid(capsys):
    assert run(["monoid", "--dfa", "data/parity.json", "--json", "--table"]) == 0
    result = json.loads(output(capsys)[0])
    assert result["size"] == 2
    assert result["table"] == [[0, 1], [1, 0]]
    assert result["aperiodic"] is False


def test_repro_single(capsys):
    assert run(["repro", "--only", "b3-garside"]) == 0
    assert "[PASS] b3-garside" in output(capsys)[0]


@pytest.mark.parametrize("command", ["minimize", "starfree", "sc-check", "probe", "graphprod", "repro"])
def test_help(command, capsys):
    assert run([command, "--help"]) == 0
    assert "usage:" in output(capsys)[0]
