import logging

import pytest

from automata.automaton import equivalent
from core.errors import InputError, PresentationError
from geodesics.graph_product import direct_product_wrap, graph_product, infinite_cyclic_geodesics
from groups.amalgam import AmalgamOracle
from groups.braid import BurauOracle
from groups.oracles import AbelianOracle, SubstitutionOracle
from utils.data_handler import (load_dfa, load_expression_text, load_graph, load_presentation, parse_presentation,
                                save_dfa)


def test_genus2_file():
    group = load_presentation("data/genus2.pres")
    assert group.name == "genus2"
    assert group.presentation.relators == (tuple("abABcdCD"),)
    assert isinstance(group.oracle, AmalgamOracle)


def test_substitution_directive():
    group = load_presentation("data/free4_elim.pres")
    assert isinstance(group.oracle, SubstitutionOracle)
    assert group.oracle.normal_form(tuple("baadSCR")) == group.oracle.identity()


def test_abelian_orders():
    group = load_presentation("data/cyclic6.pres")
    assert isinstance(group.oracle, AbelianOracle)
    assert group.oracle.equal(tuple("aaaa"), tuple("AA"))


def test_relators_are_reduced_with_a_warning(caplog):
    with caplog.at_level(logging.WARNING):
        group = parse_presentation("gens: a b\nrel: aabABA\noracle: abelian")
    assert group.presentation.relators == (tuple("abAB"),)
    assert "reduced" in caplog.text


def test_bad_line_reports_its_number():
    with pytest.raises(PresentationError, match=":2:"):
        parse_presentation("gens: a b\nrelator abAB", name="bad")


def test_relator_with_unknown_letter():
    with pytest.raises(PresentationError):
        parse_presentation("gens: a b\nrel: abc\noracle: free")


def test_missing_generators():
    with pytest.raises(PresentationError, match="gens"):
        parse_presentation("rel: ab")


def test_relator_must_hold_in_the_oracle():
    with pytest.raises(PresentationError):
        parse_presentation("gens: a b\nrel: abAB\noracle: free")


def test_path_graph_file():
    graph, dfas = load_graph("data/graphs/path3.graph")
    assert sorted(graph.nodes) == ["a", "b", "c"]
    assert sorted(tuple(sorted(e)) for e in graph.edges) == [("a", "b"), ("b", "c")]
    assert equivalent(dfas["b"], infinite_cyclic_geodesics("b", "B"))


def test_colliding_alphabets_are_renamed(caplog):
    with caplog.at_level(logging.WARNING):
        graph, dfas = load_graph("data/graphs/free_product.graph")
    assert dfas["x"].alphabet.symbols == ("a", "A")
    assert dfas["y"].alphabet.symbols == ("a_y", "A_y")
    assert dfas["y"].alphabet.inverse("a_y") == "A_y"
    assert "renaming" in caplog.text


def test_edge_to_undeclared_vertex(tmp_path):
    path = tmp_path / "bad.graph"
    path.write_text("a -- b\n", encoding="utf-8")
    with pytest.raises(InputError, match="undeclared"):
        load_graph(str(path))


def test_dfa_file_errors(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"alphabet": ["a"],\n "start": }', encoding="utf-8")
    with pytest.raises(InputError, match=":2:"):
        load_dfa(str(broken))
    with pytest.raises(InputError, match="cannot read"):
        load_dfa(str(tmp_path / "missing.json"))


def test_saved_dfa_loads_back(tmp_path):
    d = infinite_cyclic_geodesics("a", "A")
    path = str(tmp_path / "out" / "z.json")
    save_dfa(path, d)
    assert load_dfa(path) == d


def test_expression_file_skips_comments():
    assert load_expression_text("data/free2_reduced.expr") == "!(!0.{aA, Aa, bB, Bb}.!0)"


def test_b3_file_uses_burau_matrices():
    group = load_presentation("data/b3.pres")
    assert isinstance(group.oracle, BurauOracle)
    assert group.oracle.equal(tuple("aba"), tuple("bab"))


def test_edge_graph_gives_the_direct_product():
    graph, dfas = load_graph("data/graphs/z2.graph")
    result = graph_product(graph, dfas)
    assert equivalent(result.dfa, direct_product_wrap(dfas["a"], dfas["b"]))


def test_abelian_relator_must_respect_the_orders():
    with pytest.raises(PresentationError, match="not trivial"):
        parse_presentation("gens: a\nrel: aa\noracle: abelian")
    group = parse_presentation("gens: a\norder: a 2\nrel: aa\noracle: abelian")
    assert group.oracle.equal(tuple("a"), tuple("A"))
