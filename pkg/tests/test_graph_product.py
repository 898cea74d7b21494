import networkx as nx
import pytest

from automata.alphabet import Alphabet
from automata.automaton import Dfa, equivalent, from_words, minimize, restrict, universal_dfa
from automata.expr import compile_expr, reduced_words
from automata.starfree import has_powered_circuit, is_star_free
from core.errors import AlphabetOverlapError, NotMinimalError, NotPrefixClosedError
from geodesics.abelian import abelian_pe
from geodesics.ball import Budgets, GeodesicTester
from geodesics.graph_product import direct_product_wrap, graph_product, infinite_cyclic_geodesics
from geodesics.probe import verify_language
from groups.catalog import free_abelian, path_raag, z3_times_z
from groups.oracles import AbelianOracle

ROOMY = Budgets(max_elements=2_000_000, max_depth=14)
AB = Alphabet.from_letters("ab")


def z_vertices(*letters):
    return {x: infinite_cyclic_geodesics(x, x.upper()) for x in letters}


def test_free_product_gives_reduced_words():
    graph = nx.Graph()
    graph.add_nodes_from("ab")
    result = graph_product(graph, z_vertices("a", "b"))
    assert equivalent(result.dfa, compile_expr(reduced_words(AB), AB))


def test_direct_product_matches_wrap_and_abelian():
    graph = nx.Graph([("a", "b")])
    vertices = z_vertices("a", "b")
    result = graph_product(graph, vertices)
    assert equivalent(result.dfa, direct_product_wrap(vertices["a"], vertices["b"]))
    assert equivalent(result.dfa, abelian_pe(free_abelian(2).oracle, budgets=ROOMY).dfa)


def test_path_graph_matches_raag():
    group = path_raag(3)
    result = graph_product(group.oracle.graph, z_vertices("a", "b", "c"))
    report = verify_language(result.dfa, GeodesicTester(group.oracle, budgets=ROOMY), 7)
    assert report.matched
    assert is_star_free(result.dfa)


def test_hats_are_minimal_without_powered_circuits():
    result = graph_product(nx.path_graph(["a", "b", "c"]), z_vertices("a", "b", "c"))
    assert set(result.hats) == {"a", "b", "c"}
    for f in result.hats.values():
        assert minimize(f).n_states == f.n_states
        assert has_powered_circuit(f) is None


def test_restriction_recovers_vertex_language():
    vertices = z_vertices("a", "b", "c")
    result = graph_product(nx.path_graph(["a", "b", "c"]), vertices)
    for d in vertices.values():
        assert equivalent(restrict(result.dfa, d.alphabet.symbols), d)


def test_vertex_must_be_prefix_closed():
    graph = nx.Graph()
    graph.add_nodes_from("a")
    with pytest.raises(NotPrefixClosedError):
        graph_product(graph, {"a": from_words(Alphabet.from_letters("a"), [("a", "a")])})


def test_vertex_must_be_minimal():
    good = infinite_cyclic_geodesics("a", "A")
    # two equivalent sinks
    rows = ((1, 2), (1, 3), (4, 2), (3, 3), (4, 4))
    bloated = Dfa(alphabet=good.alphabet, start=0, accepting=good.accepting, transitions=rows)
    graph = nx.Graph()
    graph.add_nodes_from("a")
    with pytest.raises(NotMinimalError):
        graph_product(graph, {"a": bloated})


def test_vertex_alphabets_must_be_disjoint():
    graph = nx.Graph([("a", "b")])
    with pytest.raises(AlphabetOverlapError):
        graph_product(graph, {"a": infinite_cyclic_geodesics("a", "A"), "b": infinite_cyclic_geodesics("a", "A")})


def test_wrap_of_universal_languages():
    left = universal_dfa(Alphabet.plain("x"))
    right = universal_dfa(Alphabet.plain("y"))
    assert equivalent(direct_product_wrap(left, right), universal_dfa(Alphabet.plain("xy")))


def test_wrap_matches_torsion_times_integers():
    torsion = abelian_pe(AbelianOracle(Alphabet.plain("x"), [3], {"x": [1]}), budgets=ROOMY).dfa
    d = direct_product_wrap(torsion, infinite_cyclic_geodesics("t", "T"))
    report = verify_language(d, GeodesicTester(z3_times_z().oracle, budgets=ROOMY), 7)
    assert report.matched
