import logging

import pytest

from automata.alphabet import Alphabet
from automata.automaton import Dfa, from_words
from automata.expr import b3_alphabet, b3_geodesic_expr, compile_expr, reduced_words
from automata.starfree import is_star_free
from core.errors import AlphabetMismatchError, InputError
from geodesics.ball import Budgets, GeodesicTester
from geodesics.graph_product import infinite_cyclic_geodesics
from geodesics.probe import (alternation_probe, alternation_scan, check_inverse_closure, check_prefix_closure,
                             summarize, verify_language)
from groups.braid import BurauOracle
from groups.catalog import free_abelian, free_group, lookup, eliminated_free_group, surface_group
from groups.oracles import FreeOracle

ROOMY = Budgets(max_elements=2_000_000, max_depth=14)
AB = Alphabet.from_letters("ab")


def w(text: str) -> tuple:
    return tuple(text)


# --- Verification ---

def test_reduced_words_match_free_group():
    d = compile_expr(reduced_words(AB), AB)
    report = verify_language(d, GeodesicTester(FreeOracle(AB), budgets=ROOMY), 8)
    assert report.matched
    assert report.mismatch is None


@pytest.mark.slow
def test_b3_expression_matches_brute_force():
    d = compile_expr(b3_geodesic_expr(), b3_alphabet())
    report = verify_language(d, GeodesicTester(BurauOracle(), budgets=ROOMY), 8)
    assert report.matched
    assert is_star_free(d)


def test_corrupted_automaton_is_caught():
    good = infinite_cyclic_geodesics("a", "A")
    bad = Dfa(alphabet=good.alphabet, start=0, accepting=frozenset({0, 1, 2, 3}), transitions=good.transitions)
    report = verify_language(bad, GeodesicTester(free_group(1).oracle, budgets=ROOMY), 4)
    assert not report.matched
    assert report.mismatch == w("aA")
    assert report.automaton_accepts and not report.geodesic


def test_verification_needs_matching_alphabets():
    d = infinite_cyclic_geodesics("x", "X")
    with pytest.raises(AlphabetMismatchError):
        verify_language(d, GeodesicTester(free_group(1).oracle, budgets=ROOMY), 3)


# --- Closure checks ---

def test_prefix_closure():
    assert check_prefix_closure(infinite_cyclic_geodesics("a", "A")) is None
    assert check_prefix_closure(from_words(AB, [w("ab")])) == w("ab")


def test_inverse_closure():
    assert check_inverse_closure(infinite_cyclic_geodesics("a", "A"), 6) is None
    assert check_inverse_closure(from_words(AB, [w("ab")]), 3) == w("ab")
    with pytest.raises(InputError):
        check_inverse_closure(from_words(Alphabet.plain("ab"), [w("ab")]), 3)


def test_b3_geodesics_are_closed():
    d = compile_expr(b3_geodesic_expr(), b3_alphabet())
    assert check_prefix_closure(d) is None
    assert check_inverse_closure(d, 6) is None


# --- Alternation ---

def test_summarize_alternating_tail():
    result = summarize((), w("a"), (), [True, True, False, True, False])
    assert result.alternating_tail == 3
    assert result.alternating
    assert not result.eventually_constant


def test_summarize_constant_tail():
    result = summarize((), w("a"), (), [False, True, False, False])
    assert result.constant_tail == 2
    assert result.eventually_constant
    assert not result.alternating


def test_z2_powers_are_all_geodesic():
    tester = GeodesicTester(free_abelian(2).oracle, budgets=ROOMY)
    result = alternation_probe(tester, (), w("a"), (), 6)
    assert result.bits == (True,) * 7
    assert result.eventually_constant


def test_garside_generators_alternate():
    tester = GeodesicTester(lookup("b3-garside").oracle, budgets=ROOMY)
    result = alternation_probe(tester, ("ba",), ("aba",), ("a",), 4)
    assert result.bits == (True, False, True, False, True)
    assert result.alternating


@pytest.mark.slow
def test_eliminated_free_group_family_alternates():
    tester = GeodesicTester(eliminated_free_group().oracle, budgets=ROOMY)
    result = alternation_probe(tester, w("b"), w("a"), w("d"), 7)
    assert result.bits == tuple(n % 2 == 1 for n in range(8))
    assert result.alternating
    assert not result.eventually_constant


def test_probe_rejects_negative_nmax():
    with pytest.raises(InputError):
        alternation_probe(GeodesicTester(free_group(1).oracle, budgets=ROOMY), (), w("a"), (), -1)


def test_free_group_scan_finds_nothing():
    tester = GeodesicTester(free_group(2).oracle, budgets=ROOMY)
    assert alternation_scan(tester, 1, 2, 1, 4) == []


def test_scan_needs_four_bits():
    tester = GeodesicTester(free_group(2).oracle, budgets=ROOMY)
    assert alternation_scan(tester, 1, 1, 1, 2) == []
    with pytest.raises(InputError):
        alternation_scan(tester, -1, 1, 1, 6)


def test_scan_checks_one_triple_per_symmetry_class(caplog):
    group = free_group(2)
    with caplog.at_level(logging.INFO, logger="geodesics.probe"):
        alternation_scan(GeodesicTester(group.oracle, budgets=ROOMY), 1, 1, 1, 3)
    # v in {a, b}, four live choices each for u and w
    assert "checked 32 triples" in caplog.text
    caplog.clear()
    with caplog.at_level(logging.INFO, logger="geodesics.probe"):
        alternation_scan(GeodesicTester(group.oracle, budgets=ROOMY), 1, 1, 1, 3, group.symmetries())
    # v = a only; its stabilizer has order 4 and leaves 7 orbits of (u, w)
    assert "checked 7 triples" in caplog.text


def test_scan_rejects_partial_symmetries():
    tester = GeodesicTester(free_group(2).oracle, budgets=ROOMY)
    with pytest.raises(InputError):
        alternation_scan(tester, 1, 1, 1, 4, [{"a": "b", "b": "a"}])


@pytest.mark.slow
def test_garside_scan_finds_the_alternating_family():
    group = lookup("b3-garside")
    found = alternation_scan(GeodesicTester(group.oracle, budgets=ROOMY), 1, 1, 1, 4, group.symmetries())
    assert ((("ba",), ("aba",), ("a",)) in {(r.u, r.v, r.w) for r in found})
    assert all(r.alternating for r in found)


@pytest.mark.slow
def test_genus2_desk_check_finds_nothing():
    group = surface_group(2)
    tester = GeodesicTester(group.oracle, budgets=ROOMY)
    assert alternation_scan(tester, 2, 3, 2, 6, group.symmetries()) == []
