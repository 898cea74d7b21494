from itertools import product as cartesian

import pytest

from automata.automaton import Connective, complement, minimize, product, universal_dfa
from automata.monoid import transition_monoid
from automata.starfree import (has_powered_circuit, is_aperiodic, is_star_free, power_membership,
                               replay_witness, star_free_report)
from conftest import make_dfa
from core.errors import BudgetExceeded, NotMinimalError


# --- Transition monoid ---

def test_parity_monoid_has_two_elements(parity):
    m = transition_monoid(minimize(parity))
    assert m.size == 2
    assert m.identity.mapping == (0, 1)
    assert m.elements[1].witness == ("a",)


def test_universal_monoid_is_trivial(ab):
    assert transition_monoid(universal_dfa(ab)).size == 1


def test_z_geodesic_monoid_is_idempotent(z_geodesics):
    m = transition_monoid(minimize(z_geodesics))
    assert m.size == 4
    for i in range(m.size):
        assert m.compose(i, i) == i


def test_monoid_is_closed_and_witnesses_replay(random_dfas):
    for d in random_dfas[:8]:
        md = minimize(d)
        m = transition_monoid(md)
        table = m.composition_table()
        assert all(0 <= x < m.size for row in table for x in row)
        for element in m.elements:
            assert element.mapping == tuple(md.run(element.witness, q) for q in range(md.n_states))
            assert m.element_of(element.witness) == element


def test_monoid_budget(parity_ab):
    with pytest.raises(BudgetExceeded):
        transition_monoid(parity_ab, max_elements=2)


# --- Aperiodicity ---

def test_parity_is_not_aperiodic(parity):
    report = is_aperiodic(transition_monoid(minimize(parity)))
    assert not report.aperiodic
    assert report.offender.witness == ("a",)
    assert report.period == 2
    assert report.bound is None


def test_a_star_b_star_is_aperiodic(a_star_b_star):
    report = is_aperiodic(transition_monoid(minimize(a_star_b_star)))
    assert report.aperiodic
    assert report.offender is None


def test_z_geodesics_bound_is_one(z_geodesics):
    report = is_aperiodic(transition_monoid(minimize(z_geodesics)))
    assert report.aperiodic and report.bound == 1


# --- Powered circuits ---

def test_parity_powered_circuit(parity):
    witness = has_powered_circuit(minimize(parity))
    assert (witness.u, witness.v, witness.k, witness.w) == ((), ("a",), 2, ())
    assert replay_witness(parity, witness)


def test_no_powered_circuit_in_a_star_b_a_star(a_star_b_a_star):
    assert has_powered_circuit(minimize(a_star_b_a_star)) is None


def test_powered_circuit_needs_minimal_input():
    redundant = make_dfa("a", {0, 1}, [[1], [0]])
    with pytest.raises(NotMinimalError):
        has_powered_circuit(redundant)


def test_star_free_verdicts(parity_ab, a_star_b_star, z_geodesics):
    assert not is_star_free(parity_ab)
    assert is_star_free(a_star_b_star)
    assert is_star_free(z_geodesics)


def test_criteria_agree_and_witnesses_replay(random_dfas):
    verdicts = set()
    for d in random_dfas:
        report = star_free_report(d)
        verdicts.add(report.star_free)
        if report.witness is not None:
            md = minimize(d)
            w = report.witness
            assert replay_witness(md, w)
            bits = power_membership(md, w.u, w.v, w.w, 2 * w.k)
            assert len(set(bits)) == 2


def test_star_free_membership_is_eventually_constant(a_star_b_star, a_star_b_a_star, z_geodesics):
    for d in (a_star_b_star, a_star_b_a_star, z_geodesics):
        report = star_free_report(d)
        n0 = report.bound
        words = list(d.alphabet.words(3))
        for u, v, w in cartesian(words, words[1:], words):
            bits = power_membership(d, u, v, w, n0 + 3)
            assert len(set(bits[n0:])) == 1


def test_boolean_closure_keeps_star_freeness(a_star_b_star, a_star_b_a_star):
    for combine in Connective:
        assert is_star_free(product(a_star_b_star, a_star_b_a_star, combine))
    assert is_star_free(complement(a_star_b_a_star))
