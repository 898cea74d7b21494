import random

import pytest

from automata.alphabet import Alphabet
from automata.automaton import Dfa


def make_dfa(symbols, accepting, rows, start=0, inverses=None) -> Dfa:
    alphabet = Alphabet(symbols=tuple(symbols), inverses=inverses)
    return Dfa(alphabet=alphabet, start=start, accepting=frozenset(accepting),
               transitions=tuple(tuple(r) for r in rows))


def random_dfa(rng: random.Random, symbols="ab", states=4) -> Dfa:
    rows = [[rng.randrange(states) for _ in symbols] for _ in range(states)]
    accepting = {q for q in range(states) if rng.random() < 0.5}
    return make_dfa(symbols, accepting, rows)


@pytest.fixture
def ab():
    return Alphabet.plain("ab")


@pytest.fixture
def parity():
    """(aa)* over {a}."""
    return make_dfa("a", {0}, [[1], [0]])


@pytest.fixture
def parity_ab():
    """(aa)* over {a, b}."""
    return make_dfa("ab", {0}, [[1, 2], [0, 2], [2, 2]])


@pytest.fixture
def a_star():
    return make_dfa("ab", {0}, [[0, 1], [1, 1]])


@pytest.fixture
def b_star():
    return make_dfa("ab", {0}, [[1, 0], [1, 1]])


@pytest.fixture
def a_star_b_star():
    return make_dfa("ab", {0, 1}, [[0, 1], [2, 1], [2, 2]])


@pytest.fixture
def a_star_b_a_star():
    return make_dfa("ab", {1}, [[0, 1], [1, 2], [2, 2]])


@pytest.fixture
def z_geodesics():
    """Runs of a or of A: start, a-run, A-run, sink."""
    return make_dfa("aA", {0, 1, 2}, [[1, 2], [1, 3], [3, 2], [3, 3]], inverses=(("a", "A"),))


@pytest.fixture
def random_dfas():
    rng = random.Random(20240611)
    return [random_dfa(rng, symbols=rng.choice(["ab", "abc"]), states=rng.choice([3, 4, 5])) for _ in range(24)]
