from fractions import Fraction

import pytest

from automata.alphabet import Alphabet
from core.errors import PreconditionError, PresentationError
from groups.amalgam import AmalgamOracle
from groups.oracles import iter_reduced_words
from groups.presentation import (Presentation, check_c_prime, check_t, cyclic_reduce, dehn_reduce,
                                 dehn_reduce_symmetrized, free_reduce, is_cyclically_reduced, is_proper_power,
                                 letter_symmetries, pieces, rotations, symmetrize)

AB = Alphabet.from_letters("ab")


def presentation(letters: str, *relators: str) -> Presentation:
    return Presentation(generators=Alphabet.from_letters(letters), relators=tuple(tuple(r) for r in relators))


@pytest.fixture
def genus2():
    return presentation("abcd", "abABcdCD")


@pytest.fixture
def z2():
    return presentation("ab", "abAB")


# --- Words ---

def test_free_reduce_cancels_adjacent_inverses():
    assert free_reduce(tuple("abBA"), AB) == ()
    assert free_reduce(tuple("aabBb"), AB) == tuple("aab")


def test_cyclic_reduce_strips_conjugating_letters():
    assert cyclic_reduce(tuple("babAB"), AB) == tuple("a")
    assert is_cyclically_reduced(tuple("abAB"), AB)
    assert not is_cyclically_reduced(tuple("abA"), AB)


def test_rotations_and_powers():
    assert rotations(tuple("abc")) == [tuple("abc"), tuple("bca"), tuple("cab")]
    assert is_proper_power(tuple("abab"))
    assert not is_proper_power(tuple("abAB"))


# --- Presentations ---

def test_relators_must_be_cyclically_reduced():
    with pytest.raises(PresentationError):
        presentation("ab", "abA")


def test_generators_must_be_inverse_closed():
    with pytest.raises(PresentationError):
        Presentation(generators=Alphabet.plain("ab"), relators=())


def test_from_relators_reduces_and_deduplicates():
    p = Presentation.from_relators(AB, [tuple("abB"), tuple("a"), tuple("baB")])
    assert p.relators == (("a",),)


def test_format(genus2):
    assert genus2.format() == "< a b c d | abABcdCD >"


# --- Symmetrization and pieces ---

def test_genus2_symmetrized_set(genus2):
    s = symmetrize(genus2)
    assert len(s.words) == 16
    assert all(len(w) == 8 for w in s.words)
    assert max(len(p) for p in pieces(s)) == 1


def test_symmetrized_set_is_closed(z2):
    s = symmetrize(z2)
    words = set(s.words)
    for w in words:
        assert AB.invert(w) in words
        assert set(rotations(w)) <= words


@pytest.mark.parametrize("relator, size", [("aaa", 2), ("ab", 4), ("abAB", 8)])
def test_symmetrized_set_sizes(relator, size):
    assert len(symmetrize(presentation("ab", relator)).words) == size


@pytest.mark.parametrize("letters, relators", [("ab", ["aaa"]), ("ab", ["abAB"]), ("abcd", ["abABcdCD"]),
                                               ("abc", ["ab", "Bc", "CA"])])
def test_symmetrize_is_a_fixed_point(letters, relators):
    s = symmetrize(presentation(letters, *relators))
    again = symmetrize(Presentation(generators=s.origin.generators, relators=s.words))
    assert again.words == s.words


def test_proper_power_has_no_pieces():
    assert pieces(symmetrize(presentation("ab", "aaa"))) == set()


@pytest.mark.parametrize("letters, relators", [("ab", ["abAB"]), ("abcd", ["abABcdCD"]),
                                               ("abc", ["abcAB", "acBC"]), ("ab", ["aaba", "bbab"])])
def test_pieces_are_shared_prefixes(letters, relators):
    s = symmetrize(presentation(letters, *relators))
    assert pieces(s)
    for piece in pieces(s):
        n = len(piece)
        sharing = [r for r in s.words if r[:n] == piece]
        assert len(sharing) >= 2, piece


def test_letter_symmetries(genus2, z2):
    assert len(letter_symmetries(z2)) == 8
    assert len(letter_symmetries(presentation("ab"))) == 8
    tables = letter_symmetries(genus2)
    assert tables[0] == {s: s for s in "abcdABCD"}
    swap = {"a": "c", "b": "d", "c": "a", "d": "b", "A": "C", "B": "D", "C": "A", "D": "B"}
    assert swap in tables
    words = set(symmetrize(genus2).words)
    for table in tables:
        assert {tuple(table[s] for s in r) for r in words} == words


def test_letter_symmetries_respect_relator_shape():
    # a -> b would send aaa to bbb, which is not a relator
    tables = letter_symmetries(presentation("ab", "aaa", "bb"))
    assert all(table["a"] in ("a", "A") for table in tables)


# --- C'(λ) ---

def test_genus2_is_c_prime_one_sixth(genus2):
    report = check_c_prime(symmetrize(genus2), Fraction(1, 6))
    assert report.passed
    assert report.max_piece_length == 1
    assert report.critical_lambda == "1/8"


def test_genus2_fails_at_its_critical_lambda(genus2):
    assert not check_c_prime(symmetrize(genus2), Fraction(1, 8)).passed
    assert check_c_prime(symmetrize(genus2), Fraction(1, 7)).passed


def test_commutator_fails_c_prime_one_quarter(z2):
    report = check_c_prime(symmetrize(z2), Fraction(1, 4))
    assert not report.passed
    assert len(report.piece) == 1
    assert report.relator in symmetrize(z2).words


def test_lambda_must_be_positive(z2):
    with pytest.raises(PreconditionError):
        check_c_prime(symmetrize(z2), Fraction(0))


# --- T(q) ---

def test_commutator_is_t4_but_not_t5(z2):
    assert check_t(symmetrize(z2), 4).passed
    report = check_t(symmetrize(z2), 5)
    assert not report.passed
    assert len(report.violation) == 4


def test_triangle_of_relators_fails_t4():
    report = check_t(symmetrize(presentation("abc", "ab", "Bc", "CA")), 4)
    assert not report.passed
    assert len(report.violation) == 3


def test_square_cycle_fails_t5():
    s = symmetrize(presentation("ab", "ab", "aB"))
    assert check_t(s, 4).passed
    report = check_t(s, 5)
    assert not report.passed
    cycle = report.violation
    inverse = AB.inverse_map
    for r, t in zip(cycle, cycle[1:] + cycle[:1]):
        assert inverse[r[-1]] == t[0]
        assert t != AB.invert(r)


def test_t_needs_q_above_three(z2):
    with pytest.raises(PreconditionError):
        check_t(symmetrize(z2), 3)


# --- Dehn's algorithm ---

def test_dehn_replaces_long_relator_prefix(genus2):
    assert dehn_reduce(genus2, tuple("abABcdC")) == ("d",)
    assert dehn_reduce(genus2, tuple("abABcdCD")) == ()


def test_dehn_leaves_short_words_alone(genus2):
    assert dehn_reduce(genus2, tuple("abAB")) == tuple("abAB")


def test_dehn_needs_c_prime_one_sixth(z2):
    with pytest.raises(PreconditionError):
        dehn_reduce(z2, tuple("abAB"))


@pytest.mark.slow
def test_dehn_finds_exactly_the_trivial_words(genus2):
    s = symmetrize(genus2)
    alphabet = genus2.generators
    oracle = AmalgamOracle(genus2)
    identity = oracle.identity()
    checked = 0
    for n in range(7):
        for w in iter_reduced_words(alphabet, n):
            assert (dehn_reduce_symmetrized(s, w) == ()) == (oracle.normal_form(w) == identity), w
            checked += 1
    assert checked == 1 + 8 + 56 + 392 + 2744 + 19208 + 134456
    for r in s.words:
        for u in iter_reduced_words(alphabet, 2):
            conjugate = free_reduce(u + r + alphabet.invert(u), alphabet)
            assert dehn_reduce(genus2, conjugate) == ()
            assert oracle.normal_form(conjugate) == identity
            partial = free_reduce(u + r[:5], alphabet)
            assert dehn_reduce(genus2, partial) != ()
            assert oracle.normal_form(partial) != identity
