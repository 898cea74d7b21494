import random

import pytest

from automata.alphabet import Alphabet
from core.errors import BudgetExceeded, InputError, WordTooLongError
from geodesics.ball import Ball, Budgets, GeodesicTester, build_ball, is_geodesic
from groups.braid import BurauOracle
from groups.catalog import cyclic_monoid, free_abelian, free_group, eliminated_free_group
from groups.oracles import FreeOracle

ROOMY = Budgets(max_elements=2_000_000, max_depth=14)


def w(text: str) -> tuple:
    return tuple(text)


# --- Balls ---

def test_integers_ball():
    oracle = FreeOracle(Alphabet.from_letters("a"))
    ball = build_ball(oracle, radius=3)
    assert len(ball.table) == 7
    for n in range(1, 4):
        assert ball.length(oracle.normal_form(w("a" * n))) == n
        assert ball.length(oracle.normal_form(w("A" * n))) == n


def test_free_group_ball_and_growth_series():
    ball = build_ball(free_group(2).oracle, radius=2)
    assert len(ball.table) == 17
    assert ball.report().sphere_sizes == (1, 4, 12)


def test_b3_ball_collapses_braid_relation():
    oracle = BurauOracle()
    ball = build_ball(oracle, radius=3)
    assert oracle.normal_form(w("aba")) == oracle.normal_form(w("bab"))
    assert ball.length(oracle.normal_form(w("aba"))) == 3
    # six pairs of reduced words of length three collapse: aba = bab, baB = Aba, abA = Bab and inverses
    assert ball.report().sphere_sizes == (1, 4, 12, 30)


def test_finite_group_ball_saturates():
    ball = build_ball(cyclic_monoid(6).oracle, radius=10)
    assert ball.saturated
    assert ball.radius == 5
    assert len(ball.table) == 6


def test_ball_budget_reports_layer():
    with pytest.raises(BudgetExceeded) as info:
        build_ball(free_group(2).oracle, radius=5, max_elements=100)
    assert info.value.budget == "ball_max_elements"
    assert info.value.reached == 4


def test_ball_budget_stops_inside_a_layer():
    ball = Ball(free_group(2).oracle, max_elements=20)
    with pytest.raises(BudgetExceeded) as info:
        ball.extend(3)
    assert info.value.reached == 3
    assert len(ball.table) == 21
    assert ball.radius == 2


def test_negative_radius():
    with pytest.raises(InputError):
        build_ball(free_group(1).oracle, radius=-1)


def test_is_geodesic_on_ball():
    oracle = FreeOracle(Alphabet.from_letters("a"))
    ball = build_ball(oracle, radius=3)
    assert is_geodesic(w("aa"), ball)
    assert not is_geodesic(w("aA"), ball)
    with pytest.raises(WordTooLongError):
        is_geodesic(w("aaaa"), ball)


def test_b3_geodesics_on_radius_four_ball():
    ball = build_ball(BurauOracle(), radius=4)
    assert is_geodesic(w("aba"), ball)
    assert is_geodesic(w("abab"), ball)
    assert not is_geodesic(w("abAB"), ball)


# --- Tester ---

def test_tester_agrees_with_full_ball_on_b3():
    oracle = BurauOracle()
    full = build_ball(oracle, radius=6)
    tester = GeodesicTester(oracle, budgets=ROOMY)
    rng = random.Random(3)
    symbols = oracle.alphabet.symbols
    for _ in range(150):
        word = tuple(rng.choice(symbols) for _ in range(rng.randrange(7)))
        assert tester.distance(word) == full.length(oracle.normal_form(word))


def test_tester_keeps_its_ball_small():
    tester = GeodesicTester(BurauOracle(), budgets=ROOMY)
    tester.distance(w("abababAB"))
    assert tester.ball.radius <= 4


def test_tester_uses_monoid_generators():
    tester = GeodesicTester(cyclic_monoid(6).oracle, budgets=ROOMY)
    assert tester.distance(w("aaaaaaa")) == 1
    assert tester.is_geodesic(w("aaaaa"))
    assert not tester.is_geodesic(w("aaaaaa"))


def test_tester_with_exact_lengths():
    tester = GeodesicTester(free_abelian(2).oracle, budgets=ROOMY)
    assert tester.distance(w("abAab")) == 3
    assert not tester.is_geodesic(w("abA"))


def test_eliminated_free_group_geodesics():
    tester = GeodesicTester(eliminated_free_group().oracle, budgets=ROOMY)
    assert not tester.is_geodesic(w("bd"))
    assert tester.is_geodesic(w("bad"))
    assert not tester.is_geodesic(w("baad"))
    assert tester.distance(w("baad")) == 3


def test_tester_depth_budget():
    tester = GeodesicTester(BurauOracle(), budgets=Budgets(max_elements=10_000, max_depth=3))
    with pytest.raises(BudgetExceeded) as info:
        tester.distance(w("ababa"))
    assert info.value.budget == "bidirectional_max_depth"


def test_tester_rejects_foreign_symbols():
    with pytest.raises(InputError):
        GeodesicTester(free_group(1).oracle, Alphabet.from_letters("ab"), budgets=ROOMY)
