"""
Geodesics of virtually abelian groups.

A generating set Z = X ∪ Y, with X inside a finite-index abelian normal
subgroup N and Y outside it, satisfying five closure properties makes every
geodesic carry at most two letters of Y. The geodesic language is then the
union of three pieces L0, L1, L2 (words with zero, one or two Y letters),
each cut out by a piecewise excluding condition.
"""
import logging
from itertools import product
from typing import Callable, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from automata.alphabet import Alphabet, Word
from automata.automaton import Connective, Dfa, minimize
from automata.automaton import product as dfa_product
from automata.expr import (StarFreeExpr, complement, compile_expr, empty, intersect, piecewise_excluding,
                           scattered_atom, union, universe)
from core.errors import BudgetExceeded, InputError, PreconditionError, VerificationError
from geodesics.abelian import minimal_non_geodesic_vectors, permutation_words
from geodesics.ball import Budgets, GeodesicTester
from geodesics.probe import VerificationReport, verify_language
from groups.oracles import Key, WordOracle
from utils.settings_manager import get_setting

logger = logging.getLogger(__name__)


class VAbelianGenSet(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alphabet: Alphabet = Field(description="Z, the full generating set")
    x_symbols: tuple[str, ...] = Field(description="X: generators lying in N")
    y_symbols: tuple[str, ...] = Field(description="Y: generators outside N")
    membership: Callable[[Key], bool] = Field(description="Membership test for N on oracle keys")

    @model_validator(mode="after")
    def _check(self):
        xs, ys = set(self.x_symbols), set(self.y_symbols)
        if xs & ys:
            raise InputError(f"X and Y overlap in {sorted(xs & ys)}")
        if xs | ys != set(self.alphabet.symbols):
            raise InputError("X and Y must together make up the generating set")
        return self


class PropertyResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    number: int
    passed: bool
    detail: str = ""


class VAbelianReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    passed: bool
    properties: tuple[PropertyResult, ...]
    coset_count: Optional[int] = Field(default=None, description="|G:N|, when the cosets were enumerated")
    conjugation: dict[str, dict[str, str]] = Field(
        default_factory=dict, description="y -> x -> the generator in X equal to y^-1 x y")


class _Group:
    """Element arithmetic on oracle keys through words."""

    def __init__(self, oracle: WordOracle):
        if not oracle.alphabet.is_inverse_closed:
            raise PreconditionError("virtually abelian checks need an oracle over an inverse-closed alphabet")
        self.oracle = oracle
        self.alphabet = oracle.alphabet

    def key(self, word: Word) -> Key:
        return self.oracle.normal_form(word)

    def quotient(self, u: Word, v: Word) -> Key:
        """Key of u v^-1."""
        return self.key(u + self.alphabet.invert(v))


def enumerate_cosets(oracle: WordOracle, membership: Callable[[Key], bool],
                     max_count: Optional[int] = None) -> list[Word]:
    """Representative words of the right cosets N g, found by a search over G/N."""
    max_count = max_count or get_setting("coset_max_count")
    group = _Group(oracle)
    reps: list[Word] = [()]
    index = 0
    while index < len(reps):
        rep = reps[index]
        for s in group.alphabet.symbols:
            candidate = rep + (s,)
            if not any(membership(group.quotient(candidate, r)) for r in reps):
                reps.append(candidate)
                if len(reps) > max_count:
                    raise BudgetExceeded("coset_max_count", max_count, len(reps))
        index += 1
    return reps


def vabelian_check(gs: VAbelianGenSet, oracle: WordOracle, max_cosets: Optional[int] = None) -> VAbelianReport:
    group = _Group(oracle)
    missing = set(gs.alphabet.symbols) - set(group.alphabet.symbols)
    if missing:
        raise InputError(f"oracle cannot read symbols {sorted(missing)}")
    xs, ys = gs.x_symbols, gs.y_symbols
    x_keys = {group.key((x,)): x for x in xs}
    in_n = gs.membership
    results = []

    outside = [x for x in xs if not in_n(group.key((x,)))] + [y for y in ys if in_n(group.key((y,)))]
    results.append(PropertyResult(number=1, passed=not outside,
                                  detail=f"misplaced generators {outside}" if outside else ""))

    def closed_under_inverse(symbols: tuple[str, ...]) -> list[str]:
        keys = {group.key((s,)) for s in symbols}
        return [s for s in symbols if group.key(group.alphabet.invert((s,))) not in keys]

    lonely = closed_under_inverse(xs) + closed_under_inverse(ys)
    results.append(PropertyResult(number=2, passed=not lonely,
                                  detail=f"no inverse in the same set for {lonely}" if lonely else ""))

    conjugation: dict[str, dict[str, str]] = {}
    failure = ""
    for y, x in product(ys, xs):
        image = x_keys.get(group.key(group.alphabet.invert((y,)) + (x, y)))
        if image is None:
            failure = failure or f"{y}^-1 {x} {y} is not in X"
        else:
            conjugation.setdefault(y, {})[x] = image
    results.append(PropertyResult(number=3, passed=not failure, detail=failure))

    cosets = enumerate_cosets(oracle, in_n, max_cosets)
    uncovered = [r for r in cosets[1:] if not any(in_n(group.quotient((y,), r)) for y in ys)]
    results.append(PropertyResult(
        number=4, passed=not uncovered,
        detail=f"no generator in Y represents the coset of {group.alphabet.format_word(uncovered[0])}"
        if uncovered else ""))

    failure = ""
    y_words = [w for n in range(4) for w in product(ys, repeat=n)]
    for w, y in product(y_words, [()] + [(y,) for y in ys]):
        x = group.quotient(tuple(w), y)
        # x = identity is exempt
        if in_n(x) and x != oracle.identity() and x not in x_keys:
            failure = f"{group.alphabet.format_word(tuple(w))} = x·{group.alphabet.format_word(y)} with x in N outside X"
            break
    results.append(PropertyResult(number=5, passed=not failure, detail=failure))

    passed = all(r.passed for r in results)
    summary = " ".join(f"{r.number}:" + ("ok" if r.passed else "FAIL") for r in results)
    logger.info(f"properties {summary}")
    return VAbelianReport(passed=passed, properties=tuple(results), coset_count=len(cosets),
                          conjugation=conjugation)


# --- The automaton ---

class VAbelianResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    dfa: Dfa
    report: VAbelianReport
    excluded_x: tuple[Word, ...] = Field(description="Excluded words of L0 (geodesics over X)")
    excluded_one: tuple[Word, ...] = Field(description="Excluded words of L1, every split of every W_y word")
    excluded_two: tuple[Word, ...] = Field(description="Excluded words of L2, every split of every W_{y1 y2} word")
    per_letter: dict[str, tuple[Word, ...]] = Field(description="W_y for each y in Y")
    l2_empty: bool
    verification: VerificationReport


def _at_least(ys: tuple[str, ...], count: int) -> StarFreeExpr:
    """Words with at least `count` letters from Y."""
    if count == 0:
        return universe()
    if not ys:
        return empty()
    return union(*(scattered_atom(w) for w in product(ys, repeat=count)))


def _exactly(ys: tuple[str, ...], count: int) -> StarFreeExpr:
    return intersect(_at_least(ys, count), complement(_at_least(ys, count + 1)))


def _conjugate(word: Word, table: dict[str, str]) -> Word:
    return tuple(table[x] for x in word)


def vabelian_pt(gs: VAbelianGenSet, oracle: WordOracle, sum_bound: Optional[int] = None,
                verify_len: Optional[int] = None, budgets: Optional[Budgets] = None) -> VAbelianResult:
    sum_bound = sum_bound if sum_bound is not None else get_setting("abelian_sum_bound")
    verify_len = verify_len if verify_len is not None else get_setting("verify_maxlen")
    report = vabelian_check(gs, oracle)
    if not report.passed:
        failed = [r.number for r in report.properties if not r.passed]
        raise PreconditionError(f"generating set fails properties {failed}")
    if report.coset_count is None or report.coset_count < 2:
        raise PreconditionError("N must be a proper subgroup: |G:N| must exceed 1")

    alphabet = gs.alphabet
    xs, ys = gs.x_symbols, gs.y_symbols
    conj = report.conjugation
    tester = GeodesicTester(oracle, alphabet, budgets)

    def excluded(suffix: Word) -> list[Word]:
        vectors = minimal_non_geodesic_vectors(tester, xs, sum_bound, suffix)
        return permutation_words(xs, vectors)

    w0 = excluded(())
    per_letter = {y: tuple(excluded((y,))) for y in ys}
    w1 = set()
    for y, words in per_letter.items():
        for w in words:
            for t in range(len(w) + 1):
                w1.add(w[:t] + (y,) + _conjugate(w[t:], conj.get(y, {})))
    w2 = set()
    for y1, y2 in product(ys, repeat=2):
        for w in excluded((y1, y2)):
            for t1 in range(len(w) + 1):
                for t2 in range(t1, len(w) + 1):
                    tail = _conjugate(_conjugate(w[t2:], conj.get(y1, {})), conj.get(y2, {}))
                    w2.add(w[:t1] + (y1,) + _conjugate(w[t1:t2], conj.get(y1, {})) + (y2,) + tail)

    pieces = [
        compile_expr(intersect(_exactly(ys, 0), piecewise_excluding(w0)), alphabet),
        compile_expr(intersect(_exactly(ys, 1), piecewise_excluding(w1)), alphabet),
        compile_expr(intersect(_exactly(ys, 2), piecewise_excluding(w2)), alphabet),
    ]
    dfa = pieces[0]
    for piece in pieces[1:]:
        dfa = minimize(dfa_product(dfa, piece, Connective.OR))
    logger.info(f"|W0|={len(w0)} |W1|={len(w1)} |W2|={len(w2)}, automaton has {dfa.n_states} states")

    verification = verify_language(dfa, tester, verify_len)
    if not verification.matched:
        raise VerificationError(
            f"virtually abelian automaton disagrees with the group at "
            f"{alphabet.format_word(verification.mismatch)}", verification.mismatch)

    def ordered(words) -> tuple[Word, ...]:
        return tuple(sorted(words, key=alphabet.sort_key))

    return VAbelianResult(dfa=dfa, report=report, excluded_x=ordered(w0), excluded_one=ordered(w1),
                          excluded_two=ordered(w2), per_letter={y: ordered(w) for y, w in per_letter.items()},
                          l2_empty=pieces[2].is_empty(), verification=verification)
