"""
Geodesics of abelian groups as piecewise excluding languages.

Whether a word is geodesic in an abelian group depends only on how often
each generator occurs. The minimal non-geodesic multiplicity vectors form a
finite antichain in ℕ^r; a word is geodesic exactly when it contains no
permutation of one of them as a scattered subword.
"""
import logging
from typing import Iterator, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field
from sympy.utilities.iterables import multiset_permutations

from automata.alphabet import Word
from automata.automaton import Dfa
from automata.expr import compile_expr, piecewise_excluding
from core.errors import PreconditionError, VerificationError
from geodesics.ball import Budgets, GeodesicTester
from geodesics.probe import verify_language
from groups.oracles import AbelianOracle
from utils.settings_manager import get_setting

logger = logging.getLogger(__name__)

GradedTuple = tuple[int, ...]


def dominates(big: GradedTuple, small: GradedTuple) -> bool:
    return all(b >= s for b, s in zip(big, small))


def vectors_with_sum(size: int, total: int) -> Iterator[GradedTuple]:
    """All vectors in ℕ^size with coordinate sum `total`, lexicographically descending."""
    if size == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in vectors_with_sum(size - 1, total - first):
            yield (first,) + rest


def spell(symbols: Sequence[str], vector: GradedTuple) -> Word:
    word: list[str] = []
    for s, n in zip(symbols, vector):
        word += [s] * n
    return tuple(word)


def minimal_non_geodesic_vectors(tester: GeodesicTester, symbols: Sequence[str], sum_bound: int,
                                 suffix: Word = ()) -> list[GradedTuple]:
    """
    The ⪯-minimal vectors n with x1^n1 ... xr^nr · suffix non-geodesic,
    among those with coordinate sum at most sum_bound.
    """
    found: list[GradedTuple] = []
    for total in range(0, sum_bound + 1):
        for vector in vectors_with_sum(len(symbols), total):
            if any(dominates(vector, m) for m in found):
                continue
            if not tester.is_geodesic(spell(symbols, vector) + suffix):
                found.append(vector)
    return found


def permutation_words(symbols: Sequence[str], vectors: Sequence[GradedTuple]) -> list[Word]:
    words = set()
    for vector in vectors:
        if not any(vector):
            words.add(())
            continue
        for perm in multiset_permutations(list(spell(symbols, vector))):
            words.add(tuple(perm))
    return sorted(words, key=lambda w: (len(w), w))


class AbelianPEResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    minimal_vectors: tuple[GradedTuple, ...] = Field(description="V: minimal non-geodesic multiplicity vectors")
    excluded: tuple[Word, ...] = Field(description="W: every permutation of the words spelled by V")
    dfa: Dfa
    sum_bound: int
    verified_len: int = Field(description="Length up to which the Dfa was checked against the group")


def _check_generates(oracle: AbelianOracle, tester: GeodesicTester, radius: int) -> None:
    targets = set()
    for i in range(len(oracle.orders)):
        unit = tuple(int(j == i) for j in range(len(oracle.orders)))
        targets.add(oracle.reduce_vector(unit))
        targets.add(oracle.reduce_vector(tuple(-x for x in unit)))
    ball = tester.ball.extend(radius)
    missing = [t for t in targets if ball.length(t) is None]
    if missing:
        raise PreconditionError(
            f"the generators do not reach {sorted(missing)} within {radius} steps; "
            "they must generate the group as a monoid")


def abelian_pe(oracle: AbelianOracle, sum_bound: Optional[int] = None, verify_len: Optional[int] = None,
               budgets: Optional[Budgets] = None) -> AbelianPEResult:
    """Piecewise excluding automaton for the geodesics of an abelian group on a monoid generating set."""
    sum_bound = sum_bound if sum_bound is not None else get_setting("abelian_sum_bound")
    verify_len = verify_len if verify_len is not None else get_setting("abelian_verify_len")
    if not isinstance(oracle, AbelianOracle):
        raise PreconditionError("abelian_pe needs an abelian group")
    alphabet = oracle.alphabet
    tester = GeodesicTester(oracle, alphabet, budgets)
    _check_generates(oracle, tester, max(verify_len, sum_bound))

    vectors = minimal_non_geodesic_vectors(tester, alphabet.symbols, sum_bound)
    words = permutation_words(alphabet.symbols, vectors)
    dfa = compile_expr(piecewise_excluding(words), alphabet)
    logger.info(f"V has {len(vectors)} vectors, W has {len(words)} words, automaton has {dfa.n_states} states")

    report = verify_language(dfa, tester, verify_len)
    if not report.matched:
        raise VerificationError(
            f"piecewise excluding automaton disagrees with the group at "
            f"{alphabet.format_word(report.mismatch)}; sum_bound {sum_bound} is too small",
            report.mismatch)
    return AbelianPEResult(minimal_vectors=tuple(vectors), excluded=tuple(words), dfa=dfa,
                           sum_bound=sum_bound, verified_len=verify_len)
