"""
Star-free expressions.

Trees built from finite word sets with concatenation, union, intersection
and complement. There is no star node: the universe A* is written as the
complement of the empty set. Builders for the locally testable, piecewise
testable and piecewise excluding families live at the bottom.
"""
import logging
from enum import Enum
from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field

from automata.alphabet import Alphabet, Word
from automata.automaton import (Connective, Dfa, complement as dfa_complement, concat as dfa_concat,
                                empty_dfa, from_words, minimize, product, universal_dfa)
from core.errors import AlphabetMismatchError, ExpressionError

logger = logging.getLogger(__name__)


class ExprKind(str, Enum):
    EMPTY = "empty"
    EPSILON = "epsilon"
    LETTER = "letter"
    FINITE = "finite"
    CONCAT = "concat"
    UNION = "union"
    INTERSECT = "intersect"
    COMPLEMENT = "complement"


class StarFreeExpr(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ExprKind
    symbol: Optional[str] = Field(default=None, description="Letter node symbol")
    words: tuple[Word, ...] = Field(default=(), description="Finite set node words")
    children: tuple["StarFreeExpr", ...] = Field(default=(), description="Operands of concat, union, intersect, complement")

    def __or__(self, other: "StarFreeExpr") -> "StarFreeExpr":
        return union(self, other)

    def __and__(self, other: "StarFreeExpr") -> "StarFreeExpr":
        return intersect(self, other)

    def __add__(self, other: "StarFreeExpr") -> "StarFreeExpr":
        return concat(self, other)

    def __invert__(self) -> "StarFreeExpr":
        return complement(self)

    def letters(self) -> set[str]:
        found = set()
        if self.symbol is not None:
            found.add(self.symbol)
        for word in self.words:
            found.update(word)
        for child in self.children:
            found |= child.letters()
        return found

    def to_text(self) -> str:
        """Render in the text syntax read by parse_expr."""
        return _render(self, 0)


StarFreeExpr.model_rebuild()


# --- Node constructors ---

def empty() -> StarFreeExpr:
    return StarFreeExpr(kind=ExprKind.EMPTY)


def epsilon() -> StarFreeExpr:
    return StarFreeExpr(kind=ExprKind.EPSILON)


def letter(symbol: str) -> StarFreeExpr:
    return StarFreeExpr(kind=ExprKind.LETTER, symbol=symbol)


def finite(words: Iterable[Word]) -> StarFreeExpr:
    return StarFreeExpr(kind=ExprKind.FINITE, words=tuple(sorted({tuple(w) for w in words}, key=lambda w: (len(w), w))))


def word(w: Word) -> StarFreeExpr:
    """A single word as a chain of letters (ε when empty)."""
    if not w:
        return epsilon()
    if len(w) == 1:
        return letter(w[0])
    return concat(*(letter(s) for s in w))


def concat(*children: StarFreeExpr) -> StarFreeExpr:
    return StarFreeExpr(kind=ExprKind.CONCAT, children=children)


def union(*children: StarFreeExpr) -> StarFreeExpr:
    return StarFreeExpr(kind=ExprKind.UNION, children=children)


def intersect(*children: StarFreeExpr) -> StarFreeExpr:
    return StarFreeExpr(kind=ExprKind.INTERSECT, children=children)


def complement(child: StarFreeExpr) -> StarFreeExpr:
    return StarFreeExpr(kind=ExprKind.COMPLEMENT, children=(child,))


def universe() -> StarFreeExpr:
    """A* written star-free, as the complement of ∅."""
    return complement(empty())


# --- Compilation ---

def compile_expr(e: StarFreeExpr, alphabet: Alphabet) -> Dfa:
    """Minimal complete Dfa of the expression, built bottom up."""
    memo: dict[StarFreeExpr, Dfa] = {}
    return _compile(e, alphabet, memo)


def _compile(e: StarFreeExpr, alphabet: Alphabet, memo: dict) -> Dfa:
    if e in memo:
        return memo[e]
    kind = e.kind
    if kind is ExprKind.EMPTY:
        result = empty_dfa(alphabet)
    elif kind is ExprKind.EPSILON:
        result = from_words(alphabet, [()])
    elif kind is ExprKind.LETTER:
        if e.symbol not in alphabet:
            raise ExpressionError(f"letter {e.symbol!r} is not in alphabet {list(alphabet.symbols)}")
        result = from_words(alphabet, [(e.symbol,)])
    elif kind is ExprKind.FINITE:
        try:
            result = from_words(alphabet, e.words)
        except AlphabetMismatchError as err:
            raise ExpressionError(str(err)) from None
    elif kind is ExprKind.COMPLEMENT:
        result = dfa_complement(_compile(e.children[0], alphabet, memo))
    else:
        parts = [_compile(child, alphabet, memo) for child in e.children]
        if kind is ExprKind.CONCAT:
            result = from_words(alphabet, [()])
            for part in parts:
                result = minimize(dfa_concat(result, part))
        elif kind is ExprKind.UNION:
            result = empty_dfa(alphabet)
            for part in parts:
                result = minimize(product(result, part, Connective.OR))
        else:
            result = universal_dfa(alphabet)
            for part in parts:
                result = minimize(product(result, part, Connective.AND))
    result = minimize(result)
    memo[e] = result
    return result


# --- Builders ---

def scattered_atom(w: Word) -> StarFreeExpr:
    """A* a1 A* a2 ... A* ak A*: words containing w as a scattered subword."""
    if not w:
        raise ExpressionError("scattered_atom needs a nonempty word")
    parts = [universe()]
    for s in w:
        parts += [letter(s), universe()]
    return concat(*parts)


def prefix_atom(v: Word) -> StarFreeExpr:
    """v A*"""
    return concat(word(v), universe())


def suffix_atom(u: Word) -> StarFreeExpr:
    """A* u"""
    return concat(universe(), word(u))


def factor_atom(w: Word) -> StarFreeExpr:
    """A* w A*"""
    return concat(universe(), word(w), universe())


class LocalAtoms(BaseModel):
    model_config = ConfigDict(frozen=True)

    prefix: Optional[StarFreeExpr] = Field(default=None, description="v A*")
    suffix: Optional[StarFreeExpr] = Field(default=None, description="A* u")
    factors: tuple[StarFreeExpr, ...] = Field(default=(), description="A* w A* per factor")


def local_atoms(prefix: Optional[Word] = None, suffix: Optional[Word] = None,
                factors: Iterable[Word] = ()) -> LocalAtoms:
    """Building blocks of locally testable languages; combine them with boolean nodes."""
    for part in [prefix, suffix, *factors]:
        if part is not None and not part:
            raise ExpressionError("local atoms need nonempty words")
    return LocalAtoms(
        prefix=prefix_atom(prefix) if prefix else None,
        suffix=suffix_atom(suffix) if suffix else None,
        factors=tuple(factor_atom(w) for w in factors),
    )


def reduced_words(alphabet: Alphabet) -> StarFreeExpr:
    """Freely reduced words: no factor x x^-1."""
    pairs = [(s, alphabet.inverse_map[s]) for s in alphabet.symbols if s in alphabet.inverse_map]
    atoms = local_atoms(factors=pairs)
    return intersect(*(complement(f) for f in atoms.factors))


def subalphabet_star(alphabet: Alphabet, sub: Iterable[str]) -> StarFreeExpr:
    """B* over A, written as the complement of the union of ∅^c a ∅^c for a outside B."""
    keep = set(sub)
    outside = [s for s in alphabet.symbols if s not in keep]
    return complement(union(*(factor_atom((s,)) for s in outside)))


def piecewise_excluding(words: Iterable[Word]) -> StarFreeExpr:
    """Words avoiding every member of W as a scattered subword."""
    words = sorted({tuple(w) for w in words}, key=lambda w: (len(w), w))
    if () in words:
        return empty()
    return complement(union(*(scattered_atom(w) for w in words)))


def b3_alphabet() -> Alphabet:
    return Alphabet.from_letters("ab")


def b3_geodesic_expr() -> StarFreeExpr:
    """
    Geodesics of B3 = <a, b | aba = bab> over {a, b}±.
    A reduced word is geodesic unless it contains a positive and a negative
    length-two factor, or a Δ factor together with a negative letter, or a
    Δ^-1 factor together with a positive letter. Δ is spelled aba or bab.
    """
    positive_pairs = union(factor_atom(("a", "b")), factor_atom(("b", "a")))
    negative_pairs = union(factor_atom(("A", "B")), factor_atom(("B", "A")))
    delta = union(factor_atom(("a", "b", "a")), factor_atom(("b", "a", "b")))
    delta_inverse = union(factor_atom(("A", "B", "A")), factor_atom(("B", "A", "B")))
    negative_letter = union(factor_atom(("A",)), factor_atom(("B",)))
    positive_letter = union(factor_atom(("a",)), factor_atom(("b",)))
    return intersect(
        reduced_words(b3_alphabet()),
        complement(intersect(positive_pairs, negative_pairs)),
        complement(intersect(delta, negative_letter)),
        complement(intersect(delta_inverse, positive_letter)),
    )


# --- Rendering ---

_PRECEDENCE = {ExprKind.UNION: 1, ExprKind.INTERSECT: 2, ExprKind.CONCAT: 3, ExprKind.COMPLEMENT: 4}
_OPERATOR = {ExprKind.UNION: " | ", ExprKind.INTERSECT: " & ", ExprKind.CONCAT: "."}


def _token(symbol: str) -> str:
    return symbol if len(symbol) == 1 and symbol != "e" else f"[{symbol}]"


def _render(e: StarFreeExpr, outer: int) -> str:
    kind = e.kind
    if kind is ExprKind.EMPTY:
        return "0"
    if kind is ExprKind.EPSILON:
        return "e"
    if kind is ExprKind.LETTER:
        return _token(e.symbol)
    if kind is ExprKind.FINITE:
        items = [".".join(_token(s) for s in w) if w else "e" for w in e.words]
        return "{" + ", ".join(items) + "}"
    if kind is ExprKind.COMPLEMENT:
        return "!" + _render(e.children[0], _PRECEDENCE[kind])
    if not e.children:
        return {ExprKind.CONCAT: "e", ExprKind.UNION: "0", ExprKind.INTERSECT: "!0"}[kind]
    inner = _PRECEDENCE[kind]
    text = _OPERATOR[kind].join(_render(child, inner) for child in e.children)
    return f"({text})" if inner <= outer else text
