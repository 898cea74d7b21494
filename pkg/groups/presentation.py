"""
Group presentations, symmetrized relator sets, pieces and the small
cancellation conditions C'(λ) and T(q). Also Dehn's algorithm.
"""
import logging
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from automata.alphabet import Alphabet, Word
from core.errors import PreconditionError, PresentationError

logger = logging.getLogger(__name__)


# --- Words in free groups ---

def free_reduce(word: Iterable[str], alphabet: Alphabet) -> Word:
    inverse = alphabet.inverse_map
    stack: list[str] = []
    for s in word:
        if stack and inverse.get(stack[-1]) == s:
            stack.pop()
        else:
            stack.append(s)
    return tuple(stack)


def cyclic_reduce(word: Iterable[str], alphabet: Alphabet) -> Word:
    w = free_reduce(word, alphabet)
    inverse = alphabet.inverse_map
    i, j = 0, len(w) - 1
    while i < j and inverse.get(w[i]) == w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def is_reduced(word: Word, alphabet: Alphabet) -> bool:
    inverse = alphabet.inverse_map
    return all(inverse.get(x) != y for x, y in zip(word, word[1:]))


def is_cyclically_reduced(word: Word, alphabet: Alphabet) -> bool:
    return is_reduced(word, alphabet) and (len(word) < 2 or alphabet.inverse_map.get(word[-1]) != word[0])


def rotations(word: Word) -> list[Word]:
    return [word[i:] + word[:i] for i in range(len(word))]


def is_proper_power(word: Word) -> bool:
    n = len(word)
    return any(n % d == 0 and word == word[:d] * (n // d) for d in range(1, n // 2 + 1))


def base_generator(symbol: str, alphabet: Alphabet) -> str:
    """The generator of a symbol's inverse pair that comes first in the alphabet."""
    other = alphabet.inverse_map.get(symbol, symbol)
    return min(symbol, other, key=alphabet.index)


# --- Presentations ---

class Presentation(BaseModel):
    model_config = ConfigDict(frozen=True)

    generators: Alphabet = Field(description="Inverse-closed generating alphabet")
    relators: tuple[Word, ...] = Field(default=(), description="Freely and cyclically reduced relators")

    @model_validator(mode="after")
    def _check(self):
        if not self.generators.is_inverse_closed:
            raise PresentationError("presentation generators must be inverse-closed")
        for r in self.relators:
            self.generators.check_word(r)
            if not r or not is_cyclically_reduced(r, self.generators):
                raise PresentationError(f"relator {self.generators.format_word(r)} is not cyclically reduced")
        return self

    @classmethod
    def from_relators(cls, generators: Alphabet, relators: Iterable[Word]) -> "Presentation":
        """Build a presentation, reducing relators that are not cyclically reduced."""
        kept = []
        for r in relators:
            r = tuple(r)
            reduced = cyclic_reduce(generators.check_word(r), generators)
            if reduced != r:
                logger.warning(f"relator {generators.format_word(r)} reduced to {generators.format_word(reduced)}")
            if reduced and reduced not in kept:
                kept.append(reduced)
        return cls(generators=generators, relators=tuple(kept))

    def format(self) -> str:
        gens = [s for s in self.generators.symbols if base_generator(s, self.generators) == s]
        rels = ", ".join(self.generators.format_word(r) for r in self.relators)
        return f"< {' '.join(gens)} | {rels} >"


class SymmetrizedSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    words: tuple[Word, ...] = Field(description="All cyclic conjugates of R and R^-1, shortlex sorted")
    origin: Presentation


def symmetrize(p: Presentation) -> SymmetrizedSet:
    alphabet = p.generators
    closure = set()
    for r in p.relators:
        for w in (r, alphabet.invert(r)):
            closure.update(rotations(w))
    return SymmetrizedSet(words=tuple(sorted(closure, key=alphabet.sort_key)), origin=p)


def letter_symmetries(p: Presentation, max_generators: int = 6) -> list[dict[str, str]]:
    """
    Signed permutations of the generators that map R* onto itself, identity
    first. Each one induces a length-preserving automorphism of the group.
    Presentations with more than max_generators generators get the identity only.
    """
    alphabet = p.generators
    identity = {s: s for s in alphabet.symbols}
    bases = [s for s in alphabet.symbols if base_generator(s, alphabet) == s]
    if len(bases) > max_generators:
        logger.debug(f"{len(bases)} generators; not searching for letter symmetries")
        return [identity]
    inverse = alphabet.inverse_map
    relators = set(symmetrize(p).words)
    found = [identity]
    for targets in permutations(bases):
        for flips in product((False, True), repeat=len(bases)):
            table = {}
            for g, h, flip in zip(bases, targets, flips):
                table[g] = inverse[h] if flip else h
                table[inverse[g]] = inverse[table[g]]
            if any(table[inverse[s]] != inverse[table[s]] for s in alphabet.symbols):
                continue
            if table == identity or table in found:
                continue
            if {tuple(table[s] for s in r) for r in relators} == relators:
                found.append(table)
    return found


def _common_prefix(x: Word, y: Word) -> int:
    n = 0
    for a, b in zip(x, y):
        if a != b:
            break
        n += 1
    return n


def pieces(s: SymmetrizedSet) -> set[Word]:
    """Nonempty words that are prefixes of at least two distinct members of R*."""
    found = set()
    words = s.words
    for i, x in enumerate(words):
        for y in words[i + 1:]:
            n = _common_prefix(x, y)
            found.update(x[:k] for k in range(1, n + 1))
    return found


# --- C'(λ) ---

class CPrimeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    passed: bool
    lam: str = Field(description="The λ that was checked")
    critical_lambda: str = Field(description="max |piece| / |relator|; C'(λ) holds exactly for λ above it")
    max_piece_length: int
    piece: Optional[Word] = Field(default=None, description="A violating piece")
    relator: Optional[Word] = Field(default=None, description="The symmetrized relator it violates")


def check_c_prime(s: SymmetrizedSet, lam: Fraction) -> CPrimeReport:
    lam = Fraction(lam)
    if lam <= 0:
        raise PreconditionError("λ must be positive")
    critical = Fraction(0)
    longest = 0
    violation = None
    words = s.words
    for i, x in enumerate(words):
        for y in words[i + 1:]:
            n = _common_prefix(x, y)
            if n == 0:
                continue
            longest = max(longest, n)
            for r in (x, y):
                critical = max(critical, Fraction(n, len(r)))
                if violation is None and n >= lam * len(r):
                    violation = (x[:n], r)
    return CPrimeReport(
        passed=violation is None, lam=str(lam), critical_lambda=str(critical), max_piece_length=longest,
        piece=violation[0] if violation else None, relator=violation[1] if violation else None)


# --- T(q) ---

class TReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    passed: bool
    q: int
    violation: Optional[tuple[Word, ...]] = Field(
        default=None, description="r1..rh with no freely reduced cyclic product r_i r_(i+1)")


def check_t(s: SymmetrizedSet, q: int) -> TReport:
    if q <= 3:
        raise PreconditionError("T(q) needs q > 3")
    alphabet = s.origin.generators
    inverse = alphabet.inverse_map
    words = s.words
    inverses = {w: alphabet.invert(w) for w in words}
    # r -> r' when r r' is not freely reduced and r' is not r^-1
    follow = {
        r: [t for t in words if inverse[r[-1]] == t[0] and t != inverses[r]]
        for r in words
    }

    def walk(path: list[Word], h: int) -> Optional[list[Word]]:
        if len(path) == h:
            return path if path[0] in follow[path[-1]] else None
        for t in follow[path[-1]]:
            found = walk(path + [t], h)
            if found:
                return found
        return None

    for h in range(3, q):
        for r in words:
            cycle = walk([r], h)
            if cycle:
                return TReport(passed=False, q=q, violation=tuple(cycle))
    return TReport(passed=True, q=q)


# --- Dehn's algorithm ---

def dehn_reduce(p: Presentation, w: Word, checked: bool = False) -> Word:
    """Shorten w by replacing more than half of a relator by the rest of it."""
    alphabet = p.generators
    s = symmetrize(p)
    if not checked and p.relators and not check_c_prime(s, Fraction(1, 6)).passed:
        raise PreconditionError("Dehn's algorithm needs a C'(1/6) presentation")
    return dehn_reduce_symmetrized(s, free_reduce(alphabet.check_word(tuple(w)), alphabet))


def dehn_reduce_symmetrized(s: SymmetrizedSet, w: Word) -> Word:
    """Dehn reduction of a freely reduced word against a precomputed R*."""
    alphabet = s.origin.generators
    while True:
        best = None
        for i in range(len(w)):
            for r in s.words:
                n = _common_prefix(w[i:], r)
                if 2 * n > len(r) and (best is None or n > best[2]):
                    best = (i, r, n)
            if best is not None:
                break
        if best is None:
            return w
        i, r, n = best
        w = free_reduce(w[:i] + alphabet.invert(r[n:]) + w[i + n:], alphabet)
