"""
One-relator groups whose relator is U·V with U and V over disjoint sets of
generators, such as surface groups of even genus. They split as the free
product F(left) *_C F(right) amalgamated over the cyclic group C = <z>, with
z spelled U on the left and V^-1 on the right.

Elements have the normal form z^k c1 ... cm: the ci alternate sides and each
is the shortlex-least word of its coset C·ci. Since |U| = |V|, a geodesic
never needs a syllable inside C, so exact lengths come from a dynamic
program over how powers of z are shared between neighbouring syllables.
"""
import logging
from collections import deque
from typing import Optional

from automata.alphabet import Word
from core.errors import PreconditionError
from groups.oracles import Key, WordOracle
from groups.presentation import (Presentation, base_generator, free_reduce, is_cyclically_reduced,
                                 is_proper_power, rotations)

logger = logging.getLogger(__name__)

LEFT, RIGHT = 0, 1


def find_split(relator: Word, presentation: Presentation) -> Optional[tuple[Word, Word]]:
    """First rotation U·V of the relator with |U| = |V| and disjoint generator sets."""
    alphabet = presentation.generators
    half = len(relator) // 2
    if len(relator) % 2:
        return None
    for rotated in rotations(relator):
        u, v = rotated[:half], rotated[half:]
        u_gens = {base_generator(s, alphabet) for s in u}
        v_gens = {base_generator(s, alphabet) for s in v}
        if u_gens & v_gens:
            continue
        if all(is_cyclically_reduced(w, alphabet) and not is_proper_power(w) for w in (u, v)):
            return u, v
    return None


class AmalgamOracle(WordOracle):
    name = "amalgam"

    def __init__(self, presentation: Presentation):
        super().__init__(presentation.generators)
        if len(presentation.relators) != 1:
            raise PreconditionError("the amalgam backend needs exactly one relator")
        split = find_split(presentation.relators[0], presentation)
        if split is None:
            raise PreconditionError(f"{presentation.format()} does not split as U·V over disjoint generators")
        u, v = split
        self.presentation = presentation
        self.ell = len(u)
        if self.ell < 4:
            raise PreconditionError("the amalgamated relator halves must have length at least 4")
        self.z = {LEFT: u, RIGHT: self.alphabet.invert(v)}
        left = {base_generator(s, self.alphabet) for s in u}
        self.side = {s: LEFT if base_generator(s, self.alphabet) in left else RIGHT for s in self.alphabet.symbols}
        self._reps: dict[tuple[int, Word], tuple[int, Word]] = {}
        self._costs: dict[tuple, int] = {}
        logger.debug(f"amalgam split: z = {self.alphabet.format_word(u)} = {self.alphabet.format_word(self.z[RIGHT])}")

    def _power(self, side: int, k: int) -> Word:
        z = self.z[side]
        return z * k if k >= 0 else self.alphabet.invert(z) * (-k)

    def _reduce(self, word: Word) -> Word:
        return free_reduce(word, self.alphabet)

    def coset_rep(self, side: int, e: Word) -> tuple[int, Word]:
        """(j, c) with e = z^j c and c the shortlex-least word in C·e."""
        if not e:
            return 0, ()
        memo_key = (side, e)
        if memo_key in self._reps:
            return self._reps[memo_key]
        bound = 2 * len(e) // self.ell + 1
        best = None
        for i in range(-bound, bound + 1):
            candidate = self._reduce(self._power(side, i) + e)
            rank = self.alphabet.sort_key(candidate)
            if best is None or rank < best[0]:
                best = (rank, i, candidate)
        result = (-best[1], best[2])
        self._reps[memo_key] = result
        return result

    def _syllables(self, word: Word) -> list[tuple[int, Word]]:
        parts: list[tuple[int, list[str]]] = []
        for s in word:
            side = self.side[s]
            if parts and parts[-1][0] == side:
                parts[-1][1].append(s)
            else:
                parts.append((side, [s]))
        return [(side, tuple(p)) for side, p in parts]

    def decompose(self, word: Word) -> tuple[int, tuple[Word, ...]]:
        """Normal form (k, (c1, ..., cm)) of a word, read right to left."""
        carry = 0
        right: deque[tuple[int, Word]] = deque()
        for side, syllable in reversed(self._syllables(self._reduce(word))):
            e = syllable + self._power(side, carry)
            if right and right[0][0] == side:
                e += right.popleft()[1]
            carry, c = self.coset_rep(side, self._reduce(e))
            if c:
                right.appendleft((side, c))
        return carry, tuple(c for _, c in right)

    def spell(self, key: Key) -> Word:
        carry, reps = key
        word = self._power(LEFT, carry)
        for c in reps:
            word += c
        return self._reduce(word)

    def identity(self) -> Key:
        return (0, ())

    def normal_form(self, word) -> Key:
        return self.decompose(self.alphabet.check_word(tuple(word)))

    def multiply(self, key: Key, symbol: str) -> Key:
        return self.decompose(self.spell(key) + (symbol,))

    def _cost(self, side: int, p: int, c: Word, q: int) -> int:
        memo_key = (side, p, c, q)
        if memo_key not in self._costs:
            word = self._power(side, p) + c + self._power(side, -q)
            self._costs[memo_key] = len(self._reduce(word))
        return self._costs[memo_key]

    def exact_length(self, word: Word) -> Optional[int]:
        w = self._reduce(self.alphabet.check_word(tuple(word)))
        carry, reps = self.decompose(w)
        if not reps:
            return self.ell * abs(carry)
        budget = len(w)
        reach = (budget + 2 * max(len(c) for c in reps) + 2 * self.ell) // self.ell + 1
        # best[a] = least length of a word for z^k c1 ... ci z^-a
        best = {carry: 0}
        for i, c in enumerate(reps):
            side = self.side[c[0]]
            targets = [0] if i == len(reps) - 1 else range(-reach, reach + 1)
            nxt: dict[int, int] = {}
            for p, cost in best.items():
                for q in targets:
                    total = cost + self._cost(side, p, c, q)
                    if total <= budget and total < nxt.get(q, budget + 1):
                        nxt[q] = total
            best = nxt
        return best[0]
