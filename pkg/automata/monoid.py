"""
Transition monoids of complete Dfas.
Run on a minimal Dfa this is the syntactic monoid of its language.
"""
import logging
from functools import lru_cache
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from automata.alphabet import Alphabet, Word
from automata.automaton import Dfa
from core.errors import BudgetExceeded
from utils.settings_manager import get_setting

logger = logging.getLogger(__name__)


class StateMap(BaseModel):
    """A total function on states, tagged with a shortest word inducing it."""
    model_config = ConfigDict(frozen=True)

    mapping: tuple[int, ...] = Field(description="mapping[q] is the image of state q")
    witness: Word = Field(description="Shortlex-least word inducing this mapping")

    def then(self, other: "StateMap") -> tuple[int, ...]:
        """Mapping of self followed by other."""
        return tuple(other.mapping[q] for q in self.mapping)


class TransitionMonoid(BaseModel):
    model_config = ConfigDict(frozen=True)

    alphabet: Alphabet = Field(description="Alphabet of the underlying Dfa")
    n_states: int = Field(description="State count of the underlying Dfa")
    elements: tuple[StateMap, ...] = Field(description="Elements in breadth-first order; elements[0] is the identity")
    generators: tuple[int, ...] = Field(description="Index of the element induced by each symbol, in alphabet order")

    @property
    def identity(self) -> StateMap:
        return self.elements[0]

    @property
    def size(self) -> int:
        return len(self.elements)

    def generator_map(self) -> dict[str, StateMap]:
        return {s: self.elements[i] for s, i in zip(self.alphabet.symbols, self.generators)}

    def index_of(self, mapping: tuple[int, ...]) -> Optional[int]:
        return _element_index(self).get(tuple(mapping))

    def compose(self, i: int, j: int) -> int:
        """Index of element i followed by element j."""
        return _element_index(self)[self.elements[i].then(self.elements[j])]

    def composition_table(self) -> list[list[int]]:
        return [[self.compose(i, j) for j in range(self.size)] for i in range(self.size)]

    def element_of(self, word: Word) -> StateMap:
        mapping = tuple(range(self.n_states))
        gens = self.generator_map()
        for s in word:
            mapping = tuple(gens[s].mapping[q] for q in mapping)
        return self.elements[_element_index(self)[mapping]]


@lru_cache(maxsize=16)
def _element_index(monoid: TransitionMonoid) -> dict[tuple[int, ...], int]:
    return {e.mapping: i for i, e in enumerate(monoid.elements)}


def transition_monoid(d: Dfa, max_elements: Optional[int] = None) -> TransitionMonoid:
    """Closure of the generator maps, breadth first from the identity."""
    limit = max_elements or get_setting("monoid_max_elements")
    n = d.n_states
    columns = [tuple(row[k] for row in d.transitions) for k in range(d.alphabet.size)]
    identity = tuple(range(n))
    index = {identity: 0}
    mappings = [identity]
    witnesses: list[Word] = [()]
    for i, m in enumerate(mappings):
        for column, symbol in zip(columns, d.alphabet.symbols):
            nxt = tuple(column[q] for q in m)
            if nxt in index:
                continue
            if len(mappings) >= limit:
                raise BudgetExceeded("monoid_max_elements", limit, len(witnesses[i]) + 1)
            index[nxt] = len(mappings)
            mappings.append(nxt)
            witnesses.append(witnesses[i] + (symbol,))
    logger.debug(f"transition monoid: {len(mappings)} elements over {n} states")
    return TransitionMonoid(
        alphabet=d.alphabet,
        n_states=n,
        elements=tuple(StateMap(mapping=m, witness=w) for m, w in zip(mappings, witnesses)),
        generators=tuple(index[c] for c in columns),
    )
