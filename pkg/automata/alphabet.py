"""
Alphabets and words.
A word is a tuple of symbol tokens; tokens may be longer than one character.
"""
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.errors import AlphabetMismatchError, InputError

Word = tuple[str, ...]


EMPTY_WORD_TEXT = ("", "ε")


@lru_cache(maxsize=None)
def _positions(symbols: tuple) -> dict:
    return {s: i for i, s in enumerate(symbols)}


@lru_cache(maxsize=None)
def _inverse_map(pairs: tuple) -> dict:
    inverse = {}
    for x, y in pairs:
        inverse[x] = y
        inverse[y] = x
    return inverse


class Alphabet(BaseModel):
    """Finite ordered symbol set with an optional involutive inverse pairing."""
    model_config = ConfigDict(frozen=True)

    symbols: tuple[str, ...] = Field(description="Ordered distinct printable tokens")
    inverses: Optional[tuple[tuple[str, str], ...]] = Field(
        default=None, description="Pairs (x, x^-1); a symbol paired with itself is an involution")

    @model_validator(mode="after")
    def _check(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise InputError(f"alphabet symbols are not distinct: {self.symbols}")
        if any(not s or any(ch.isspace() for ch in s) or "." in s for s in self.symbols):
            raise InputError(f"alphabet symbols must be non-empty tokens without spaces or dots: {self.symbols}")
        if self.inverses is not None:
            seen = {}
            for x, y in self.inverses:
                if x not in self.symbols or y not in self.symbols:
                    raise InputError(f"inverse pair ({x}, {y}) uses unknown symbols")
                for a, b in ((x, y), (y, x)):
                    if seen.setdefault(a, b) != b:
                        raise InputError(f"symbol {a} has two inverses")
        return self

    # --- Construction ---

    @classmethod
    def from_letters(cls, letters: Iterable[str]) -> "Alphabet":
        """Inverse-closed alphabet: each lowercase letter x is paired with X (its formal inverse)."""
        symbols, pairs = [], []
        for x in letters:
            symbols += [x, x.upper()]
            pairs.append((x, x.upper()))
        return cls(symbols=tuple(symbols), inverses=tuple(pairs))

    @classmethod
    def plain(cls, symbols: Iterable[str]) -> "Alphabet":
        return cls(symbols=tuple(symbols))

    # --- Lookups ---

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        return self._positions()[symbol]

    def _positions(self) -> dict:
        return _positions(self.symbols)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._positions()

    @property
    def inverse_map(self) -> dict[str, str]:
        return _inverse_map(self.inverses or ())

    @property
    def is_inverse_closed(self) -> bool:
        return all(s in self.inverse_map for s in self.symbols)

    def inverse(self, symbol: str) -> str:
        try:
            return self.inverse_map[symbol]
        except KeyError:
            raise InputError(f"symbol {symbol} has no inverse in this alphabet") from None

    def invert(self, word: Word) -> Word:
        inv = self.inverse_map
        try:
            return tuple(inv[s] for s in reversed(word))
        except KeyError as e:
            raise InputError(f"symbol {e.args[0]} has no inverse in this alphabet") from None

    def sub(self, symbols: Iterable[str]) -> "Alphabet":
        """Sub-alphabet in this alphabet's order, keeping pairs that stay inside it."""
        chosen = set(symbols)
        missing = chosen - set(self.symbols)
        if missing:
            raise AlphabetMismatchError(f"symbols {sorted(missing)} not in alphabet")
        ordered = tuple(s for s in self.symbols if s in chosen)
        pairs = None
        if self.inverses is not None:
            pairs = tuple((x, y) for x, y in self.inverses if x in chosen and y in chosen)
        return Alphabet(symbols=ordered, inverses=pairs)

    def union(self, other: "Alphabet") -> "Alphabet":
        """Concatenate two disjoint alphabets."""
        pairs = None
        if self.inverses is not None or other.inverses is not None:
            pairs = (self.inverses or ()) + (other.inverses or ())
        return Alphabet(symbols=self.symbols + other.symbols, inverses=pairs)

    # --- Words ---

    def check_word(self, word: Word) -> Word:
        pos = self._positions()
        for s in word:
            if s not in pos:
                raise AlphabetMismatchError(f"symbol {s!r} not in alphabet {list(self.symbols)}")
        return tuple(word)

    def sort_key(self, word: Word) -> tuple:
        """Shortlex key: length first, then alphabet order."""
        pos = self._positions()
        return (len(word), tuple(pos[s] for s in word))

    def words(self, max_length: int, min_length: int = 0) -> Iterator[Word]:
        """All words up to max_length in shortlex order."""
        for n in range(min_length, max_length + 1):
            yield from product(self.symbols, repeat=n)

    def parse_word(self, text: str) -> Word:
        """Parse a word: separators '.' or whitespace, or one character per symbol."""
        text = text.strip()
        if text in EMPTY_WORD_TEXT or (text in ("e", "1") and text not in self):
            return ()
        if "." in text or any(ch.isspace() for ch in text):
            tokens = [t for t in text.replace(".", " ").split()]
            return self.check_word(tuple(tokens))
        if all(len(s) == 1 for s in self.symbols):
            return self.check_word(tuple(text))
        if text in self:
            return (text,)
        raise InputError(f"cannot split {text!r}: separate multi-character symbols with '.'")

    def format_word(self, word: Word) -> str:
        if not word:
            return "ε"
        if all(len(s) == 1 for s in self.symbols):
            return "".join(word)
        return ".".join(word)
