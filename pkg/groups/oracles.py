"""
Word-problem oracles.
Every oracle maps words over its alphabet to hashable canonical keys, one
symbol at a time, so balls and verifiers can extend keys incrementally.
"""
import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, Optional

import networkx as nx
from sympy import Matrix
from sympy.combinatorics import Permutation

from automata.alphabet import Alphabet, Word
from core.errors import InputError, PreconditionError
from groups.presentation import (Presentation, base_generator, check_c_prime, dehn_reduce_symmetrized,
                                 free_reduce, symmetrize)

logger = logging.getLogger(__name__)

Key = Hashable


class WordOracle(ABC):
    """Exact word problem: normal_form(u) == normal_form(v) iff u and v are equal in the group."""
    name = "oracle"

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet

    @abstractmethod
    def identity(self) -> Key:
        ...

    @abstractmethod
    def multiply(self, key: Key, symbol: str) -> Key:
        """Key of (element of key) · symbol."""

    def normal_form(self, word: Iterable[str]) -> Key:
        key = self.identity()
        for s in self.alphabet.check_word(tuple(word)):
            key = self.multiply(key, s)
        return key

    def equal(self, u: Word, v: Word) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def exact_length(self, word: Word) -> Optional[int]:
        """Geodesic length of the element, when the backend can compute it directly."""
        return None


class FreeOracle(WordOracle):
    name = "free"

    def identity(self) -> Key:
        return ()

    def multiply(self, key: Key, symbol: str) -> Key:
        if key and self.alphabet.inverse_map.get(key[-1]) == symbol:
            return key[:-1]
        return key + (symbol,)

    def exact_length(self, word: Word) -> Optional[int]:
        return len(self.normal_form(word))


class AbelianOracle(WordOracle):
    """Finitely generated abelian group ℤ/n1 × ... with 0 meaning ℤ."""
    name = "abelian"

    def __init__(self, alphabet: Alphabet, orders: Iterable[int],
                 images: Optional[Mapping[str, Iterable[int]]] = None):
        super().__init__(alphabet)
        self.orders = tuple(orders)
        if any(n < 0 for n in self.orders):
            raise InputError("orders must be non-negative (0 stands for ℤ)")
        if images is None:
            images = self._standard_images()
        self.images = {s: self.reduce_vector(tuple(v)) for s, v in images.items()}
        missing = set(alphabet.symbols) - set(self.images)
        if missing:
            raise InputError(f"no image for symbols {sorted(missing)}")
        if any(len(v) != len(self.orders) for v in self.images.values()):
            raise InputError("every image needs one coordinate per factor")

    def _standard_images(self) -> dict[str, tuple[int, ...]]:
        bases = [s for s in self.alphabet.symbols if base_generator(s, self.alphabet) == s]
        if len(bases) != len(self.orders):
            raise InputError(f"{len(bases)} generators for {len(self.orders)} factors; give images explicitly")
        images = {}
        for i, s in enumerate(bases):
            unit = tuple(int(j == i) for j in range(len(bases)))
            images[s] = unit
            if s in self.alphabet.inverse_map and self.alphabet.inverse(s) != s:
                images[self.alphabet.inverse(s)] = tuple(-x for x in unit)
        return images

    def reduce_vector(self, vector: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(x % n if n else x for x, n in zip(vector, self.orders))

    def identity(self) -> Key:
        return (0,) * len(self.orders)

    def multiply(self, key: Key, symbol: str) -> Key:
        return self.reduce_vector(tuple(x + y for x, y in zip(key, self.images[symbol])))


class FiniteGroupOracle(WordOracle):
    """Permutation group; a word acts left to right."""
    name = "finite"

    def __init__(self, alphabet: Alphabet, images: Mapping[str, Permutation]):
        super().__init__(alphabet)
        images = dict(images)
        for s in alphabet.symbols:
            if s not in images and s in alphabet.inverse_map and alphabet.inverse(s) in images:
                images[s] = ~images[alphabet.inverse(s)]
        missing = set(alphabet.symbols) - set(images)
        if missing:
            raise InputError(f"no permutation for symbols {sorted(missing)}")
        self.degree = max(p.size for p in images.values())
        self.images = {s: tuple(Permutation(p.array_form, size=self.degree).array_form) for s, p in images.items()}

    def identity(self) -> Key:
        return tuple(range(self.degree))

    def multiply(self, key: Key, symbol: str) -> Key:
        image = self.images[symbol]
        return tuple(image[i] for i in key)


class SubstitutionOracle(WordOracle):
    """Rewrite each symbol as a word over an inner oracle's alphabet and defer to it."""
    name = "subst"

    def __init__(self, alphabet: Alphabet, inner: WordOracle, images: Mapping[str, Word]):
        super().__init__(alphabet)
        self.inner = inner
        table = {s: tuple(w) for s, w in images.items()}
        for s in alphabet.symbols:
            if s in table:
                continue
            partner = alphabet.inverse_map.get(s)
            if partner in images:
                table[s] = inner.alphabet.invert(tuple(images[partner]))
            elif s in inner.alphabet:
                table[s] = (s,)
            else:
                raise InputError(f"symbol {s!r} has no substitution and is not an inner symbol")
        for w in table.values():
            inner.alphabet.check_word(w)
        self.images = table

    def identity(self) -> Key:
        return self.inner.identity()

    def multiply(self, key: Key, symbol: str) -> Key:
        for s in self.images[symbol]:
            key = self.inner.multiply(key, s)
        return key


class DehnOracle(WordOracle):
    """C'(1/6) presentations. Normal form is the shortlex-least geodesic; desk scale only."""
    name = "dehn"

    def __init__(self, presentation: Presentation):
        super().__init__(presentation.generators)
        self.presentation = presentation
        self.symmetrized = symmetrize(presentation)
        if presentation.relators and not check_c_prime(self.symmetrized, Fraction(1, 6)).passed:
            raise PreconditionError(f"{presentation.format()} is not C'(1/6)")
        self._forms: dict[Word, Word] = {}

    def reduce(self, word: Word) -> Word:
        return dehn_reduce_symmetrized(self.symmetrized, free_reduce(word, self.alphabet))

    def equal(self, u: Word, v: Word) -> bool:
        return self.reduce(tuple(u) + self.alphabet.invert(tuple(v))) == ()

    def identity(self) -> Key:
        return ()

    def normal_form(self, word: Iterable[str]) -> Key:
        word = self.reduce(self.alphabet.check_word(tuple(word)))
        if word not in self._forms:
            self._forms[word] = self._least_geodesic(word)
        return self._forms[word]

    def _least_geodesic(self, word: Word) -> Word:
        for n in range(len(word) + 1):
            for candidate in iter_reduced_words(self.alphabet, n):
                if self.equal(candidate, word):
                    return candidate
        return word

    def multiply(self, key: Key, symbol: str) -> Key:
        return self.normal_form(key + (symbol,))

    def exact_length(self, word: Word) -> Optional[int]:
        return len(self.normal_form(word))


def iter_reduced_words(alphabet: Alphabet, length: int) -> Iterator[Word]:
    """Freely reduced words of the given length in lexicographic order."""
    inverse = alphabet.inverse_map
    if length == 0:
        yield ()
        return
    for shorter in iter_reduced_words(alphabet, length - 1):
        for s in alphabet.symbols:
            if not shorter or inverse.get(shorter[-1]) != s:
                yield shorter + (s,)


class RaagOracle(WordOracle):
    """Right-angled Artin group of a commutation graph, keyed by its piling."""
    name = "raag"

    def __init__(self, graph: nx.Graph, alphabet: Optional[Alphabet] = None):
        vertices = sorted(graph.nodes)
        super().__init__(alphabet or Alphabet.from_letters(vertices))
        self.graph = graph
        self.vertices = vertices
        self.lookup = {}
        for i, v in enumerate(vertices):
            self.lookup[v] = (i, 1)
            self.lookup[self.alphabet.inverse(v)] = (i, -1)
        self.blocking = [
            [j for j, u in enumerate(vertices) if u != v and not graph.has_edge(u, v)]
            for v in vertices
        ]

    def identity(self) -> Key:
        return ((),) * len(self.vertices)

    def multiply(self, key: Key, symbol: str) -> Key:
        i, sign = self.lookup[symbol]
        piles = list(key)
        if piles[i] and piles[i][-1] == -sign:
            for j in self.blocking[i] + [i]:
                piles[j] = piles[j][:-1]
        else:
            piles[i] = piles[i] + (sign,)
            for j in self.blocking[i]:
                piles[j] = piles[j] + (0,)
        return tuple(piles)


class AffineOracle(WordOracle):
    """Groups of integer affine maps x -> Mx + b; a word composes its maps left to right."""
    name = "affine"

    def __init__(self, alphabet: Alphabet, images: Mapping[str, tuple]):
        super().__init__(alphabet)
        table = {}
        for s, (m, b) in images.items():
            table[s] = (tuple(tuple(row) for row in m), tuple(b))
        for s in alphabet.symbols:
            partner = alphabet.inverse_map.get(s)
            if s not in table and partner in table:
                table[s] = self._invert(*table[partner])
        missing = set(alphabet.symbols) - set(table)
        if missing:
            raise InputError(f"no affine map for symbols {sorted(missing)}")
        self.images = table
        self.dim = len(next(iter(table.values()))[1])

    @staticmethod
    def _invert(m: tuple, b: tuple) -> tuple:
        inverse = Matrix(m).inv()
        if any(not x.is_integer for x in inverse):
            raise InputError("affine generator is not invertible over the integers")
        shift = -inverse * Matrix(b)
        return (tuple(tuple(int(x) for x in inverse.row(i)) for i in range(inverse.rows)),
                tuple(int(x) for x in shift))

    def identity(self) -> Key:
        n = self.dim
        return (tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), (0,) * n)

    def multiply(self, key: Key, symbol: str) -> Key:
        m, b = key
        mg, bg = self.images[symbol]
        n = self.dim
        product = tuple(tuple(sum(m[i][k] * mg[k][j] for k in range(n)) for j in range(n)) for i in range(n))
        shift = tuple(sum(m[i][k] * bg[k] for k in range(n)) + b[i] for i in range(n))
        return (product, shift)

    def is_translation(self, key: Key) -> bool:
        return key[0] == self.identity()[0]
