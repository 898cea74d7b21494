"""
B3 through its reduced Burau representation, faithful for three strands.

Entries are integer Laurent polynomials stored as (valuation, coefficients),
the coefficients in sympy's dense univariate layout, highest degree first.
"""
from sympy.polys.densearith import dup_add, dup_lshift, dup_mul
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import ZZ

from automata.alphabet import Alphabet
from core.errors import InputError
from groups.oracles import Key, WordOracle

Laurent = tuple[int, tuple[int, ...]]

ZERO: Laurent = (0, ())
ONE: Laurent = (0, (1,))


def monomial(coefficient: int, exponent: int) -> Laurent:
    return (exponent, (coefficient,)) if coefficient else ZERO


def _normalize(valuation: int, coefficients: list) -> Laurent:
    coefficients = dup_strip(list(coefficients))
    if not coefficients:
        return ZERO
    while coefficients[-1] == 0:
        coefficients.pop()
        valuation += 1
    return (valuation, tuple(int(c) for c in coefficients))


def laurent_add(p: Laurent, q: Laurent) -> Laurent:
    if not p[1]:
        return q
    if not q[1]:
        return p
    v = min(p[0], q[0])
    left = dup_lshift(list(p[1]), p[0] - v, ZZ)
    right = dup_lshift(list(q[1]), q[0] - v, ZZ)
    return _normalize(v, dup_add(left, right, ZZ))


def laurent_mul(p: Laurent, q: Laurent) -> Laurent:
    if not p[1] or not q[1]:
        return ZERO
    return _normalize(p[0] + q[0], dup_mul(list(p[1]), list(q[1]), ZZ))


def laurent_text(p: Laurent) -> str:
    if not p[1]:
        return "0"
    top = p[0] + len(p[1]) - 1
    terms = [f"{c}t^{top - i}" for i, c in enumerate(p[1]) if c]
    return " + ".join(terms)


Matrix2 = tuple[tuple[Laurent, Laurent], tuple[Laurent, Laurent]]


def mat_mul(x: Matrix2, y: Matrix2) -> Matrix2:
    return tuple(
        tuple(laurent_add(laurent_mul(x[i][0], y[0][j]), laurent_mul(x[i][1], y[1][j])) for j in range(2))
        for i in range(2)
    )


IDENTITY: Matrix2 = ((ONE, ZERO), (ZERO, ONE))

BURAU: dict[str, Matrix2] = {
    # σ1 = [[-t, 1], [0, 1]]
    "a": ((monomial(-1, 1), ONE), (ZERO, ONE)),
    "A": ((monomial(-1, -1), monomial(1, -1)), (ZERO, ONE)),
    # σ2 = [[1, 0], [t, -t]]
    "b": ((ONE, ZERO), (monomial(1, 1), monomial(-1, 1))),
    "B": ((ONE, ZERO), (ONE, monomial(-1, -1))),
}


class BurauOracle(WordOracle):
    """Words over {a, b}± with a = σ1, b = σ2; keys are Burau matrices."""
    name = "b3"

    def __init__(self, alphabet: Alphabet | None = None):
        super().__init__(alphabet or Alphabet.from_letters("ab"))
        if set(self.alphabet.symbols) != set(BURAU):
            raise InputError("the Burau oracle reads the alphabet a, A, b, B")

    def identity(self) -> Key:
        return IDENTITY

    def multiply(self, key: Key, symbol: str) -> Key:
        return mat_mul(key, BURAU[symbol])


GARSIDE_TOKENS = ("a", "b", "ab", "ba", "aba")


def garside_alphabet() -> Alphabet:
    """The divisors of Δ = aba and their inverses, each spelled as one token."""
    symbols, pairs = [], []
    for token in GARSIDE_TOKENS:
        inverse = token[::-1].upper()
        symbols += [token, inverse]
        pairs.append((token, inverse))
    return Alphabet(symbols=tuple(symbols), inverses=tuple(pairs))


def garside_images() -> dict[str, tuple[str, ...]]:
    images = {}
    for token in GARSIDE_TOKENS:
        images[token] = tuple(token)
        images[token[::-1].upper()] = tuple(token[::-1].upper())
    return images
