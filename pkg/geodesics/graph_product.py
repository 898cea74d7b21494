"""
Geodesic automata for graph products.

Each vertex group comes with a minimal prefix-closed Dfa Fi of its geodesics.
F̂i reads the whole alphabet: letters of adjacent (commuting) vertices loop at
every state, letters of other vertices send accept states back to the start.
The graph product's geodesics are the intersection of all F̂i.
"""
import logging
from typing import Mapping

import networkx as nx
from pydantic import BaseModel, ConfigDict

from automata.alphabet import Alphabet
from automata.automaton import Connective, Dfa, add_loops, extend_alphabet, minimize, product
from core.errors import (AlphabetMismatchError, AlphabetOverlapError, InputError, NotMinimalError,
                         NotPrefixClosedError)

logger = logging.getLogger(__name__)


class GraphProductResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    dfa: Dfa
    hats: dict[str, Dfa]


def infinite_cyclic_geodesics(generator: str, inverse: str) -> Dfa:
    """Geodesics of ℤ = <x>: runs of x or runs of x^-1."""
    alphabet = Alphabet(symbols=(generator, inverse), inverses=((generator, inverse),))
    return Dfa(alphabet=alphabet, start=0, accepting=frozenset({0, 1, 2}),
               transitions=((1, 2), (1, 3), (3, 2), (3, 3)))


def union_alphabet(alphabets: list[Alphabet]) -> Alphabet:
    seen: dict[str, int] = {}
    for i, alphabet in enumerate(alphabets):
        for s in alphabet.symbols:
            if s in seen:
                raise AlphabetOverlapError(f"symbol {s!r} belongs to two vertex alphabets")
            seen[s] = i
    result = alphabets[0]
    for alphabet in alphabets[1:]:
        result = result.union(alphabet)
    return result


def _validate_vertex(vertex: str, d: Dfa) -> None:
    if minimize(d).n_states != d.n_states:
        raise NotMinimalError(f"vertex {vertex}: automaton is not minimal")
    if d.start not in d.accepting or not d.is_prefix_closed():
        raise NotPrefixClosedError(f"vertex {vertex}: automaton is not prefix-closed")


def hat(d: Dfa, alphabet: Alphabet, commuting: set[str]) -> Dfa:
    """F̂ over the full alphabet; `commuting` lists the letters that commute with d's letters."""
    def fill(q: int, symbol: str) -> int:
        if symbol in commuting:
            return q
        return d.start if q in d.accepting else q

    return extend_alphabet(d, alphabet, fill)


def graph_product(graph: nx.Graph, vertex_dfas: Mapping[str, Dfa]) -> GraphProductResult:
    vertices = sorted(graph.nodes)
    if not vertices:
        raise InputError("the graph has no vertices")
    if set(vertices) != set(vertex_dfas):
        raise AlphabetMismatchError("every vertex needs exactly one automaton")
    for v in vertices:
        _validate_vertex(v, vertex_dfas[v])
    alphabet = union_alphabet([vertex_dfas[v].alphabet for v in vertices])

    hats = {}
    result = None
    for v in vertices:
        commuting = {s for u in graph.neighbors(v) if u != v for s in vertex_dfas[u].alphabet.symbols}
        f = hat(vertex_dfas[v], alphabet, commuting)
        hats[v] = f
        result = f if result is None else minimize(product(result, f, Connective.AND))
    result = minimize(result)
    logger.info(f"graph product of {len(vertices)} vertices, {graph.number_of_edges()} edges: "
                f"{result.n_states} states")
    return GraphProductResult(dfa=result, hats=hats)


def direct_product_wrap(left: Dfa, right: Dfa) -> Dfa:
    """Words whose letters from each factor spell a word of that factor's language."""
    alphabet = union_alphabet([left.alphabet, right.alphabet])
    return minimize(product(add_loops(left, alphabet), add_loops(right, alphabet), Connective.AND))
