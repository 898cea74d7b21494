"""
Named groups used throughout the examples, plus construction of a group
from a parsed presentation file and its oracle directive.
"""
import logging
import re
from fractions import Fraction
from typing import Callable, Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from automata.alphabet import Alphabet, Word
from core.errors import InputError, PresentationError
from groups.amalgam import AmalgamOracle, find_split
from groups.braid import BurauOracle, garside_alphabet, garside_images
from groups.oracles import (AbelianOracle, AffineOracle, DehnOracle, FreeOracle, Key, RaagOracle,
                            SubstitutionOracle, WordOracle)
from groups.presentation import Presentation, base_generator, check_c_prime, letter_symmetries, symmetrize

logger = logging.getLogger(__name__)


class CatalogGroup(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    description: str
    alphabet: Alphabet = Field(description="Generating set the geodesics are taken over")
    oracle: WordOracle
    presentation: Optional[Presentation] = None
    normal_subgroup: Optional[Callable[[Key], bool]] = Field(
        default=None, description="Membership test for a finite-index abelian normal subgroup N")

    def symmetries(self) -> list[dict[str, str]]:
        """Letter symmetries of the presentation, when it is over the same alphabet."""
        if self.presentation is None or self.presentation.generators.symbols != self.alphabet.symbols:
            return []
        return letter_symmetries(self.presentation)


def _letters(n: int) -> str:
    return "abcdefghijklmnopqrstuvwxyz"[:n]


def free_group(rank: int) -> CatalogGroup:
    alphabet = Alphabet.from_letters(_letters(rank))
    return CatalogGroup(name=f"free{rank}", description=f"free group of rank {rank}",
                        alphabet=alphabet, oracle=FreeOracle(alphabet),
                        presentation=Presentation(generators=alphabet))


def free_abelian(rank: int) -> CatalogGroup:
    alphabet = Alphabet.from_letters(_letters(rank))
    name = "z" if rank == 1 else f"z{rank}"
    return CatalogGroup(name=name, description=f"free abelian group of rank {rank}, standard generators",
                        alphabet=alphabet, oracle=AbelianOracle(alphabet, [0] * rank))


def cyclic_monoid(n: int) -> CatalogGroup:
    alphabet = Alphabet.plain("a")
    return CatalogGroup(name=f"cyclic{n}", description=f"ℤ/{n} with the single monoid generator a ↦ 1",
                        alphabet=alphabet, oracle=AbelianOracle(alphabet, [n], {"a": [1]}))


def z_plus_minus() -> CatalogGroup:
    alphabet = Alphabet.plain("ab")
    return CatalogGroup(name="z-pm", description="ℤ with monoid generators a ↦ +1, b ↦ -1",
                        alphabet=alphabet, oracle=AbelianOracle(alphabet, [0], {"a": [1], "b": [-1]}))


def z3_times_z() -> CatalogGroup:
    alphabet = Alphabet(symbols=("x", "t", "T"), inverses=(("t", "T"),))
    oracle = AbelianOracle(alphabet, [3, 0], {"x": [1, 0], "t": [0, 1], "T": [0, -1]})
    return CatalogGroup(name="z3xz", description="ℤ/3 × ℤ with monoid generator x on the first factor",
                        alphabet=alphabet, oracle=oracle)


def surface_group(genus: int) -> CatalogGroup:
    alphabet = Alphabet.from_letters(_letters(2 * genus))
    relator = []
    for i in range(genus):
        x, y = _letters(2 * genus)[2 * i:2 * i + 2]
        relator += [x, y, x.upper(), y.upper()]
    presentation = Presentation(generators=alphabet, relators=(tuple(relator),))
    if find_split(presentation.relators[0], presentation) is not None:
        oracle: WordOracle = AmalgamOracle(presentation)
    else:
        oracle = DehnOracle(presentation)
    return CatalogGroup(name=f"genus{genus}", description=f"fundamental group of the closed genus-{genus} surface",
                        alphabet=alphabet, oracle=oracle, presentation=presentation)


def eliminated_free_group() -> CatalogGroup:
    """<a,b,c,d,r,s | ba²d = rcs, bd = s>, free on a, b, c, d once r and s are eliminated."""
    alphabet = Alphabet.from_letters("abcdrs")
    presentation = Presentation(generators=alphabet, relators=(tuple("baadSCR"), tuple("bdS")))
    inner = FreeOracle(Alphabet.from_letters("abcd"))
    oracle = SubstitutionOracle(alphabet, inner, {"r": tuple("baaBC"), "s": tuple("bd")})
    return CatalogGroup(name="free4-elim", description="six-generator presentation of the free group of rank 4",
                        alphabet=alphabet, oracle=oracle, presentation=presentation)


def braid_group() -> CatalogGroup:
    alphabet = Alphabet.from_letters("ab")
    presentation = Presentation(generators=alphabet, relators=(tuple("abaBAB"),))
    return CatalogGroup(name="b3", description="B3 = <a, b | aba = bab> on the standard generators",
                        alphabet=alphabet, oracle=BurauOracle(alphabet), presentation=presentation)


def braid_group_garside() -> CatalogGroup:
    alphabet = garside_alphabet()
    oracle = SubstitutionOracle(alphabet, BurauOracle(), garside_images())
    return CatalogGroup(name="b3-garside", description="B3 on the divisors of Δ = aba and their inverses",
                        alphabet=alphabet, oracle=oracle)


def infinite_dihedral() -> CatalogGroup:
    """D∞ = <t, s | s², stst> acting on ℤ by t: x ↦ x + 1 and s: x ↦ -x."""
    alphabet = Alphabet(symbols=("t", "T", "s"), inverses=(("t", "T"), ("s", "s")))
    oracle = AffineOracle(alphabet, {"t": (((1,),), (1,)), "s": (((-1,),), (0,))})
    presentation = Presentation(generators=alphabet, relators=(tuple("tsts"),))
    return CatalogGroup(name="dinf", description="infinite dihedral group, N = <t>",
                        alphabet=alphabet, oracle=oracle, presentation=presentation,
                        normal_subgroup=oracle.is_translation)


def z_times_z2() -> CatalogGroup:
    """ℤ × ℤ/2 = <t, s | s², [t, s]> as affine maps of ℤ², N = <t>."""
    alphabet = Alphabet(symbols=("t", "T", "s"), inverses=(("t", "T"), ("s", "s")))
    oracle = AffineOracle(alphabet, {
        "t": (((1, 0), (0, 1)), (1, 0)),
        "s": (((1, 0), (0, -1)), (0, 0)),
    })
    return CatalogGroup(name="zxz2", description="ℤ × ℤ/2, N = <t>", alphabet=alphabet, oracle=oracle,
                        normal_subgroup=oracle.is_translation)


def raag(graph: nx.Graph, name: str = "raag") -> CatalogGroup:
    oracle = RaagOracle(graph)
    edges = ", ".join(f"{u}-{v}" for u, v in sorted(graph.edges))
    return CatalogGroup(name=name, description=f"right-angled Artin group with commuting pairs {edges or 'none'}",
                        alphabet=oracle.alphabet, oracle=oracle)


def path_raag(n: int = 3) -> CatalogGroup:
    return raag(nx.path_graph(list(_letters(n))), name=f"raag-path{n}")


_FIXED = {
    "z-pm": z_plus_minus,
    "z3xz": z3_times_z,
    "free4-elim": eliminated_free_group,
    "b3": braid_group,
    "b3-garside": braid_group_garside,
    "dinf": infinite_dihedral,
    "zxz2": z_times_z2,
}

_PATTERNS = [
    (re.compile(r"free(\d+)$"), free_group),
    (re.compile(r"z$"), lambda: free_abelian(1)),
    (re.compile(r"z(\d+)$"), free_abelian),
    (re.compile(r"cyclic(\d+)$"), cyclic_monoid),
    (re.compile(r"genus(\d+)$"), surface_group),
    (re.compile(r"raag-path(\d+)$"), path_raag),
]

CATALOG_NAMES = sorted(_FIXED) + ["free<n>", "z", "z<n>", "cyclic<n>", "genus<g>", "raag-path<n>"]


def lookup(name: str) -> CatalogGroup:
    if name in _FIXED:
        return _FIXED[name]()
    for pattern, build in _PATTERNS:
        match = pattern.match(name)
        if match:
            return build(*(int(g) for g in match.groups()))
    raise InputError(f"unknown group {name!r}; known: {', '.join(CATALOG_NAMES)}")


# --- Groups from presentation files ---

def build_group(presentation: Presentation, directive: Optional[str] = None,
                orders: Optional[dict[str, int]] = None, name: str = "presentation") -> CatalogGroup:
    """Pick the oracle a presentation file asks for and check its relators against it."""
    alphabet = presentation.generators
    directive = (directive or "").strip()
    kind = directive.split("(")[0].split()[0] if directive else ""
    if not kind:
        if not presentation.relators:
            kind = "free"
        elif check_c_prime(symmetrize(presentation), Fraction(1, 6)).passed:
            kind = "dehn"
        else:
            raise PresentationError("no oracle directive and the presentation is not C'(1/6)")

    if kind == "free":
        oracle: WordOracle = FreeOracle(alphabet)
    elif kind == "abelian":
        bases = [s for s in alphabet.symbols if base_generator(s, alphabet) == s]
        oracle = AbelianOracle(alphabet, [(orders or {}).get(g, 0) for g in bases])
    elif kind == "b3":
        oracle = BurauOracle(alphabet)
    elif kind == "dehn":
        oracle = DehnOracle(presentation)
    elif kind == "amalgam":
        oracle = AmalgamOracle(presentation)
    elif kind == "subst":
        oracle = _substitution(alphabet, directive)
    else:
        raise PresentationError(f"unknown oracle directive {directive!r}")

    for r in presentation.relators:
        if oracle.normal_form(r) != oracle.identity():
            raise PresentationError(f"relator {alphabet.format_word(r)} is not trivial under the {kind} oracle")
    return CatalogGroup(name=name, description=presentation.format(), alphabet=alphabet,
                        oracle=oracle, presentation=presentation)


def _substitution(alphabet: Alphabet, directive: str) -> SubstitutionOracle:
    body = directive[len("subst"):].strip().strip("()")
    images: dict[str, Word] = {}
    for item in re.split(r"[\s,;]+", body):
        if not item:
            continue
        if "=" not in item:
            raise PresentationError(f"bad substitution {item!r}; expected symbol=word")
        symbol, word = item.split("=", 1)
        images[symbol.strip()] = tuple(word.strip())
    kept = [s for s in alphabet.symbols
            if base_generator(s, alphabet) == s and s not in images]
    inner = FreeOracle(Alphabet.from_letters(kept))
    return SubstitutionOracle(alphabet, inner, images)
