"""
Checking automata against the geodesic predicate, and probing families
u v^n w for the alternation that rules out star-freeness.
"""
import logging
from collections import deque
from typing import Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from automata.alphabet import Word
from automata.automaton import Dfa
from core.errors import AlphabetMismatchError, InputError
from geodesics.ball import GeodesicTester
from groups.presentation import is_cyclically_reduced, is_reduced

logger = logging.getLogger(__name__)


# --- Language verification ---

class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    matched: bool
    maxlen: int
    words_checked: int
    mismatch: Optional[Word] = Field(default=None, description="Shortlex-least word the two sides disagree on")
    automaton_accepts: Optional[bool] = None
    geodesic: Optional[bool] = None


def _live_states(d: Dfa) -> set[int]:
    """States from which some accepting state is reachable."""
    incoming: dict[int, list[int]] = {q: [] for q in range(d.n_states)}
    for p, row in enumerate(d.transitions):
        for q in row:
            incoming[q].append(p)
    live = set(d.accepting)
    queue = deque(live)
    while queue:
        q = queue.popleft()
        for p in incoming[q]:
            if p not in live:
                live.add(p)
                queue.append(p)
    return live


def verify_language(d: Dfa, tester: GeodesicTester, maxlen: int) -> VerificationReport:
    """
    Compare L(d) with the geodesic words of length at most maxlen.
    Words are visited in shortlex order; a non-geodesic word whose state
    cannot reach acceptance has no mismatching extension and is not expanded.
    """
    if d.alphabet.symbols != tester.alphabet.symbols:
        raise AlphabetMismatchError("automaton and group are over different alphabets")
    if maxlen < 0:
        raise InputError("maxlen must be non-negative")
    ball = tester.ball.extend(maxlen)
    live = _live_states(d)
    oracle = tester.oracle
    level = [((), oracle.identity(), d.start)]
    checked = 0
    for n in range(maxlen + 1):
        nxt = []
        for word, key, state in level:
            checked += 1
            geodesic = ball.length(key) == n
            accepted = state in d.accepting
            if geodesic != accepted:
                logger.info(f"mismatch at {d.alphabet.format_word(word)}: geodesic={geodesic}")
                return VerificationReport(matched=False, maxlen=maxlen, words_checked=checked, mismatch=word,
                                          automaton_accepts=accepted, geodesic=geodesic)
            if n == maxlen or (not geodesic and state not in live):
                continue
            for k, s in enumerate(d.alphabet.symbols):
                nxt.append((word + (s,), oracle.multiply(key, s), d.transitions[state][k]))
        level = nxt
    logger.debug(f"automaton matches the geodesics up to length {maxlen} ({checked} words)")
    return VerificationReport(matched=True, maxlen=maxlen, words_checked=checked)


def check_prefix_closure(d: Dfa) -> Optional[Word]:
    """Shortest accepted word with a rejected prefix, or None."""
    start = (d.start, d.start not in d.accepting)
    parent: dict[tuple, Optional[tuple]] = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        q, broken = node
        if broken and q in d.accepting:
            word = []
            while parent[node] is not None:
                node, s = parent[node]
                word.append(s)
            return tuple(reversed(word))
        for k, s in enumerate(d.alphabet.symbols):
            t = d.transitions[q][k]
            nxt = (t, broken or t not in d.accepting)
            if nxt not in parent:
                parent[nxt] = (node, s)
                queue.append(nxt)
    return None


def check_inverse_closure(d: Dfa, maxlen: int) -> Optional[Word]:
    """First word w with |w| <= maxlen accepted exactly when w^-1 is not."""
    alphabet = d.alphabet
    if not alphabet.is_inverse_closed:
        raise InputError("inverse closure needs an inverse-closed alphabet")
    for word in alphabet.words(maxlen):
        if d.accepts(word) != d.accepts(alphabet.invert(word)):
            return word
    return None


# --- Alternation probes ---

class ProbeResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    u: Word
    v: Word
    w: Word
    bits: tuple[bool, ...] = Field(description="Whether u v^n w is geodesic, n = 0..nmax")
    constant_tail: int = Field(description="Length of the final run of equal bits")
    alternating_tail: int = Field(description="Number of consecutive changes at the end of the vector")
    eventually_constant: bool = Field(description="The vector ends in a run of at least two equal bits")
    alternating: bool = Field(description="The vector ends with at least three consecutive changes")


def summarize(u: Word, v: Word, w: Word, bits: list[bool]) -> ProbeResult:
    run = 1
    while run < len(bits) and bits[-run - 1] == bits[-1]:
        run += 1
    changes = 0
    while changes + 1 < len(bits) and bits[-changes - 2] != bits[-changes - 1]:
        changes += 1
    return ProbeResult(u=u, v=v, w=w, bits=tuple(bits), constant_tail=run, alternating_tail=changes,
                       eventually_constant=run >= 2, alternating=changes >= 3)


def alternation_probe(tester: GeodesicTester, u: Word, v: Word, w: Word, nmax: int) -> ProbeResult:
    if nmax < 0:
        raise InputError("nmax must be non-negative")
    check = tester.alphabet.check_word
    u, v, w = check(tuple(u)), check(tuple(v)), check(tuple(w))
    bits = [tester.is_geodesic(u + v * n + w) for n in range(nmax + 1)]
    return summarize(u, v, w, bits)


def _reduced(tester: GeodesicTester, max_length: int, min_length: int = 0) -> list[Word]:
    alphabet = tester.alphabet
    return [word for word in alphabet.words(max_length, min_length) if is_reduced(word, alphabet)]


Move = tuple[Mapping[str, str], bool]


def _moves(tester: GeodesicTester, symmetries: Sequence[Mapping[str, str]], invert: bool) -> list[Move]:
    alphabet = tester.alphabet
    tables = [{s: s for s in alphabet.symbols}]
    for table in symmetries:
        if set(table) != set(alphabet.symbols):
            raise InputError("a letter symmetry must map every symbol of the alphabet")
        alphabet.check_word(tuple(table.values()))
        if table not in tables:
            tables.append(dict(table))
    return [(table, flip) for table in tables for flip in ((False, True) if invert else (False,))]


def _image(move: Move, u: Word, v: Word, w: Word, tester: GeodesicTester) -> tuple[Word, Word, Word]:
    table, flip = move
    u, v, w = (tuple(table[s] for s in x) for x in (u, v, w))
    if flip:
        invert = tester.alphabet.invert
        return invert(w), invert(v), invert(u)
    return u, v, w


def _tail_alternates(tester: GeodesicTester, u: Word, v: Word, w: Word, nmax: int) -> bool:
    previous = None
    for n in range(nmax, nmax - 4, -1):
        bit = tester.is_geodesic(u + v * n + w)
        if bit == previous:
            return False
        previous = bit
    return True


def alternation_scan(tester: GeodesicTester, max_u: int, max_v: int, max_w: int, nmax: int,
                     symmetries: Sequence[Mapping[str, str]] = ()) -> list[ProbeResult]:
    """
    Probe the triples within the bounds and return the alternating ones.

    u and w run over freely reduced words, v over cyclically reduced ones
    (otherwise v·v is not reduced and every bit from n = 2 on is 0). A triple
    whose u·v^(nmax-1), v^(nmax-1)·w or v·v is not geodesic ends in a run of
    zeros and is skipped. Triples are taken up to the letter symmetries given,
    which must form a group of length-preserving automorphisms, and, when
    max_u == max_w over an inverse-closed alphabet, up to the inversion
    (u, v, w) -> (w^-1, v^-1, u^-1). One triple per class is checked.
    """
    if min(max_u, max_v, max_w, nmax) < 0:
        raise InputError("scan bounds must be non-negative")
    if nmax < 3:
        return []
    alphabet = tester.alphabet
    rank = alphabet.sort_key
    moves = _moves(tester, symmetries, max_u == max_w and alphabet.is_inverse_closed)
    us, ws = _reduced(tester, max_u), _reduced(tester, max_w)
    vs = [v for v in _reduced(tester, max_v, 1) if is_cyclically_reduced(v, alphabet)]
    logger.info(f"scanning {len(us) * len(vs) * len(ws)} triples up to n = {nmax} "
                f"under {len(moves)} symmetries")

    found, checked = [], 0
    for v in vs:
        images = [(move, _image(move, (), v, (), tester)[1]) for move in moves]
        if any(rank(image) < rank(v) for _, image in images):
            continue
        if not tester.is_geodesic(v + v):
            continue
        stabilizer = [move for move, image in images if image == v]
        power = v * (nmax - 1)
        live_ws = [w for w in ws if tester.is_geodesic(power + w)]
        for u in us:
            if not tester.is_geodesic(u + power):
                continue
            for w in live_ws:
                if any((rank(iu), rank(iw)) < (rank(u), rank(w))
                       for iu, _, iw in (_image(m, u, v, w, tester) for m in stabilizer)):
                    continue
                checked += 1
                if not _tail_alternates(tester, u, v, w, nmax):
                    continue
                result = alternation_probe(tester, u, v, w, nmax)
                logger.info(f"alternating: u={u} v={v} w={w} bits={result.bits}")
                found.append(result)
    logger.info(f"checked {checked} triples; {len(found)} alternating")
    return found
