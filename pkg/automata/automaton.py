"""
Complete deterministic finite automata.
Boolean algebra, concatenation, minimization and a few alphabet
manipulations. Every operation returns a new Dfa; nothing is mutated.
"""
from collections import deque
from enum import Enum
from typing import Callable, Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from automata.alphabet import Alphabet, Word
from core.errors import AlphabetMismatchError, InputError


class Connective(str, Enum):
    AND = "and"
    OR = "or"
    XOR = "xor"
    DIFF = "diff"

    def combine(self, left: bool, right: bool) -> bool:
        if self is Connective.AND:
            return left and right
        if self is Connective.OR:
            return left or right
        if self is Connective.XOR:
            return left != right
        return left and not right


class Dfa(BaseModel):
    """Complete DFA: the transition table is total."""
    model_config = ConfigDict(frozen=True)

    alphabet: Alphabet = Field(description="Input alphabet; columns of the table follow its order")
    start: int = Field(description="Start state index")
    accepting: frozenset[int] = Field(description="Accepting state indices")
    transitions: tuple[tuple[int, ...], ...] = Field(description="Row per state, column per symbol")

    @model_validator(mode="after")
    def _check_complete(self):
        n, k = len(self.transitions), self.alphabet.size
        if n == 0:
            raise InputError("a Dfa needs at least one state")
        if not 0 <= self.start < n:
            raise InputError(f"start state {self.start} out of range")
        if any(not 0 <= q < n for q in self.accepting):
            raise InputError("accepting state out of range")
        for q, row in enumerate(self.transitions):
            if len(row) != k:
                raise InputError(f"state {q} has {len(row)} transitions, expected {k}")
            if any(not 0 <= t < n for t in row):
                raise InputError(f"state {q} has a transition out of range")
        return self

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def step(self, state: int, symbol: str) -> int:
        return self.transitions[state][self.alphabet.index(symbol)]

    def run(self, word: Iterable[str], state: Optional[int] = None) -> int:
        pos = self.alphabet._positions()
        q = self.start if state is None else state
        try:
            for s in word:
                q = self.transitions[q][pos[s]]
        except KeyError as e:
            raise AlphabetMismatchError(f"symbol {e.args[0]!r} not in alphabet") from None
        return q

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.accepting

    def reachable(self) -> list[int]:
        """Reachable states in breadth-first discovery order."""
        seen = {self.start}
        order = [self.start]
        for q in order:
            for t in self.transitions[q]:
                if t not in seen:
                    seen.add(t)
                    order.append(t)
        return order

    def access_words(self) -> dict[int, Word]:
        """Shortlex-least word reaching each reachable state."""
        words = {self.start: ()}
        queue = deque([self.start])
        while queue:
            q = queue.popleft()
            for symbol, t in zip(self.alphabet.symbols, self.transitions[q]):
                if t not in words:
                    words[t] = words[q] + (symbol,)
                    queue.append(t)
        return words

    def is_prefix_closed(self) -> bool:
        """No accepting state is reachable from a reachable rejecting state."""
        live = set(self.accepting)
        changed = True
        while changed:
            changed = False
            for q, row in enumerate(self.transitions):
                if q not in live and any(t in live for t in row):
                    live.add(q)
                    changed = True
        return all(q in self.accepting or q not in live for q in self.reachable())

    def is_empty(self) -> bool:
        return not any(q in self.accepting for q in self.reachable())

    # --- Serialization ---

    def to_dict(self) -> dict:
        data = {
            "alphabet": list(self.alphabet.symbols),
            "states": self.n_states,
            "start": self.start,
            "accepting": sorted(self.accepting),
            "transitions": [list(row) for row in self.transitions],
        }
        if self.alphabet.inverses is not None:
            data["inverses"] = [list(p) for p in self.alphabet.inverses]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Dfa":
        try:
            inverses = data.get("inverses")
            alphabet = Alphabet(
                symbols=tuple(data["alphabet"]),
                inverses=tuple(tuple(p) for p in inverses) if inverses is not None else None,
            )
            transitions = tuple(tuple(row) for row in data["transitions"])
            if "states" in data and data["states"] != len(transitions):
                raise InputError(f"'states' is {data['states']} but {len(transitions)} rows given")
            return cls(alphabet=alphabet, start=data["start"],
                       accepting=frozenset(data["accepting"]), transitions=transitions)
        except KeyError as e:
            raise InputError(f"Dfa JSON is missing field {e.args[0]!r}") from None
        except ValidationError as e:
            raise InputError(f"invalid Dfa JSON: {e.errors()[0]['msg']}") from None

    def to_dot(self, name: str = "dfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point];']
        for q in range(self.n_states):
            shape = "doublecircle" if q in self.accepting else "circle"
            lines.append(f"  {q} [shape={shape}];")
        lines.append(f"  __start -> {self.start};")
        for q, row in enumerate(self.transitions):
            labels: dict[int, list[str]] = {}
            for symbol, t in zip(self.alphabet.symbols, row):
                labels.setdefault(t, []).append(symbol)
            for t, symbols in labels.items():
                lines.append(f'  {q} -> {t} [label="{",".join(symbols)}"];')
        lines.append("}")
        return "\n".join(lines)


def _same_alphabet(left: Dfa, right: Dfa) -> None:
    if left.alphabet.symbols != right.alphabet.symbols:
        raise AlphabetMismatchError(
            f"alphabets differ: {list(left.alphabet.symbols)} vs {list(right.alphabet.symbols)}")


# --- Basic languages ---

def empty_dfa(alphabet: Alphabet) -> Dfa:
    return Dfa(alphabet=alphabet, start=0, accepting=frozenset(),
               transitions=((0,) * alphabet.size,))


def universal_dfa(alphabet: Alphabet) -> Dfa:
    return Dfa(alphabet=alphabet, start=0, accepting=frozenset({0}),
               transitions=((0,) * alphabet.size,))


def from_words(alphabet: Alphabet, words: Iterable[Word]) -> Dfa:
    """Minimal Dfa of a finite language."""
    pos = alphabet._positions()
    rows: list[list[Optional[int]]] = [[None] * alphabet.size]
    accepting = set()
    for word in words:
        q = 0
        for s in alphabet.check_word(tuple(word)):
            nxt = rows[q][pos[s]]
            if nxt is None:
                rows.append([None] * alphabet.size)
                nxt = len(rows) - 1
                rows[q][pos[s]] = nxt
            q = nxt
        accepting.add(q)
    sink = len(rows)
    table = tuple(tuple(sink if t is None else t for t in row) for row in rows)
    table += ((sink,) * alphabet.size,)
    return minimize(Dfa(alphabet=alphabet, start=0, accepting=frozenset(accepting), transitions=table))


# --- Boolean algebra and concatenation ---

def product(left: Dfa, right: Dfa, combine: Connective) -> Dfa:
    """Product automaton over the reachable pairs."""
    _same_alphabet(left, right)
    combine = Connective(combine)
    index = {(left.start, right.start): 0}
    pairs = [(left.start, right.start)]
    rows = []
    for p, q in pairs:
        row = []
        for t in zip(left.transitions[p], right.transitions[q]):
            if t not in index:
                index[t] = len(pairs)
                pairs.append(t)
            row.append(index[t])
        rows.append(tuple(row))
    accepting = frozenset(
        i for i, (p, q) in enumerate(pairs)
        if combine.combine(p in left.accepting, q in right.accepting))
    return Dfa(alphabet=left.alphabet, start=0, accepting=accepting, transitions=tuple(rows))


def complement(d: Dfa) -> Dfa:
    accepting = frozenset(range(d.n_states)) - d.accepting
    return Dfa(alphabet=d.alphabet, start=d.start, accepting=accepting, transitions=d.transitions)


def concat(left: Dfa, right: Dfa) -> Dfa:
    """Subset construction for L(left)·L(right), restricted to reachable subsets."""
    _same_alphabet(left, right)

    def lift(p: int, subset: frozenset) -> frozenset:
        return subset | {right.start} if p in left.accepting else subset

    first = (left.start, lift(left.start, frozenset()))
    index = {first: 0}
    states = [first]
    rows = []
    for p, subset in states:
        row = []
        for k in range(left.alphabet.size):
            p2 = left.transitions[p][k]
            nxt = (p2, lift(p2, frozenset(right.transitions[q][k] for q in subset)))
            if nxt not in index:
                index[nxt] = len(states)
                states.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
    accepting = frozenset(i for i, (_, subset) in enumerate(states) if subset & right.accepting)
    return Dfa(alphabet=left.alphabet, start=0, accepting=accepting, transitions=tuple(rows))


# --- Minimization ---

def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement, then canonical breadth-first renumbering."""
    reach = d.reachable()
    block = {q: int(q in d.accepting) for q in reach}
    n_blocks = len(set(block.values()))
    while True:
        signatures: dict[tuple, int] = {}
        refined = {}
        for q in reach:
            sig = (block[q],) + tuple(block[t] for t in d.transitions[q])
            refined[q] = signatures.setdefault(sig, len(signatures))
        block = refined
        if len(signatures) == n_blocks:
            break
        n_blocks = len(signatures)

    representative = {}
    for q in reach:
        representative.setdefault(block[q], q)
    number = {block[d.start]: 0}
    order = [block[d.start]]
    rows = []
    for b in order:
        row = []
        for t in d.transitions[representative[b]]:
            tb = block[t]
            if tb not in number:
                number[tb] = len(order)
                order.append(tb)
            row.append(number[tb])
        rows.append(tuple(row))
    accepting = frozenset(number[block[q]] for q in reach if q in d.accepting)
    return Dfa(alphabet=d.alphabet, start=0, accepting=accepting, transitions=tuple(rows))


# --- Equivalence ---

def separating_word(left: Dfa, right: Dfa) -> Optional[Word]:
    """Shortlex-least word accepted by exactly one of the two, or None."""
    _same_alphabet(left, right)
    return _first_split(left, right, left.start, right.start)


def equivalent(left: Dfa, right: Dfa) -> bool:
    return separating_word(left, right) is None


def distinguishing_word(d: Dfa, p: int, q: int) -> Optional[Word]:
    """Shortlex-least w with exactly one of p·w, q·w accepting."""
    return _first_split(d, d, p, q)


def _first_split(left: Dfa, right: Dfa, p0: int, q0: int) -> Optional[Word]:
    parent: dict[tuple, Optional[tuple]] = {(p0, q0): None}
    queue = deque([(p0, q0)])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if (p in left.accepting) != (q in right.accepting):
            word = []
            while parent[pair] is not None:
                pair, symbol = parent[pair]
                word.append(symbol)
            return tuple(reversed(word))
        for k, symbol in enumerate(left.alphabet.symbols):
            nxt = (left.transitions[p][k], right.transitions[q][k])
            if nxt not in parent:
                parent[nxt] = (pair, symbol)
                queue.append(nxt)
    return None


# --- Alphabet manipulation ---

def restrict(d: Dfa, symbols: Iterable[str]) -> Dfa:
    """The language L(d) ∩ B*, read as a language over B."""
    sub = d.alphabet.sub(symbols)
    columns = [d.alphabet.index(s) for s in sub.symbols]
    rows = tuple(tuple(row[k] for k in columns) for row in d.transitions)
    return minimize(Dfa(alphabet=sub, start=d.start, accepting=d.accepting, transitions=rows))


def extend_alphabet(d: Dfa, alphabet: Alphabet, fill: Callable[[int, str], int]) -> Dfa:
    """Re-read d over a larger alphabet; fill(state, symbol) gives targets for new symbols."""
    missing = set(d.alphabet.symbols) - set(alphabet.symbols)
    if missing:
        raise AlphabetMismatchError(f"new alphabet drops symbols {sorted(missing)}")
    rows = []
    for q, row in enumerate(d.transitions):
        rows.append(tuple(
            row[d.alphabet.index(s)] if s in d.alphabet else fill(q, s)
            for s in alphabet.symbols))
    return Dfa(alphabet=alphabet, start=d.start, accepting=d.accepting, transitions=tuple(rows))


def add_loops(d: Dfa, alphabet: Alphabet) -> Dfa:
    """Every symbol new to d loops at every state."""
    return extend_alphabet(d, alphabet, lambda q, _symbol: q)
