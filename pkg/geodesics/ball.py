"""
Balls in Cayley graphs and exact geodesic lengths.

A ball is grown breadth-first from the identity, one sphere at a time,
deduplicating elements by their oracle keys. GeodesicTester answers length
queries beyond the ball's radius by a meet-in-the-middle search: a forward
ball of half the word length and a backward search from the element.
"""
import logging
from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field

from automata.alphabet import Alphabet, Word
from core.errors import BudgetExceeded, InputError, WordTooLongError
from groups.oracles import Key, WordOracle
from utils.settings_manager import get_setting

logger = logging.getLogger(__name__)


class Budgets(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_elements: int = Field(description="Most keys a ball may hold")
    max_depth: int = Field(description="Longest word a bidirectional search may settle")

    @classmethod
    def from_settings(cls, max_elements: Optional[int] = None, max_depth: Optional[int] = None) -> "Budgets":
        return cls(
            max_elements=max_elements or get_setting("ball_max_elements"),
            max_depth=max_depth or get_setting("bidirectional_max_depth"),
        )


class BallReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    radius: int
    elements: int
    sphere_sizes: tuple[int, ...] = Field(description="Number of elements at each distance (growth series)")
    saturated: bool = Field(description="The whole group fits inside the ball")


class Ball:
    """All elements within `radius` of the identity with their exact lengths."""

    def __init__(self, oracle: WordOracle, alphabet: Optional[Alphabet] = None,
                 max_elements: Optional[int] = None):
        self.oracle = oracle
        self.alphabet = alphabet or oracle.alphabet
        self.max_elements = max_elements or get_setting("ball_max_elements")
        identity = oracle.identity()
        self.table: dict[Key, int] = {identity: 0}
        self.spheres: list[list[Key]] = [[identity]]
        self.radius = 0
        self.saturated = False

    def extend(self, radius: int) -> "Ball":
        """Grow the ball layer by layer until it reaches the radius or saturates."""
        symbols = self.alphabet.symbols
        while self.radius < radius and not self.saturated:
            layer = self.radius + 1
            sphere = []
            for key in self.spheres[-1]:
                for s in symbols:
                    nxt = self.oracle.multiply(key, s)
                    if nxt not in self.table:
                        self.table[nxt] = layer
                        sphere.append(nxt)
                        if len(self.table) > self.max_elements:
                            raise BudgetExceeded("ball_max_elements", self.max_elements, layer)
            if not sphere:
                self.saturated = True
                break
            self.spheres.append(sphere)
            self.radius = layer
            logger.debug(f"layer {layer}: {len(sphere)} new, {len(self.table)} total")
        return self

    def length(self, key: Key) -> Optional[int]:
        return self.table.get(key)

    def report(self) -> BallReport:
        return BallReport(radius=self.radius, elements=len(self.table),
                          sphere_sizes=tuple(len(s) for s in self.spheres), saturated=self.saturated)


def build_ball(oracle: WordOracle, alphabet: Optional[Alphabet] = None, radius: int = 0,
               max_elements: Optional[int] = None) -> Ball:
    if radius < 0:
        raise InputError("radius must be non-negative")
    return Ball(oracle, alphabet, max_elements).extend(radius)


def is_geodesic(word: Word, ball: Ball) -> bool:
    word = ball.alphabet.check_word(tuple(word))
    if len(word) > ball.radius and not ball.saturated:
        raise WordTooLongError(f"word of length {len(word)} exceeds ball radius {ball.radius}")
    return ball.length(ball.oracle.normal_form(word)) == len(word)


class GeodesicTester:
    """
    Exact element lengths and geodesic verdicts.
    Uses the oracle's own exact length when it has one, the cached forward
    ball when the word fits, and otherwise a bidirectional search.
    """

    def __init__(self, oracle: WordOracle, alphabet: Optional[Alphabet] = None,
                 budgets: Optional[Budgets] = None):
        self.oracle = oracle
        self.alphabet = alphabet or oracle.alphabet
        missing = set(self.alphabet.symbols) - set(oracle.alphabet.symbols)
        if missing:
            raise InputError(f"oracle cannot read symbols {sorted(missing)}")
        self.budgets = budgets or Budgets.from_settings()
        self.ball = Ball(oracle, self.alphabet, self.budgets.max_elements)
        self._exact = self.alphabet.symbols == oracle.alphabet.symbols
        self._verdicts: dict[Word, bool] = {(): True}

    def key(self, word: Iterable[str]) -> Key:
        return self.oracle.normal_form(word)

    def distance(self, word: Iterable[str]) -> int:
        word = self.alphabet.check_word(tuple(word))
        if self._exact:
            exact = self.oracle.exact_length(word)
            if exact is not None:
                return exact
        return self._distance(self.key(word), len(word))

    def _distance(self, key: Key, upper: int) -> int:
        """Length of the element `key`, known to be at most `upper`."""
        found = self.ball.length(key)
        if found is not None:
            return found
        if self.ball.radius >= upper or self.ball.saturated:
            raise InputError("word does not represent an element of the group spanned by the alphabet")
        if not self.alphabet.is_inverse_closed:
            self.ball.extend(upper)
            return self._distance(key, upper)
        if upper > self.budgets.max_depth:
            raise BudgetExceeded("bidirectional_max_depth", self.budgets.max_depth, upper)
        forward = (upper + 1) // 2
        self.ball.extend(forward)
        return self._meet(key, upper, upper - self.ball.radius)

    def _meet(self, key: Key, upper: int, depth_limit: int) -> int:
        # h = key · q^-1 at depth |q|; |key| = min(|h| + |q|) once both halves cover upper
        best = upper
        seen = {key}
        frontier = [key]
        depth = 0
        while frontier and depth < best:
            for h in frontier:
                d = self.ball.length(h)
                if d is not None and d + depth < best:
                    best = d + depth
            if depth == depth_limit or depth + 1 >= best:
                break
            nxt = []
            for h in frontier:
                for s in self.alphabet.symbols:
                    h2 = self.oracle.multiply(h, s)
                    if h2 not in seen:
                        seen.add(h2)
                        nxt.append(h2)
            frontier = nxt
            depth += 1
        return best

    def is_geodesic(self, word: Iterable[str]) -> bool:
        word = tuple(word)
        verdict = self._verdicts.get(word)
        if verdict is not None:
            return verdict
        if not self.is_geodesic(word[:-1]):
            verdict = False
        elif len(word) > 1 and self.alphabet.inverse_map.get(word[-2]) == word[-1]:
            verdict = False
        else:
            verdict = self.distance(word) == len(word)
        self._verdicts[word] = verdict
        return verdict
