"""
Star-freeness decision procedures.

Two independent criteria are implemented: aperiodicity of the syntactic
monoid, and absence of powered circuits in the minimal automaton. A
language is star-free exactly when both hold; is_star_free runs both and
refuses to answer if they disagree.
"""
import logging
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from automata.alphabet import Word
from automata.automaton import Dfa, distinguishing_word, minimize
from automata.monoid import StateMap, TransitionMonoid, transition_monoid
from core.errors import CriterionDisagreement, NotMinimalError

logger = logging.getLogger(__name__)


class AperiodicityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    aperiodic: bool
    bound: Optional[int] = Field(default=None, description="Smallest N with x^N = x^(N+1) for every element")
    offender: Optional[StateMap] = Field(default=None, description="Element whose powers cycle with period > 1")
    period: Optional[int] = Field(default=None, description="Cycle length of the offender's powers")


class PoweredCircuitWitness(BaseModel):
    """u leads to σ, v^k returns to σ, w separates σ from σ^v."""
    model_config = ConfigDict(frozen=True)

    u: Word = Field(description="Access word of the circuit state σ")
    v: Word = Field(description="Circuit label")
    k: int = Field(description="Minimal k > 1 with σ^(v^k) = σ")
    w: Word = Field(description="Suffix accepted from exactly one of σ and σ^v")


class StarFreeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    star_free: bool
    states: int = Field(description="States of the minimal Dfa")
    monoid_size: int = Field(description="Size of the syntactic monoid")
    bound: Optional[int] = None
    witness: Optional[PoweredCircuitWitness] = None


def _power_cycle(mapping: tuple[int, ...]) -> tuple[int, int]:
    """(index, period) with t^index = t^(index + period), both minimal."""
    seen = {mapping: 1}
    power = mapping
    i = 1
    while True:
        power = tuple(mapping[q] for q in power)
        i += 1
        if power in seen:
            return seen[power], i - seen[power]
        seen[power] = i


def is_aperiodic(m: TransitionMonoid) -> AperiodicityReport:
    bound = 1
    for element in m.elements:
        index, period = _power_cycle(element.mapping)
        if period > 1:
            return AperiodicityReport(aperiodic=False, offender=element, period=period)
        bound = max(bound, index)
    return AperiodicityReport(aperiodic=True, bound=bound)


def _state_cycle(mapping: tuple[int, ...], state: int) -> int:
    """Length of the cycle through state under mapping, 0 if state is not on one."""
    q = mapping[state]
    for k in range(1, len(mapping) + 1):
        if q == state:
            return k
        q = mapping[q]
    return 0


def has_powered_circuit(d: Dfa, monoid: Optional[TransitionMonoid] = None) -> Optional[PoweredCircuitWitness]:
    """Powered circuit of a minimal Dfa, or None when it has none."""
    if minimize(d).n_states != d.n_states:
        raise NotMinimalError("has_powered_circuit needs a minimal Dfa; minimize it first")
    m = monoid or transition_monoid(d)
    access = d.access_words()
    for element in m.elements:
        on_cycle = [(q, k) for q in range(d.n_states) if (k := _state_cycle(element.mapping, q)) > 1]
        if not on_cycle:
            continue
        sigma, k = min(on_cycle, key=lambda pair: d.alphabet.sort_key(access[pair[0]]))
        w = distinguishing_word(d, sigma, element.mapping[sigma])
        return PoweredCircuitWitness(u=access[sigma], v=element.witness, k=k, w=w)
    return None


def replay_witness(d: Dfa, witness: PoweredCircuitWitness) -> bool:
    """Check all four circuit conditions by tracing the words through d."""
    sigma = d.run(witness.u)
    v = witness.v
    return (
        witness.k > 1
        and d.run(v * witness.k, sigma) == sigma
        and d.run(v, sigma) != d.run(v * 2, sigma)
        and d.accepts(witness.u + witness.w) != d.accepts(witness.u + v + witness.w)
    )


def power_membership(d: Dfa, u: Word, v: Word, w: Word, nmax: int) -> list[bool]:
    """Membership of u v^n w for n = 0..nmax."""
    return [d.accepts(u + v * n + w) for n in range(nmax + 1)]


def star_free_report(d: Dfa) -> StarFreeReport:
    md = minimize(d)
    m = transition_monoid(md)
    aperiodicity = is_aperiodic(m)
    witness = has_powered_circuit(md, m)
    if aperiodicity.aperiodic != (witness is None):
        raise CriterionDisagreement(
            f"aperiodic={aperiodicity.aperiodic} but powered circuit={witness is not None}")
    logger.debug(f"star-free={aperiodicity.aperiodic}: {md.n_states} states, monoid size {m.size}")
    return StarFreeReport(star_free=aperiodicity.aperiodic, states=md.n_states,
                          monoid_size=m.size, bound=aperiodicity.bound, witness=witness)


def is_star_free(d: Dfa) -> bool:
    return star_free_report(d).star_free
