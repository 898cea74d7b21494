"""
Reproduction engine: runs every worked example end to end and collects
pass/fail records.

Each scenario builds its inputs, runs the pipeline and compares the
observed result with the expected behavior. Scenario failures never stop
the suite; they become failed records.
"""
import logging
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from automata.alphabet import Alphabet
from automata.automaton import Dfa, equivalent, minimize
from automata.expr import (b3_alphabet, b3_geodesic_expr, compile_expr, complement, factor_atom, intersect,
                           piecewise_excluding, reduced_words, subalphabet_star, union)
from automata.monoid import transition_monoid
from automata.starfree import has_powered_circuit, is_aperiodic, is_star_free, replay_witness
from core.errors import GeostarError, InputError
from geodesics.abelian import abelian_pe
from geodesics.ball import Budgets, GeodesicTester
from geodesics.graph_product import direct_product_wrap, graph_product, infinite_cyclic_geodesics
from geodesics.probe import (alternation_probe, alternation_scan, check_inverse_closure, check_prefix_closure,
                             verify_language)
from geodesics.vabelian import VAbelianGenSet, vabelian_check, vabelian_pt
from groups.braid import BurauOracle
from groups.catalog import (cyclic_monoid, eliminated_free_group, free_abelian, infinite_dihedral, lookup,
                            path_raag, surface_group, z_plus_minus)
from groups.presentation import Presentation, check_c_prime, check_t, symmetrize
from utils.settings_manager import get_setting

logger = logging.getLogger(__name__)


class ReproRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    claim: str = Field(description="The behavior being reproduced, in words")
    citation: str = Field(min_length=1, description="The kind of result reproduced and its subject")
    inputs: dict[str, Any] = Field(description="Groups, words and bounds the scenario used")
    expected: str
    observed: dict[str, Any] = Field(default_factory=dict)
    passed: bool
    error: Optional[str] = Field(default=None, description="Message of a GeostarError raised by the scenario")


class ReproReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    records: tuple[ReproRecord, ...]
    passed: bool
    timings: dict[str, float] = Field(default_factory=dict, description="Seconds per scenario; varies run to run")


@dataclass(frozen=True)
class Scenario:
    name: str
    claim: str
    citation: str
    expected: str
    run: Callable[[Budgets], tuple[dict, dict, bool]]


SCENARIOS: dict[str, Scenario] = {}


def scenario(name: str, claim: str, citation: str, expected: str):
    def register(fn: Callable[[Budgets], tuple[dict, dict, bool]]):
        SCENARIOS[name] = Scenario(name=name, claim=claim, citation=citation, expected=expected, run=fn)
        return fn
    return register


def _text(word) -> str:
    return ".".join(word) if any(len(s) > 1 for s in word) else "".join(word) or "ε"


def _bits(bits) -> str:
    return "".join("1" if b else "0" for b in bits)


# --- Scenarios ---

@scenario("free4-elim",
          claim="In <a,b,c,d,r,s | baad = rcs, bd = s>, b a^n d is geodesic exactly when n is odd, "
                "so the geodesic language is not star-free",
          citation="Theorem: a free-group presentation whose geodesics are not star-free",
          expected="bits 01010101 for n = 0..7, alternating")
def _free4_elim(budgets: Budgets):
    tester = GeodesicTester(eliminated_free_group().oracle, budgets=budgets)
    result = alternation_probe(tester, ("b",), ("a",), ("d",), 7)
    want = tuple(n % 2 == 1 for n in range(8))
    observed = {"bits": _bits(result.bits), "alternating": result.alternating}
    return {"group": "free4-elim", "u": "b", "v": "a", "w": "d", "nmax": 7}, observed, \
        result.bits == want and result.alternating


@scenario("b3-standard",
          claim="The displayed star-free expression is exactly the geodesic language of B3 on {a, b}",
          citation="Theorem: B3 on its standard generators has star-free geodesics",
          expected="agreement with brute force to length 8; star-free")
def _b3_standard(budgets: Budgets):
    d = compile_expr(b3_geodesic_expr(), b3_alphabet())
    report = verify_language(d, GeodesicTester(BurauOracle(), budgets=budgets), 8)
    star_free = is_star_free(d)
    observed = {"words_checked": report.words_checked, "matched": report.matched,
                "mismatch": _text(report.mismatch) if report.mismatch else None, "star_free": star_free}
    return {"group": "b3", "maxlen": 8}, observed, report.matched and star_free


@scenario("b3-garside",
          claim="On the divisors of Δ, (ba)(aba)^n(a) is geodesic exactly when n is even",
          citation="Theorem: B3 on the divisors of Δ has geodesics that are not star-free",
          expected="bits 10101 for n = 0..4, alternating")
def _b3_garside(budgets: Budgets):
    tester = GeodesicTester(lookup("b3-garside").oracle, budgets=budgets)
    result = alternation_probe(tester, ("ba",), ("aba",), ("a",), 4)
    want = tuple(n % 2 == 0 for n in range(5))
    observed = {"bits": _bits(result.bits), "alternating": result.alternating}
    return {"group": "b3-garside", "u": "ba", "v": "aba", "w": "a", "nmax": 4}, observed, \
        result.bits == want and result.alternating


@scenario("abelian",
          claim="Abelian geodesic languages are piecewise excluding and star-free; "
                "the ℤ² syntactic monoid consists of idempotents",
          citation="Proposition: abelian geodesic languages are piecewise excluding",
          expected="W = {aaaaaa} for ℤ/6, {ab, ba} for ℤ on ±1, the cancelling pairs for ℤ²; bound 1 for ℤ²")
def _abelian(budgets: Budgets):
    cases = {
        "cyclic6": (cyclic_monoid(6), {("a",) * 6}),
        "z-pm": (z_plus_minus(), {("a", "b"), ("b", "a")}),
        "z2": (free_abelian(2), {("a", "A"), ("A", "a"), ("b", "B"), ("B", "b")}),
    }
    observed = {}
    passed = True
    for name, (group, want) in cases.items():
        result = abelian_pe(group.oracle, verify_len=8, budgets=budgets)
        star_free = is_star_free(result.dfa)
        observed[name] = {"excluded": sorted(_text(w) for w in result.excluded), "star_free": star_free}
        passed = passed and set(result.excluded) == want and star_free
        if name == "z2":
            report = is_aperiodic(transition_monoid(minimize(result.dfa)))
            observed[name]["bound"] = report.bound
            passed = passed and report.aperiodic and report.bound == 1
    return {"groups": sorted(cases), "verify_len": 8}, observed, passed


def _z_vertices(*letters: str) -> dict[str, Dfa]:
    return {x: infinite_cyclic_geodesics(x, x.upper()) for x in letters}


@scenario("graph-products",
          claim="Graph products of star-free prefix-closed geodesic languages are star-free, "
                "and the hat automata are minimal",
          citation="Theorem: graph products preserve star-free geodesics",
          expected="free product = reduced words; one edge = direct product = ℤ²; path graph matches the RAAG")
def _graph_products(budgets: Budgets):
    ab = Alphabet.from_letters("ab")
    free = nx.Graph()
    free.add_nodes_from("ab")
    free_ok = equivalent(graph_product(free, _z_vertices("a", "b")).dfa, compile_expr(reduced_words(ab), ab))

    vertices = _z_vertices("a", "b")
    direct = graph_product(nx.Graph([("a", "b")]), vertices).dfa
    direct_ok = (equivalent(direct, direct_product_wrap(vertices["a"], vertices["b"]))
                 and equivalent(direct, abelian_pe(free_abelian(2).oracle, budgets=budgets).dfa))

    group = path_raag(3)
    path = graph_product(group.oracle.graph, _z_vertices("a", "b", "c"))
    report = verify_language(path.dfa, GeodesicTester(group.oracle, budgets=budgets), 7)
    hats_ok = all(minimize(f).n_states == f.n_states and has_powered_circuit(f) is None
                  for f in path.hats.values())
    observed = {"free_product": free_ok, "direct_product": direct_ok, "path_matched": report.matched,
                "path_star_free": is_star_free(path.dfa), "hats_minimal_aperiodic": hats_ok}
    return {"vertex_groups": "ℤ", "graphs": ["two vertices", "one edge", "path a-b-c"], "maxlen": 7}, \
        observed, all(observed.values())


@scenario("small-cancellation",
          claim="C'(1/6) and T(4) checkers agree with the standard examples, and the genus-2 surface group "
                "shows no alternating geodesic family at desk scale",
          citation="Theorem: C'(1/6) and C'(1/4)-T(4) groups have star-free geodesics",
          expected="genus 2 passes C'(1/6); ℤ² fails C'(1/4) and passes T(4); no alternating witness")
def _small_cancellation(budgets: Budgets):
    genus2 = surface_group(2)
    z2 = Presentation.from_relators(Alphabet.from_letters("ab"), [tuple("abAB")])
    c_genus = check_c_prime(symmetrize(genus2.presentation), Fraction(1, 6))
    c_z2 = check_c_prime(symmetrize(z2), Fraction(1, 4))
    t_z2 = check_t(symmetrize(z2), 4)
    bounds = get_setting("desk_check")
    found = alternation_scan(GeodesicTester(genus2.oracle, budgets=budgets),
                             bounds["max_u"], bounds["max_v"], bounds["max_w"], bounds["nmax"],
                             genus2.symmetries())
    observed = {"genus2_c_prime": c_genus.passed, "genus2_max_piece": c_genus.max_piece_length,
                "z2_c_prime": c_z2.passed, "z2_t4": t_z2.passed, "alternating_found": len(found)}
    passed = c_genus.passed and c_genus.max_piece_length == 1 and not c_z2.passed and t_z2.passed and not found
    return {"presentations": [genus2.presentation.format(), z2.format()], "desk_check": bounds}, observed, passed


@scenario("virtually-abelian",
          claim="D∞ with X = {t, T}, Y = {s} satisfies the generating-set properties "
                "and its geodesic language is star-free",
          citation="Theorem: virtually abelian groups have star-free geodesics for suitable generators",
          expected="properties pass; automaton matches brute force to length 8; star-free; L2 empty")
def _virtually_abelian(budgets: Budgets):
    group = infinite_dihedral()
    gs = VAbelianGenSet(alphabet=group.alphabet, x_symbols=("t", "T"), y_symbols=("s",),
                        membership=group.normal_subgroup)
    report = vabelian_check(gs, group.oracle)
    result = vabelian_pt(gs, group.oracle, verify_len=8, budgets=budgets)
    star_free = is_star_free(result.dfa)
    observed = {"properties": report.passed, "cosets": report.coset_count,
                "matched": result.verification.matched, "star_free": star_free, "l2_empty": result.l2_empty}
    return {"group": "dinf", "x": ["t", "T"], "y": ["s"], "verify_len": 8}, observed, \
        report.passed and result.verification.matched and star_free and result.l2_empty


def random_dfa(rng: random.Random, symbols: str = "ab", states: int = 4) -> Dfa:
    rows = tuple(tuple(rng.randrange(states) for _ in symbols) for _ in range(states))
    accepting = frozenset(q for q in range(states) if rng.random() < 0.5)
    return Dfa(alphabet=Alphabet.plain(symbols), start=0, accepting=accepting, transitions=rows)


def geodesic_corpus(budgets: Budgets) -> dict[str, Dfa]:
    """Geodesic automata of the worked examples."""
    ab = Alphabet.from_letters("ab")
    corpus = {
        "free2": compile_expr(reduced_words(ab), ab),
        "b3": compile_expr(b3_geodesic_expr(), b3_alphabet()),
        "z": infinite_cyclic_geodesics("a", "A"),
        "raag-path3": graph_product(nx.path_graph(["a", "b", "c"]), _z_vertices("a", "b", "c")).dfa,
    }
    for group in (cyclic_monoid(6), z_plus_minus(), free_abelian(2)):
        corpus[group.name] = abelian_pe(group.oracle, budgets=budgets).dfa
    return corpus


@scenario("property-suites",
          claim="Aperiodicity and powered circuits agree; witnesses replay; geodesic automata are prefix- "
                "and inverse-closed; compiled expressions obey De Morgan and double complement",
          citation="Proposition: a regular language is star-free exactly when its automaton "
                   "has no powered circuit",
          expected="all checks hold on every automaton of the corpus")
def _property_suites(budgets: Budgets):
    geodesic = geodesic_corpus(budgets)
    corpus = dict(geodesic)
    corpus["(aa)*"] = Dfa(alphabet=Alphabet.plain("a"), start=0, accepting=frozenset({0}),
                          transitions=((1,), (0,)))
    corpus["a*b*"] = Dfa(alphabet=Alphabet.plain("ab"), start=0, accepting=frozenset({0, 1}),
                         transitions=((0, 1), (2, 1), (2, 2)))
    rng = random.Random(20240611)
    for i in range(14):
        corpus[f"random{i}"] = random_dfa(rng)

    disagreements, replayed, witnesses = [], 0, 0
    for name, d in corpus.items():
        md = minimize(d)
        monoid = transition_monoid(md)
        witness = has_powered_circuit(md, monoid)
        if is_aperiodic(monoid).aperiodic != (witness is None):
            disagreements.append(name)
        if witness is not None:
            witnesses += 1
            replayed += replay_witness(md, witness)

    not_closed = []
    for name, d in geodesic.items():
        if check_prefix_closure(d) is not None:
            not_closed.append(name)
        elif d.alphabet.is_inverse_closed and check_inverse_closure(d, 6) is not None:
            not_closed.append(name)

    ab = Alphabet.from_letters("ab")
    exprs = [reduced_words(ab), piecewise_excluding([("a", "b")]), factor_atom(("a", "a")),
             subalphabet_star(ab, ["a"])]
    identities = 0
    for x in exprs:
        identities += equivalent(compile_expr(complement(complement(x)), ab), compile_expr(x, ab))
        for y in exprs:
            identities += equivalent(compile_expr(complement(union(x, y)), ab),
                                     compile_expr(intersect(complement(x), complement(y)), ab))

    observed = {"corpus": len(corpus), "disagreements": disagreements, "witnesses": witnesses,
                "replayed": replayed, "not_closed": not_closed,
                "identities": f"{identities}/{len(exprs) + len(exprs) ** 2}"}
    passed = (not disagreements and replayed == witnesses and not not_closed
              and identities == len(exprs) + len(exprs) ** 2)
    return {"corpus": sorted(corpus), "random_seed": 20240611}, observed, passed


# --- Orchestration ---

def _run_one(sc: Scenario, budgets: Budgets) -> tuple[ReproRecord, float]:
    logger.info(f"running {sc.name}...")
    started = time.perf_counter()
    try:
        inputs, observed, passed = sc.run(budgets)
        error = None
    except GeostarError as e:
        logger.warning(f"{sc.name} raised {type(e).__name__}: {e}")
        inputs, observed, passed, error = {}, {}, False, f"{type(e).__name__}: {e}"
    elapsed = round(time.perf_counter() - started, 3)
    logger.info(f"{sc.name}: {'pass' if passed else 'FAIL'} ({elapsed:.1f}s)")
    record = ReproRecord(name=sc.name, claim=sc.claim, citation=sc.citation, inputs=inputs,
                         expected=sc.expected, observed=observed, passed=passed, error=error)
    return record, elapsed


def repro_suite(only: Optional[list[str]] = None, budgets: Optional[Budgets] = None) -> ReproReport:
    """Run the selected scenarios (all by default) in registration order."""
    names = list(SCENARIOS) if not only else list(only)
    unknown = [n for n in names if n not in SCENARIOS]
    if unknown:
        raise InputError(f"unknown scenario(s) {', '.join(unknown)}; known: {', '.join(SCENARIOS)}")
    budgets = budgets or Budgets.from_settings()

    records, timings = [], {}
    for name in names:
        record, elapsed = _run_one(SCENARIOS[name], budgets)
        records.append(record)
        timings[name] = elapsed
    passed = all(r.passed for r in records)
    logger.info(f"{sum(r.passed for r in records)}/{len(records)} scenarios passed")
    return ReproReport(records=tuple(records), passed=passed, timings=timings)


def format_report(report: ReproReport) -> str:
    lines = []
    for r in report.records:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"[{status}] {r.name}: {r.claim}")
        lines.append(f"    cites: {r.citation}")
        lines.append(f"    expected: {r.expected}")
        if r.error:
            lines.append(f"    error: {r.error}")
        else:
            lines.append("    observed: " + ", ".join(f"{k}={v}" for k, v in r.observed.items()))
    lines.append(f"{sum(r.passed for r in report.records)}/{len(report.records)} passed")
    return "\n".join(lines)
