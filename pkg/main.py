"""
geostar - star-free geodesic languages of groups.
Command-line entry point: every subcommand reads its inputs, runs one
library operation and prints the result (text, or JSON with --json).
"""
import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel

from automata.alphabet import Alphabet
from automata.automaton import minimize
from automata.expr import compile_expr
from automata.expr_parser import parse_expr
from automata.monoid import transition_monoid
from automata.starfree import is_aperiodic, star_free_report
from core.errors import GeostarError, InputError, PreconditionError
from core.repro_engine import SCENARIOS, format_report, repro_suite
from geodesics.abelian import abelian_pe
from geodesics.ball import Budgets, GeodesicTester, build_ball
from geodesics.graph_product import graph_product
from geodesics.probe import alternation_probe, alternation_scan, verify_language
from geodesics.vabelian import VAbelianGenSet, vabelian_check, vabelian_pt
from groups.catalog import CATALOG_NAMES, CatalogGroup, lookup
from groups.presentation import check_c_prime, check_t, symmetrize
from utils import data_handler
from utils.log import configure_logging
from utils.settings_manager import get_setting


# === 1. OUTPUT ===

def emit(args, result, text: str) -> None:
    """Print JSON with --json, the text summary otherwise."""
    if args.json:
        if isinstance(result, BaseModel):
            print(result.model_dump_json(indent=2))
        else:
            print(json.dumps(result, indent=2, ensure_ascii=False))
    else:
        print(text)


def word_text(alphabet: Alphabet, word) -> str:
    return alphabet.format_word(tuple(word)) if word is not None else "-"


def budgets_from(args) -> Budgets:
    return Budgets.from_settings(max_elements=args.max_elements, max_depth=args.max_depth)


def group_from(args) -> CatalogGroup:
    if args.pres:
        return data_handler.load_presentation(args.pres)
    return lookup(args.group)


def symbols_arg(text: str) -> tuple[str, ...]:
    return tuple(t for t in text.replace(",", " ").split() if t)


# === 2. AUTOMATA COMMANDS ===

def cmd_minimize(args) -> int:
    d = minimize(data_handler.load_dfa(args.dfa))
    if args.out:
        data_handler.save_dfa(args.out, d)
    if args.dot:
        print(d.to_dot())
    else:
        emit(args, d.to_dict(), json.dumps(d.to_dict()))
    return 0


def cmd_starfree(args) -> int:
    d = data_handler.load_dfa(args.dfa)
    report = star_free_report(d)
    lines = [f"star-free: {'yes' if report.star_free else 'no'}",
             f"minimal states: {report.states}, syntactic monoid size: {report.monoid_size}"]
    if report.bound is not None:
        lines.append(f"aperiodicity bound: x^{report.bound} = x^{report.bound + 1}")
    if report.witness:
        w = report.witness
        a = d.alphabet
        lines.append(f"powered circuit: u={word_text(a, w.u)} v={word_text(a, w.v)} k={w.k} w={word_text(a, w.w)}")
    emit(args, report, "\n".join(lines))
    return 0


def cmd_monoid(args) -> int:
    d = data_handler.load_dfa(args.dfa)
    m = transition_monoid(minimize(d) if not args.no_minimize else d)
    report = is_aperiodic(m)
    result = {"size": m.size, "elements": [{"word": word_text(d.alphabet, e.witness), "mapping": list(e.mapping)}
                                           for e in m.elements],
              "aperiodic": report.aperiodic, "bound": report.bound}
    if args.table:
        result["table"] = m.composition_table()
    lines = [f"{word_text(d.alphabet, e.witness):>12}  {list(e.mapping)}" for e in m.elements]
    lines.append(f"size {m.size}, aperiodic: {report.aperiodic}"
                 + (f" (bound {report.bound})" if report.aperiodic else f" (period {report.period})"))
    emit(args, result, "\n".join(lines))
    return 0


def cmd_compile_expr(args) -> int:
    if args.gens:
        alphabet = Alphabet.from_letters(args.gens)
    else:
        alphabet = Alphabet.plain(symbols_arg(args.symbols))
    text = data_handler.load_expression_text(args.file) if args.file else args.expr
    if not text:
        raise InputError("give an expression or --file")
    d = minimize(compile_expr(parse_expr(text, alphabet), alphabet))
    if args.out:
        data_handler.save_dfa(args.out, d)
    emit(args, d.to_dict(), f"{d.n_states} states" + (f", written to {args.out}" if args.out else "")
         + "\n" + json.dumps(d.to_dict()))
    return 0


# === 3. GROUP COMMANDS ===

def cmd_sc_check(args) -> int:
    group = group_from(args)
    if group.presentation is None:
        raise PreconditionError(f"{group.name} has no presentation to check")
    s = symmetrize(group.presentation)
    result = {"presentation": group.presentation.format()}
    lines = [result["presentation"]]
    passed = True
    if args.lam:
        try:
            lam = Fraction(args.lam)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad λ {args.lam!r}; expected a fraction such as 1/6") from None
        report = check_c_prime(s, lam)
        result["c_prime"] = report.model_dump()
        passed &= report.passed
        lines.append(f"C'({report.lam}): {'pass' if report.passed else 'fail'}"
                     f" (critical λ {report.critical_lambda}, longest piece {report.max_piece_length})")
        if report.piece:
            lines.append(f"  piece {word_text(s.origin.generators, report.piece)} in "
                         f"{word_text(s.origin.generators, report.relator)}")
    if args.q:
        report = check_t(s, args.q)
        result["t"] = report.model_dump()
        passed &= report.passed
        lines.append(f"T({args.q}): {'pass' if report.passed else 'fail'}")
        if report.violation:
            lines.append("  cycle " + " ".join(word_text(s.origin.generators, r) for r in report.violation))
    emit(args, result, "\n".join(lines))
    return 0 if passed else 1


def cmd_ball(args) -> int:
    group = group_from(args)
    ball = build_ball(group.oracle, group.alphabet, args.radius, budgets_from(args).max_elements)
    report = ball.report()
    emit(args, report, f"{group.name}: radius {report.radius}, {report.elements} elements\n"
                       f"sphere sizes: {' '.join(map(str, report.sphere_sizes))}"
                       + (" (saturated)" if report.saturated else ""))
    return 0


def cmd_geodesic(args) -> int:
    group = group_from(args)
    tester = GeodesicTester(group.oracle, group.alphabet, budgets_from(args))
    word = group.alphabet.parse_word(args.word)
    distance = tester.distance(word)
    result = {"word": word_text(group.alphabet, word), "length": len(word), "distance": distance,
              "geodesic": distance == len(word)}
    emit(args, result, f"{result['word']}: length {len(word)}, distance {distance}, "
                       f"{'geodesic' if result['geodesic'] else 'not geodesic'}")
    return 0


def cmd_probe(args) -> int:
    group = group_from(args)
    tester = GeodesicTester(group.oracle, group.alphabet, budgets_from(args))
    if args.scan:
        bounds = get_setting("desk_check")
        found = alternation_scan(tester, bounds["max_u"], bounds["max_v"], bounds["max_w"],
                                 args.n if args.n is not None else bounds["nmax"], group.symmetries())
        emit(args, [r.model_dump() for r in found],
             "\n".join(f"u={word_text(group.alphabet, r.u)} v={word_text(group.alphabet, r.v)} "
                       f"w={word_text(group.alphabet, r.w)} bits={''.join('1' if b else '0' for b in r.bits)}"
                       for r in found) or "no alternating family found")
        return 0
    parse = group.alphabet.parse_word
    result = alternation_probe(tester, parse(args.u), parse(args.v), parse(args.w),
                               args.n if args.n is not None else 6)
    bits = "".join("1" if b else "0" for b in result.bits)
    verdict = "alternating" if result.alternating else (
        "eventually constant" if result.eventually_constant else "undecided")
    emit(args, result, f"bits n=0..{len(result.bits) - 1}: {bits} ({verdict})")
    return 0


def cmd_verify(args) -> int:
    group = group_from(args)
    d = data_handler.load_dfa(args.dfa)
    maxlen = args.maxlen if args.maxlen is not None else get_setting("verify_maxlen")
    report = verify_language(d, GeodesicTester(group.oracle, d.alphabet, budgets_from(args)), maxlen)
    if report.matched:
        text = f"matched all {report.words_checked} words up to length {maxlen}"
    else:
        text = (f"mismatch on {word_text(d.alphabet, report.mismatch)}: automaton "
                f"{'accepts' if report.automaton_accepts else 'rejects'}, word is "
                f"{'geodesic' if report.geodesic else 'not geodesic'}")
    emit(args, report, text)
    return 0 if report.matched else 1


# === 4. PIPELINES ===

def cmd_abelian_pe(args) -> int:
    group = group_from(args)
    result = abelian_pe(group.oracle, args.sum_bound, args.verify_len, budgets_from(args))
    if args.out:
        data_handler.save_dfa(args.out, result.dfa)
    a = group.alphabet
    emit(args, result, f"W = {{{', '.join(word_text(a, w) for w in result.excluded)}}}\n"
                       f"minimal vectors: {list(result.minimal_vectors)}\n"
                       f"{result.dfa.n_states} states, verified to length {result.verified_len}")
    return 0


def gen_set_from(args, group: CatalogGroup) -> VAbelianGenSet:
    if group.normal_subgroup is None:
        raise PreconditionError(f"{group.name} has no abelian normal subgroup membership test")
    xs, ys = symbols_arg(args.x), symbols_arg(args.y)
    return VAbelianGenSet(alphabet=group.alphabet.sub(xs + ys), x_symbols=xs, y_symbols=ys,
                          membership=group.normal_subgroup)


def property_lines(report) -> list[str]:
    lines = [f"property {p.number}: {'ok' if p.passed else 'FAIL'}" + (f" ({p.detail})" if p.detail else "")
             for p in report.properties]
    if report.coset_count is not None:
        lines.append(f"|G:N| = {report.coset_count}")
    return lines


def cmd_vab_check(args) -> int:
    group = group_from(args)
    report = vabelian_check(gen_set_from(args, group), group.oracle)
    emit(args, report, "\n".join(property_lines(report)))
    return 0 if report.passed else 1


def cmd_vab_build(args) -> int:
    group = group_from(args)
    result = vabelian_pt(gen_set_from(args, group), group.oracle, args.sum_bound, args.verify_len,
                         budgets_from(args))
    if args.out:
        data_handler.save_dfa(args.out, result.dfa)
    a = group.alphabet
    lines = property_lines(result.report)
    lines.append(f"W0 = {{{', '.join(word_text(a, w) for w in result.excluded_x)}}}")
    for y, words in result.per_letter.items():
        lines.append(f"W_{y} = {{{', '.join(word_text(a, w) for w in words)}}}")
    lines.append(f"L2 {'empty' if result.l2_empty else 'non-empty'}; {result.dfa.n_states} states, "
                 f"verified to length {result.verification.maxlen}")
    emit(args, result, "\n".join(lines))
    return 0


def cmd_graphprod(args) -> int:
    graph, dfas = data_handler.load_graph(args.graph)
    result = graph_product(graph, dfas)
    if args.out:
        data_handler.save_dfa(args.out, result.dfa)
    lines = [f"vertex {v}: hat has {f.n_states} states" for v, f in result.hats.items()]
    lines.append(f"graph product: {result.dfa.n_states} states")
    emit(args, result.dfa.to_dict(), "\n".join(lines))
    return 0


def cmd_repro(args) -> int:
    report = repro_suite(args.only, budgets_from(args))
    if args.out:
        data_handler.save_json_data(args.out, report.model_dump(mode="json"))
    emit(args, report, format_report(report))
    return 0 if report.passed else 1


# === 5. PARSER ===

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print machine-readable JSON")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--max-elements", type=int, default=None, help="ball size budget")
    common.add_argument("--max-depth", type=int, default=None, help="bidirectional search depth budget")

    group_opts = argparse.ArgumentParser(add_help=False)
    source = group_opts.add_mutually_exclusive_group(required=True)
    source.add_argument("--pres", metavar="FILE",
                        help="presentation file: 'gens: a b', 'rel: abAB', 'order: a 3', 'oracle: ...' lines")
    source.add_argument("--group", metavar="NAME", help=f"catalog group: {', '.join(CATALOG_NAMES)}")

    dfa_help = "Dfa JSON file (alphabet, inverses, states, start, accepting, transitions)"
    parser = argparse.ArgumentParser(prog="geostar", description="Star-free geodesic languages of groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minimize", parents=[common], help="minimize a Dfa")
    p.add_argument("--dfa", required=True, help=dfa_help)
    p.add_argument("--out", help="write the minimal Dfa as JSON")
    p.add_argument("--dot", action="store_true", help="print Graphviz DOT instead of JSON")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("starfree", parents=[common], help="decide star-freeness of a Dfa's language")
    p.add_argument("--dfa", required=True, help=dfa_help)
    p.set_defaults(func=cmd_starfree)

    p = sub.add_parser("monoid", parents=[common], help="syntactic monoid of a Dfa's language")
    p.add_argument("--dfa", required=True, help=dfa_help)
    p.add_argument("--table", action="store_true", help="include the composition table")
    p.add_argument("--no-minimize", action="store_true", help="transition monoid of the Dfa as given")
    p.set_defaults(func=cmd_monoid)

    p = sub.add_parser("compile-expr", parents=[common], help="compile a star-free expression",
                       description="Syntax: 0 empty set, e empty word, letters, [tok] multi-character "
                                   "tokens, {w1,w2} finite sets, . concat, | union, & intersect, "
                                   "! complement, parentheses.")
    p.add_argument("expr", nargs="?", help="expression text")
    p.add_argument("--file", help="file holding the expression")
    alpha = p.add_mutually_exclusive_group(required=True)
    alpha.add_argument("--gens", help="lowercase letters; uppercase inverses are added")
    alpha.add_argument("--symbols", help="plain symbols, space or comma separated")
    p.add_argument("--out", help="write the minimal Dfa as JSON")
    p.set_defaults(func=cmd_compile_expr)

    p = sub.add_parser("sc-check", parents=[common, group_opts], help="small cancellation conditions")
    p.add_argument("--lambda", dest="lam", help="check C'(λ), e.g. 1/6")
    p.add_argument("--q", type=int, help="check T(q), q > 3")
    p.set_defaults(func=cmd_sc_check)

    p = sub.add_parser("ball", parents=[common, group_opts], help="ball and growth series")
    p.add_argument("--radius", type=int, required=True)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("geodesic", parents=[common, group_opts], help="is a word geodesic")
    p.add_argument("word", help="word; separate multi-character symbols with '.'")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("probe", parents=[common, group_opts], help="geodesy of u v^n w for n = 0..N")
    p.add_argument("-u", default="", help="prefix word")
    p.add_argument("-v", default="", help="repeated word")
    p.add_argument("-w", default="", help="suffix word")
    p.add_argument("-n", type=int, default=None, help="largest n")
    p.add_argument("--scan", action="store_true", help="scan all reduced triples within the desk_check bounds")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("verify", parents=[common, group_opts], help="compare a Dfa with the geodesics")
    p.add_argument("--dfa", required=True, help=dfa_help)
    p.add_argument("--maxlen", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("abelian-pe", parents=[common, group_opts], help="geodesic automaton of an abelian group")
    p.add_argument("--sum-bound", type=int, default=None)
    p.add_argument("--verify-len", type=int, default=None)
    p.add_argument("--out", help="write the Dfa as JSON")
    p.set_defaults(func=cmd_abelian_pe)

    for name, func, text in (("vab-check", cmd_vab_check, "check the generating-set properties"),
                             ("vab-build", cmd_vab_build, "geodesic automaton of a virtually abelian group")):
        p = sub.add_parser(name, parents=[common, group_opts], help=text)
        p.add_argument("--x", required=True, help="generators of N, comma separated")
        p.add_argument("--y", required=True, help="coset generators, comma separated")
        if name == "vab-build":
            p.add_argument("--sum-bound", type=int, default=None)
            p.add_argument("--verify-len", type=int, default=None)
            p.add_argument("--out", help="write the Dfa as JSON")
        p.set_defaults(func=func)

    p = sub.add_parser("graphprod", parents=[common], help="geodesic automaton of a graph product")
    p.add_argument("--graph", required=True, help="graph file: 'v: file.json' vertex lines, 'v -- w' edge lines")
    p.add_argument("--out", help="write the Dfa as JSON")
    p.set_defaults(func=cmd_graphprod)

    p = sub.add_parser("repro", parents=[common], help="run the worked examples and report")
    p.add_argument("--only", nargs="+", metavar="NAME", help=f"scenarios: {', '.join(SCENARIOS)}")
    p.add_argument("--out", help="also write the JSON report to this file")
    p.set_defaults(func=cmd_repro)
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    configure_logging(args.log_level or get_setting("log_level"))
    try:
        return args.func(args)
    except GeostarError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
