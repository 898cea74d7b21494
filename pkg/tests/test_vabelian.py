import pytest

from automata.starfree import is_star_free
from core.errors import InputError, PreconditionError
from geodesics.ball import Budgets
from geodesics.vabelian import VAbelianGenSet, enumerate_cosets, vabelian_check, vabelian_pt
from groups.catalog import infinite_dihedral, z_times_z2

ROOMY = Budgets(max_elements=2_000_000, max_depth=14)


@pytest.fixture
def dinf():
    return infinite_dihedral()


def gen_set(group, xs, ys):
    alphabet = group.alphabet.sub(xs + ys)
    return VAbelianGenSet(alphabet=alphabet, x_symbols=tuple(xs), y_symbols=tuple(ys),
                          membership=group.normal_subgroup)


def failed(report):
    return [p.number for p in report.properties if not p.passed]


def test_dihedral_cosets(dinf):
    assert enumerate_cosets(dinf.oracle, dinf.normal_subgroup) == [(), ("s",)]


def test_dihedral_generating_set_passes(dinf):
    report = vabelian_check(gen_set(dinf, ["t", "T"], ["s"]), dinf.oracle)
    assert report.passed
    assert report.coset_count == 2
    assert report.conjugation == {"s": {"t": "T", "T": "t"}}


def test_missing_inverse_fails_property_two(dinf):
    report = vabelian_check(gen_set(dinf, ["t"], ["s"]), dinf.oracle)
    assert not report.passed
    assert 2 in failed(report)


def test_no_coset_representatives_fails_property_four(dinf):
    report = vabelian_check(gen_set(dinf, ["t", "T"], []), dinf.oracle)
    assert failed(report) == [4]


def test_generators_on_the_wrong_side_fail_property_one(dinf):
    report = vabelian_check(gen_set(dinf, ["s"], ["t", "T"]), dinf.oracle)
    assert 1 in failed(report)


def test_x_and_y_must_partition_the_generators(dinf):
    with pytest.raises(InputError):
        VAbelianGenSet(alphabet=dinf.alphabet, x_symbols=("t",), y_symbols=("s",),
                       membership=dinf.normal_subgroup)


def test_dihedral_automaton(dinf):
    result = vabelian_pt(gen_set(dinf, ["t", "T"], ["s"]), dinf.oracle, verify_len=8, budgets=ROOMY)
    assert result.per_letter["s"] == (("t", "T"), ("T", "t"))
    assert ("t", "s", "t") in result.excluded_one
    assert ("T", "s", "T") in result.excluded_one
    assert result.l2_empty
    assert result.verification.matched
    assert result.verification.maxlen == 8
    assert is_star_free(result.dfa)
    assert result.dfa.accepts(("t", "t", "s", "T"))
    assert not result.dfa.accepts(("s", "t", "s"))


def test_z_times_z2_automaton():
    group = z_times_z2()
    result = vabelian_pt(gen_set(group, ["t", "T"], ["s"]), group.oracle, verify_len=7, budgets=ROOMY)
    assert result.report.conjugation == {"s": {"t": "t", "T": "T"}}
    assert result.l2_empty
    assert result.dfa.accepts(("t", "s", "t"))
    assert is_star_free(result.dfa)


def test_automaton_needs_the_properties(dinf):
    with pytest.raises(PreconditionError):
        vabelian_pt(gen_set(dinf, ["t"], ["s"]), dinf.oracle, budgets=ROOMY)
