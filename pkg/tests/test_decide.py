from hypothesis import given, settings

from bicoh.decide import (
    Equal, Incoherent, NotEqual, TypeMismatch, check_worked_examples,
    coherent_family, equal,
)
from bicoh.graph import interpret
from bicoh.oracle import equational_closure
from bicoh.syntax import Fragment, parse_term

from conftest import C_PLUS_XI, C_XPLUS, parallel_pairs

T = parse_term


def test_families():
    assert coherent_family(Fragment.from_name("C_x,+")) == "C_x,+"
    assert coherent_family(Fragment.from_name("C_x")) == "C_x"
    assert coherent_family(Fragment.from_name("C^x_+")) == "C^x_+"
    assert coherent_family(Fragment.from_name("C_x,I,O")) is None
    assert coherent_family(Fragment.from_name("C_x,+,I")) is None


def test_interchange_with_identities():
    v = equal(T("<[1{p},1{p}],[1{p},1{p}]>"), T("[<1{p},1{p}>,<1{p},1{p}>]"))
    assert v == Equal("C_x,+")
    assert v.exit_code == 0 and bool(v)


def test_projections_differ_at_least_pair():
    v = equal(T("k1{p,p}"), T("k2{p,p}"))
    assert v == NotEqual("C_x", (0, 0), True)
    assert v.exit_code == 1


def test_constants_block_the_verdict():
    v = equal(T("k1{O,O}"), T("k2{O,O}"))
    assert isinstance(v, Incoherent) and v.g_equal
    assert v.exit_code == 2
    v = equal(T("l1{I,I}"), T("l2{I,I}"))
    assert isinstance(v, Incoherent) and v.g_equal


def test_type_mismatch():
    v = equal(T("1{p}"), T("1{q}"))
    assert isinstance(v, TypeMismatch) and v.exit_code == 3
    assert v.to_json()["first"] == ["p", "p"]


def test_worked_equations_hold_for_every_assignment():
    report = check_worked_examples()
    assert report["ok"]
    kinds = [r["equation"] for r in report["rows"]]
    assert kinds.count("interchange") == 16 and kinds.count("display") == 16
    assert all(r["verdict"] == "NotEqual" for r in report["rows"]
               if r["equation"] == "display-mutated")


@settings(max_examples=200, deadline=None)
@given(parallel_pairs(fragment=C_XPLUS, budget=8, letters=("p", "q")))
def test_equal_is_symmetric_and_reflexive(pair):
    f, g = pair
    assert equal(f, f).kind == "Equal"
    assert equal(f, g).kind == equal(g, f).kind


@settings(max_examples=60, deadline=None)
@given(parallel_pairs(fragment=C_XPLUS, budget=7, letters=("p",)))
def test_closure_merges_never_contradict_the_verdict(pair):
    f, g = pair
    rep = equational_closure([f, g], step_bound=4)
    assert not rep.hard_failures
    if rep.same_class(0, 1):
        assert equal(f, g).kind == "Equal"


@settings(max_examples=200, deadline=None)
@given(parallel_pairs(fragment=C_PLUS_XI, budget=8, letters=("p", "q")))
def test_verdict_reports_graph_agreement(pair):
    f, g = pair
    v = equal(f, g)
    assert isinstance(v, (Equal, NotEqual))
    assert (v.kind == "Equal") == (interpret(f) == interpret(g))
