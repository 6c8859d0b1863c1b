import pytest
from hypothesis import given, settings

from bicoh.graph import interpret
from bicoh.syntax import (
    Comp, Fragment, Id, Letter, Pair, Prod, Proj, fragment_of, infer_type,
    is_bifunctorial, is_combinator, parse_term,
)
from bicoh.translate import StyleError, to_bifunctorial, to_combinator

from conftest import FULL_C, composite_terms

p, q = Letter("p"), Letter("q")


def tb(text):
    return str(to_bifunctorial(parse_term(text)))


def tc(text):
    return str(to_combinator(parse_term(text)))


def test_combinator_clauses():
    assert tb("K1{q}(1{p})") == "(k1{p,q};1{p})"
    assert tb("<1{p},1{p}>") == "(w{p};(1{p}*1{p}))"
    assert tb("1{p}") == "1{p}"


def test_bifunctorial_clauses():
    assert tc("w{p}") == "<1{p},1{p}>"
    assert tc("m{p}") == "[1{p},1{p}]"
    assert tc("(k1{p,q}*1{q})") == "<K1{q}(K1{q}(1{p})),K2{(p*q)}(1{q})>"


def test_wrong_style_is_refused():
    with pytest.raises(StyleError):
        to_combinator(parse_term("K1{q}(1{p})"))
    with pytest.raises(StyleError):
        to_bifunctorial(parse_term("w{p}"))


def test_bare_bifunctor_survives_translation():
    t = parse_term("(1{p}+1{q})")
    assert to_combinator(t) == t


@settings(max_examples=300)
@given(composite_terms(fragment=FULL_C))
def test_round_trips_preserve_type_and_graph(t):
    if is_combinator(t):
        u = to_bifunctorial(t)
        assert is_bifunctorial(u)
        back = to_combinator(u)
    else:
        u = to_combinator(t, strict=False)
        back = to_bifunctorial(u, strict=False)
    for v in (u, back):
        assert infer_type(v) == infer_type(t)
        assert interpret(v) == interpret(t)


@settings(max_examples=300)
@given(composite_terms(fragment=FULL_C))
def test_translation_preserves_fragment(t):
    if not is_combinator(t):
        return
    before, after = fragment_of(t), fragment_of(to_bifunctorial(t))
    assert (before.has_I, before.has_O) == (after.has_I, after.has_O)
    assert (before.product, before.sum) == (after.product, after.sum)
