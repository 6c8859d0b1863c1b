import random

import pytest
from hypothesis import given, settings

from bicoh.generate import random_composite, random_formula
from bicoh.graph import interpret
from bicoh.rewrite import (
    Degree, StepBudgetExceeded, classify_KL, degree, eliminate_cut, factorize,
    is_composition_free, kl_normalize, normal_form_step, normalize,
    reduce_to_normal_form,
)
from bicoh.syntax import (
    Comp, FragmentError, Id, K, Kappa, Letter, Pair, children, infer_type,
    parse_term,
)
from bicoh.translate import StyleError, to_bifunctorial

from conftest import (
    C_PLUS_XI, C_XPLUS, composite_terms, cut_free_terms, parallel_pairs,
    rng_of, seeds,
)

p, q = Letter("p"), Letter("q")
T = parse_term


def nf(text):
    return str(normalize(T(text)))


def test_cut_elimination_examples():
    f = T("(<K1{q}(1{p}),K2{p}(1{q})>;K1{q}(1{p}))")
    out = eliminate_cut(f)
    assert is_composition_free(out)
    assert out == T("K1{q}(1{p})")
    assert eliminate_cut(T("(1{p};1{p})")) == T("1{p}")
    assert eliminate_cut(T("(l{p};k{p})")) == T("k{O}")


def test_cut_elimination_wants_combinator_style():
    with pytest.raises(StyleError):
        eliminate_cut(T("(w{p};k1{p,p})"))


def test_degree_examples():
    assert degree(T("1{(p*q)}")) == Degree(1, 0)
    assert degree(T("K1{q}(<1{p},1{p}>)")) == Degree(0, 1)
    assert degree(T("k{p}")) == Degree(0, 0)
    assert degree(T("K1{q}(K1{r}(<1{p},1{p}>))")) == Degree(0, 2)


def test_single_reductions():
    assert str(reduce_to_normal_form(T("1{(p*q)}"))) == "<K1{q}(1{p}),K2{p}(1{q})>"
    assert str(reduce_to_normal_form(T("1{I}"))) == "k{I}"
    assert str(reduce_to_normal_form(T("K1{q}(<1{p},1{p}>)"))) == "<K1{q}(1{p}),K1{q}(1{p})>"


def test_normalize_examples():
    assert nf("(1{p*q};1{p*q})") == "<K1{q}(1{p}),K2{p}(1{q})>"
    assert nf("K1{q}(1{p})") == "K1{q}(1{p})"
    assert nf("<K1{p}(k{p}),K1{p}(1{p})>") == "<k{(p*p)},K1{p}(1{p})>"
    assert nf("(1{p+q};(1{p}+1{q}))") == "(1{p}+1{q})"


def test_normalize_refuses_uncovered_fragments():
    with pytest.raises(FragmentError):
        normalize(T("L1{q}(1{p})"))
    with pytest.raises(FragmentError):
        normalize(T("l{p}"))
    with pytest.raises(StepBudgetExceeded):
        normalize(T("1{(p*q)*(p*q)}"), max_steps=1)


@settings(max_examples=200)
@given(seeds)
def test_every_arrow_into_I_normalizes_to_k(seed):
    rng = random.Random(seed)
    t = random_composite(rng, random_formula(rng, ("p", "q"), 3, C_PLUS_XI), 12, C_PLUS_XI)
    a = infer_type(t)[0]
    assert normalize(Comp(Kappa(infer_type(t)[1]), t)) == Kappa(a)


def test_factorize_examples():
    f = T("((k1{a,b}*l1{c,d})+w{e})")
    assert [str(x) for x in factorize(f)] == [
        "((k1{a,b}*1{c})+w{e})", "((1{a}*l1{c,d})+1{(e*e)})"]
    assert [str(x) for x in factorize(T("w{p}"))] == ["w{p}"]
    assert [str(x) for x in factorize(T("(w{p};(1{p}*1{p}))"))] == ["w{p}"]


def test_classify_examples():
    assert classify_KL(T("(1{p}*1{q})")) == "complex-identity"
    assert classify_KL(T("(k1{p,q}+1{r})")) == "K-term"
    assert classify_KL(T("(k1{p,q}*m{r})")) == "neither"


def test_kl_normalize_examples():
    kp, lp = kl_normalize(T("(m{p};w{p})"))
    assert (str(kp), str(lp)) == ("(w{p}+w{p})", "m{(p*p)}")
    assert kl_normalize(T("k1{p,q}")) == (T("k1{p,q}"), T("1{p}"))
    assert kl_normalize(T("l1{p,q}")) == (T("1{p}"), T("l1{p,q}"))


# -- properties --------------------------------------------------------------


def _at_least_one_n2(t, under=False):
    """The rejected reading of n2: brackets with any K above them count once."""
    own = 1 if under and isinstance(t, (Pair, Kappa)) else 0
    return own + sum(_at_least_one_n2(c, under or isinstance(t, K)) for c in children(t))


def test_counting_each_bracket_once_does_not_decrease():
    t = T("K1{q}(K1{r}(<1{p},1{p}>))")
    step, rule = normal_form_step(t)
    assert rule == "K<>"
    assert _at_least_one_n2(step) == _at_least_one_n2(t) == 1
    assert degree(step) < degree(t)


@settings(max_examples=300, deadline=None)
@given(composite_terms(fragment=C_XPLUS))
def test_cut_elimination_is_sound(t):
    trace = []
    out = eliminate_cut(t, trace=trace)
    assert is_composition_free(out)
    assert infer_type(out) == infer_type(t)
    assert interpret(out) == interpret(t)
    for entry in trace:
        redex = parse_term(entry["term"])
        assert isinstance(redex, Comp) and is_composition_free(redex.after)


@settings(max_examples=300, deadline=None)
@given(cut_free_terms(fragment=C_PLUS_XI, budget=20))
def test_each_reduction_lowers_degree_and_keeps_graph(t):
    g, d = interpret(t), degree(t)
    while (r := normal_form_step(t)) is not None:
        t, _ = r
        assert interpret(t) == g
        assert degree(t) < d
        d = degree(t)


@settings(max_examples=300, deadline=None)
@given(composite_terms(fragment=C_PLUS_XI))
def test_stepwise_and_fast_normal_forms_agree(t):
    trace = []
    slow = normalize(t, trace=trace)
    assert slow == normalize(t)
    assert interpret(slow) == interpret(t)


@settings(max_examples=300, deadline=None)
@given(parallel_pairs(fragment=C_PLUS_XI, budget=10, letters=("p", "q")))
def test_normal_forms_coincide_exactly_when_graphs_do(pair):
    f, g = pair
    assert (normalize(f) == normalize(g)) == (interpret(f) == interpret(g))


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_associativity_of_composition_is_derivable(seed):
    rng = rng_of(seed)
    src = random_formula(rng, ("p", "q"), 3, C_PLUS_XI)
    f = random_composite(rng, src, 8, C_PLUS_XI)
    g = random_composite(rng, infer_type(f)[1], 8, C_PLUS_XI)
    h = random_composite(rng, infer_type(g)[1], 8, C_PLUS_XI)
    assert normalize(Comp(h, Comp(g, f))) == normalize(Comp(Comp(h, g), f))


@settings(max_examples=300, deadline=None)
@given(composite_terms(fragment=C_XPLUS, budget=12))
def test_kl_normalize_splits_soundly(t):
    f = to_bifunctorial(t)
    kpart, lpart = kl_normalize(f)
    assert isinstance(kpart, Id) or classify_KL(kpart) in ("K-term", "complex-identity")
    assert isinstance(lpart, Id) or classify_KL(lpart) in ("L-term", "complex-identity")
    assert interpret(Comp(lpart, kpart)) == interpret(f)
    assert infer_type(Comp(lpart, kpart)) == infer_type(f)


@settings(max_examples=200, deadline=None)
@given(composite_terms(fragment=C_XPLUS, budget=12))
def test_factors_compose_and_are_pure(t):
    f = to_bifunctorial(t)
    fac = factorize(f)
    assert interpret(fac.composite()) == interpret(f)
    if len(fac) > 1:
        assert all(classify_KL(x) != "complex-identity" for x in fac)
