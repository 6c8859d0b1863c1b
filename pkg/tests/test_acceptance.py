"""End-to-end acceptance checks, each with its own time limit.

Every test records one PASS/FAIL line; the lines are printed together at
the end of the run (see ``pytest_terminal_summary`` in conftest).
"""

import itertools
import random
import time

from bicoh.decide import Incoherent, check_worked_examples, equal
from bicoh.generate import all_formulas, random_arrow, random_composite, random_formula, random_from
from bicoh.graph import distributivity_fixture, interpret, rel_compose, rel_identity
from bicoh.maximality import collapse_witness
from bicoh.oracle import enumerate_terms, verify_faithfulness
from bicoh.rewrite import degree, normal_form_step, normalize
from bicoh.syntax import (
    I, Codiag, Comp, Inj, Letter, Sum, TensorSum, infer_type, parse_term, term_size,
)

from axiom_instances import C_EQUATIONS, CPRIME_EQUATIONS, instance
from conftest import C_PLUS_XI, C_XPLUS

RESULTS: dict = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"


def clear_caches() -> None:
    interpret.cache_clear()
    infer_type.cache_clear()


def test_c01_distributivity_round_trip():
    fx = distributivity_fixture()
    t = time.perf_counter()
    loop = rel_compose(fx["up"], fx["down"])
    dt = time.perf_counter() - t
    ok = (loop.pairs == ((0, 0), (0, 2), (1, 1), (2, 0), (2, 2), (3, 3))
          and loop != rel_identity(4) and dt < 1e-3)
    record(1, ok, f"{loop}  ({dt * 1e6:.0f} us)")
    assert ok


def test_c02_merge_after_injections_is_identity():
    p, q = Letter("p"), Letter("q")
    t = Comp(Codiag(Sum(p, q)), TensorSum(Inj(1, p, q), Inj(2, p, q)))
    clear_caches()
    start = time.perf_counter()
    g = interpret(t)
    dt = time.perf_counter() - start
    ok = g == rel_identity(2) and dt < 1e-3
    record(2, ok, f"{g}  ({dt * 1e6:.0f} us)")
    assert ok


def test_c03_worked_equations():
    clear_caches()
    t = time.perf_counter()
    report = check_worked_examples()
    dt = time.perf_counter() - t
    counts = {name: sum(r["verdict"] == "Equal" for r in report["rows"] if r["equation"] == name)
              for name in ("interchange", "display")}
    ok = report["ok"] and counts == {"interchange": 16, "display": 16} and dt < 1.0
    record(3, ok, f"Equal on {counts}, {len(report['rows'])} rows ({dt:.2f} s)")
    assert ok


def test_c04_axiom_soundness():
    rng = random.Random(4)
    bad = []
    t = time.perf_counter()
    instances = [(name, instance(name, rng))
                 for name in C_EQUATIONS + CPRIME_EQUATIONS for _ in range(10_000)]
    gen = time.perf_counter() - t
    t = time.perf_counter()
    for name, (lhs, rhs) in instances:
        if interpret(lhs) != interpret(rhs):
            bad.append((name, str(lhs), str(rhs)))
    dt = time.perf_counter() - t
    n = len(C_EQUATIONS) + len(CPRIME_EQUATIONS)
    ok = not bad and dt < 60
    record(4, ok, f"{n} equations x 10^4 instances, {len(bad)} violations "
                  f"({dt:.1f} s checking, {gen:.1f} s generating)")
    assert ok, bad[:3]


def test_c05_strong_normalization():
    rng = random.Random(5)
    bad, steps, made = [], 0, 0
    t = time.perf_counter()
    while made < 10_000:
        src = random_formula(rng, ("p", "q"), 3, C_PLUS_XI)
        term = random_from(rng, src, 20, C_PLUS_XI, ("p", "q"))
        if term_size(term) > 20:
            continue
        made += 1
        d = degree(term)
        for _ in range(10_000):
            r = normal_form_step(term)
            if r is None:
                break
            term, rule = r
            steps += 1
            if not degree(term) < d:
                bad.append((rule, str(term)))
                break
            d = degree(term)
        else:
            bad.append(("no termination", str(term)))
    dt = time.perf_counter() - t
    ok = not bad and dt < 60
    record(5, ok, f"10^4 terms, {steps} steps, {len(bad)} violations ({dt:.1f} s)")
    assert ok, bad[:3]


def test_c06_normal_forms_are_unique():
    atoms = [Letter("p"), Letter("q"), I]
    forms = all_formulas(atoms, 3)
    bad, types, terms = [], 0, 0
    t = time.perf_counter()
    for a, b in itertools.product(forms, repeat=2):
        seeds = enumerate_terms(a, b, 8, C_PLUS_XI)
        if not seeds:
            continue
        types += 1
        terms += len(seeds)
        by_nf, by_g = {}, {}
        for i, s in enumerate(seeds):
            by_nf.setdefault(normalize(s), set()).add(i)
            by_g.setdefault(interpret(s), set()).add(i)
        if sorted(map(sorted, by_nf.values())) != sorted(map(sorted, by_g.values())):
            bad.append((str(a), str(b)))
    dt = time.perf_counter() - t
    ok = not bad and dt < 600
    record(6, ok, f"{types} types, {terms} terms, {len(bad)} violations ({dt:.1f} s)")
    assert ok, bad[:3]


def test_c07_associativity_is_derivable():
    rng = random.Random(7)
    bad = []
    t = time.perf_counter()
    for _ in range(1000):
        src = random_formula(rng, ("p", "q"), 3, C_PLUS_XI)
        f = random_composite(rng, src, 8, C_PLUS_XI, 2, ("p", "q"))
        g = random_composite(rng, infer_type(f)[1], 8, C_PLUS_XI, 2, ("p", "q"))
        h = random_composite(rng, infer_type(g)[1], 8, C_PLUS_XI, 2, ("p", "q"))
        if normalize(Comp(h, Comp(g, f))) != normalize(Comp(Comp(h, g), f)):
            bad.append((str(f), str(g), str(h)))
    dt = time.perf_counter() - t
    ok = not bad and dt < 60
    record(7, ok, f"10^3 triples, {len(bad)} violations ({dt:.1f} s)")
    assert ok, bad[:3]


def test_c08_oracle_agrees_with_graphs():
    forms = all_formulas([Letter("p"), Letter("q")], 3)
    problems = []
    t = time.perf_counter()
    for a, b in itertools.product(forms, repeat=2):
        v = verify_faithfulness(a, b, 6, C_XPLUS, step_bound=60)
        if not v["coincide"] or not v["saturated"] or v["hard_failures"]:
            problems.append((str(a), str(b), v["coincide"], v["saturated"], len(v["hard_failures"])))
    dt = time.perf_counter() - t
    ok = not problems and dt < 900
    record(8, ok, f"{len(forms) ** 2} type pairs, {len(problems)} problems ({dt:.0f} s)")
    assert ok, problems[:3]


def test_c09_constants_block_verdicts():
    T = parse_term
    vk = equal(T("k1{O,O}"), T("k2{O,O}"))
    vl = equal(T("l1{I,I}"), T("l2{I,I}"))
    ok = all(isinstance(v, Incoherent) and v.g_equal for v in (vk, vl))
    record(9, ok, f"{vk.to_json()} / {vl.to_json()}")
    assert ok


def _distinct_pairs(rng, count):
    """Graph-distinct parallel pairs over the single letter p."""
    while count:
        a = random_formula(rng, ("p",), 3, C_XPLUS)
        b = random_formula(rng, ("p",), 3, C_XPLUS)
        f = random_arrow(rng, a, b, 10, C_XPLUS)
        g = random_arrow(rng, a, b, 10, C_XPLUS)
        if f is None or g is None or interpret(f) == interpret(g):
            continue
        count -= 1
        yield f, g


def test_c10_maximality_witnesses():
    rng = random.Random(10)
    bad = []
    t = time.perf_counter()
    for f, g in _distinct_pairs(rng, 100):
        cert = collapse_witness(f, g).check()
        if not cert["ok"]:
            bad.append((str(f), str(g), cert))
    dt = time.perf_counter() - t
    ok = not bad and dt < 300
    record(10, ok, f"100 pairs, {len(bad)} failed certificates ({dt:.1f} s)")
    assert ok, bad[:3]
