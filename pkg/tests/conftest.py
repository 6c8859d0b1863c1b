import random

from hypothesis import strategies as st

from bicoh.generate import random_arrow, random_composite, random_formula, random_from
from bicoh.syntax import Fragment, infer_type

C_X = Fragment.from_name("C_x")
C_XI = Fragment.from_name("C_x,I")
C_PLUS_XI = Fragment.from_name("C^+_x,I")
C_XPLUS = Fragment.from_name("C_x,+")
FULL_C = Fragment.from_name("C")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_of(seed):
    return random.Random(seed)


@st.composite
def formulas(draw, fragment=FULL_C, letters=("p", "q", "r"), max_leaves=4):
    return random_formula(rng_of(draw(seeds)), letters, max_leaves, fragment)


@st.composite
def cut_free_terms(draw, fragment=C_PLUS_XI, budget=12, letters=("p", "q")):
    rng = rng_of(draw(seeds))
    src = random_formula(rng, letters, 3, fragment)
    return random_from(rng, src, budget, fragment, letters)


@st.composite
def composite_terms(draw, fragment=C_PLUS_XI, budget=14, letters=("p", "q")):
    rng = rng_of(draw(seeds))
    src = random_formula(rng, letters, 3, fragment)
    return random_composite(rng, src, budget, fragment, 2, letters)


@st.composite
def parallel_pairs(draw, fragment=C_XPLUS, budget=10, letters=("p",)):
    """Two composition-free terms of one type."""
    rng = rng_of(draw(seeds))
    for _ in range(50):
        a = random_formula(rng, letters, 3, fragment)
        b = random_formula(rng, letters, 3, fragment)
        f = random_arrow(rng, a, b, budget, fragment)
        g = random_arrow(rng, a, b, budget, fragment)
        if f is not None and g is not None:
            return f, g
    f = random_from(rng, random_formula(rng, letters, 3, fragment), budget, fragment, letters)
    return f, f


def same_type(f, g):
    return infer_type(f) == infer_type(g)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
