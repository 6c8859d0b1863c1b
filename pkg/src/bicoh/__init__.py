"""Free categories with binary products and sums: terms, normal forms and graphs."""

from .syntax import *  # noqa: F401,F403
from .syntax import __all__ as _syntax_all
from .graph import Relation, interpret, rel_compose, rel_identity, rel_juxtapose
from .translate import StyleError, to_bifunctorial, to_combinator
from .rewrite import (
    StepBudgetExceeded, classify_KL, degree, eliminate_cut, factorize,
    kl_normalize, normalize, reduce_to_normal_form,
)
from .decide import Equal, Incoherent, NotEqual, TypeMismatch, coherent_family, equal
from .oracle import C_AXIOMS, CPRIME_AXIOMS, equational_closure, verify_faithfulness
from .maximality import collapse_witness, preorder_collapse
from .render import render

__all__ = list(_syntax_all) + [
    "Relation", "interpret", "rel_compose", "rel_identity", "rel_juxtapose",
    "StyleError", "to_bifunctorial", "to_combinator",
    "StepBudgetExceeded", "classify_KL", "degree", "eliminate_cut", "factorize",
    "kl_normalize", "normalize", "reduce_to_normal_form",
    "Equal", "Incoherent", "NotEqual", "TypeMismatch", "coherent_family", "equal",
    "C_AXIOMS", "CPRIME_AXIOMS", "equational_closure", "verify_faithfulness",
    "collapse_witness", "preorder_collapse", "render",
]
