"""Deciding equality of arrows by comparing their graphs.

Comparing ``G(f)`` with ``G(g)`` settles ``f = g`` only in the fragments
where ``G`` is faithful. Elsewhere the verdict is :class:`Incoherent`, which
still reports whether the graphs agree but claims nothing about the theory.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .graph import Relation, interpret
from .syntax import (
    BIFUNCTOR, FULL, NONE, Codiag, Comp, Copair, Diag, Fragment, Id, Inj, K,
    Letter, Pair, Prod, Proj, Sum, Term, TensorProd, TensorSum, fragment_of,
    infer_type,
)

__all__ = [
    "Verdict", "Equal", "NotEqual", "Incoherent", "TypeMismatch",
    "COHERENT_FAMILIES", "coherent_family", "equal", "check_worked_examples",
    "interchange_pair", "display_pair",
]

# Smallest first, so the first containing family is the tightest one.
COHERENT_FAMILIES = (
    Fragment(False, False, FULL, NONE),
    Fragment(True, False, FULL, NONE),
    Fragment(False, False, FULL, BIFUNCTOR),
    Fragment(True, False, FULL, BIFUNCTOR),
    Fragment(False, False, NONE, FULL),
    Fragment(False, True, NONE, FULL),
    Fragment(False, False, BIFUNCTOR, FULL),
    Fragment(False, True, BIFUNCTOR, FULL),
    Fragment(False, False, FULL, FULL),
)


def coherent_family(fr: Fragment) -> Optional[str]:
    """Name of the smallest family with a faithful ``G`` containing ``fr``, or ``None``."""
    for fam in COHERENT_FAMILIES:
        if fr <= fam:
            return fam.name
    return None


class Verdict:
    kind = ""
    exit_code = -1

    def to_json(self) -> dict:
        return {"verdict": self.kind}

    def __bool__(self) -> bool:
        return isinstance(self, Equal)


@dataclass(frozen=True)
class Equal(Verdict):
    family: str
    kind = "Equal"
    exit_code = 0

    def to_json(self) -> dict:
        return {"verdict": self.kind, "family": self.family}


@dataclass(frozen=True)
class NotEqual(Verdict):
    family: str
    witness: tuple
    in_first: bool
    kind = "NotEqual"
    exit_code = 1

    def to_json(self) -> dict:
        return {"verdict": self.kind, "family": self.family,
                "witness": list(self.witness), "in_first": self.in_first}


@dataclass(frozen=True)
class Incoherent(Verdict):
    fragment: str
    g_equal: bool
    kind = "Incoherent"
    exit_code = 2

    def to_json(self) -> dict:
        return {"verdict": self.kind, "fragment": self.fragment, "g_equal": self.g_equal}


@dataclass(frozen=True)
class TypeMismatch(Verdict):
    first: tuple
    second: tuple
    kind = "TypeMismatch"
    exit_code = 3

    def to_json(self) -> dict:
        return {"verdict": self.kind,
                "first": [str(a) for a in self.first],
                "second": [str(a) for a in self.second]}


def least_difference(a: Relation, b: Relation) -> Optional[tuple]:
    diff = sorted(set(a.pairs) ^ set(b.pairs))
    return diff[0] if diff else None


def equal(f: Term, g: Term) -> Verdict:
    tf, tg = infer_type(f), infer_type(g)
    if tf != tg:
        return TypeMismatch(tf, tg)
    fr = fragment_of([f, g])
    gf, gg = interpret(f), interpret(g)
    family = coherent_family(fr)
    if family is None:
        return Incoherent(fr.name, gf == gg)
    pair = least_difference(gf, gg)
    if pair is None:
        return Equal(family)
    return NotEqual(family, pair, pair in gf)


# ---------------------------------------------------------------------------
# The two worked equations


def interchange_pair(f1: Term, f2: Term, g1: Term, g2: Term):
    """Both sides of ``<[f1,f2],[g1,g2]> = [<f1,g1>,<f2,g2>]``."""
    return Pair(Copair(f1, f2), Copair(g1, g2)), Copair(Pair(f1, g1), Pair(f2, g2))


def display_pair(a, b, c, d):
    """Both sides of ``((k1+k1)*(k2+k2)) . w = m . ((l1*l1)+(l2*l2))`` over A, B, C, D."""
    lhs = Comp(TensorProd(TensorSum(Proj(1, a, b), Proj(1, c, d)),
                          TensorSum(Proj(2, a, b), Proj(2, c, d))),
               Diag(Sum(Prod(a, b), Prod(c, d))))
    rhs = Comp(Codiag(Prod(Sum(a, c), Sum(b, d))),
               TensorSum(TensorProd(Inj(1, a, c), Inj(1, b, d)),
                         TensorProd(Inj(2, a, c), Inj(2, b, d))))
    return lhs, rhs


def _projections(a, c, d):
    """From ``a*(c*d)``: the arrows onto ``c`` and onto ``d``."""
    return K(2, a, K(1, d, Id(c))), K(2, a, K(2, c, Id(d)))


def check_worked_examples(pool=("p", "q")) -> dict:
    """Check both worked equations over every assignment of ``pool`` letters
    to A, B, C, D, and that a one-place injection swap is caught."""
    letters = [Letter(x) for x in pool]
    rows = []
    for a, b, c, d in itertools.product(letters, repeat=4):
        name = {"A": str(a), "B": str(b), "C": str(c), "D": str(d)}
        f1, g1 = _projections(a, c, d)
        f2, g2 = _projections(b, c, d)
        lhs, rhs = interchange_pair(f1, f2, g1, g2)
        rows.append({"equation": "interchange", "assignment": name,
                     "verdict": equal(lhs, rhs).kind, "expected": "Equal"})
        lhs, rhs = display_pair(a, b, c, d)
        rows.append({"equation": "display", "assignment": name,
                     "verdict": equal(lhs, rhs).kind, "expected": "Equal"})
        if a == c:
            mutated = Comp(rhs.after, TensorSum(
                TensorProd(Inj(2, a, c), Inj(1, b, d)), rhs.before.right))
            rows.append({"equation": "display-mutated", "assignment": name,
                         "verdict": equal(lhs, mutated).kind, "expected": "NotEqual"})
    p = letters[0]
    one = Id(p)
    lhs, rhs = interchange_pair(one, one, one, one)
    rows.append({"equation": "interchange-identities", "assignment": {"A": str(p)},
                 "verdict": equal(lhs, rhs).kind, "expected": "Equal"})
    ok = all(r["verdict"] == r["expected"] for r in rows)
    return {"ok": ok, "rows": rows}
