"""Random formulas and random well-typed composition-free terms.

Sampling is type directed. :func:`min_size` tells, for a source, target and
fragment, the size of the smallest composition-free combinator-style term of
that type (or ``None`` when the type is empty), which both prunes dead
branches and keeps every sample inside its size budget.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Optional, Sequence

from .syntax import (
    BIFUNCTOR, FULL, NONE, Comp, Copair, Formula, Fragment, I, Id, K, Kappa,
    L, Lambda, Letter, O, Pair, Prod, Sum, Term, TensorProd, TensorSum,
    TerminalI, InitialO, infer_type, term_size,
)

__all__ = [
    "random_formula", "all_formulas", "min_size", "random_arrow",
    "random_from", "random_composite",
]


def _atoms(letters: Sequence[str], fragment: Fragment) -> list:
    out: list = [Letter(x) for x in letters]
    if fragment.has_I:
        out.append(I)
    if fragment.has_O:
        out.append(O)
    return out


def _connectives(fragment: Fragment) -> list:
    out = []
    if fragment.product != NONE:
        out.append(Prod)
    if fragment.sum != NONE:
        out.append(Sum)
    return out


def random_formula(rng: random.Random, letters: Sequence[str], max_leaves: int,
                   fragment: Fragment) -> Formula:
    """A random formula with between 1 and ``max_leaves`` leaves."""
    atoms, ops = _atoms(letters, fragment), _connectives(fragment)
    n = rng.randint(1, max_leaves) if ops else 1
    return _random_tree(rng, n, atoms, ops)


def _random_tree(rng, n, atoms, ops):
    if n == 1:
        return rng.choice(atoms)
    k = rng.randint(1, n - 1)
    return rng.choice(ops)(_random_tree(rng, k, atoms, ops), _random_tree(rng, n - k, atoms, ops))


def all_formulas(atoms: Sequence[Formula], max_leaves: int, ops=(Prod, Sum)) -> list:
    """Every formula over ``atoms`` and ``ops`` with at most ``max_leaves`` leaves."""
    by_n: dict[int, list] = {1: list(atoms)}
    for n in range(2, max_leaves + 1):
        by_n[n] = [op(a, b) for k in range(1, n) for op in ops
                   for a in by_n[k] for b in by_n[n - k]]
    return [a for n in range(1, max_leaves + 1) for a in by_n[n]]


# ---------------------------------------------------------------------------
# Minimal sizes


def _options(src: Formula, tgt: Formula, fr: Fragment):
    """Constructors that can build a composition-free term ``src -> tgt``.

    Each option is ``(tag, subgoals)``; subgoals are (src, tgt) pairs.
    """
    out = []
    if src == tgt:
        out.append(("id", ()))
    if fr.has_I and isinstance(tgt, TerminalI):
        out.append(("kappa", ()))
    if fr.has_O and isinstance(src, InitialO):
        out.append(("lambda", ()))
    if fr.product == FULL:
        if isinstance(src, Prod):
            out.append(("K1", ((src.left, tgt),)))
            out.append(("K2", ((src.right, tgt),)))
        if isinstance(tgt, Prod):
            out.append(("pair", ((src, tgt.left), (src, tgt.right))))
    elif fr.product == BIFUNCTOR and isinstance(src, Prod) and isinstance(tgt, Prod):
        out.append(("tprod", ((src.left, tgt.left), (src.right, tgt.right))))
    if fr.sum == FULL:
        if isinstance(tgt, Sum):
            out.append(("L1", ((src, tgt.left),)))
            out.append(("L2", ((src, tgt.right),)))
        if isinstance(src, Sum):
            out.append(("copair", ((src.left, tgt), (src.right, tgt))))
    elif fr.sum == BIFUNCTOR and isinstance(src, Sum) and isinstance(tgt, Sum):
        out.append(("tsum", ((src.left, tgt.left), (src.right, tgt.right))))
    return out


@lru_cache(maxsize=None)
def min_size(src: Formula, tgt: Formula, fr: Fragment) -> Optional[int]:
    """Size of the smallest composition-free term ``src -> tgt`` in ``fr``."""
    best = None
    for _, goals in _options(src, tgt, fr):
        total = 1
        for s, t in goals:
            m = min_size(s, t, fr)
            if m is None:
                break
            total += m
        else:
            if best is None or total < best:
                best = total
    return best


def _build(tag: str, src: Formula, tgt: Formula, kids: list) -> Term:
    if tag == "id":
        return Id(src)
    if tag == "kappa":
        return Kappa(src)
    if tag == "lambda":
        return Lambda(tgt)
    if tag == "K1":
        return K(1, src.right, kids[0])
    if tag == "K2":
        return K(2, src.left, kids[0])
    if tag == "L1":
        return L(1, tgt.right, kids[0])
    if tag == "L2":
        return L(2, tgt.left, kids[0])
    return {"pair": Pair, "copair": Copair, "tprod": TensorProd, "tsum": TensorSum}[tag](*kids)


def random_arrow(rng: random.Random, src: Formula, tgt: Formula, budget: int,
                 fragment: Fragment) -> Optional[Term]:
    """A random composition-free term ``src -> tgt`` of size at most ``budget``."""
    m = min_size(src, tgt, fragment)
    if m is None or m > budget:
        return None
    viable = []
    for tag, goals in _options(src, tgt, fragment):
        mins = [min_size(s, t, fragment) for s, t in goals]
        if None not in mins and 1 + sum(mins) <= budget:
            viable.append((tag, goals, mins))
    tag, goals, mins = rng.choice(viable)
    spare = budget - 1 - sum(mins)
    kids = []
    for j, ((s, t), mn) in enumerate(zip(goals, mins)):
        extra = spare if j == len(goals) - 1 else rng.randint(0, spare)
        spare -= extra
        kid = random_arrow(rng, s, t, mn + extra, fragment)
        kids.append(kid)
        spare += mn + extra - term_size(kid)
    return _build(tag, src, tgt, kids)


def random_from(rng: random.Random, src: Formula, budget: int, fragment: Fragment,
                letters: Sequence[str] = ("p",)) -> Term:
    """A random composition-free term with source ``src`` and any target."""
    opts = ["id"]
    if fragment.has_I:
        opts.append("kappa")
    if budget >= 3 and fragment.product == FULL:
        opts.append("pair")
    if budget >= 2:
        if fragment.product == FULL and isinstance(src, Prod):
            opts += ["K", "K"]
        if fragment.sum == FULL:
            opts.append("L")
            if isinstance(src, Sum) and budget >= 3:
                opts += ["copair", "copair"]
        if fragment.product == BIFUNCTOR and isinstance(src, Prod) and budget >= 3:
            opts += ["tprod", "tprod"]
        if fragment.sum == BIFUNCTOR and isinstance(src, Sum) and budget >= 3:
            opts += ["tsum", "tsum"]
    if fragment.has_O and isinstance(src, InitialO):
        opts.append("lambda")
    tag = rng.choice(opts)
    if tag == "id":
        return Id(src)
    if tag == "kappa":
        return Kappa(src)
    if tag == "lambda":
        return Lambda(random_formula(rng, letters, 3, fragment))
    if tag == "K":
        i = rng.choice((1, 2))
        part, side = (src.left, src.right) if i == 1 else (src.right, src.left)
        return K(i, side, random_from(rng, part, budget - 1, fragment, letters))
    if tag == "L":
        side = random_formula(rng, letters, 2, fragment)
        return L(rng.choice((1, 2)), side, random_from(rng, src, budget - 1, fragment, letters))
    a = rng.randint(1, budget - 2)
    if tag == "pair":
        return Pair(random_from(rng, src, a, fragment, letters),
                    random_from(rng, src, budget - 1 - a, fragment, letters))
    if tag in ("tprod", "tsum"):
        op = TensorProd if tag == "tprod" else TensorSum
        return op(random_from(rng, src.left, a, fragment, letters),
                  random_from(rng, src.right, budget - 1 - a, fragment, letters))
    left = random_from(rng, src.left, a, fragment, letters)
    right = random_arrow(rng, src.right, infer_type(left)[1], budget - 1 - term_size(left), fragment)
    if right is None:
        return Id(src)
    return Copair(left, right)


def random_composite(rng: random.Random, src: Formula, budget: int, fragment: Fragment,
                     depth: int = 2, letters: Sequence[str] = ("p",)) -> Term:
    """A random term with compositions nested up to ``depth`` levels."""
    if depth <= 0 or budget < 3 or rng.random() < 0.3:
        return random_from(rng, src, budget, fragment, letters)
    a = rng.randint(1, budget - 2)
    f = random_composite(rng, src, a, fragment, depth - 1, letters)
    g = random_composite(rng, infer_type(f)[1], budget - 1 - a, fragment, depth - 1, letters)
    return Comp(g, f)
