"""Random well-typed instances of every equation of both calculi.

``instance(name, rng)`` returns ``(lhs, rhs)``. Arrows are drawn from the
full signature (both constants, full products and sums), so every equation
is exercised with ``I`` and ``O`` in play.
"""

from bicoh.generate import random_arrow, random_composite, random_formula
from bicoh.syntax import (
    I, O, Codiag, Comp, Copair, Diag, Fragment, Id, Inj, K, Kappa, L, Lambda,
    Pair, Prod, Proj, Sum, TensorProd, TensorSum, infer_type,
)
from bicoh.translate import to_bifunctorial

FULL = Fragment.from_name("C")
LETTERS = ("p", "q")
BUDGET = 6

C_EQUATIONS = ("cat1", "cat2", "K1", "K2", "K3", "K4", "L1", "L2", "L3", "L4", "k", "l")
CPRIME_EQUATIONS = ("cat1'", "cat2'", "k'", "l'", "x1", "x2", "ki", "w", "kw1", "kw2",
                    "+1", "+2", "li", "m", "lm1", "lm2")


def formula(rng, leaves=3):
    return random_formula(rng, LETTERS, leaves, FULL)


def arrow_from(rng, a, budget=BUDGET):
    return random_composite(rng, a, budget, FULL, 1, LETTERS)


def arrow(rng, budget=BUDGET):
    return arrow_from(rng, formula(rng), budget)


def then(rng, f, budget=BUDGET):
    """A random arrow out of the target of ``f``."""
    return arrow_from(rng, infer_type(f)[1], budget)


def into(rng, a, b):
    """A random arrow ``a -> b``; ``None`` if none is small enough."""
    return random_arrow(rng, a, b, 2 * BUDGET, FULL)


def src(t):
    return infer_type(t)[0]


def tgt(t):
    return infer_type(t)[1]


def _c(name, rng):
    i = rng.choice((1, 2))
    if name == "cat1":
        f = arrow(rng)
        side = rng.choice(("left", "right"))
        return (Comp(Id(tgt(f)), f) if side == "left" else Comp(f, Id(src(f)))), f
    if name == "cat2":
        f = arrow(rng)
        g = then(rng, f)
        h = then(rng, g)
        return Comp(h, Comp(g, f)), Comp(Comp(h, g), f)
    if name == "K1":
        f, side = arrow(rng), formula(rng, 2)
        g = then(rng, f)
        return Comp(g, K(i, side, f)), K(i, side, Comp(g, f))
    if name == "K2":
        c = formula(rng)
        f1, f2 = arrow_from(rng, c), arrow_from(rng, c)
        g = then(rng, f1 if i == 1 else f2)
        side = tgt(f2) if i == 1 else tgt(f1)
        return Comp(K(i, side, g), Pair(f1, f2)), Comp(g, f1 if i == 1 else f2)
    if name == "K3":
        f = arrow(rng)
        g1, g2 = then(rng, f), then(rng, f)
        return Comp(Pair(g1, g2), f), Pair(Comp(g1, f), Comp(g2, f))
    if name == "K4":
        a, b = formula(rng), formula(rng)
        return Pair(K(1, b, Id(a)), K(2, a, Id(b))), Id(Prod(a, b))
    if name == "L1":
        f, side = arrow(rng), formula(rng, 2)
        g = then(rng, f)
        return Comp(L(i, side, g), f), L(i, side, Comp(g, f))
    if name == "L2":
        f = arrow(rng)
        g_i = then(rng, f)
        other = into(rng, formula(rng), tgt(g_i)) or g_i
        g1, g2 = (g_i, other) if i == 1 else (other, g_i)
        side = src(g2) if i == 1 else src(g1)
        return Comp(Copair(g1, g2), L(i, side, f)), Comp(g_i, f)
    if name == "L3":
        f1 = arrow(rng)
        f2 = into(rng, formula(rng), tgt(f1)) or f1
        g = then(rng, f1)
        return Comp(g, Copair(f1, f2)), Copair(Comp(g, f1), Comp(g, f2))
    if name == "L4":
        a, b = formula(rng), formula(rng)
        return Copair(L(1, b, Id(a)), L(2, a, Id(b))), Id(Sum(a, b))
    if name == "k":
        f = arrow(rng)
        to_i = into(rng, tgt(f), I)
        return Comp(to_i, f), Kappa(src(f))
    if name == "l":
        b = formula(rng)
        g = into(rng, O, b)
        h = arrow_from(rng, b)
        return Comp(h, g), Lambda(tgt(h))
    raise KeyError(name)


def _bif(rng):
    return to_bifunctorial(arrow(rng))


def _bif_from(rng, a):
    return to_bifunctorial(arrow_from(rng, a))


def _cprime(name, rng):
    i = rng.choice((1, 2))
    if name in ("cat1'", "cat2'", "k'", "l'"):
        lhs, rhs = _c(name[:-1], rng)
        return to_bifunctorial(lhs), to_bifunctorial(rhs)
    if name in ("x1", "+1"):
        a, b = formula(rng), formula(rng)
        op, obj = (TensorProd, Prod) if name == "x1" else (TensorSum, Sum)
        return op(Id(a), Id(b)), Id(obj(a, b))
    if name in ("x2", "+2"):
        op = TensorProd if name == "x2" else TensorSum
        f2, g2 = _bif(rng), _bif(rng)
        f1, g1 = _bif_from(rng, tgt(f2)), _bif_from(rng, tgt(g2))
        return op(Comp(f1, f2), Comp(g1, g2)), Comp(op(f1, g1), op(f2, g2))
    if name == "ki":
        f1, f2 = _bif(rng), _bif(rng)
        fi = f1 if i == 1 else f2
        return (Comp(Proj(i, tgt(f1), tgt(f2)), TensorProd(f1, f2)),
                Comp(fi, Proj(i, src(f1), src(f2))))
    if name == "li":
        f1, f2 = _bif(rng), _bif(rng)
        fi = f1 if i == 1 else f2
        return (Comp(TensorSum(f1, f2), Inj(i, src(f1), src(f2))),
                Comp(Inj(i, tgt(f1), tgt(f2)), fi))
    if name == "w":
        f = _bif(rng)
        return Comp(Diag(tgt(f)), f), Comp(TensorProd(f, f), Diag(src(f)))
    if name == "m":
        f = _bif(rng)
        return Comp(f, Codiag(src(f))), Comp(Codiag(tgt(f)), TensorSum(f, f))
    if name == "kw1":
        a = formula(rng)
        return Comp(Proj(i, a, a), Diag(a)), Id(a)
    if name == "lm1":
        a = formula(rng)
        return Comp(Codiag(a), Inj(i, a, a)), Id(a)
    if name == "kw2":
        a, b = formula(rng), formula(rng)
        return Comp(TensorProd(Proj(1, a, b), Proj(2, a, b)), Diag(Prod(a, b))), Id(Prod(a, b))
    if name == "lm2":
        a, b = formula(rng), formula(rng)
        return Comp(Codiag(Sum(a, b)), TensorSum(Inj(1, a, b), Inj(2, a, b))), Id(Sum(a, b))
    raise KeyError(name)


def instance(name, rng):
    if name in C_EQUATIONS:
        return _c(name, rng)
    return _cprime(name, rng)
