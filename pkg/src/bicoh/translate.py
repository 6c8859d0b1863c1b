"""Translations between combinator-style and bifunctorial-style terms.

Each direction is a structural recursion that rewrites every node by its
defining equation, with no simplification afterwards::

    K1{B}(f) = (k1{A,B} ; f)        k1{A,B} = K1{B}(1{A})
    L1{B}(f) = (f ; l1{A,B})        l1{A,B} = L1{B}(1{A})
    <f,g>    = (w{C} ; (f*g))       w{A}    = <1{A},1{A}>
    [f,g]    = ((f+g) ; m{C})       m{A}    = [1{A},1{A}]
                                    f*g     = <K1{C}(f), K2{A}(g)>
                                    f+g     = [L1{D}(f), L2{B}(g)]

A bare bifunctor ``f*g`` (``f+g``) is kept by :func:`to_combinator` when
the input never uses projections or pairing (injections or copairing),
so terms of the categories extended by a bifunctor stay in them.
"""

from __future__ import annotations

from .syntax import (
    BIFUNCTORIAL_ONLY, Codiag, Comp, Copair, Diag, Id, Inj, K, Kappa, L,
    Lambda, Pair, Proj, Term, TensorProd, TensorSum, infer_type,
    is_bifunctorial, is_combinator, subterms, Prod, Sum,
)

__all__ = ["to_bifunctorial", "to_combinator", "StyleError", "unfold_node"]


class StyleError(ValueError):
    """Input is not in the style a translation or rewriter expects."""


def unfold_node(t: Term) -> Term:
    """Rewrite one combinator-only node into bifunctorial form; children untouched."""
    if isinstance(t, K):
        a, _ = infer_type(t.arg)
        if t.index == 1:
            return Comp(t.arg, Proj(1, a, t.side))
        return Comp(t.arg, Proj(2, t.side, a))
    if isinstance(t, L):
        _, b = infer_type(t.arg)
        if t.index == 1:
            return Comp(Inj(1, b, t.side), t.arg)
        return Comp(Inj(2, t.side, b), t.arg)
    if isinstance(t, Pair):
        c, _ = infer_type(t.left)
        return Comp(TensorProd(t.left, t.right), Diag(c))
    if isinstance(t, Copair):
        _, c = infer_type(t.left)
        return Comp(Codiag(c), TensorSum(t.left, t.right))
    return t


def _bif(t: Term) -> Term:
    if isinstance(t, (K, L)):
        return unfold_node(type(t)(t.index, t.side, _bif(t.arg)))
    if isinstance(t, (Pair, Copair)):
        infer_type(t)
        return unfold_node(type(t)(_bif(t.left), _bif(t.right)))
    if isinstance(t, Comp):
        return Comp(_bif(t.after), _bif(t.before))
    if isinstance(t, (TensorProd, TensorSum)):
        return type(t)(_bif(t.left), _bif(t.right))
    return t


def to_bifunctorial(t: Term, strict: bool = True) -> Term:
    """Translate a combinator-style term into bifunctorial style.

    With ``strict=False`` mixed input is accepted and only its combinator
    nodes are unfolded.
    """
    infer_type(t)
    if strict and not is_combinator(t):
        raise StyleError(f"not a pure combinator-style term: {t}")
    return _bif(t)


def _comb(t: Term, keep_prod: bool, keep_sum: bool) -> Term:
    if isinstance(t, Proj):
        if t.index == 1:
            return K(1, t.right, Id(t.left))
        return K(2, t.left, Id(t.right))
    if isinstance(t, Inj):
        if t.index == 1:
            return L(1, t.right, Id(t.left))
        return L(2, t.left, Id(t.right))
    if isinstance(t, Diag):
        return Pair(Id(t.obj), Id(t.obj))
    if isinstance(t, Codiag):
        return Copair(Id(t.obj), Id(t.obj))
    if isinstance(t, TensorProd):
        f, g = _comb(t.left, keep_prod, keep_sum), _comb(t.right, keep_prod, keep_sum)
        if keep_prod:
            return TensorProd(f, g)
        a, _ = infer_type(t.left)
        c, _ = infer_type(t.right)
        return Pair(K(1, c, f), K(2, a, g))
    if isinstance(t, TensorSum):
        f, g = _comb(t.left, keep_prod, keep_sum), _comb(t.right, keep_prod, keep_sum)
        if keep_sum:
            return TensorSum(f, g)
        _, b = infer_type(t.left)
        _, d = infer_type(t.right)
        return Copair(L(1, d, f), L(2, b, g))
    if isinstance(t, (K, L)):
        return type(t)(t.index, t.side, _comb(t.arg, keep_prod, keep_sum))
    if isinstance(t, (Pair, Copair)):
        return type(t)(_comb(t.left, keep_prod, keep_sum), _comb(t.right, keep_prod, keep_sum))
    if isinstance(t, Comp):
        return Comp(_comb(t.after, keep_prod, keep_sum), _comb(t.before, keep_prod, keep_sum))
    return t


def to_combinator(t: Term, strict: bool = True) -> Term:
    """Translate a bifunctorial-style term into combinator style."""
    infer_type(t)
    if strict and not is_bifunctorial(t):
        raise StyleError(f"not a pure bifunctorial-style term: {t}")
    kinds = {type(u) for u in subterms(t)}
    keep_prod = not kinds & {Proj, Diag, K, Pair}
    keep_sum = not kinds & {Inj, Codiag, L, Copair}
    return _comb(t, keep_prod, keep_sum)
