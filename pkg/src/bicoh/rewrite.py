"""Cut elimination, the normal-form reductions and K-L normalization.

Three layers, each checkable against the graph functor:

* :func:`eliminate_cut` removes every composition from a combinator-style
  term by pushing topmost cuts down with the category axioms;
* :func:`reduce_to_normal_form` rewrites a composition-free term with the six
  expansion/distribution rules, one leftmost-innermost redex at a time, and
  checks that the :func:`degree` drops at every step;
* :func:`kl_normalize` splits a bifunctorial term into a product-side part
  followed by a sum-side part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .syntax import (
    BIFUNCTOR, FULL, Codiag, Comp, Copair, Diag, Formula, Fragment,
    FragmentError, I, Id, Inj, K, Kappa, L, Lambda, Letter, Pair, Prod, Proj,
    Sum, Term, TensorProd, TensorSum, TerminalI, children, compose,
    fragment_of, infer_type, is_bifunctorial, is_combinator, subterms,
)
from .translate import StyleError

__all__ = [
    "Degree", "Factorization", "StepBudgetExceeded", "eliminate_cut",
    "degree", "reduce_to_normal_form", "normalize", "factorize",
    "classify_KL", "kl_normalize", "normal_form_step", "is_composition_free",
]


class StepBudgetExceeded(RuntimeError):
    """A rewrite loop ran past its ``max_steps`` budget."""


class Degree(NamedTuple):
    n1: int
    n2: int


def is_composition_free(t: Term) -> bool:
    return not any(isinstance(u, Comp) for u in subterms(t))


def _record(trace, rule, term, deg=None):
    if trace is not None:
        entry = {"rule": rule, "term": str(term)}
        if deg is not None:
            entry["degree"] = list(deg)
        trace.append(entry)


# ---------------------------------------------------------------------------
# Cut elimination


def _cut_supported(fr: Fragment) -> bool:
    # A bare sum bifunctor is covered alongside I but not O, and dually.
    if fr.sum == BIFUNCTOR and fr.has_O:
        return False
    if fr.product == BIFUNCTOR and fr.has_I:
        return False
    return True


def _widen(fr: Fragment, t: Term) -> Fragment:
    """A connective seen only in formulas is equally at home in the full fragment."""
    kinds = {type(u) for u in subterms(t)}
    product = FULL if fr.product == BIFUNCTOR and TensorProd not in kinds else fr.product
    sum_ = FULL if fr.sum == BIFUNCTOR and TensorSum not in kinds else fr.sum
    return Fragment(fr.has_I, fr.has_O, product, sum_)


def _cut(g: Term, f: Term, trace) -> Term:
    """A composition-free term equal to ``g`` after ``f`` (both composition-free)."""
    if isinstance(f, Id):
        _record(trace, "cat1", Comp(g, f))
        return g
    if isinstance(g, Id):
        _record(trace, "cat1", Comp(g, f))
        return f
    if isinstance(g, Kappa):
        out = Kappa(infer_type(f)[0])
        _record(trace, "k", Comp(g, f))
        return out
    if isinstance(f, Lambda):
        out = Lambda(infer_type(g)[1])
        _record(trace, "l", Comp(g, f))
        return out
    if isinstance(f, K):
        _record(trace, "K1", Comp(g, f))
        return K(f.index, f.side, _cut(g, f.arg, trace))
    if isinstance(g, L):
        _record(trace, "L1", Comp(g, f))
        return L(g.index, g.side, _cut(g.arg, f, trace))
    if isinstance(f, Copair):
        _record(trace, "L3", Comp(g, f))
        return Copair(_cut(g, f.left, trace), _cut(g, f.right, trace))
    if isinstance(g, Pair):
        _record(trace, "K3", Comp(g, f))
        return Pair(_cut(g.left, f, trace), _cut(g.right, f, trace))
    if isinstance(f, Pair):
        if isinstance(g, K):
            _record(trace, "K2", Comp(g, f))
            return _cut(g.arg, f.left if g.index == 1 else f.right, trace)
        if isinstance(g, TensorProd):
            _record(trace, "x2", Comp(g, f))
            return Pair(_cut(g.left, f.left, trace), _cut(g.right, f.right, trace))
    if isinstance(f, L):
        if isinstance(g, Copair):
            _record(trace, "L2", Comp(g, f))
            return _cut(g.left if f.index == 1 else g.right, f.arg, trace)
        if isinstance(g, TensorSum):
            _record(trace, "+2", Comp(g, f))
            return L(f.index, infer_type(g.right if f.index == 1 else g.left)[1],
                     _cut(g.left if f.index == 1 else g.right, f.arg, trace))
    if isinstance(f, TensorSum):
        if isinstance(g, Copair):
            _record(trace, "+2", Comp(g, f))
            return Copair(_cut(g.left, f.left, trace), _cut(g.right, f.right, trace))
        if isinstance(g, TensorSum):
            _record(trace, "+2", Comp(g, f))
            return TensorSum(_cut(g.left, f.left, trace), _cut(g.right, f.right, trace))
    if isinstance(f, TensorProd):
        if isinstance(g, K):
            _record(trace, "x2", Comp(g, f))
            return K(g.index, infer_type(f.right if g.index == 1 else f.left)[0],
                     _cut(g.arg, f.left if g.index == 1 else f.right, trace))
        if isinstance(g, TensorProd):
            _record(trace, "x2", Comp(g, f))
            return TensorProd(_cut(g.left, f.left, trace), _cut(g.right, f.right, trace))
    raise AssertionError(f"no cut rule applies to ({f};{g})")


def _elim(t: Term, trace) -> Term:
    if isinstance(t, Comp):
        return _cut(_elim(t.after, trace), _elim(t.before, trace), trace)
    if isinstance(t, (K, L)):
        return type(t)(t.index, t.side, _elim(t.arg, trace))
    if isinstance(t, (Pair, Copair, TensorProd, TensorSum)):
        return type(t)(_elim(t.left, trace), _elim(t.right, trace))
    return t


def eliminate_cut(f: Term, fragment: Optional[Fragment] = None, trace: Optional[list] = None) -> Term:
    """An equal composition-free term.

    Inner cuts are cleared before the cut above them, so every cut handled
    is topmost among the remaining ones with cut-free operands.
    """
    infer_type(f)
    if not is_combinator(f):
        raise StyleError(f"cut elimination expects a combinator-style term: {f}")
    actual = fragment_of(f)
    if fragment is not None and not actual <= fragment:
        raise FragmentError(f"term uses {actual.name}, outside {fragment.name}")
    fr = fragment or _widen(actual, f)
    if not _cut_supported(fr):
        raise FragmentError(f"cut elimination is not established for {fr.name}")
    return _elim(f, trace)


# ---------------------------------------------------------------------------
# Degree and the six reductions


def _connectives(a: Formula) -> int:
    if isinstance(a, (Prod, Sum)):
        return 1 + _connectives(a.left) + _connectives(a.right)
    return 1 if isinstance(a, TerminalI) else 0


def degree(f: Term) -> Degree:
    """``(n1, n2)``: connectives and ``I`` inside identity indices, and pairs
    and ``k`` terms weighted by how many ``K`` nodes sit above them."""
    n1 = n2 = 0
    stack = [(f, 0)]
    while stack:
        t, depth = stack.pop()
        if isinstance(t, Id):
            n1 += _connectives(t.obj)
        elif isinstance(t, (Pair, Kappa)):
            n2 += depth
        below = depth + 1 if isinstance(t, K) else depth
        stack.extend((c, below) for c in children(t))
    return Degree(n1, n2)


def _contract(t: Term, with_I: bool):
    if isinstance(t, Id):
        a = t.obj
        if isinstance(a, Prod):
            return Pair(K(1, a.right, Id(a.left)), K(2, a.left, Id(a.right))), "1x"
        if isinstance(a, Sum):
            return TensorSum(Id(a.left), Id(a.right)), "1+"
        if with_I and isinstance(a, TerminalI):
            return Kappa(I), "1I"
    elif isinstance(t, K):
        if isinstance(t.arg, Pair):
            return Pair(K(t.index, t.side, t.arg.left), K(t.index, t.side, t.arg.right)), "K<>"
        if with_I and isinstance(t.arg, Kappa):
            a = t.arg.obj
            return Kappa(Prod(a, t.side) if t.index == 1 else Prod(t.side, a)), f"K{t.index}k"
    return None


def normal_form_step(t: Term, with_I: bool = True):
    """Contract the leftmost-innermost redex: ``(new_term, rule)`` or ``None``."""
    if isinstance(t, (K, L)):
        r = normal_form_step(t.arg, with_I)
        if r is not None:
            return type(t)(t.index, t.side, r[0]), r[1]
    elif isinstance(t, (Pair, Copair, TensorProd, TensorSum)):
        r = normal_form_step(t.left, with_I)
        if r is not None:
            return type(t)(r[0], t.right), r[1]
        r = normal_form_step(t.right, with_I)
        if r is not None:
            return type(t)(t.left, r[0]), r[1]
    return _contract(t, with_I)


def _check_reducible(f: Term) -> Fragment:
    if not is_composition_free(f):
        raise ValueError(f"reduction expects a composition-free term: {f}")
    fr = fragment_of(f)
    if fr.has_O or fr.sum == FULL:
        raise FragmentError(f"{fr.name} is not within C^+_x,I")
    if not is_combinator(f):
        raise StyleError(f"reduction expects a combinator-style term: {f}")
    return fr


def reduce_to_normal_form(f: Term, fragment: Optional[Fragment] = None,
                          trace: Optional[list] = None,
                          max_steps: Optional[int] = None) -> Term:
    """Rewrite to normal form one redex at a time.

    Raises ``AssertionError`` if a step fails to lower the degree and
    :class:`StepBudgetExceeded` past ``max_steps``. The three rules about
    ``I`` are used only when the fragment has ``I``.
    """
    infer_type(f)
    fr = _check_reducible(f)
    if fragment is not None:
        if not fr <= fragment:
            raise FragmentError(f"term uses {fr.name}, outside {fragment.name}")
        fr = fragment
    with_I = fr.has_I
    deg = degree(f)
    steps = 0
    while True:
        r = normal_form_step(f, with_I)
        if r is None:
            return f
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise StepBudgetExceeded(f"no normal form within {max_steps} steps")
        f, rule = r
        new = degree(f)
        if not new < deg:
            raise AssertionError(f"rule {rule} did not lower the degree: {deg} -> {new}")
        deg = new
        _record(trace, rule, f, deg)


def _push_K(i: int, side: Formula, t: Term) -> Term:
    if isinstance(t, Pair):
        return Pair(_push_K(i, side, t.left), _push_K(i, side, t.right))
    if isinstance(t, Kappa):
        return Kappa(Prod(t.obj, side) if i == 1 else Prod(side, t.obj))
    return K(i, side, t)


def _expand(a: Formula) -> Term:
    if isinstance(a, Prod):
        return Pair(_push_K(1, a.right, _expand(a.left)), _push_K(2, a.left, _expand(a.right)))
    if isinstance(a, Sum):
        return TensorSum(_expand(a.left), _expand(a.right))
    if isinstance(a, TerminalI):
        return Kappa(I)
    return Id(a)


def _nf(t: Term) -> Term:
    # Direct recursive normal form; agrees with the stepwise rewriter.
    if isinstance(t, Id):
        return _expand(t.obj)
    if isinstance(t, K):
        return _push_K(t.index, t.side, _nf(t.arg))
    if isinstance(t, (Pair, TensorSum)):
        return type(t)(_nf(t.left), _nf(t.right))
    return t


def _expand_tensor_prod(t: Term) -> Term:
    if isinstance(t, TensorProd):
        f, g = _expand_tensor_prod(t.left), _expand_tensor_prod(t.right)
        a, _ = infer_type(f)
        c, _ = infer_type(g)
        return Pair(K(1, c, f), K(2, a, g))
    if isinstance(t, (K, L)):
        return type(t)(t.index, t.side, _expand_tensor_prod(t.arg))
    if isinstance(t, Comp):
        return Comp(_expand_tensor_prod(t.after), _expand_tensor_prod(t.before))
    if isinstance(t, (Pair, Copair, TensorSum)):
        return type(t)(_expand_tensor_prod(t.left), _expand_tensor_prod(t.right))
    return t


def _normalizable(fr: Fragment) -> bool:
    return not fr.has_O and fr.sum <= BIFUNCTOR


def normalize(f: Term, fragment: Optional[Fragment] = None,
              trace: Optional[list] = None, max_steps: Optional[int] = None) -> Term:
    """The composition-free normal form of a combinator-style term.

    Defined on C^+_x,I and its subcategories, where equal terms share a
    normal form. A bare product bifunctor is unfolded into pairing first.
    With ``trace`` or ``max_steps`` the stepwise rewriter is used.
    """
    infer_type(f)
    actual = fragment_of(f)
    if fragment is not None and not actual <= fragment:
        raise FragmentError(f"term uses {actual.name}, outside {fragment.name}")
    fr = fragment or actual
    if not _normalizable(fr):
        raise FragmentError(f"no unique normal form is available for {fr.name}")
    if not is_combinator(f):
        raise StyleError(f"normalize expects a combinator-style term: {f}")
    g = _expand_tensor_prod(f)
    g = eliminate_cut(g, None, trace)
    if trace is None and max_steps is None:
        return _nf(g)
    return reduce_to_normal_form(g, None, trace, max_steps)


# ---------------------------------------------------------------------------
# Factorization and K-L normalization

_K_ATOMS = (Proj, Diag, Kappa)
_L_ATOMS = (Inj, Codiag, Lambda)


def _is_cid(t: Term) -> bool:
    return all(isinstance(u, (Id, TensorProd, TensorSum, Comp)) for u in subterms(t))


def classify_KL(f: Term) -> str:
    """``"complex-identity"``, ``"K-term"``, ``"L-term"`` or ``"neither"``."""
    if not is_bifunctorial(f):
        raise StyleError(f"expected a bifunctorial-style term: {f}")
    if _is_cid(f):
        return "complex-identity"
    kinds = tuple(type(u) for u in subterms(f))
    has_k = any(k in _K_ATOMS for k in kinds)
    has_l = any(k in _L_ATOMS for k in kinds)
    if has_k and not has_l:
        return "K-term"
    if has_l and not has_k:
        return "L-term"
    return "neither"


@dataclass(frozen=True)
class Factorization:
    """Composition-free factors, applied first to last."""
    factors: tuple

    def composite(self) -> Term:
        return compose(*self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)


def _flatten(t: Term) -> list:
    if isinstance(t, Comp):
        return _flatten(t.before) + _flatten(t.after)
    if isinstance(t, (TensorProd, TensorSum)):
        left, right = _flatten(t.left), _flatten(t.right)
        n = max(len(left), len(right))
        left += [Id(infer_type(left[-1])[1])] * (n - len(left))
        right += [Id(infer_type(right[-1])[1])] * (n - len(right))
        return [type(t)(a, b) for a, b in zip(left, right)]
    return [t]


def _strip(t: Term, atoms, use_source: bool) -> Term:
    """Replace the given atoms by identities on their source (or target)."""
    if isinstance(t, atoms):
        a, b = infer_type(t)
        return Id(a if use_source else b)
    if isinstance(t, (TensorProd, TensorSum)):
        return type(t)(_strip(t.left, atoms, use_source), _strip(t.right, atoms, use_source))
    return t


def factorize(f: Term) -> Factorization:
    """Split into composition-free factors, each a K-term or an L-term.

    Mixed factors are split with their product-side part first.
    """
    infer_type(f)
    if not is_bifunctorial(f):
        raise StyleError(f"expected a bifunctorial-style term: {f}")
    out = []
    for t in _flatten(f):
        kind = classify_KL(t)
        if kind == "neither":
            out.append(_strip(t, _L_ATOMS, True))
            out.append(_strip(t, _K_ATOMS, False))
        else:
            out.append(t)
    kept = [t for t in out if not _is_cid(t)]
    if not kept:
        return Factorization((Id(infer_type(f)[0]),))
    return Factorization(tuple(kept))


def _or_none(t: Optional[Term]) -> Optional[Term]:
    return None if t is None or _is_cid(t) else t


def _swap(f: Term, g: Term):
    """For ``f`` after ``g`` with ``f`` product-side and ``g`` sum-side, return
    ``(k, l)`` with ``f.g = l.k``; ``None`` stands for an identity."""
    if g is None or _is_cid(g):
        return _or_none(f), None
    if f is None or _is_cid(f):
        return None, g
    if isinstance(g, Codiag):
        return TensorSum(f, f), Codiag(infer_type(f)[1])
    if isinstance(f, Proj) and isinstance(g, TensorProd):
        chosen = g.left if f.index == 1 else g.right
        return Proj(f.index, infer_type(g.left)[0], infer_type(g.right)[0]), _or_none(chosen)
    if isinstance(g, Lambda):
        return None, Lambda(infer_type(f)[1])
    if isinstance(f, Kappa):
        return Kappa(infer_type(g)[0]), None
    if isinstance(f, Diag):
        return Diag(infer_type(g)[0]), TensorProd(g, g)
    if isinstance(f, TensorSum) and isinstance(g, Inj):
        chosen = f.left if g.index == 1 else f.right
        return _or_none(chosen), Inj(g.index, infer_type(f.left)[1], infer_type(f.right)[1])
    if isinstance(f, type(g)) and isinstance(f, (TensorProd, TensorSum)):
        k1, l1 = _swap(f.left, g.left)
        k2, l2 = _swap(f.right, g.right)
        a1, a2 = infer_type(g.left)[0], infer_type(g.right)[0]
        k1 = k1 or Id(a1)
        k2 = k2 or Id(a2)
        l1 = l1 or Id(infer_type(k1)[1])
        l2 = l2 or Id(infer_type(k2)[1])
        op = type(f)
        return _or_none(op(k1, k2)), _or_none(op(l1, l2))
    raise AssertionError(f"no interchange rule for ({g};{f})")


def kl_normalize(f: Term):
    """``(kpart, lpart)`` with ``f`` equal to lpart after kpart.

    ``kpart`` is a K-term or an identity, ``lpart`` an L-term or an identity.
    Adjacent L-then-K factors are interchanged until every K factor comes first.
    """
    src, tgt = infer_type(f)
    factors = list(factorize(f))
    if len(factors) == 1 and _is_cid(factors[0]):
        factors = []
    while True:
        for j in range(len(factors) - 1):
            if classify_KL(factors[j]) == "L-term" and classify_KL(factors[j + 1]) == "K-term":
                k, l = _swap(factors[j + 1], factors[j])
                factors[j:j + 2] = [t for t in (k, l) if t is not None]
                break
        else:
            break
    ks = [t for t in factors if classify_KL(t) == "K-term"]
    ls = [t for t in factors if classify_KL(t) == "L-term"]
    kpart = compose(*ks) if ks else Id(src)
    lpart = compose(*ls) if ls else Id(tgt)
    return kpart, lpart
