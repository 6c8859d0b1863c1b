"""Reducing any graph-distinct pair to ``k1 = k2`` or ``l1 = l2``.

Given ``f, g : A -> B`` over products and sums whose graphs differ, the
construction here surrounds both with the same context arrows until they
become ``p*p -> p`` or ``p -> p+p`` with singleton graphs, which pins them
down as the two projections or the two injections. Every context arrow is
recorded as a :class:`Stage`, so a witness can be replayed and audited.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import Relation, interpret
from .rewrite import eliminate_cut
from .syntax import (
    FULL, NONE, Codiag, Comp, Copair, Diag, Formula, Fragment, FragmentError,
    Id, Inj, K, L, Letter, Pair, Prod, Proj, Sum, Term, TensorProd,
    TensorSum, fragment_of, infer_type, letter_count, map_formulas,
    occurrence_home, subformula_at,
)
from .translate import to_bifunctorial, to_combinator

__all__ = [
    "substitute_all_letters", "injection_context", "projection_context",
    "fan_out", "fan_in", "Stage", "CollapseWitness", "collapse_witness",
    "Derivation", "preorder_collapse",
]

P = Letter("p")
_XPLUS = Fragment(False, False, FULL, FULL)


def substitute_all_letters(f: Term, letter: str = "p") -> Term:
    """Replace every letter in the annotations of ``f`` by ``letter``."""
    target = Letter(letter)

    def sub(a: Formula) -> Formula:
        if isinstance(a, Letter):
            return target
        if isinstance(a, (Prod, Sum)):
            return type(a)(sub(a.left), sub(a.right))
        return a

    return map_formulas(f, sub)


def _comp(g: Term, f: Term) -> Term:
    """``g`` after ``f``, dropping an identity on either side."""
    if isinstance(f, Id):
        return g
    if isinstance(g, Id):
        return f
    return Comp(g, f)


def _context(a: Formula, path, leaf: Term, op_prod, op_sum) -> Term:
    if not path:
        return leaf
    step, rest = path[0], path[1:]
    op = op_prod if isinstance(a, Prod) else op_sum
    if step == 0:
        return op(_context(a.left, rest, leaf, op_prod, op_sum), Id(a.right))
    return op(Id(a.left), _context(a.right, rest, leaf, op_prod, op_sum))


def injection_context(a: Formula, sum_path, i: int) -> Term:
    """``h(l^i)``: the arrow into ``a`` that is the ``i``-th injection at the
    addressed sum and an identity elsewhere."""
    sub = subformula_at(a, sum_path)
    if not isinstance(sub, Sum):
        raise ValueError(f"path {tuple(sum_path)} of {a} addresses {sub}, not a sum")
    return _context(a, tuple(sum_path), Inj(i, sub.left, sub.right), TensorProd, TensorSum)


def projection_context(b: Formula, prod_path, i: int) -> Term:
    """``h(k^i)``: the arrow out of ``b`` that is the ``i``-th projection at the
    addressed product and an identity elsewhere."""
    sub = subformula_at(b, prod_path)
    if not isinstance(sub, Prod):
        raise ValueError(f"path {tuple(prod_path)} of {b} addresses {sub}, not a product")
    return _context(b, tuple(prod_path), Proj(i, sub.left, sub.right), TensorProd, TensorSum)


def _check_shape(shape: Formula, n: int, op) -> None:
    if letter_count(shape) != n or n < 1:
        raise ValueError(f"{shape} does not have {n} letters")
    stack = [shape]
    while stack:
        a = stack.pop()
        if isinstance(a, op):
            stack += [a.left, a.right]
        elif a != P:
            raise ValueError(f"{shape} is not built from p with a single connective")


def fan_out(n: int, shape: Formula) -> Term:
    """``h^x : p -> shape`` with graph ``{(0, x) : x < n}``, built from ``w{p}``."""
    _check_shape(shape, n, Prod)
    return _fan_out(shape)


def _fan_out(shape: Formula) -> Term:
    if not isinstance(shape, Prod):
        return Id(P)
    left, right = _fan_out(shape.left), _fan_out(shape.right)
    if isinstance(left, Id) and isinstance(right, Id):
        return Diag(P)
    return Comp(TensorProd(left, right), Diag(P))


def fan_in(n: int, shape: Formula) -> Term:
    """``h^+ : shape -> p`` with graph ``{(x, 0) : x < n}``, built from ``m{p}``."""
    _check_shape(shape, n, Sum)
    return _fan_in(shape)


def _fan_in(shape: Formula) -> Term:
    if not isinstance(shape, Sum):
        return Id(P)
    left, right = _fan_in(shape.left), _fan_in(shape.right)
    if isinstance(left, Id) and isinstance(right, Id):
        return Codiag(P)
    return Comp(Codiag(P), TensorSum(left, right))


# ---------------------------------------------------------------------------
# Associativity and commutativity isomorphisms


def _swap_prod(a1: Formula, a2: Formula) -> Term:
    """``a2*a1 -> a1*a2``."""
    return to_bifunctorial(Pair(K(2, a2, Id(a1)), K(1, a1, Id(a2))))


def _reassoc_prod(c1: Formula, c2: Formula, c3: Formula) -> Term:
    """``c1*(c2*c3) -> (c1*c2)*c3``."""
    inner = Pair(K(1, Prod(c2, c3), Id(c1)), K(2, c1, K(1, c3, Id(c2))))
    return to_bifunctorial(Pair(inner, K(2, c1, K(2, c2, Id(c3)))))


def _swap_sum(b1: Formula, b2: Formula) -> Term:
    """``b1+b2 -> b2+b1``."""
    return to_bifunctorial(Copair(L(2, b2, Id(b1)), L(1, b1, Id(b2))))


def _reassoc_sum(c1: Formula, c2: Formula, c3: Formula) -> Term:
    """``(c1+c2)+c3 -> c1+(c2+c3)``."""
    inner = Copair(L(1, Sum(c2, c3), Id(c1)), L(2, c1, L(1, c3, Id(c2))))
    return to_bifunctorial(Copair(inner, L(2, c1, L(2, c2, Id(c3)))))


def _front_prod(a: Formula, x: int):
    """``(a_star, iso)`` with ``iso : a_star -> a`` sending occurrence 0 to ``x``
    and ``a_star`` either ``p`` or ``p*...``; ``iso`` is ``None`` when not needed."""
    if not isinstance(a, Prod):
        return a, None
    n1 = letter_count(a.left)
    if x >= n1:
        flipped = Prod(a.right, a.left)
        star, iso = _front_prod(flipped, x - n1)
        sw = _swap_prod(a.left, a.right)
        return star, _comp(sw, iso) if iso is not None else sw
    star1, iso1 = _front_prod(a.left, x)
    if not isinstance(star1, Prod):
        return Prod(star1, a.right), None
    c1, c2, c3 = star1.left, star1.right, a.right
    step = _reassoc_prod(c1, c2, c3)
    if iso1 is not None:
        step = _comp(TensorProd(iso1, Id(c3)), step)
    return Prod(c1, Prod(c2, c3)), step


def _front_sum(b: Formula, y: int):
    """``(b_star, iso)`` with ``iso : b -> b_star`` sending ``y`` to occurrence 0."""
    if not isinstance(b, Sum):
        return b, None
    n1 = letter_count(b.left)
    if y >= n1:
        flipped = Sum(b.right, b.left)
        star, iso = _front_sum(flipped, y - n1)
        sw = _swap_sum(b.left, b.right)
        return star, _comp(iso, sw) if iso is not None else sw
    star1, iso1 = _front_sum(b.left, y)
    if not isinstance(star1, Sum):
        return Sum(star1, b.right), None
    c1, c2, c3 = star1.left, star1.right, b.right
    step = _reassoc_sum(c1, c2, c3)
    if iso1 is not None:
        step = _comp(step, TensorSum(iso1, Id(c3)))
    return Sum(c1, Sum(c2, c3)), step


def _first_connective(a: Formula, kind):
    """Path of the leftmost-innermost subformula of type ``kind``, or ``None``."""
    if isinstance(a, (Prod, Sum)):
        for step, sub in ((0, a.left), (1, a.right)):
            p = _first_connective(sub, kind)
            if p is not None:
                return (step,) + p
        if isinstance(a, kind):
            return ()
    return None


# ---------------------------------------------------------------------------
# Witness


@dataclass(frozen=True)
class Stage:
    """``side`` is ``"pre"`` (compose ``term`` first) or ``"post"`` (compose it last)."""
    tag: str
    side: str
    term: Term
    tracked: tuple
    f_graph: Relation
    g_graph: Relation

    def apply(self, t: Term) -> Term:
        return _comp(t, self.term) if self.side == "pre" else _comp(self.term, t)

    def to_json(self) -> dict:
        return {"tag": self.tag, "side": self.side, "term": str(self.term),
                "tracked": list(self.tracked),
                "f_graph": self.f_graph.to_json(), "g_graph": self.g_graph.to_json()}


@dataclass
class CollapseWitness:
    f: Term
    g: Term
    substitution: dict
    swapped: bool
    tracked: tuple
    stages: list
    fstar: Term
    gstar: Term
    conclusion: str
    start: tuple = field(default=None)

    def replay(self) -> tuple:
        """Re-apply the stages to the substituted pair (roles swapped if flagged)."""
        f1, g1 = self.start
        for s in self.stages:
            f1, g1 = s.apply(f1), s.apply(g1)
        return f1, g1

    def check(self) -> dict:
        """Every certificate condition, by name."""
        gf, gg = interpret(self.fstar), interpret(self.gstar)
        tf, tg = infer_type(self.fstar), infer_type(self.gstar)
        k_side = self.conclusion == "k1=k2"
        want_type = (Prod(P, P), P) if k_side else (P, Sum(P, P))
        gen = K if k_side else L
        want_f, want_g = gen(1, P, Id(P)), gen(2, P, Id(P))
        cf = eliminate_cut(to_combinator(self.fstar, strict=False))
        cg = eliminate_cut(to_combinator(self.gstar, strict=False))
        out = {
            "replay": self.replay() == (self.fstar, self.gstar),
            "types": tf == tg == want_type,
            "singletons": len(gf) == 1 and len(gg) == 1,
            "split": (0, 0) in gf and (0, 0) not in gg,
            "fstar_generator": cf == want_f,
            "gstar_generator": cg == want_g,
        }
        out["ok"] = all(out.values())
        return out

    def to_json(self) -> dict:
        return {
            "f": str(self.f), "g": str(self.g),
            "substitution": self.substitution, "swapped": self.swapped,
            "tracked": list(self.tracked),
            "stages": [s.to_json() for s in self.stages],
            "fstar": str(self.fstar), "gstar": str(self.gstar),
            "conclusion": self.conclusion,
            "certificate": self.check(),
        }


def collapse_witness(f: Term, g: Term) -> CollapseWitness:
    """Build the context arrows reducing ``f = g`` to ``k1{p,p} = k2{p,p}`` or
    ``l1{p,p} = l2{p,p}``.

    Raises ``ValueError`` if the types differ or the graphs coincide once
    every letter is replaced by ``p``.
    """
    tf, tg = infer_type(f), infer_type(g)
    if tf != tg:
        raise ValueError(f"types differ: {tf} and {tg}")
    fr = fragment_of([f, g])
    if not fr <= _XPLUS:
        raise FragmentError(f"maximality applies to C_x,+ terms, not {fr.name}")
    letters = sorted({a.name for t in tf for a in _letters_in(t)})
    f1, g1 = substitute_all_letters(f), substitute_all_letters(g)
    gf, gg = interpret(f1), interpret(g1)
    diff = sorted(set(gf.pairs) ^ set(gg.pairs))
    if not diff:
        raise ValueError("graphs coincide after substituting p for every letter")
    x, y = diff[0]
    swapped = (x, y) not in gf
    if swapped:
        f1, g1 = g1, f1
    start = (f1, g1)
    stages: list[Stage] = []

    def push(tag, side, term):
        nonlocal f1, g1
        f1 = _comp(f1, term) if side == "pre" else _comp(term, f1)
        g1 = _comp(g1, term) if side == "pre" else _comp(term, g1)
        a, b = interpret(f1), interpret(g1)
        if (x, y) not in a or (x, y) in b:
            raise AssertionError(f"stage {tag} lost the tracked pair {(x, y)}")
        stages.append(Stage(tag, side, term, (x, y), a, b))

    # Sums in the source, leftmost-innermost first.
    while True:
        src = infer_type(f1)[0]
        path = _first_connective(src, Sum)
        if path is None:
            break
        home = occurrence_home(src, x)
        i = 2 if home[:len(path)] == path and home[len(path)] == 1 else 1
        h = injection_context(src, path, i)
        x = interpret(h).preimage(x)[0]
        push(f"h(l{i})", "pre", h)
    src = infer_type(f1)[0]
    star, iso = _front_prod(src, x)
    if iso is not None:
        x = interpret(iso).preimage(x)[0]
        _check_bijection(iso)
        push("iso-x", "pre", iso)
    # Products in the target, dually.
    while True:
        tgt = infer_type(f1)[1]
        path = _first_connective(tgt, Prod)
        if path is None:
            break
        home = occurrence_home(tgt, y)
        i = 2 if home[:len(path)] == path and home[len(path)] == 1 else 1
        h = projection_context(tgt, path, i)
        y = interpret(h).image(y)[0]
        push(f"h(k{i})", "post", h)
    tgt = infer_type(f1)[1]
    star_t, iso = _front_sum(tgt, y)
    if iso is not None:
        y = interpret(iso).image(y)[0]
        _check_bijection(iso)
        push("iso-+", "post", iso)
    src, tgt = infer_type(f1)
    if (x, y) != (0, 0):
        raise AssertionError(f"tracked pair ended at {(x, y)}, not (0, 0)")
    prod_src, sum_tgt = isinstance(src, Prod), isinstance(tgt, Sum)
    if not prod_src and not sum_tgt:
        raise AssertionError("reached p -> p, which has a single arrow")
    if prod_src:
        h_x = fan_out(letter_count(src.right), src.right)
        if not isinstance(h_x, Id):
            push("h^x", "pre", TensorProd(Id(P), h_x))
    if sum_tgt:
        h_p = fan_in(letter_count(tgt.right), tgt.right)
        if not isinstance(h_p, Id):
            push("h^+", "post", TensorSum(Id(P), h_p))
    if prod_src and sum_tgt:
        gd = interpret(g1)
        if (1, 0) in gd or (1, 1) in gd:
            push("m", "post", Codiag(P))
        else:
            push("w", "pre", Diag(P))
    conclusion = "k1=k2" if infer_type(f1)[1] == P else "l1=l2"
    return CollapseWitness(f, g, {a: "p" for a in letters}, swapped, diff[0],
                           stages, f1, g1, conclusion, start)


def _letters_in(a: Formula):
    if isinstance(a, Letter):
        yield a
    elif isinstance(a, (Prod, Sum)):
        yield from _letters_in(a.left)
        yield from _letters_in(a.right)


def _check_bijection(iso: Term) -> None:
    if not interpret(iso).is_bijection():
        raise AssertionError(f"isomorphism stage {iso} is not a bijection")


# ---------------------------------------------------------------------------
# From the conclusion to a preorder


@dataclass(frozen=True)
class Derivation:
    """A chain ``h1 = ... = h2``; each step is ``(lhs, rhs, reason)``."""
    conclusion: str
    steps: tuple

    def check(self) -> bool:
        for lhs, rhs, reason in self.steps:
            if infer_type(lhs) != infer_type(rhs):
                return False
            if reason == "hypothesis":
                if not _hypothesis_instance(lhs, rhs):
                    return False
            elif not (_selection_instance(lhs, rhs) or _selection_instance(rhs, lhs)):
                return False
            elif interpret(lhs) != interpret(rhs):
                return False
        return all(self.steps[j][1] == self.steps[j + 1][0] for j in range(len(self.steps) - 1))

    def to_json(self) -> dict:
        return {"conclusion": self.conclusion,
                "steps": [{"lhs": str(a), "rhs": str(b), "reason": r} for a, b, r in self.steps],
                "valid": self.check()}


def _selection_instance(lhs: Term, rhs: Term) -> bool:
    """``k^i . <h1,h2> = h_i`` or ``[h1,h2] . l^i = h_i``."""
    if not isinstance(lhs, Comp):
        return False
    a, b = lhs.after, lhs.before
    if isinstance(a, Proj) and isinstance(b, Pair):
        return (b.left if a.index == 1 else b.right) == rhs
    if isinstance(a, Copair) and isinstance(b, Inj):
        return (a.left if b.index == 1 else a.right) == rhs
    return False


def _hypothesis_instance(lhs: Term, rhs: Term) -> bool:
    """Both sides share their context and differ by index 1 versus 2 of one generator."""
    if not (isinstance(lhs, Comp) and isinstance(rhs, Comp)):
        return False
    if isinstance(lhs.after, Proj) and isinstance(rhs.after, Proj):
        a, b = lhs.after, rhs.after
        return (lhs.before == rhs.before and (a.index, b.index) == (1, 2)
                and a.left == a.right == b.left == b.right)
    if isinstance(lhs.before, Inj) and isinstance(rhs.before, Inj):
        a, b = lhs.before, rhs.before
        return (lhs.after == rhs.after and (a.index, b.index) == (1, 2)
                and a.left == a.right == b.left == b.right)
    return False


def preorder_collapse(w: CollapseWitness, h1: Term, h2: Term) -> Derivation:
    """Derive ``h1 = h2`` from the witness's conclusion instantiated at the
    target (for ``k1 = k2``) or at the source (for ``l1 = l2``)."""
    t1, t2 = infer_type(h1), infer_type(h2)
    if t1 != t2:
        raise ValueError(f"h1 and h2 have different types: {t1} and {t2}")
    c, d = t1
    if w.conclusion == "k1=k2":
        pair = Pair(h1, h2)
        a, b = Comp(Proj(1, d, d), pair), Comp(Proj(2, d, d), pair)
    else:
        copair = Copair(h1, h2)
        a, b = Comp(copair, Inj(1, c, c)), Comp(copair, Inj(2, c, c))
    steps = ((h1, a, "selection"), (a, b, "hypothesis"), (b, h2, "selection"))
    return Derivation(f"{h1} = {h2}", steps)
