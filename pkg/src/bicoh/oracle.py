"""A brute-force equational oracle, independent of the graph functor.

:func:`enumerate_terms` lists every composition-free term of a type up to a
size bound. :func:`equational_closure` puts seed terms into an e-graph and
applies the axioms of the chosen calculus in both directions, breadth
first, until nothing changes or a round limit is hit. The graph functor is
consulted only to audit merges, never to decide them, so agreement between
the closure and ``G`` is evidence rather than an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .generate import _options, _build
from .graph import interpret
from .syntax import (
    BIFUNCTOR, FULL, NONE, Codiag, Comp, Copair, Diag, Formula, Fragment, Id,
    InitialO, Inj, K, Kappa, L, Lambda, Pair, Prod, Proj, Sum, Term,
    TensorProd, TensorSum, TerminalI, fragment_of, infer_type, is_combinator,
    term_size,
)

__all__ = [
    "enumerate_terms", "Rule", "AxiomSet", "C_AXIOMS", "CPRIME_AXIOMS",
    "EGraph", "ClosureReport", "equational_closure", "verify_faithfulness",
]


# ---------------------------------------------------------------------------
# Enumeration


@lru_cache(maxsize=None)
def _exact(src: Formula, tgt: Formula, n: int, fr: Fragment) -> tuple:
    out = []
    for tag, goals in _options(src, tgt, fr):
        if not goals:
            if n == 1:
                out.append(_build(tag, src, tgt, []))
        elif len(goals) == 1:
            for t in _exact(*goals[0], n - 1, fr):
                out.append(_build(tag, src, tgt, [t]))
        else:
            for a in range(1, n - 1):
                lefts = _exact(*goals[0], a, fr)
                if not lefts:
                    continue
                for u in lefts:
                    for v in _exact(*goals[1], n - 1 - a, fr):
                        out.append(_build(tag, src, tgt, [u, v]))
    return tuple(out)


def enumerate_terms(src: Formula, tgt: Formula, size_bound: int, fragment: Fragment) -> list:
    """Every composition-free combinator-style term ``src -> tgt`` of ``fragment``
    with at most ``size_bound`` nodes, ordered by size and then text."""
    out = []
    for n in range(1, size_bound + 1):
        out.extend(sorted(_exact(src, tgt, n, fragment), key=str))
    return out


# ---------------------------------------------------------------------------
# Rule tables


@dataclass(frozen=True, slots=True)
class Ref(Term):
    """Placeholder for an e-class inside e-nodes and rewrite templates."""
    cid: int


@dataclass(frozen=True)
class Rule:
    """One direction of one axiom.

    ``fn(eg, cid, node)`` yields templates equal to the class ``cid``;
    with ``per_class`` it is called once per class with ``node=None``.
    ``requires`` lists the fragment features the rule's terms use.
    ``lookups`` says how each result depends on the nodes of child
    classes: ``0`` not at all, ``1`` through a single child node, ``None``
    in some other way. It lets the engine skip matches it has already seen.
    """
    name: str
    fn: Callable
    requires: tuple = ()
    per_class: bool = False
    lookups: Optional[int] = None

    @property
    def axiom(self) -> str:
        return self.name.rstrip("<>")


@dataclass(frozen=True)
class AxiomSet:
    name: str
    rules: tuple

    def without(self, *names: str) -> "AxiomSet":
        """Drop rules by exact name (``"K4<"``) or by axiom (``"K4"``, both directions)."""
        drop = set(names)
        kept = tuple(r for r in self.rules if r.name not in drop and r.axiom not in drop)
        return AxiomSet(f"{self.name}-" + "-".join(sorted(drop)), kept)

    def for_fragment(self, fr: Fragment) -> "AxiomSet":
        return AxiomSet(self.name, tuple(r for r in self.rules
                                         if all(_feature(fr, q) for q in r.requires)))

    @property
    def names(self) -> list:
        return [r.name for r in self.rules]


def _feature(fr: Fragment, q: str) -> bool:
    return {
        "I": fr.has_I, "O": fr.has_O,
        "xfull": fr.product == FULL, "+full": fr.sum == FULL,
        "xbif": fr.product == BIFUNCTOR, "+bif": fr.sum == BIFUNCTOR,
        "x": fr.product != NONE, "+": fr.sum != NONE,
    }[q]


def _has(eg: "EGraph", ref: Term, cls) -> list:
    return [n for n in eg.nodes_of(ref) if isinstance(n, cls)]


def _has_id(eg: "EGraph", ref: Term) -> Optional[Formula]:
    for n in eg.nodes_of(ref):
        if isinstance(n, Id):
            return n.obj
    return None


# Rules shared by both calculi.

def _cat1_fwd(eg, c, n):
    if isinstance(n, Comp):
        if _has_id(eg, n.after) is not None:
            yield n.before
        if _has_id(eg, n.before) is not None:
            yield n.after


def _cat1_rev(eg, c, n):
    src, tgt = eg.type_of(c)
    yield Comp(Id(tgt), Ref(c))
    yield Comp(Ref(c), Id(src))


def _cat2_fwd(eg, c, n):
    if isinstance(n, Comp):
        for m in _has(eg, n.before, Comp):
            yield Comp(Comp(n.after, m.after), m.before)


def _cat2_rev(eg, c, n):
    if isinstance(n, Comp):
        for m in _has(eg, n.after, Comp):
            yield Comp(m.after, Comp(m.before, n.before))


def _k_fwd(eg, c, n):
    src, tgt = eg.type_of(c)
    if isinstance(tgt, TerminalI):
        yield Kappa(src)


def _l_fwd(eg, c, n):
    src, tgt = eg.type_of(c)
    if isinstance(src, InitialO):
        yield Lambda(tgt)


def _tensor_rules(op, tag):
    def one_fwd(eg, c, n):
        if isinstance(n, op):
            a, b = _has_id(eg, n.left), _has_id(eg, n.right)
            if a is not None and b is not None:
                yield Id((Prod if op is TensorProd else Sum)(a, b))

    def one_rev(eg, c, n):
        if isinstance(n, Id) and isinstance(n.obj, Prod if op is TensorProd else Sum):
            yield op(Id(n.obj.left), Id(n.obj.right))

    def two_fwd(eg, c, n):
        if isinstance(n, op):
            for g in _has(eg, n.left, Comp):
                for f in _has(eg, n.right, Comp):
                    yield Comp(op(g.after, f.after), op(g.before, f.before))

    def two_rev(eg, c, n):
        if isinstance(n, Comp):
            for g in _has(eg, n.after, op):
                for f in _has(eg, n.before, op):
                    yield op(Comp(g.left, f.left), Comp(g.right, f.right))

    return [
        (f"{tag}1>", one_fwd, None), (f"{tag}1<", one_rev, 0),
        (f"{tag}2>", two_fwd, None), (f"{tag}2<", two_rev, None),
    ]


# Combinator-style rules.

def _K1_fwd(eg, c, n):
    if isinstance(n, Comp):
        for m in _has(eg, n.before, K):
            yield K(m.index, m.side, Comp(n.after, m.arg))


def _K1_rev(eg, c, n):
    if isinstance(n, K):
        for m in _has(eg, n.arg, Comp):
            yield Comp(m.after, K(n.index, n.side, m.before))


def _K2_fwd(eg, c, n):
    if isinstance(n, Comp):
        for g in _has(eg, n.after, K):
            for f in _has(eg, n.before, Pair):
                yield Comp(g.arg, f.left if g.index == 1 else f.right)


def _K3_fwd(eg, c, n):
    if isinstance(n, Comp):
        for g in _has(eg, n.after, Pair):
            yield Pair(Comp(g.left, n.before), Comp(g.right, n.before))


def _K3_rev(eg, c, n):
    if isinstance(n, Pair):
        for a in _has(eg, n.left, Comp):
            for b in _has(eg, n.right, Comp):
                if eg.find(a.before.cid) == eg.find(b.before.cid):
                    yield Comp(Pair(a.after, b.after), a.before)


def _K4_fwd(eg, c, n):
    if isinstance(n, Pair):
        for a in _has(eg, n.left, K):
            if a.index != 1 or _has_id(eg, a.arg) is None:
                continue
            for b in _has(eg, n.right, K):
                if b.index == 2 and _has_id(eg, b.arg) is not None:
                    A, B = _has_id(eg, a.arg), _has_id(eg, b.arg)
                    if a.side == B and b.side == A:
                        yield Id(Prod(A, B))


def _K4_rev(eg, c, n):
    if isinstance(n, Id) and isinstance(n.obj, Prod):
        a, b = n.obj.left, n.obj.right
        yield Pair(K(1, b, Id(a)), K(2, a, Id(b)))


def _L1_fwd(eg, c, n):
    if isinstance(n, Comp):
        for m in _has(eg, n.after, L):
            yield L(m.index, m.side, Comp(m.arg, n.before))


def _L1_rev(eg, c, n):
    if isinstance(n, L):
        for m in _has(eg, n.arg, Comp):
            yield Comp(L(n.index, n.side, m.after), m.before)


def _L2_fwd(eg, c, n):
    if isinstance(n, Comp):
        for g in _has(eg, n.after, Copair):
            for f in _has(eg, n.before, L):
                yield Comp(g.left if f.index == 1 else g.right, f.arg)


def _L3_fwd(eg, c, n):
    if isinstance(n, Comp):
        for f in _has(eg, n.before, Copair):
            yield Copair(Comp(n.after, f.left), Comp(n.after, f.right))


def _L3_rev(eg, c, n):
    if isinstance(n, Copair):
        for a in _has(eg, n.left, Comp):
            for b in _has(eg, n.right, Comp):
                if eg.find(a.after.cid) == eg.find(b.after.cid):
                    yield Comp(a.after, Copair(a.before, b.before))


def _L4_fwd(eg, c, n):
    if isinstance(n, Copair):
        for a in _has(eg, n.left, L):
            if a.index != 1 or _has_id(eg, a.arg) is None:
                continue
            for b in _has(eg, n.right, L):
                if b.index == 2 and _has_id(eg, b.arg) is not None:
                    A, B = _has_id(eg, a.arg), _has_id(eg, b.arg)
                    if a.side == B and b.side == A:
                        yield Id(Sum(A, B))


def _L4_rev(eg, c, n):
    if isinstance(n, Id) and isinstance(n.obj, Sum):
        a, b = n.obj.left, n.obj.right
        yield Copair(L(1, b, Id(a)), L(2, a, Id(b)))


# Bifunctorial-style rules.

def _ki_fwd(eg, c, n):
    if isinstance(n, Comp):
        for p in _has(eg, n.after, Proj):
            for t in _has(eg, n.before, TensorProd):
                a1, a2 = eg.type_of(t.left)[0], eg.type_of(t.right)[0]
                yield Comp(t.left if p.index == 1 else t.right, Proj(p.index, a1, a2))


def _w_fwd(eg, c, n):
    if isinstance(n, Comp):
        for _ in _has(eg, n.after, Diag):
            f = n.before
            yield Comp(TensorProd(f, f), Diag(eg.type_of(f)[0]))


def _w_rev(eg, c, n):
    if isinstance(n, Comp):
        for t in _has(eg, n.after, TensorProd):
            if eg.find(t.left.cid) != eg.find(t.right.cid):
                continue
            for _ in _has(eg, n.before, Diag):
                yield Comp(Diag(eg.type_of(t.left)[1]), t.left)


def _kw1_fwd(eg, c, n):
    if isinstance(n, Comp):
        for p in _has(eg, n.after, Proj):
            if p.left != p.right:
                continue
            for d in _has(eg, n.before, Diag):
                if d.obj == p.left:
                    yield Id(d.obj)


def _kw1_rev(eg, c, n):
    if isinstance(n, Id):
        a = n.obj
        yield Comp(Proj(1, a, a), Diag(a))
        yield Comp(Proj(2, a, a), Diag(a))


def _kw2_fwd(eg, c, n):
    if isinstance(n, Comp):
        for t in _has(eg, n.after, TensorProd):
            for p in _has(eg, t.left, Proj):
                for q in _has(eg, t.right, Proj):
                    if (p.index, q.index) != (1, 2) or (p.left, p.right) != (q.left, q.right):
                        continue
                    ab = Prod(p.left, p.right)
                    for d in _has(eg, n.before, Diag):
                        if d.obj == ab:
                            yield Id(ab)


def _kw2_rev(eg, c, n):
    if isinstance(n, Id) and isinstance(n.obj, Prod):
        a, b = n.obj.left, n.obj.right
        yield Comp(TensorProd(Proj(1, a, b), Proj(2, a, b)), Diag(n.obj))


def _li_fwd(eg, c, n):
    if isinstance(n, Comp):
        for s in _has(eg, n.after, TensorSum):
            for j in _has(eg, n.before, Inj):
                b1, b2 = eg.type_of(s.left)[1], eg.type_of(s.right)[1]
                yield Comp(Inj(j.index, b1, b2), s.left if j.index == 1 else s.right)


def _m_fwd(eg, c, n):
    if isinstance(n, Comp):
        for _ in _has(eg, n.before, Codiag):
            f = n.after
            yield Comp(Codiag(eg.type_of(f)[1]), TensorSum(f, f))


def _m_rev(eg, c, n):
    if isinstance(n, Comp):
        for _ in _has(eg, n.after, Codiag):
            for t in _has(eg, n.before, TensorSum):
                if eg.find(t.left.cid) == eg.find(t.right.cid):
                    yield Comp(t.left, Codiag(eg.type_of(t.left)[0]))


def _lm1_fwd(eg, c, n):
    if isinstance(n, Comp):
        for m in _has(eg, n.after, Codiag):
            for j in _has(eg, n.before, Inj):
                if j.left == j.right == m.obj:
                    yield Id(m.obj)


def _lm1_rev(eg, c, n):
    if isinstance(n, Id):
        a = n.obj
        yield Comp(Codiag(a), Inj(1, a, a))
        yield Comp(Codiag(a), Inj(2, a, a))


def _lm2_fwd(eg, c, n):
    if isinstance(n, Comp):
        for m in _has(eg, n.after, Codiag):
            for s in _has(eg, n.before, TensorSum):
                for p in _has(eg, s.left, Inj):
                    for q in _has(eg, s.right, Inj):
                        if ((p.index, q.index) == (1, 2) and (p.left, p.right) == (q.left, q.right)
                                and m.obj == Sum(p.left, p.right)):
                            yield Id(m.obj)


def _lm2_rev(eg, c, n):
    if isinstance(n, Id) and isinstance(n.obj, Sum):
        a, b = n.obj.left, n.obj.right
        yield Comp(Codiag(n.obj), TensorSum(Inj(1, a, b), Inj(2, a, b)))


_SHARED = [
    Rule("cat1>", _cat1_fwd, lookups=1), Rule("cat1<", _cat1_rev, per_class=True),
    Rule("cat2>", _cat2_fwd, lookups=1), Rule("cat2<", _cat2_rev, lookups=1),
    Rule("k>", _k_fwd, ("I",), per_class=True), Rule("l>", _l_fwd, ("O",), per_class=True),
]

# Reverse directions of (K2), (L2), (k^i) and (l^i) are absent: their
# right-hand sides do not determine every variable of the left-hand side.
C_AXIOMS = AxiomSet("C", tuple(_SHARED + [
    Rule("K1>", _K1_fwd, ("xfull",), lookups=1), Rule("K1<", _K1_rev, ("xfull",), lookups=1),
    Rule("K2>", _K2_fwd, ("xfull",)),
    Rule("K3>", _K3_fwd, ("xfull",), lookups=1), Rule("K3<", _K3_rev, ("xfull",)),
    Rule("K4>", _K4_fwd, ("xfull",)), Rule("K4<", _K4_rev, ("xfull",), lookups=0),
    Rule("L1>", _L1_fwd, ("+full",), lookups=1), Rule("L1<", _L1_rev, ("+full",), lookups=1),
    Rule("L2>", _L2_fwd, ("+full",)),
    Rule("L3>", _L3_fwd, ("+full",), lookups=1), Rule("L3<", _L3_rev, ("+full",)),
    Rule("L4>", _L4_fwd, ("+full",)), Rule("L4<", _L4_rev, ("+full",), lookups=0),
] + [Rule(nm, fn, ("xbif",), lookups=lk) for nm, fn, lk in _tensor_rules(TensorProd, "x")]
  + [Rule(nm, fn, ("+bif",), lookups=lk) for nm, fn, lk in _tensor_rules(TensorSum, "+")]))

CPRIME_AXIOMS = AxiomSet("C'", tuple(_SHARED
    + [Rule(nm, fn, ("x",), lookups=lk) for nm, fn, lk in _tensor_rules(TensorProd, "x")]
    + [Rule(nm, fn, ("+",), lookups=lk) for nm, fn, lk in _tensor_rules(TensorSum, "+")]
    + [
        Rule("ki>", _ki_fwd, ("xfull",)),
        Rule("w>", _w_fwd, ("xfull",), lookups=1), Rule("w<", _w_rev, ("xfull",)),
        Rule("kw1>", _kw1_fwd, ("xfull",)), Rule("kw1<", _kw1_rev, ("xfull",), lookups=0),
        Rule("kw2>", _kw2_fwd, ("xfull",)), Rule("kw2<", _kw2_rev, ("xfull",), lookups=0),
        Rule("li>", _li_fwd, ("+full",)),
        Rule("m>", _m_fwd, ("+full",), lookups=1), Rule("m<", _m_rev, ("+full",)),
        Rule("lm1>", _lm1_fwd, ("+full",)), Rule("lm1<", _lm1_rev, ("+full",), lookups=0),
        Rule("lm2>", _lm2_fwd, ("+full",)), Rule("lm2<", _lm2_rev, ("+full",), lookups=0),
    ]))


# ---------------------------------------------------------------------------
# E-graph


class _TooBig(Exception):
    pass


@dataclass
class _Class:
    src: Formula
    tgt: Formula
    graph: object
    size: int
    rep: Term
    nodes: dict = field(default_factory=dict)


def _kids(t: Term) -> tuple:
    if isinstance(t, (K, L)):
        return (t.arg,)
    if isinstance(t, (Pair, Copair, TensorProd, TensorSum)):
        return (t.left, t.right)
    if isinstance(t, Comp):
        return (t.after, t.before)
    return ()


def _rebuild_node(t: Term, kids) -> Term:
    if isinstance(t, (K, L)):
        return type(t)(t.index, t.side, kids[0])
    if isinstance(t, Comp):
        return Comp(kids[0], kids[1])
    if isinstance(t, (Pair, Copair, TensorProd, TensorSum)):
        return type(t)(kids[0], kids[1])
    return t


_BINARY = (Pair, Copair, TensorProd, TensorSum)


class EGraph:
    """Hash-consed e-graph over terms; each class carries its type and graph."""

    def __init__(self, cap: int):
        self.cap = cap
        self.parent: list[int] = []
        self.classes: dict[int, _Class] = {}
        # Keyed by ``_key``: plain tuples, so lookups build no terms.
        self.memo: dict = {}
        self.failures: list[dict] = []
        self.new_nodes = 0
        # Node sets map each e-node to the round it joined its class;
        # ``born`` records when each canonical e-node first appeared.
        # Templates refused by the size cap wait in ``deferred`` until some
        # class's smallest term shrinks.
        self.clock = 0
        self.shrunk = False
        self.deferred: list = []
        self.born: dict[Term, int] = {}
        self._since: Optional[int] = None
        self._fresh: dict[int, list] = {}

    def find(self, c: int) -> int:
        parent = self.parent
        if parent[c] == c:
            return c
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def nodes_of(self, ref: Term):
        cid = self.find(ref.cid)
        if self._since is None:
            return self.classes[cid].nodes
        got = self._fresh.get(cid)
        if got is None:
            since = self._since
            got = self._fresh[cid] = [n for n, st in self.classes[cid].nodes.items() if st >= since]
        return got

    def type_of(self, ref) -> tuple:
        cl = self.classes[self.find(ref.cid if isinstance(ref, Ref) else ref)]
        return cl.src, cl.tgt

    def _key(self, t: Term):
        """Memo key of a template whose children are already classes, or
        ``None`` when some child template is not in the graph."""
        tp = type(t)
        if tp is Comp:
            a, b = self.lookup(t.after), self.lookup(t.before)
            return None if a is None or b is None else (tp, a, b)
        if tp in _BINARY:
            a, b = self.lookup(t.left), self.lookup(t.right)
            return None if a is None or b is None else (tp, a, b)
        if tp is K or tp is L:
            a = self.lookup(t.arg)
            return None if a is None else (tp, t.index, t.side, a)
        return t

    def _is_canon(self, node: Term) -> bool:
        parent = self.parent
        return all(parent[k.cid] == k.cid for k in _kids(node))

    def canon(self, node: Term) -> Term:
        kids = _kids(node)
        if not kids:
            return node
        return _rebuild_node(node, [Ref(self.find(k.cid)) for k in kids])

    def _template_size(self, t: Term, top: bool = True) -> int:
        if type(t) is Ref:
            return self.classes[self.find(t.cid)].size
        size = 1
        for k in _kids(t):
            size += self._template_size(k, False)
        if not top and size > self.cap:
            raise _TooBig
        return size

    def add(self, t: Term) -> int:
        """Add a template (a term whose leaves may be :class:`Ref`); return its class."""
        if isinstance(t, Ref):
            return self.find(t.cid)
        node = _rebuild_node(t, [Ref(self.add(k)) for k in _kids(t)])
        key = self._key(node)
        hit = self.memo.get(key)
        if hit is not None:
            return self.find(hit)
        kids = _kids(node)
        rep = _rebuild_node(node, [self.classes[k.cid].rep for k in kids]) if kids else node
        src, tgt = infer_type(rep)
        size = 1 + sum(self.classes[k.cid].size for k in kids)
        cid = len(self.parent)
        self.parent.append(cid)
        self.classes[cid] = _Class(src, tgt, interpret(rep), size, rep, {node: self.clock})
        self.born.setdefault(node, self.clock)
        self.memo[key] = cid
        self.new_nodes += 1
        return cid

    def lookup(self, t: Term) -> Optional[int]:
        """The class of a template already in the graph, else ``None``."""
        if type(t) is Ref:
            return self.find(t.cid)
        key = self._key(t)
        if key is None:
            return None
        hit = self.memo.get(key)
        return None if hit is None else self.find(hit)

    def add_checked(self, t: Term) -> Optional[int]:
        hit = self.lookup(t)
        if hit is not None:
            return hit
        try:
            self._template_size(t)
        except _TooBig:
            return None
        return self.add(t)

    def union(self, a: int, b: int, reason: str) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        ca, cb = self.classes[a], self.classes[b]
        if (ca.src, ca.tgt) != (cb.src, cb.tgt):
            raise AssertionError(f"rule {reason} equated terms of different types: "
                                 f"{ca.rep} and {cb.rep}")
        if ca.graph != cb.graph:
            self.failures.append({"rule": reason, "left": str(ca.rep), "right": str(cb.rep)})
            return False
        if len(ca.nodes) < len(cb.nodes):
            a, b, ca, cb = b, a, cb, ca
        self.parent[b] = a
        # Nodes arriving from ``b`` are new to the parents of ``a``.
        for n in cb.nodes:
            if n not in ca.nodes:
                ca.nodes[n] = self.clock
        if cb.size < ca.size:
            ca.size, ca.rep = cb.size, cb.rep
            self.shrunk = True
        del self.classes[b]
        return True

    def rebuild(self) -> int:
        """Restore canonical nodes and congruence; return the number of unions."""
        merged = 0
        while True:
            memo: dict[Term, int] = {}
            again = False
            for cid in list(self.classes):
                if cid not in self.classes:
                    continue
                cl = self.classes[cid]
                nodes: dict = {}
                for n, st in cl.nodes.items():
                    if not self._is_canon(n):
                        n, st = self.canon(n), self.clock
                        self.born.setdefault(n, st)
                    nodes[n] = min(st, nodes.get(n, st))
                cl.nodes = nodes
                for n in list(cl.nodes):
                    n = self._key(n)
                    other = memo.get(n)
                    here = self.find(cid)
                    if other is not None and self.find(other) != here:
                        if self.union(other, here, "congruence"):
                            merged += 1
                            again = True
                    else:
                        memo[n] = here
            self.memo = memo
            if not again:
                return merged

    def _matches(self, rules, cid: int, n: Term, since: Optional[int]):
        for r in rules:
            if since is not None:
                if r.lookups == 0:
                    continue
                if r.lookups == 1:
                    self._since = since
            try:
                for t in r.fn(self, cid, n):
                    yield r.name, cid, t
            finally:
                self._since = None

    def run(self, axioms: AxiomSet, step_bound: int, semi_naive: bool = True) -> tuple:
        """Apply rules breadth first; return ``(saturated, rounds)``.

        Matching is semi-naive: a node seen in an earlier round is only
        combined with child nodes that joined since, for the rules whose
        results depend on a single child node; other rules always rerun.
        With ``semi_naive=False`` every node is matched afresh each round.
        """
        node_rules = [r for r in axioms.rules if not r.per_class]
        class_rules = [r for r in axioms.rules if r.per_class]
        done: set = set()
        for rnd in range(1, step_bound + 1):
            since = rnd - 1
            self._fresh = {}
            matches = []
            if self.shrunk and semi_naive:
                matches = self.deferred
            self.deferred = []
            self.shrunk = False
            for cid in list(self.classes):
                if cid not in done:
                    done.add(cid)
                    for r in class_rules:
                        for t in r.fn(self, cid, None):
                            matches.append((r.name, cid, t))
                for n in list(self.classes[cid].nodes):
                    old = None if not semi_naive or self.born[n] >= since else since
                    matches.extend(self._matches(node_rules, cid, n, old))
            self.clock = rnd
            self.new_nodes = 0
            unions = 0
            for name, cid, t in matches:
                got = self.add_checked(t)
                if got is None:
                    self.deferred.append((name, cid, t))
                elif self.union(cid, got, name):
                    unions += 1
            unions += self.rebuild()
            if self.new_nodes == 0 and unions == 0:
                return True, rnd
        return False, step_bound


@dataclass
class ClosureReport:
    seeds: list
    classes: list
    graphs: list
    saturated: bool
    rounds: int
    eclasses: int
    enodes: int
    hard_failures: list
    axioms: str

    def to_json(self) -> dict:
        return {
            "axioms": self.axioms,
            "seeds": [str(t) for t in self.seeds],
            "classes": [[str(self.seeds[i]) for i in cls] for cls in self.classes],
            "graphs": [g.to_json() for g in self.graphs],
            "saturated": self.saturated,
            "rounds": self.rounds,
            "eclasses": self.eclasses,
            "enodes": self.enodes,
            "hard_failures": self.hard_failures,
        }

    def same_class(self, i: int, j: int) -> bool:
        return any(i in cls and j in cls for cls in self.classes)


def _default_axioms(seeds) -> AxiomSet:
    base = C_AXIOMS if all(is_combinator(t) for t in seeds) else CPRIME_AXIOMS
    return base.for_fragment(fragment_of(seeds))


def equational_closure(seeds: Iterable[Term], axioms: Optional[AxiomSet] = None,
                       step_bound: int = 30, size_factor: int = 3,
                       semi_naive: bool = True) -> ClosureReport:
    """Close ``seeds`` under ``axioms``; classes are reported as seed index lists.

    New e-classes whose smallest term would exceed ``size_factor`` times the
    largest seed are not created. ``saturated`` means a whole round added no
    node and merged no classes.
    """
    seeds = list(seeds)
    if axioms is None:
        axioms = _default_axioms(seeds) if seeds else C_AXIOMS
    cap = size_factor * max((term_size(t) for t in seeds), default=1)
    eg = EGraph(cap)
    eg.new_nodes = 0
    ids = [eg.add(t) for t in seeds]
    eg.rebuild()
    if len(seeds) < 2:
        saturated, rounds = True, 0
    else:
        saturated, rounds = eg.run(axioms, step_bound, semi_naive)
    groups: dict[int, list] = {}
    for i, c in enumerate(ids):
        groups.setdefault(eg.find(c), []).append(i)
    classes = list(groups.values())
    graphs = [eg.classes[eg.find(ids[cls[0]])].graph for cls in classes]
    return ClosureReport(seeds, classes, graphs, saturated, rounds, len(eg.classes),
                         sum(len(c.nodes) for c in eg.classes.values()),
                         eg.failures, axioms.name)


def verify_faithfulness(src: Formula, tgt: Formula, size_bound: int, fragment: Fragment,
                        axioms: Optional[AxiomSet] = None, step_bound: int = 30,
                        size_factor: int = 3) -> dict:
    """Compare the closure partition of all small terms of a type with the ``G`` partition."""
    terms = enumerate_terms(src, tgt, size_bound, fragment)
    by_graph: dict = {}
    for i, t in enumerate(terms):
        by_graph.setdefault(interpret(t), []).append(i)
    g_classes = sorted(by_graph.values())
    if axioms is None:
        axioms = C_AXIOMS.for_fragment(fragment)
    report = equational_closure(terms, axioms, step_bound, size_factor)
    closure_classes = sorted(sorted(cls) for cls in report.classes)
    unmerged = []
    for cls in g_classes:
        for i in cls[1:]:
            if not any(cls[0] in c and i in c for c in closure_classes):
                unmerged.append([str(terms[cls[0]]), str(terms[i])])
    return {
        "src": str(src), "tgt": str(tgt), "size_bound": size_bound,
        "fragment": fragment.name, "terms": len(terms),
        "g_classes": len(g_classes), "closure_classes": len(closure_classes),
        "coincide": closure_classes == g_classes,
        "saturated": report.saturated, "rounds": report.rounds,
        "unmerged": unmerged, "hard_failures": report.hard_failures,
    }
