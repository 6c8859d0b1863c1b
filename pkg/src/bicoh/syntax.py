"""Formulas, arrow terms, the text grammar, typing and fragment detection.

Formulas are the objects of the free categories: letters, the constants
``I`` (terminal) and ``O`` (initial), binary products and binary sums.
Arrow terms come in two styles that share one grammar:

* combinator style: ``1{A}``, ``k{A}``, ``l{A}``, ``K1{B}(f)``, ``L2{A}(f)``,
  ``<f,g>``, ``[f,g]`` and composition;
* bifunctorial style: ``k1{A,B}``, ``l2{A,B}``, ``w{A}``, ``m{A}``,
  ``(f*g)``, ``(f+g)`` and composition.

Composition is written in diagrammatic order, ``(f;g)`` is g after f.
All values are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from operator import attrgetter
from typing import Iterable, Iterator, Optional, Sequence, Union

__all__ = [
    "Formula", "Letter", "TerminalI", "InitialO", "Prod", "Sum", "I", "O",
    "Term", "Id", "Kappa", "Lambda", "K", "L", "Pair", "Copair", "Comp",
    "Proj", "Inj", "Diag", "Codiag", "TensorProd", "TensorSum",
    "Fragment", "ParseError", "TermTypeError", "FragmentError",
    "parse_formula", "parse_term", "infer_type", "letter_count",
    "fragment_of", "occurrence_home", "subformula_at", "replace_at",
    "term_size", "style", "is_combinator", "is_bifunctorial", "subterms",
    "compose", "map_formulas",
]

LEFT, RIGHT = 0, 1


class ParseError(ValueError):
    """Malformed formula or term text; ``pos`` is the 0-based offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class FragmentError(ValueError):
    """An operation is not defined for the fragment a term lives in."""


class TermTypeError(TypeError):
    """A typing rule premise fails; ``subterm`` is the offending node."""

    def __init__(self, message: str, subterm: "Term"):
        super().__init__(f"{message}: {subterm}")
        self.subterm = subterm


# ---------------------------------------------------------------------------
# Formulas


_GETTERS: dict = {}


def _cached_hash(self) -> int:
    # Terms are hashed constantly by caches; compute it once, on first use.
    h = self._hash
    if h is None:
        cls = type(self)
        get = _GETTERS.get(cls)
        if get is None:
            get = _GETTERS[cls] = attrgetter(*cls.__match_args__)
        h = hash((cls.__name__, get(self)))
        object.__setattr__(self, "_hash", h)
    return h


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return show_formula(self)


@dataclass(frozen=True, slots=True)
class Letter(Formula):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class TerminalI(Formula):
    def __str__(self) -> str:
        return "I"


@dataclass(frozen=True, slots=True)
class InitialO(Formula):
    def __str__(self) -> str:
        return "O"


@dataclass(frozen=True, slots=True)
class Prod(Formula):
    left: Formula
    right: Formula
    _hash: Optional[int] = field(default=None, init=False, repr=False, compare=False)
    __hash__ = _cached_hash

    def __str__(self) -> str:
        return show_formula(self)


@dataclass(frozen=True, slots=True)
class Sum(Formula):
    left: Formula
    right: Formula
    _hash: Optional[int] = field(default=None, init=False, repr=False, compare=False)
    __hash__ = _cached_hash

    def __str__(self) -> str:
        return show_formula(self)


I = TerminalI()
O = InitialO()


def show_formula(a: Formula) -> str:
    if isinstance(a, Letter):
        return a.name
    if isinstance(a, TerminalI):
        return "I"
    if isinstance(a, InitialO):
        return "O"
    op = "*" if isinstance(a, Prod) else "+"
    return f"({show_formula(a.left)}{op}{show_formula(a.right)})"


@lru_cache(maxsize=1 << 16)
def letter_count(a: Formula) -> int:
    """Number of letter occurrences in ``a``."""
    if isinstance(a, Letter):
        return 1
    if isinstance(a, (Prod, Sum)):
        return letter_count(a.left) + letter_count(a.right)
    return 0


def letters(a: Formula) -> list[str]:
    """Letter names in left-to-right occurrence order."""
    if isinstance(a, Letter):
        return [a.name]
    if isinstance(a, (Prod, Sum)):
        return letters(a.left) + letters(a.right)
    return []


def subformula_at(a: Formula, path: Sequence[int]) -> Formula:
    for step in path:
        if not isinstance(a, (Prod, Sum)):
            raise ValueError(f"path {tuple(path)} leaves the formula tree")
        a = a.right if step else a.left
    return a


def replace_at(a: Formula, path: Sequence[int], d: Formula) -> Formula:
    """The formula ``a`` with the subformula at ``path`` replaced by ``d``."""
    if not path:
        return d
    if not isinstance(a, (Prod, Sum)):
        raise ValueError(f"path {tuple(path)} leaves the formula tree")
    if path[0] == LEFT:
        return type(a)(replace_at(a.left, path[1:], d), a.right)
    return type(a)(a.left, replace_at(a.right, path[1:], d))


def occurrence_home(a: Formula, x: int) -> tuple[int, ...]:
    """Root-to-leaf path (0 = left, 1 = right) of the ``x``-th letter occurrence.

    ``x`` belongs to every subformula on the returned path.
    """
    n = letter_count(a)
    if not 0 <= x < n:
        raise IndexError(f"occurrence {x} out of range for {a} with {n} letters")
    path = []
    while isinstance(a, (Prod, Sum)):
        k = letter_count(a.left)
        if x < k:
            path.append(LEFT)
            a = a.left
        else:
            path.append(RIGHT)
            x -= k
            a = a.right
    return tuple(path)


def formula_atoms(a: Formula) -> Iterator[Formula]:
    stack = [a]
    while stack:
        b = stack.pop()
        if isinstance(b, (Prod, Sum)):
            stack.append(b.right)
            stack.append(b.left)
        else:
            yield b


# ---------------------------------------------------------------------------
# Terms


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return show_term(self)


@dataclass(frozen=True, slots=True)
class Id(Term):
    obj: Formula


@dataclass(frozen=True, slots=True)
class Kappa(Term):
    """The unique arrow ``obj -> I``."""
    obj: Formula


@dataclass(frozen=True, slots=True)
class Lambda(Term):
    """The unique arrow ``O -> obj``."""
    obj: Formula


@dataclass(frozen=True, slots=True)
class K(Term):
    """``K1{side}(arg) : A*side -> C`` or ``K2{side}(arg) : side*B -> C``."""
    index: int
    side: Formula
    arg: Term
    _hash: Optional[int] = field(default=None, init=False, repr=False, compare=False)
    __hash__ = _cached_hash



@dataclass(frozen=True, slots=True)
class L(Term):
    """``L1{side}(arg) : C -> A+side`` or ``L2{side}(arg) : C -> side+B``."""
    index: int
    side: Formula
    arg: Term
    _hash: Optional[int] = field(default=None, init=False, repr=False, compare=False)
    __hash__ = _cached_hash



@dataclass(frozen=True, slots=True)
class Pair(Term):
    left: Term
    right: Term
    _hash: Optional[int] = field(default=None, init=False, repr=False, compare=False)
    __hash__ = _cached_hash



@dataclass(frozen=True, slots=True)
class Copair(Term):
    left: Term
    right: Term
    _hash: Optional[int] = field(default=None, init=False, repr=False, compare=False)
    __hash__ = _cached_hash



@dataclass(frozen=True, slots=True)
class Comp(Term):
    """``after`` composed with ``before``; text form ``(before;after)``."""
    after: Term
    before: Term
    _hash: Optional[int] = field(default=None, init=False, repr=False, compare=False)
    __hash__ = _cached_hash



@dataclass(frozen=True, slots=True)
class Proj(Term):
    index: int
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Inj(Term):
    index: int
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Diag(Term):
    obj: Formula


@dataclass(frozen=True, slots=True)
class Codiag(Term):
    obj: Formula


@dataclass(frozen=True, slots=True)
class TensorProd(Term):
    left: Term
    right: Term
    _hash: Optional[int] = field(default=None, init=False, repr=False, compare=False)
    __hash__ = _cached_hash



@dataclass(frozen=True, slots=True)
class TensorSum(Term):
    left: Term
    right: Term
    _hash: Optional[int] = field(default=None, init=False, repr=False, compare=False)
    __hash__ = _cached_hash



ATOMS = (Id, Kappa, Lambda, Proj, Inj, Diag, Codiag)
COMBINATOR_ONLY = (K, L, Pair, Copair)
BIFUNCTORIAL_ONLY = (Proj, Inj, Diag, Codiag)


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (K, L)):
        return (t.arg,)
    if isinstance(t, (Pair, Copair, TensorProd, TensorSum)):
        return (t.left, t.right)
    if isinstance(t, Comp):
        return (t.after, t.before)
    return ()


def subterms(t: Term) -> Iterator[Term]:
    """Pre-order traversal, left to right (``before`` ahead of ``after``)."""
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        if isinstance(u, Comp):
            stack.append(u.after)
            stack.append(u.before)
        else:
            stack.extend(reversed(children(u)))


def term_size(t: Term) -> int:
    """Number of nodes; formula annotations are not counted."""
    return sum(1 for _ in subterms(t))


def compose(*terms: Term) -> Term:
    """Diagrammatic composite: ``compose(f, g, h)`` is h after g after f."""
    if not terms:
        raise ValueError("compose needs at least one term")
    out = terms[0]
    for t in terms[1:]:
        out = Comp(t, out)
    return out


# ---------------------------------------------------------------------------
# Typing


@lru_cache(maxsize=1 << 18)
def infer_type(t: Term) -> tuple[Formula, Formula]:
    """Return ``(source, target)`` or raise :class:`TermTypeError`."""
    if isinstance(t, Id):
        return t.obj, t.obj
    if isinstance(t, Kappa):
        return t.obj, I
    if isinstance(t, Lambda):
        return O, t.obj
    if isinstance(t, Proj):
        return Prod(t.left, t.right), (t.left if t.index == 1 else t.right)
    if isinstance(t, Inj):
        return (t.left if t.index == 1 else t.right), Sum(t.left, t.right)
    if isinstance(t, Diag):
        return t.obj, Prod(t.obj, t.obj)
    if isinstance(t, Codiag):
        return Sum(t.obj, t.obj), t.obj
    if isinstance(t, K):
        src, tgt = infer_type(t.arg)
        _check_index(t)
        return (Prod(src, t.side) if t.index == 1 else Prod(t.side, src)), tgt
    if isinstance(t, L):
        src, tgt = infer_type(t.arg)
        _check_index(t)
        return src, (Sum(tgt, t.side) if t.index == 1 else Sum(t.side, tgt))
    if isinstance(t, Pair):
        (s1, t1), (s2, t2) = infer_type(t.left), infer_type(t.right)
        if s1 != s2:
            raise TermTypeError(f"pair components have sources {s1} and {s2}", t)
        return s1, Prod(t1, t2)
    if isinstance(t, Copair):
        (s1, t1), (s2, t2) = infer_type(t.left), infer_type(t.right)
        if t1 != t2:
            raise TermTypeError(f"copair components have targets {t1} and {t2}", t)
        return Sum(s1, s2), t1
    if isinstance(t, Comp):
        s1, t1 = infer_type(t.before)
        s2, t2 = infer_type(t.after)
        if t1 != s2:
            raise TermTypeError(f"cannot compose: target {t1} is not source {s2}", t)
        return s1, t2
    if isinstance(t, TensorProd):
        (s1, t1), (s2, t2) = infer_type(t.left), infer_type(t.right)
        return Prod(s1, s2), Prod(t1, t2)
    if isinstance(t, TensorSum):
        (s1, t1), (s2, t2) = infer_type(t.left), infer_type(t.right)
        return Sum(s1, s2), Sum(t1, t2)
    raise TermTypeError("not a term", t)


def _check_index(t: Term) -> None:
    if t.index not in (1, 2):
        raise TermTypeError(f"index must be 1 or 2, got {t.index}", t)


def source(t: Term) -> Formula:
    return infer_type(t)[0]


def target(t: Term) -> Formula:
    return infer_type(t)[1]


# ---------------------------------------------------------------------------
# Styles


def is_combinator(t: Term) -> bool:
    """Pure combinator style.

    ``f*g`` and ``f+g`` are allowed when the matching connective is used only
    bifunctorially, as in the categories extended by a bare bifunctor.
    """
    kinds = {type(u) for u in subterms(t)}
    if kinds & set(BIFUNCTORIAL_ONLY):
        return False
    if TensorProd in kinds and kinds & {K, Pair}:
        return False
    if TensorSum in kinds and kinds & {L, Copair}:
        return False
    return True


def is_bifunctorial(t: Term) -> bool:
    return not any(isinstance(u, COMBINATOR_ONLY) for u in subterms(t))


def style(t: Term) -> str:
    """One of ``"combinator"``, ``"bifunctorial"``, ``"both"`` or ``"mixed"``."""
    c, b = is_combinator(t), is_bifunctorial(t)
    if c and b:
        return "both"
    if c:
        return "combinator"
    if b:
        return "bifunctorial"
    return "mixed"


# ---------------------------------------------------------------------------
# Fragments

NONE, BIFUNCTOR, FULL = 0, 1, 2


@dataclass(frozen=True, slots=True)
class Fragment:
    """Signature a term inhabits.

    ``product`` and ``sum`` are levels: ``NONE`` (connective absent),
    ``BIFUNCTOR`` (connective present but only its bifunctor used) or
    ``FULL`` (projections/pairing, resp. injections/copairing, used).
    """
    has_I: bool = False
    has_O: bool = False
    product: int = NONE
    sum: int = NONE

    @property
    def product_full(self) -> bool:
        return self.product == FULL

    @property
    def sum_full(self) -> bool:
        return self.sum == FULL

    @property
    def product_bifunctor_only(self) -> bool:
        return self.product == BIFUNCTOR

    @property
    def sum_bifunctor_only(self) -> bool:
        return self.sum == BIFUNCTOR

    def join(self, other: "Fragment") -> "Fragment":
        return Fragment(self.has_I or other.has_I, self.has_O or other.has_O,
                        max(self.product, other.product), max(self.sum, other.sum))

    def __le__(self, other: "Fragment") -> bool:
        return (self.has_I <= other.has_I and self.has_O <= other.has_O
                and self.product <= other.product and self.sum <= other.sum)

    @property
    def name(self) -> str:
        """ASCII name: full connectives and constants as subscripts,
        bifunctor-only connectives as superscripts, e.g. ``C^+_x,I``."""
        sub = [c for c, lv in (("x", self.product), ("+", self.sum)) if lv == FULL]
        sub += [c for c, on in (("I", self.has_I), ("O", self.has_O)) if on]
        sup = [c for c, lv in (("x", self.product), ("+", self.sum)) if lv == BIFUNCTOR]
        out = "C"
        if sup:
            out += "^" + ",".join(sup)
        if sub:
            out += "_" + ",".join(sub)
        return out

    @classmethod
    def from_name(cls, name: str) -> "Fragment":
        """Inverse of :attr:`name` (``C`` alone is the full bicartesian signature)."""
        text = name.strip().replace(" ", "")
        if text == "C":
            return cls(True, True, FULL, FULL)
        if not text.startswith("C"):
            raise ValueError(f"unknown fragment name {name!r}")
        rest = text[1:]
        sup: list[str] = []
        sub: list[str] = []
        if rest.startswith("^"):
            head, _, tail = rest[1:].partition("_")
            sup = head.split(",")
            rest = "_" + tail if tail else ""
        if rest.startswith("_"):
            sub = rest[1:].split(",")
        elif rest:
            raise ValueError(f"unknown fragment name {name!r}")
        allowed = {"x", "+", "I", "O"}
        if set(sup) - {"x", "+"} or set(sub) - allowed or set(sup) & set(sub):
            raise ValueError(f"unknown fragment name {name!r}")
        def level(c):
            return FULL if c in sub else BIFUNCTOR if c in sup else NONE
        return cls("I" in sub, "O" in sub, level("x"), level("+"))


FULL_C = Fragment(True, True, FULL, FULL)


def _formula_flags(a: Formula, acc: dict) -> None:
    for b in _formula_nodes(a):
        if isinstance(b, Prod):
            acc["product"] = max(acc["product"], BIFUNCTOR)
        elif isinstance(b, Sum):
            acc["sum"] = max(acc["sum"], BIFUNCTOR)
        elif isinstance(b, TerminalI):
            acc["has_I"] = True
        elif isinstance(b, InitialO):
            acc["has_O"] = True


def _formula_nodes(a: Formula) -> Iterator[Formula]:
    stack = [a]
    while stack:
        b = stack.pop()
        yield b
        if isinstance(b, (Prod, Sum)):
            stack.append(b.right)
            stack.append(b.left)


def fragment_of(terms: Union[Term, Iterable[Term]]) -> Fragment:
    """Least fragment covering every generator occurring in the terms or their types."""
    if isinstance(terms, Term):
        terms = [terms]
    acc = {"has_I": False, "has_O": False, "product": NONE, "sum": NONE}
    for t in terms:
        src, tgt = infer_type(t)
        _formula_flags(src, acc)
        _formula_flags(tgt, acc)
        for u in subterms(t):
            if isinstance(u, Kappa):
                acc["has_I"] = True
            elif isinstance(u, Lambda):
                acc["has_O"] = True
            elif isinstance(u, (K, Pair, Proj, Diag)):
                acc["product"] = FULL
            elif isinstance(u, (L, Copair, Inj, Codiag)):
                acc["sum"] = FULL
            elif isinstance(u, TensorProd):
                acc["product"] = max(acc["product"], BIFUNCTOR)
            elif isinstance(u, TensorSum):
                acc["sum"] = max(acc["sum"], BIFUNCTOR)
            for a in term_formulas(u):
                _formula_flags(a, acc)
    return Fragment(**acc)


def term_formulas(t: Term) -> tuple[Formula, ...]:
    """Formula annotations carried directly by the node ``t``."""
    if isinstance(t, (Id, Kappa, Lambda, Diag, Codiag)):
        return (t.obj,)
    if isinstance(t, (K, L)):
        return (t.side,)
    if isinstance(t, (Proj, Inj)):
        return (t.left, t.right)
    return ()


def map_formulas(t: Term, fn) -> Term:
    """Apply ``fn`` to every formula annotation in ``t``."""
    if isinstance(t, (Id, Kappa, Lambda, Diag, Codiag)):
        return type(t)(fn(t.obj))
    if isinstance(t, (K, L)):
        return type(t)(t.index, fn(t.side), map_formulas(t.arg, fn))
    if isinstance(t, (Proj, Inj)):
        return type(t)(t.index, fn(t.left), fn(t.right))
    if isinstance(t, Comp):
        return Comp(map_formulas(t.after, fn), map_formulas(t.before, fn))
    return type(t)(map_formulas(t.left, fn), map_formulas(t.right, fn))


# ---------------------------------------------------------------------------
# Printing


def show_term(t: Term) -> str:
    f = show_formula
    if isinstance(t, Id):
        return f"1{{{f(t.obj)}}}"
    if isinstance(t, Kappa):
        return f"k{{{f(t.obj)}}}"
    if isinstance(t, Lambda):
        return f"l{{{f(t.obj)}}}"
    if isinstance(t, K):
        return f"K{t.index}{{{f(t.side)}}}({show_term(t.arg)})"
    if isinstance(t, L):
        return f"L{t.index}{{{f(t.side)}}}({show_term(t.arg)})"
    if isinstance(t, Pair):
        return f"<{show_term(t.left)},{show_term(t.right)}>"
    if isinstance(t, Copair):
        return f"[{show_term(t.left)},{show_term(t.right)}]"
    if isinstance(t, Comp):
        return f"({show_term(t.before)};{show_term(t.after)})"
    if isinstance(t, Proj):
        return f"k{t.index}{{{f(t.left)},{f(t.right)}}}"
    if isinstance(t, Inj):
        return f"l{t.index}{{{f(t.left)},{f(t.right)}}}"
    if isinstance(t, Diag):
        return f"w{{{f(t.obj)}}}"
    if isinstance(t, Codiag):
        return f"m{{{f(t.obj)}}}"
    if isinstance(t, TensorProd):
        return f"({show_term(t.left)}*{show_term(t.right)})"
    if isinstance(t, TensorSum):
        return f"({show_term(t.left)}+{show_term(t.right)})"
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Parsing


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()):
            self.pos += 1
        return self.text[start:self.pos]

    def done(self) -> None:
        if self.peek():
            raise ParseError(f"unexpected {self.peek()!r}", self.pos)


def _is_letter(w: str) -> bool:
    return bool(w) and "a" <= w[0] <= "z" and all(c.islower() or c.isdigit() for c in w)


def _formula(r: _Reader) -> Formula:
    # formula := primary [("*" | "+") primary]; redundant outer parentheses
    # and an unparenthesised top-level binary are accepted.
    left = _primary(r)
    op = r.peek()
    if op in ("*", "+"):
        r.pos += 1
        right = _primary(r)
        if r.peek() in ("*", "+"):
            raise ParseError("ambiguous formula: parenthesise nested connectives", r.pos)
        return Prod(left, right) if op == "*" else Sum(left, right)
    return left


def _primary(r: _Reader) -> Formula:
    ch = r.peek()
    if ch == "(":
        r.pos += 1
        a = _formula(r)
        r.expect(")")
        return a
    start = r.pos
    w = r.word()
    if w == "I":
        return I
    if w == "O":
        return O
    if _is_letter(w):
        return Letter(w)
    if not w:
        raise ParseError(f"expected a formula, found {ch or 'end of input'!r}", start)
    raise ParseError(f"unknown token {w!r}", start)


def parse_formula(text: str) -> Formula:
    r = _Reader(text)
    a = _formula(r)
    r.done()
    return a


def _braced(r: _Reader, n: int) -> list[Formula]:
    r.expect("{")
    out = [_formula(r)]
    for _ in range(n - 1):
        r.expect(",")
        out.append(_formula(r))
    r.expect("}")
    return out


def _term(r: _Reader) -> Term:
    ch = r.peek()
    start = r.pos
    if ch == "<" or ch == "[":
        r.pos += 1
        a = _term(r)
        r.expect(",")
        b = _term(r)
        r.expect(">" if ch == "<" else "]")
        return Pair(a, b) if ch == "<" else Copair(a, b)
    if ch == "(":
        r.pos += 1
        a = _term(r)
        op = r.peek()
        if op == ")":
            r.pos += 1
            return a
        if op not in (";", "*", "+"):
            raise ParseError(f"expected ';', '*' or '+', found {op or 'end of input'!r}", r.pos)
        r.pos += 1
        b = _term(r)
        r.expect(")")
        return _binary(op, a, b)
    w = r.word()
    if w == "1":
        (a,) = _braced(r, 1)
        return Id(a)
    if w in ("k", "l", "w", "m"):
        (a,) = _braced(r, 1)
        return {"k": Kappa, "l": Lambda, "w": Diag, "m": Codiag}[w](a)
    if w in ("k1", "k2", "l1", "l2"):
        a, b = _braced(r, 2)
        return (Proj if w[0] == "k" else Inj)(int(w[1]), a, b)
    if w in ("K1", "K2", "L1", "L2"):
        (side,) = _braced(r, 1)
        r.expect("(")
        arg = _term(r)
        r.expect(")")
        return (K if w[0] == "K" else L)(int(w[1]), side, arg)
    if not w:
        raise ParseError(f"expected a term, found {ch or 'end of input'!r}", start)
    raise ParseError(f"unknown token {w!r}", start)


def _binary(op: str, a: Term, b: Term) -> Term:
    if op == ";":
        return Comp(b, a)
    return TensorProd(a, b) if op == "*" else TensorSum(a, b)


def parse_term(text: str) -> Term:
    """Parse a term; a top-level binary may omit its outer parentheses."""
    r = _Reader(text)
    a = _term(r)
    op = r.peek()
    if op in (";", "*", "+"):
        r.pos += 1
        b = _term(r)
        a = _binary(op, a, b)
        if r.peek() in (";", "*", "+"):
            raise ParseError("ambiguous term: parenthesise nested operations", r.pos)
    r.done()
    return a
