"""Relations between finite ordinals and the functor G from terms to them.

An arrow ``n -> m`` of the graphical category is a set of pairs ``(x, y)``
with ``x < n`` and ``y < m``. Composition is relational composition and
both ``f*g`` and ``f+g`` are interpreted by juxtaposition. The functor
sends a formula to its number of letter occurrences.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .syntax import (
    Codiag, Comp, Copair, Diag, Formula, Id, Inj, K, Kappa, L, Lambda,
    Letter, Pair, Proj, Prod, Sum, Term, TensorProd, TensorSum, letter_count,
    parse_formula,
)

__all__ = [
    "Relation", "rel_identity", "rel_compose", "rel_juxtapose", "interpret",
    "distributivity_fixture",
]


@dataclass(frozen=True, slots=True)
class Relation:
    src: int
    tgt: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for x, y in self.pairs:
            if not (0 <= x < self.src and 0 <= y < self.tgt):
                raise ValueError(f"pair {(x, y)} outside {self.src} -> {self.tgt}")

    @classmethod
    def of(cls, src: int, tgt: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        return cls(src, tgt, tuple(sorted(set((int(x), int(y)) for x, y in pairs))))

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self._set()

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def _set(self) -> frozenset:
        return frozenset(self.pairs)

    def image(self, x: int) -> list[int]:
        return [y for a, y in self.pairs if a == x]

    def preimage(self, y: int) -> list[int]:
        return [x for x, b in self.pairs if b == y]

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((self.src, self.tgt), dtype=bool)
        for x, y in self.pairs:
            m[x, y] = True
        return m

    @classmethod
    def from_matrix(cls, m) -> "Relation":
        m = np.asarray(m, dtype=bool)
        xs, ys = np.nonzero(m)
        return cls.of(m.shape[0], m.shape[1], zip(xs.tolist(), ys.tolist()))

    def is_bijection(self) -> bool:
        m = self.to_matrix()
        return self.src == self.tgt and bool((m.sum(0) == 1).all() and (m.sum(1) == 1).all())

    def is_function(self) -> bool:
        """Every ``x < src`` relates to exactly one ``y``."""
        return bool((self.to_matrix().sum(1) == 1).all())

    def is_converse_function(self) -> bool:
        """Every ``y < tgt`` is related to exactly one ``x``."""
        return bool((self.to_matrix().sum(0) == 1).all())

    def to_json(self) -> dict:
        return {"src": self.src, "tgt": self.tgt, "pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_json(cls, data: dict) -> "Relation":
        return cls.of(data["src"], data["tgt"], (tuple(p) for p in data["pairs"]))

    def __str__(self) -> str:
        body = ", ".join(f"({x},{y})" for x, y in self.pairs)
        return f"{{{body}}}:{self.src}->{self.tgt}"


def rel_identity(n: int) -> Relation:
    return Relation(n, n, tuple((x, x) for x in range(n)))


def rel_compose(g: Relation, f: Relation) -> Relation:
    """``g`` after ``f``."""
    if f.tgt != g.src:
        raise ValueError(f"cannot compose {f.src}->{f.tgt} with {g.src}->{g.tgt}")
    succ: dict[int, list[int]] = {}
    for y, z in g.pairs:
        succ.setdefault(y, []).append(z)
    out = {(x, z) for x, y in f.pairs for z in succ.get(y, ())}
    return Relation(f.src, g.tgt, tuple(sorted(out)))


def rel_juxtapose(f: Relation, g: Relation) -> Relation:
    """Place ``g`` beside ``f``, shifting its indices past ``f``'s."""
    pairs = f.pairs + tuple((x + f.src, y + f.tgt) for x, y in g.pairs)
    return Relation(f.src + g.src, f.tgt + g.tgt, pairs)


@lru_cache(maxsize=1 << 18)
def interpret(t: Term) -> Relation:
    """The relation G(t).

    Combinator-style nodes get direct clauses; each agrees with interpreting
    the node's one-level bifunctorial unfolding.
    """
    if isinstance(t, Id):
        return rel_identity(letter_count(t.obj))
    if isinstance(t, Kappa):
        return Relation(letter_count(t.obj), 0, ())
    if isinstance(t, Lambda):
        return Relation(0, letter_count(t.obj), ())
    if isinstance(t, Proj):
        a, b = letter_count(t.left), letter_count(t.right)
        if t.index == 1:
            return Relation(a + b, a, tuple((x, x) for x in range(a)))
        return Relation(a + b, b, tuple((x + a, x) for x in range(b)))
    if isinstance(t, Inj):
        a, b = letter_count(t.left), letter_count(t.right)
        if t.index == 1:
            return Relation(a, a + b, tuple((x, x) for x in range(a)))
        return Relation(b, a + b, tuple((x, x + a) for x in range(b)))
    if isinstance(t, Diag):
        a = letter_count(t.obj)
        return Relation(a, 2 * a, tuple(sorted([(x, x) for x in range(a)]
                                               + [(x, x + a) for x in range(a)])))
    if isinstance(t, Codiag):
        a = letter_count(t.obj)
        return Relation(2 * a, a, tuple([(x, x) for x in range(a)]
                                        + [(x + a, x) for x in range(a)]))
    if isinstance(t, Comp):
        return rel_compose(interpret(t.after), interpret(t.before))
    if isinstance(t, (TensorProd, TensorSum)):
        return rel_juxtapose(interpret(t.left), interpret(t.right))
    if isinstance(t, K):
        g, n = interpret(t.arg), letter_count(t.side)
        if t.index == 1:
            return Relation(g.src + n, g.tgt, g.pairs)
        return Relation(g.src + n, g.tgt, tuple((x + n, y) for x, y in g.pairs))
    if isinstance(t, L):
        g, n = interpret(t.arg), letter_count(t.side)
        if t.index == 1:
            return Relation(g.src, g.tgt + n, g.pairs)
        return Relation(g.src, g.tgt + n, tuple((x, y + n) for x, y in g.pairs))
    if isinstance(t, Pair):
        f, g = interpret(t.left), interpret(t.right)
        return Relation(f.src, f.tgt + g.tgt,
                        tuple(sorted(f.pairs + tuple((x, y + f.tgt) for x, y in g.pairs))))
    if isinstance(t, Copair):
        f, g = interpret(t.left), interpret(t.right)
        return Relation(f.src + g.src, f.tgt, f.pairs + tuple((x + f.src, y) for x, y in g.pairs))
    raise TypeError(f"not a term: {t!r}")


def distributivity_fixture() -> dict:
    """The two linkings of the distributivity round trip over
    ``(p*q)+(p*r)`` and ``p*(q+r)``, read off the introductory figure.

    ``down`` goes from the sum of products to the product, ``up`` back.
    """
    top = parse_formula("(p*q)+(p*r)")
    middle = parse_formula("p*(q+r)")
    down = Relation.of(4, 3, [(0, 0), (1, 1), (2, 0), (3, 2)])
    up = Relation.of(3, 4, [(0, 0), (0, 2), (1, 1), (2, 3)])
    return {"outer": top, "middle": middle, "down": down, "up": up}
