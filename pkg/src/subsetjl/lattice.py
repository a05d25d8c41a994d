"""Evidence terms as elements of the free distributive lattice.

``+`` is the meet, ``\\/`` the join and ``0`` the bottom element.  Every other
term that is not built from those operators (variables, constants, ``cstar``,
``1`` and any ``!t``) is a free generator.  In particular ``1`` is *not* the top
element: a term is above ``1`` only when ``1`` shows up as a whole meet in its
normal form.

A normal form is an antichain of meets, each meet a nonempty set of
generators.  The empty antichain is the bottom; the antichain holding only the
empty meet is the top, which no term denotes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable

from .syntax import (
    ONE,
    ZERO,
    Dialect,
    DialectError,
    Sum,
    Term,
    Union,
    Zero,
    print_term,
    term_dialect_error,
    term_size,
)

Meet = frozenset  # frozenset[Term] of generators


def _gen_key(g: Term) -> tuple[int, str]:
    return term_size(g), print_term(g)


def _meet_key(m: frozenset) -> tuple:
    return len(m), [_gen_key(g) for g in sorted(m, key=_gen_key)]


def _minimize(meets: Iterable[frozenset]) -> frozenset:
    # a meet that contains another one lies below it, so the join absorbs it
    ms = sorted(set(meets), key=len)
    kept: list[frozenset] = []
    for m in ms:
        if not any(k <= m for k in kept):
            kept.append(m)
    return frozenset(kept)


@dataclass(frozen=True)
class LatticeNF:
    meets: frozenset

    @classmethod
    def bottom(cls) -> "LatticeNF":
        return cls(frozenset())

    @classmethod
    def top(cls) -> "LatticeNF":
        return cls(frozenset({frozenset()}))

    @classmethod
    def of(cls, meets: Iterable[Iterable[Term]]) -> "LatticeNF":
        return cls(_minimize(frozenset(m) for m in meets))

    @property
    def is_bottom(self) -> bool:
        return not self.meets

    @property
    def is_top(self) -> bool:
        return frozenset() in self.meets

    def ordered(self) -> list[list[Term]]:
        """Meets and their generators in canonical order."""
        return [sorted(m, key=_gen_key) for m in sorted(self.meets, key=_meet_key)]

    def generators(self) -> set[Term]:
        return set().union(*self.meets) if self.meets else set()

    def join(self, other: "LatticeNF") -> "LatticeNF":
        return LatticeNF(_minimize(self.meets | other.meets))

    def meet(self, other: "LatticeNF") -> "LatticeNF":
        return LatticeNF(_minimize(a | b for a in self.meets for b in other.meets))

    def leq(self, other: "LatticeNF") -> bool:
        # every meet of self must sit below some meet of other
        return all(any(m >= n for n in other.meets) for m in self.meets)

    def to_term(self) -> Term:
        if self.is_bottom:
            return ZERO
        if self.is_top:
            raise ValueError("the top element has no term representation")
        parts = [reduce(Sum, m) for m in self.ordered()]
        return reduce(Union, parts)

    def __str__(self) -> str:
        if self.is_bottom:
            return "{}"
        inner = ", ".join("{" + ",".join(print_term(g) for g in m) + "}" for m in self.ordered())
        return "{" + inner + "}"


def is_generator(t: Term) -> bool:
    return not isinstance(t, (Sum, Union, Zero))


@lru_cache(maxsize=1 << 16)
def _nf(t: Term) -> LatticeNF:
    if isinstance(t, Zero):
        return LatticeNF.bottom()
    if isinstance(t, Sum):
        return _nf(t.left).meet(_nf(t.right))
    if isinstance(t, Union):
        return _nf(t.left).join(_nf(t.right))
    return LatticeNF(frozenset({frozenset({t})}))


def normal_form(t: Term) -> LatticeNF:
    err = term_dialect_error(t, Dialect.PROB)
    if err:
        raise DialectError(err)
    return _nf(t)


def lattice_leq(s: Term, t: Term) -> bool:
    """``s`` lies below ``t``, i.e. ``s \\/ t`` and ``t`` have the same normal form."""
    return normal_form(s).leq(normal_form(t))


def lattice_equal(s: Term, t: Term) -> bool:
    return normal_form(s) == normal_form(t)


def term_geq_one(t: Term) -> bool:
    return lattice_leq(ONE, t)


def generators_of(t: Term) -> set[Term]:
    """Generator occurrences of ``t``; ``!s`` counts as one opaque generator."""
    out: set[Term] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, (Sum, Union)):
            stack.append(u.left)
            stack.append(u.right)
        elif not isinstance(u, Zero):
            out.add(u)
    return out


def evaluate_bool(t: Term, true_generators: set[Term]) -> bool:
    """Two-element-lattice evaluation: meet is ``and``, join is ``or``, 0 is false."""
    if isinstance(t, Zero):
        return False
    if isinstance(t, Sum):
        return evaluate_bool(t.left, true_generators) and evaluate_bool(t.right, true_generators)
    if isinstance(t, Union):
        return evaluate_bool(t.left, true_generators) or evaluate_bool(t.right, true_generators)
    return t in true_generators


__all__ = [
    "LatticeNF",
    "evaluate_bool",
    "generators_of",
    "is_generator",
    "lattice_equal",
    "lattice_leq",
    "normal_form",
    "term_geq_one",
]
