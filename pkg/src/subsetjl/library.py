"""Stock derivations, parameterised by two terms, two formulas and a constant.

Each entry builds a star-dialect derivation and names the optional schemes it
needs.  The soundness fuzzer instantiates them inside random models.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .axioms import SchemeId
from .proofs import Derivation, DerivationBuilder, builtin_j_derivation
from .syntax import (
    BOTTOM,
    CSTAR,
    Bang,
    Constant,
    Formula,
    Implies,
    Justified,
    Sum,
    Term,
    conj,
    mk_application,
    neg,
)


@dataclass(frozen=True)
class LibraryEntry:
    name: str
    requires: frozenset
    build: Callable[[Term, Term, Formula, Formula, int], Derivation]


def _cl1(a: Formula, b: Formula) -> Formula:
    return Implies(a, Implies(b, a))


def jplus_left(s, t, a, b, c):
    d = DerivationBuilder()
    i = d.axiom(SchemeId.JPlus, s=s, t=t, A=a)
    d.cr(Implies(Justified(s, a), Justified(Sum(s, t), a)), i)
    return d.build()


def jplus_right(s, t, a, b, c):
    d = DerivationBuilder()
    i = d.axiom(SchemeId.JPlus, s=s, t=t, A=a)
    d.cr(Implies(Justified(t, a), Justified(Sum(s, t), a)), i)
    return d.build()


def jplus_swap(s, t, a, b, c):
    # s:A -> (t+s):A, order of summands does not matter for a single side
    d = DerivationBuilder()
    i = d.axiom(SchemeId.JPlus, s=t, t=s, A=a)
    d.cr(Implies(Justified(s, a), Justified(Sum(t, s), a)), i)
    return d.build()


def jplus_chain(s, t, a, b, c):
    d = DerivationBuilder()
    st = Sum(s, t)
    i = d.axiom(SchemeId.JPlus, s=s, t=t, A=a)
    j = d.axiom(SchemeId.JPlus, s=st, t=CSTAR, A=a)
    d.cr(Implies(Justified(s, a), Justified(Sum(st, CSTAR), a)), i, j)
    return d.build()


def builtin_j(s, t, a, b, c):
    return builtin_j_derivation(s, t, a, b)


def jcstar_plain(s, t, a, b, c):
    d = DerivationBuilder()
    d.axiom(SchemeId.JCStar, c=CSTAR, A=a, B=b)
    return d.build()


def jcstar_sum(s, t, a, b, c):
    d = DerivationBuilder()
    d.axiom(SchemeId.JCStar, c=Sum(s, CSTAR), A=a, B=b)
    return d.build()


def cstar_curried(s, t, a, b, c):
    # cstar:(A->B) -> (cstar:A -> cstar:B)
    d = DerivationBuilder()
    i = d.axiom(SchemeId.JCStar, c=CSTAR, A=a, B=b)
    d.cr(Implies(Justified(CSTAR, Implies(a, b)), Implies(Justified(CSTAR, a), Justified(CSTAR, b))), i)
    return d.build()


def _an(depth):
    def build(s, t, a, b, c):
        d = DerivationBuilder()
        d.an(depth, c, _cl1(a, b))
        return d.build()
    build.__name__ = f"an_depth_{depth}"
    return build


def an_plus(s, t, a, b, c):
    # (c+s):(A->(B->A)) from the constant's own justification
    d = DerivationBuilder()
    ax = _cl1(a, b)
    i = d.an(0, c, ax)
    j = d.axiom(SchemeId.JPlus, s=Constant(c), t=s, A=ax)
    d.cr(Justified(Sum(Constant(c), s), ax), i, j)
    return d.build()


def app_from_an(s, t, a, b, c):
    # t:A -> (c.t):(B->A)
    d = DerivationBuilder()
    i = d.an(0, c, _cl1(a, b))
    j = d.include(builtin_j_derivation(Constant(c), t, a, Implies(b, a)))
    d.mp(i, j)
    return d.build()


def an_dne(s, t, a, b, c):
    # t:~~A -> (c.t):A using the constant for the double-negation axiom
    d = DerivationBuilder()
    dne = Implies(Implies(Implies(a, BOTTOM), BOTTOM), a)
    i = d.an(0, c, dne)
    j = d.include(builtin_j_derivation(Constant(c), t, neg(neg(a)), a))
    d.mp(i, j)
    return d.build()


def j_twice(s, t, a, b, c):
    # s:(A->(A->B)) -> (t:A -> ((s.t).t):B)
    d = DerivationBuilder()
    st = mk_application(s, t)
    i = d.include(builtin_j_derivation(s, t, a, Implies(a, b)))
    j = d.include(builtin_j_derivation(st, t, a, b))
    d.cr(Implies(Justified(s, Implies(a, Implies(a, b))),
                 Implies(Justified(t, a), Justified(mk_application(st, t), b))), i, j)
    return d.build()


def identity(s, t, a, b, c):
    # A -> A from CL1, CL2 and two modus ponens steps
    d = DerivationBuilder()
    aa = Implies(a, a)
    i1 = d.axiom(SchemeId.CL2, A=a, B=aa, C=a)
    i2 = d.axiom(SchemeId.CL1, A=a, B=aa)
    i3 = d.mp(i2, i1)
    i4 = d.axiom(SchemeId.CL1, A=a, B=a)
    d.mp(i4, i3)
    return d.build()


def weakening(s, t, a, b, c):
    # B -> c:(A->(B->A))
    d = DerivationBuilder()
    ax = _cl1(a, b)
    i = d.an(0, c, ax)
    j = d.axiom(SchemeId.CL1, A=Justified(Constant(c), ax), B=b)
    d.mp(i, j)
    return d.build()


def cl2_instance(s, t, a, b, c):
    d = DerivationBuilder()
    d.axiom(SchemeId.CL2, A=Justified(s, a), B=a, C=b)
    return d.build()


def dne_instance(s, t, a, b, c):
    d = DerivationBuilder()
    d.axiom(SchemeId.CL3, A=Justified(t, b))
    return d.build()


def peirce(s, t, a, b, c):
    d = DerivationBuilder()
    d.cr(Implies(Implies(Implies(a, Justified(s, b)), a), a))
    return d.build()


def contraposition(s, t, a, b, c):
    d = DerivationBuilder()
    sa, tb = Justified(s, a), Justified(t, b)
    d.cr(Implies(Implies(sa, tb), Implies(neg(tb), neg(sa))))
    return d.build()


def sum_conj(s, t, a, b, c):
    # s:A -> (t:B -> ((s+t):A & (s+t):B))
    d = DerivationBuilder()
    i = d.axiom(SchemeId.JPlus, s=s, t=t, A=a)
    j = d.axiom(SchemeId.JPlus, s=s, t=t, A=b)
    d.cr(Implies(Justified(s, a), Implies(Justified(t, b), conj(Justified(Sum(s, t), a), Justified(Sum(s, t), b)))),
         i, j)
    return d.build()


def jt_instance(s, t, a, b, c):
    d = DerivationBuilder()
    d.axiom(SchemeId.JT, t=s, A=a)
    return d.build()


def jt_contrapositive(s, t, a, b, c):
    d = DerivationBuilder()
    i = d.axiom(SchemeId.JT, t=s, A=a)
    d.cr(Implies(neg(a), neg(Justified(s, a))), i)
    return d.build()


def jt_bang(s, t, a, b, c):
    d = DerivationBuilder()
    i = d.axiom(SchemeId.JT, t=Bang(s), A=Justified(s, a))
    j = d.axiom(SchemeId.JT, t=s, A=a)
    d.cr(Implies(Justified(Bang(s), Justified(s, a)), a), i, j)
    return d.build()


def an_reflect(s, t, a, b, c):
    # an AN! conclusion read back through jt
    d = DerivationBuilder()
    ax = _cl1(a, b)
    i = d.an(1, c, ax)
    j = d.axiom(SchemeId.JT, t=Bang(Constant(c)), A=Justified(Constant(c), ax))
    d.mp(i, j)
    return d.build()


def jd_instance(s, t, a, b, c):
    d = DerivationBuilder()
    d.axiom(SchemeId.JD, t=s)
    return d.build()


def jd_plus(s, t, a, b, c):
    # ~(s+t):_|_ from jd
    d = DerivationBuilder()
    i = d.axiom(SchemeId.JD, t=Sum(s, t))
    d.cr(neg(Justified(Sum(s, t), BOTTOM)), i)
    return d.build()


def j4_instance(s, t, a, b, c):
    d = DerivationBuilder()
    d.axiom(SchemeId.J4, t=s, A=a)
    return d.build()


def j4_chain(s, t, a, b, c):
    d = DerivationBuilder()
    sa = Justified(s, a)
    i = d.axiom(SchemeId.J4, t=s, A=a)
    j = d.axiom(SchemeId.J4, t=Bang(s), A=sa)
    d.cr(Implies(sa, Justified(Bang(Bang(s)), Justified(Bang(s), sa))), i, j)
    return d.build()


def j4_plus(s, t, a, b, c):
    d = DerivationBuilder()
    st = Sum(s, t)
    i = d.axiom(SchemeId.JPlus, s=s, t=t, A=a)
    j = d.axiom(SchemeId.J4, t=st, A=a)
    d.cr(Implies(Justified(s, a), Justified(Bang(st), Justified(st, a))), i, j)
    return d.build()


_NONE: frozenset = frozenset()
_JT = frozenset({SchemeId.JT})
_JD = frozenset({SchemeId.JD})
_J4 = frozenset({SchemeId.J4})

LIBRARY: tuple[LibraryEntry, ...] = (
    LibraryEntry("builtin_j", _NONE, builtin_j),
    LibraryEntry("jplus_left", _NONE, jplus_left),
    LibraryEntry("jplus_right", _NONE, jplus_right),
    LibraryEntry("jplus_swap", _NONE, jplus_swap),
    LibraryEntry("jplus_chain", _NONE, jplus_chain),
    LibraryEntry("jcstar_plain", _NONE, jcstar_plain),
    LibraryEntry("jcstar_sum", _NONE, jcstar_sum),
    LibraryEntry("cstar_curried", _NONE, cstar_curried),
    LibraryEntry("an_depth_0", _NONE, _an(0)),
    LibraryEntry("an_depth_1", _NONE, _an(1)),
    LibraryEntry("an_depth_2", _NONE, _an(2)),
    LibraryEntry("an_plus", _NONE, an_plus),
    LibraryEntry("app_from_an", _NONE, app_from_an),
    LibraryEntry("an_dne", _NONE, an_dne),
    LibraryEntry("j_twice", _NONE, j_twice),
    LibraryEntry("identity", _NONE, identity),
    LibraryEntry("weakening", _NONE, weakening),
    LibraryEntry("cl2_instance", _NONE, cl2_instance),
    LibraryEntry("dne_instance", _NONE, dne_instance),
    LibraryEntry("peirce", _NONE, peirce),
    LibraryEntry("contraposition", _NONE, contraposition),
    LibraryEntry("sum_conj", _NONE, sum_conj),
    LibraryEntry("jt_instance", _JT, jt_instance),
    LibraryEntry("jt_contrapositive", _JT, jt_contrapositive),
    LibraryEntry("jt_bang", _JT, jt_bang),
    LibraryEntry("an_reflect", _JT, an_reflect),
    LibraryEntry("jd_instance", _JD, jd_instance),
    LibraryEntry("jd_plus", _JD, jd_plus),
    LibraryEntry("j4_instance", _J4, j4_instance),
    LibraryEntry("j4_chain", _J4, j4_chain),
    LibraryEntry("j4_plus", _J4, j4_plus),
)


def library_for(beta: frozenset) -> list[LibraryEntry]:
    """Entries whose optional schemes are all in ``beta``."""
    return [e for e in LIBRARY if e.requires <= beta]


__all__ = ["LIBRARY", "LibraryEntry", "library_for"]
