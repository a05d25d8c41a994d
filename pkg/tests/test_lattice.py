import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subsetjl.lattice import LatticeNF, lattice_equal, lattice_leq, normal_form, term_geq_one
from subsetjl.syntax import CSTAR, ONE, ZERO, App, Bang, Constant, DialectError, Sum, Union, Variable, mk_application

u1, u2, u3 = Variable(1), Variable(2), Variable(3)


def gens(t, acc=None):
    acc = set() if acc is None else acc
    if isinstance(t, (Sum, Union)):
        gens(t.left, acc)
        gens(t.right, acc)
    elif t != ZERO:
        acc.add(t)
    return acc


def two_valued(t, on):
    """Evaluate in the two-element lattice: + is and, \\/ is or, 0 is false."""
    if t == ZERO:
        return False
    if isinstance(t, Sum):
        return two_valued(t.left, on) and two_valued(t.right, on)
    if isinstance(t, Union):
        return two_valued(t.left, on) or two_valued(t.right, on)
    return t in on


def oracle_leq(s, t):
    g = sorted(gens(s) | gens(t), key=repr)
    for bits in itertools.product([False, True], repeat=len(g)):
        on = {x for x, b in zip(g, bits) if b}
        if two_valued(s, on) and not two_valued(t, on):
            return False
    return True


def test_distributivity():
    assert normal_form(Sum(u1, Union(u2, u3))) == LatticeNF.of([[u1, u2], [u1, u3]])


def test_absorption():
    assert normal_form(Union(Sum(u1, u2), u1)) == LatticeNF.of([[u1]])


def test_zero_is_bottom():
    assert normal_form(Union(ZERO, u1)) == LatticeNF.of([[u1]])
    assert normal_form(Sum(ZERO, u1)).is_bottom


def test_leq_examples():
    assert lattice_leq(Sum(u1, u2), u1)
    assert lattice_leq(u1, Union(u1, u2))
    assert not lattice_leq(u1, u2)


def test_geq_one_examples():
    assert term_geq_one(ONE)
    assert term_geq_one(Union(u1, ONE))
    assert not term_geq_one(u1)
    assert not term_geq_one(Sum(u1, ONE))


def test_one_is_not_top():
    assert not lattice_leq(u1, ONE)


def test_bangs_and_cstar_are_generators():
    assert normal_form(Bang(Union(u1, u2))) == LatticeNF.of([[Bang(Union(u1, u2))]])
    assert not lattice_leq(Bang(u1), Bang(Union(u1, u2)))
    assert normal_form(mk_application(u1, u2)) == LatticeNF.of([[u1, u2, CSTAR]])


def test_to_term_round_trip():
    nf = normal_form(Sum(Union(u1, u2), Union(u1, u3)))
    assert nf == LatticeNF.of([[u1], [u2, u3]])
    assert normal_form(nf.to_term()) == nf
    assert LatticeNF.bottom().to_term() == ZERO
    with pytest.raises(ValueError):
        LatticeNF.top().to_term()


def test_prob_dialect_only():
    with pytest.raises(DialectError):
        normal_form(App(u1, u2))


def lattice_terms():
    leaves = st.sampled_from([u1, u2, u3, ZERO, ONE, Constant(1)])
    return st.recursive(leaves, lambda c: st.one_of(st.builds(Sum, c, c), st.builds(Union, c, c)), max_leaves=7)


@settings(max_examples=300, deadline=None)
@given(lattice_terms(), lattice_terms())
def test_leq_matches_oracle(s, t):
    assert lattice_leq(s, t) == oracle_leq(s, t)
    assert lattice_leq(s, t) == (normal_form(Union(s, t)) == normal_form(t))


@settings(max_examples=200, deadline=None)
@given(lattice_terms(), lattice_terms())
def test_commutative_and_idempotent(s, t):
    assert lattice_equal(Sum(s, t), Sum(t, s))
    assert lattice_equal(Union(s, t), Union(t, s))
    assert lattice_equal(Union(s, s), s)
    nf = normal_form(s)
    if not nf.is_bottom:
        assert normal_form(nf.to_term()) == nf


@settings(max_examples=200, deadline=None)
@given(lattice_terms(), lattice_terms(), lattice_terms())
def test_order_is_transitive(a, b, c):
    if lattice_leq(a, b) and lattice_leq(b, c):
        assert lattice_leq(a, c)
