import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subsetjl.generators import random_formula, random_term
from subsetjl.syntax import (
    BOTTOM,
    CSTAR,
    ONE,
    ZERO,
    App,
    Atom,
    Bang,
    Constant,
    Dialect,
    DialectError,
    FormulaUniverse,
    Implies,
    Justified,
    ParseError,
    Sum,
    Union,
    Variable,
    bang_depth,
    conj,
    disj,
    forget_translation,
    formula_in_dialect,
    iff,
    is_atomic_term,
    is_cstar_term,
    is_propositional,
    mk_application,
    neg,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
    subformula_closure,
    subformulas,
)

p0, p1, p2 = Atom(0), Atom(1), Atom(2)
x1, x2 = Variable(1), Variable(2)
c1, c2 = Constant(1), Constant(2)


# ---------------------------------------------------------------- strategies

def terms(dialect: Dialect):
    leaves = [st.builds(Variable, st.integers(0, 12)), st.builds(Constant, st.integers(0, 12))]
    if dialect is not Dialect.APP:
        leaves.append(st.just(CSTAR))
    if dialect is Dialect.PROB:
        leaves += [st.just(ZERO), st.just(ONE)]
    ops = [Sum]
    if dialect is Dialect.APP:
        ops.append(App)
    if dialect is Dialect.PROB:
        ops.append(Union)

    def extend(children):
        binary = [st.builds(op, children, children) for op in ops]
        return st.one_of(st.builds(Bang, children), *binary)

    return st.recursive(st.one_of(*leaves), extend, max_leaves=8)


def formulas(dialect: Dialect):
    leaves = st.one_of(st.builds(Atom, st.integers(0, 9)), st.just(BOTTOM))

    def extend(children):
        return st.one_of(
            st.builds(Implies, children, children),
            st.builds(Justified, terms(dialect), children),
        )

    return st.recursive(leaves, extend, max_leaves=8)


# ------------------------------------------------------------------ parsing

def test_sum_is_left_associative():
    assert parse_term("x1 + x2 + cstar") == Sum(Sum(x1, x2), CSTAR)


def test_nested_bangs():
    assert parse_term("!!c1") == Bang(Bang(c1))


def test_union_rejected_outside_prob():
    with pytest.raises(DialectError):
        parse_term("x1 \\/ c2", Dialect.STAR)


def test_cstar_rejected_in_app_dialect():
    with pytest.raises(DialectError):
        parse_term("cstar", Dialect.APP)


def test_zero_and_one_only_in_prob():
    assert parse_term("0 \\/ 1", Dialect.PROB) == Union(ZERO, ONE)
    with pytest.raises(DialectError):
        parse_term("1", Dialect.STAR)


def test_mixing_sum_and_union_needs_parentheses():
    with pytest.raises(ParseError):
        parse_term("x1 + x2 \\/ x3", Dialect.PROB)
    assert parse_term("x1 + (x2 \\/ x3)", Dialect.PROB) == Sum(x1, Union(x2, Variable(3)))


def test_application_binds_loosest():
    assert parse_term("x1 + x2 . c1", Dialect.APP) == App(Sum(x1, x2), c1)
    assert parse_term("x1 . x2 . c1", Dialect.APP) == App(App(x1, x2), c1)
    with pytest.raises(DialectError):
        parse_term("x1 . x2", Dialect.STAR)


def test_implication_is_right_associative():
    assert parse_formula("p0 -> p1 -> p0") == Implies(p0, Implies(p1, p0))


def test_colon_binds_tighter_than_arrow():
    assert parse_formula("x1 : p0 -> p0") == Implies(Justified(x1, p0), p0)


def test_negation_expands():
    assert parse_formula("~p0") == Implies(p0, BOTTOM)


def test_connective_expansions():
    assert parse_formula("p0 | p1") == disj(p0, p1) == Implies(Implies(p0, BOTTOM), p1)
    assert parse_formula("p0 & p1") == conj(p0, p1) == Implies(Implies(p0, Implies(p1, BOTTOM)), BOTTOM)
    assert parse_formula("_T_") == Implies(BOTTOM, BOTTOM)
    assert parse_formula("p0 <-> p1") == iff(p0, p1)
    assert parse_formula("p0 & p1 | p2") == disj(conj(p0, p1), p2)


def test_parenthesised_term_before_colon():
    assert parse_formula("(x1 + x2) : p0") == Justified(Sum(x1, x2), p0)
    assert parse_formula("(x1 : p0)") == Justified(x1, p0)
    assert parse_formula("x1 : (p0 -> p1)") == Justified(x1, Implies(p0, p1))


def test_unicode_aliases():
    assert parse_formula("x1 : p0 → ⊥") == Implies(Justified(x1, p0), BOTTOM)
    assert parse_term("c⋆") == CSTAR


def test_u_variables_are_variables():
    assert parse_term("u3") == Variable(3)


@pytest.mark.parametrize("text", ["", "p0 ->", "x1", "(p0", "p0 p1", "x1 : ", "2", "c"])
def test_syntax_errors_carry_position(text):
    with pytest.raises(ParseError) as info:
        parse_formula(text)
    assert info.value.position is not None


def test_parse_error_position_points_at_offender():
    with pytest.raises(ParseError) as info:
        parse_formula("p0 -> $")
    assert info.value.position == 6


# ----------------------------------------------------------------- printing

def test_print_examples():
    assert print_term(Sum(Sum(x1, x2), CSTAR)) == "x1 + x2 + cstar"
    assert print_formula(Justified(CSTAR, BOTTOM)) == "cstar : _|_"
    assert print_formula(Implies(p0, Implies(p1, p0))) == "p0 -> p1 -> p0"


def test_print_parenthesises_right_sum():
    assert print_term(Sum(x1, Sum(x2, c1))) == "x1 + (x2 + c1)"
    assert print_term(Union(Sum(x1, x2), x1)) == "(x1 + x2) \\/ x1"


def test_print_variable_prefix():
    assert print_term(Union(x2, Sum(x1, Variable(3))), "u") == "u2 \\/ (u1 + u3)"


@pytest.mark.parametrize("dialect", list(Dialect))
def test_round_trip_generated(dialect):
    rng = random.Random(7)
    for _ in range(300):
        t = random_term(rng, dialect, 3)
        assert parse_term(print_term(t), dialect) == t
        f = random_formula(rng, dialect, 3, term_depth=2)
        assert parse_formula(print_formula(f), dialect) == f


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(list(Dialect)).flatmap(lambda d: st.tuples(st.just(d), terms(d))))
def test_term_round_trip_property(pair):
    dialect, t = pair
    assert parse_term(print_term(t), dialect) == t


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(list(Dialect)).flatmap(lambda d: st.tuples(st.just(d), formulas(d))))
def test_formula_round_trip_property(pair):
    dialect, f = pair
    assert parse_formula(print_formula(f), dialect) == f


# --------------------------------------------------------------- predicates

def test_cstar_terms():
    assert is_cstar_term(CSTAR)
    assert is_cstar_term(Sum(Sum(x1, CSTAR), c2))
    assert not is_cstar_term(Bang(CSTAR))
    assert not is_cstar_term(Sum(x1, x2))


def test_atomic_terms():
    assert is_atomic_term(Variable(3))
    assert is_atomic_term(CSTAR)
    assert not is_atomic_term(Sum(x1, x2))
    assert not is_atomic_term(Bang(c1))


def test_mk_application():
    assert mk_application(x1, c2) == Sum(Sum(x1, c2), CSTAR)
    assert mk_application(CSTAR, CSTAR) == Sum(Sum(CSTAR, CSTAR), CSTAR)
    assert print_term(mk_application(x1, c2)) == "x1 + c2 + cstar"
    with pytest.raises(DialectError):
        mk_application(x1, x2, Dialect.APP)


@settings(max_examples=100, deadline=None)
@given(terms(Dialect.STAR), terms(Dialect.STAR))
def test_application_is_always_cstar_term(s, t):
    assert is_cstar_term(mk_application(s, t))


def test_structural_equality_is_syntactic():
    assert Sum(x1, x2) != Sum(x2, x1)
    assert Sum(x1, x2) == Sum(Variable(1), Variable(2))
    assert hash(Sum(x1, x2)) == hash(Sum(Variable(1), Variable(2)))


def test_bang_depth():
    assert bang_depth(Bang(Bang(c1))) == (2, c1)
    assert bang_depth(x1) == (0, x1)


def test_dialect_membership():
    assert formula_in_dialect(Justified(CSTAR, p0), Dialect.STAR)
    assert not formula_in_dialect(Justified(CSTAR, p0), Dialect.APP)
    assert not formula_in_dialect(Justified(Union(x1, x2), p0), Dialect.STAR)


# ---------------------------------------------------------------- universes

def test_closure_examples():
    u = subformula_closure([Implies(p0, p1)])
    assert set(u) == {p0, p1, Implies(p0, p1)}
    u = subformula_closure([Justified(x1, p0)])
    assert set(u) == {p0, Justified(x1, p0)}
    assert len(subformula_closure([])) == 0


def test_universe_terms_include_cstar_except_app():
    u = subformula_closure([Justified(Sum(x1, x2), p0)])
    assert set(u.terms) == {x1, x2, Sum(x1, x2), CSTAR}
    ua = subformula_closure([Justified(App(x1, x2), p0)], Dialect.APP)
    assert CSTAR not in ua.terms


def test_universe_must_be_closed():
    with pytest.raises(ValueError):
        FormulaUniverse([Implies(p0, p1)])


def test_universe_order_puts_subformulas_first():
    rng = random.Random(3)
    u = subformula_closure([random_formula(rng, Dialect.STAR, 3) for _ in range(10)])
    seen = set()
    for f in u:
        for g in subformulas(f):
            assert g == f or g in seen
        seen.add(f)


@settings(max_examples=80, deadline=None)
@given(st.lists(formulas(Dialect.STAR), max_size=4))
def test_closure_is_idempotent(seeds):
    once = subformula_closure(seeds)
    assert subformula_closure(once) == once


# -------------------------------------------------------------- translation

def test_translation_examples():
    assert forget_translation(Implies(Justified(x1, p0), p0)) == Implies(p0, p0)
    assert forget_translation(p0) == p0


@settings(max_examples=100, deadline=None)
@given(formulas(Dialect.PROB))
def test_translation_is_idempotent_and_erases(f):
    g = forget_translation(f)
    assert is_propositional(g)
    assert forget_translation(g) == g


def test_negation_helper():
    assert neg(p0) == parse_formula("~p0")
