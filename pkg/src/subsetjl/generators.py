"""Seeded random terms and formulas for fuzzing and round-trip checks."""

from __future__ import annotations

import random

from .syntax import (
    BOTTOM,
    CSTAR,
    ONE,
    ZERO,
    App,
    Atom,
    Bang,
    Constant,
    Dialect,
    Formula,
    Implies,
    Justified,
    Sum,
    Term,
    Union,
    Variable,
)


def random_atomic_term(rng: random.Random, dialect: Dialect, n_vars: int = 3, n_consts: int = 3) -> Term:
    choices: list[Term] = [Variable(i) for i in range(n_vars)] + [Constant(i) for i in range(n_consts)]
    if dialect is not Dialect.APP:
        choices.append(CSTAR)
    if dialect is Dialect.PROB:
        choices += [ZERO, ONE]
    return rng.choice(choices)


def random_term(
    rng: random.Random, dialect: Dialect = Dialect.STAR, depth: int = 2, n_vars: int = 3, n_consts: int = 3
) -> Term:
    """A term of depth at most ``depth`` using only constructors of ``dialect``."""
    if depth <= 0 or rng.random() < 0.3:
        return random_atomic_term(rng, dialect, n_vars, n_consts)
    ops = ["sum", "bang"]
    if dialect is Dialect.APP:
        ops.append("app")
    if dialect is Dialect.PROB:
        ops.append("union")
    op = rng.choice(ops)
    if op == "bang":
        return Bang(random_term(rng, dialect, depth - 1, n_vars, n_consts))
    left = random_term(rng, dialect, depth - 1, n_vars, n_consts)
    right = random_term(rng, dialect, depth - 1, n_vars, n_consts)
    return {"sum": Sum, "union": Union, "app": App}[op](left, right)


def random_prop_formula(rng: random.Random, depth: int = 2, n_atoms: int = 3) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        return BOTTOM if rng.random() < 0.1 else Atom(rng.randrange(n_atoms))
    return Implies(random_prop_formula(rng, depth - 1, n_atoms), random_prop_formula(rng, depth - 1, n_atoms))


def random_formula(
    rng: random.Random,
    dialect: Dialect = Dialect.STAR,
    depth: int = 3,
    n_atoms: int = 3,
    term_depth: int = 1,
    n_vars: int = 3,
    n_consts: int = 3,
) -> Formula:
    """A formula of depth at most ``depth``.

    In the prob dialect justified bodies are kept propositional, which is the
    shape the evidence postulates talk about.
    """
    r = rng.random()
    if depth <= 0 or r < 0.25:
        return BOTTOM if rng.random() < 0.1 else Atom(rng.randrange(n_atoms))
    if r < 0.6:
        return Implies(
            random_formula(rng, dialect, depth - 1, n_atoms, term_depth, n_vars, n_consts),
            random_formula(rng, dialect, depth - 1, n_atoms, term_depth, n_vars, n_consts),
        )
    t = random_term(rng, dialect, term_depth, n_vars, n_consts)
    if dialect is Dialect.PROB:
        body = random_prop_formula(rng, depth - 1, n_atoms)
    else:
        body = random_formula(rng, dialect, depth - 1, n_atoms, term_depth, n_vars, n_consts)
    return Justified(t, body)


__all__ = ["random_atomic_term", "random_formula", "random_prop_formula", "random_term"]
