"""Exhaustive truth tables over formulas with opaque justification atoms.

Each opaque atom gets one column of a truth table packed into a Python int
(bit ``r`` is its value in row ``r``), so a whole table is evaluated with a
handful of bitwise operations.  Every one of the ``2**k`` rows is still
checked; the packing only avoids a Python-level loop per row.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .syntax import Atom, Bottom, Formula, Implies, Justified, is_propositional

DEFAULT_MAX_ATOMS = 24


class ResourceLimitError(RuntimeError):
    """Too many opaque atoms for an exhaustive truth table."""


def opaque_atoms(formulas: Iterable[Formula]) -> list[Formula]:
    """Atoms and maximal justification subformulas, in first-occurrence order."""
    seen: dict[Formula, None] = {}
    for f in formulas:
        stack = [f]
        while stack:
            g = stack.pop()
            if isinstance(g, Implies):
                stack.append(g.consequent)
                stack.append(g.antecedent)
            elif isinstance(g, (Atom, Justified)):
                seen.setdefault(g, None)
    return list(seen)


def _columns(k: int) -> tuple[list[int], int]:
    rows = 1 << k
    full = (1 << rows) - 1
    cols = []
    for i in range(k):
        half = 1 << i
        period = half << 1
        block = ((1 << half) - 1) << half
        repunit = full // ((1 << period) - 1)
        cols.append(block * repunit)
    return cols, full


def _evaluate(f: Formula, env: dict[Formula, int], full: int, memo: dict) -> int:
    v = memo.get(f)
    if v is not None:
        return v
    if isinstance(f, Bottom):
        v = 0
    elif isinstance(f, Implies):
        a = _evaluate(f.antecedent, env, full, memo)
        b = _evaluate(f.consequent, env, full, memo)
        v = (full & ~a) | b
    else:
        v = env[f]
    memo[f] = v
    return v


def _table(premises: Sequence[Formula], conclusion: Formula, max_atoms: int) -> tuple[int, int, int]:
    atoms = opaque_atoms([*premises, conclusion])
    if len(atoms) > max_atoms:
        raise ResourceLimitError(
            f"{len(atoms)} opaque atoms exceed the truth-table cap of {max_atoms}"
        )
    cols, full = _columns(len(atoms))
    env = dict(zip(atoms, cols))
    memo: dict[Formula, int] = {}
    prem = full
    for p in premises:
        prem &= _evaluate(p, env, full, memo)
    return prem, _evaluate(conclusion, env, full, memo), full


def taut_entails(
    premises: Sequence[Formula], conclusion: Formula, max_atoms: int = DEFAULT_MAX_ATOMS
) -> bool:
    """True iff every row satisfying all premises satisfies ``conclusion``.

    Propositional atoms and maximal ``t:F`` subformulas are the opaque atoms;
    ``_|_`` is false in every row.
    """
    prem, concl, _ = _table(premises, conclusion, max_atoms)
    return prem & ~concl == 0


def is_tautology(f: Formula, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    return taut_entails((), f, max_atoms)


def prop_entails(
    premises: Iterable[Formula], conclusion: Formula, max_atoms: int = DEFAULT_MAX_ATOMS
) -> bool:
    """Classical entailment between justification-free formulas."""
    premises = list(premises)
    for f in (*premises, conclusion):
        if not is_propositional(f):
            raise ValueError(f"not a propositional formula: {f}")
    return taut_entails(premises, conclusion, max_atoms)


def evaluate(f: Formula, assignment: dict[Formula, bool]) -> bool:
    """Evaluate a single row; ``assignment`` covers every opaque atom of ``f``."""
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Implies):
        return (not evaluate(f.antecedent, assignment)) or evaluate(f.consequent, assignment)
    return assignment[f]


def holds_under(f: Formula, true_atoms: set[int]) -> bool:
    """Evaluate a propositional formula where exactly ``true_atoms`` are true."""
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return f.index in true_atoms
    if isinstance(f, Implies):
        return (not holds_under(f.antecedent, true_atoms)) or holds_under(f.consequent, true_atoms)
    raise ValueError(f"not a propositional formula: {f}")


__all__ = [
    "DEFAULT_MAX_ATOMS",
    "ResourceLimitError",
    "evaluate",
    "holds_under",
    "is_tautology",
    "opaque_atoms",
    "prop_entails",
    "taut_entails",
]
