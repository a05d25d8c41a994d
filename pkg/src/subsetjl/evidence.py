"""Aggregated probabilistic evidence over a finite sample space.

A database pairs evidence variables ``u_i`` with propositional formulas and
names a target ``X``.  The aggregated evidence for ``X`` is the join, over the
minimal sub-databases that entail ``X``, of the meet of their variables.  Read
as events in a finite probability space (meet as intersection, join as
union), its probability bounds the probability of ``X`` from below.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping

from .axioms import ConstantSpecification, LogicConfig, SchemeId
from .lattice import LatticeNF, lattice_equal, lattice_leq, normal_form, term_geq_one
from .models import SubsetModel
from .syntax import (
    ONE,
    ZERO,
    Atom,
    Bottom,
    Dialect,
    Formula,
    FormulaUniverse,
    Implies,
    Justified,
    One,
    Sum,
    Term,
    Union,
    Variable,
    Zero,
    is_propositional,
    parse_formula,
    print_formula,
    print_term,
)
from .truthtable import DEFAULT_MAX_ATOMS, holds_under, prop_entails


@dataclass(frozen=True)
class EvidenceDatabase:
    """Entries ``(variable index, formula)`` and the target formula."""

    entries: tuple[tuple[int, Formula], ...]
    target: Formula

    def __post_init__(self):
        entries = tuple((int(i), f) for i, f in self.entries)
        object.__setattr__(self, "entries", entries)
        idx = [i for i, _ in entries]
        if len(set(idx)) != len(idx):
            raise ValueError("evidence variables must be distinct")
        for i, f in entries:
            if not is_propositional(f):
                raise ValueError(f"u{i} : {print_formula(f)} is not propositional")
        if not is_propositional(self.target):
            raise ValueError(f"target {print_formula(self.target)} is not propositional")

    @property
    def variables(self) -> list[Variable]:
        return [Variable(i) for i, _ in self.entries]

    @property
    def formulas(self) -> list[Formula]:
        return [f for _, f in self.entries]


@dataclass(frozen=True)
class ProbabilitySpace:
    """Finitely many outcomes with exact rational weights summing to one."""

    outcomes: tuple[str, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        outcomes = tuple(str(o) for o in self.outcomes)
        weights = tuple(Fraction(w) for w in self.weights)
        if len(outcomes) != len(weights):
            raise ValueError("one weight per outcome")
        if len(set(outcomes)) != len(outcomes):
            raise ValueError("duplicate outcomes")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        if sum(weights, Fraction(0)) != 1:
            raise ValueError(f"weights sum to {sum(weights, Fraction(0))}, not 1")
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, outcomes: Iterable) -> "ProbabilitySpace":
        outs = [str(o) for o in outcomes]
        return cls(tuple(outs), tuple(Fraction(1, len(outs)) for _ in outs))

    @property
    def omega(self) -> frozenset:
        return frozenset(self.outcomes)

    def weight(self, outcome: str) -> Fraction:
        return self.weights[self.outcomes.index(outcome)]

    def prob(self, event: Iterable[str]) -> Fraction:
        ev = set(event)
        unknown = ev - set(self.outcomes)
        if unknown:
            raise ValueError(f"unknown outcomes {sorted(unknown)}")
        return sum((w for o, w in zip(self.outcomes, self.weights) if o in ev), Fraction(0))


@dataclass(frozen=True)
class EventAssignment:
    """Events for lattice generators; ``1`` is the whole space and ``0`` is empty."""

    omega: frozenset
    events: Mapping[Term, frozenset]

    def __init__(self, omega: Iterable[str], events: Mapping[Term, Iterable[str]]):
        om = frozenset(str(o) for o in omega)
        evs = {}
        for g, e in events.items():
            e = frozenset(str(o) for o in e)
            if not e <= om:
                raise ValueError(f"event of {print_term(g, 'u')} leaves the sample space")
            evs[g] = e
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "events", evs)

    def of(self, g: Term) -> frozenset:
        if isinstance(g, One):
            return self.omega
        if isinstance(g, Zero):
            return frozenset()
        try:
            return self.events[g]
        except KeyError:
            raise ValueError(f"no event assigned to {print_term(g, 'u')}") from None


# ------------------------------------------------------------------ aggregation


def supporting_subsets(db: EvidenceDatabase, max_atoms: int = DEFAULT_MAX_ATOMS) -> list[tuple[int, ...]]:
    """Minimal sets of 1-based entry positions whose formulas entail the target.

    Ordered by size, then lexicographically; ``()`` when the target is a
    tautology.
    """
    n = len(db.entries)
    found: list[frozenset] = []
    out: list[tuple[int, ...]] = []
    for k in range(n + 1):
        for combo in itertools.combinations(range(1, n + 1), k):
            cs = frozenset(combo)
            if any(f <= cs for f in found):
                continue
            if prop_entails([db.entries[i - 1][1] for i in combo], db.target, max_atoms):
                found.append(cs)
                out.append(combo)
    return out


def _meet_term(db: EvidenceDatabase, positions: Iterable[int]) -> Term:
    vs = [Variable(db.entries[i - 1][0]) for i in positions]
    return reduce(Sum, vs) if vs else ONE


def meet_term(db: EvidenceDatabase, positions: Iterable[int]) -> Term:
    """Meet of the variables at ``positions``; the empty meet is ``1``."""
    return _meet_term(db, sorted(positions))


def aggregated_evidence(db: EvidenceDatabase) -> Term:
    parts = [_meet_term(db, d) for d in supporting_subsets(db)]
    return reduce(Union, parts) if parts else ZERO


def event_of(t: Term, asg: EventAssignment) -> frozenset:
    """Meets become intersections and joins unions, via the normal form."""
    nf = normal_form(t)
    out: set = set()
    for meet in nf.meets:
        out |= reduce(frozenset.intersection, (asg.of(g) for g in meet), asg.omega)
    return frozenset(out)


def probability_lower_bound(db: EvidenceDatabase, asg: EventAssignment, sp: ProbabilitySpace) -> Fraction:
    for v in db.variables:
        asg.of(v)
    return sp.prob(event_of(aggregated_evidence(db), asg))


# ------------------------------------------------------------ valuation spaces


@dataclass(frozen=True)
class ValuationSpace:
    """A probability space whose outcomes each fix the true atoms."""

    space: ProbabilitySpace
    valuation: Mapping[str, frozenset]

    def event(self, f: Formula) -> frozenset:
        return frozenset(o for o in self.space.outcomes if holds_under(f, self.valuation[o]))


def is_sound_assignment(db: EvidenceDatabase, asg: EventAssignment, vs: ValuationSpace) -> bool:
    """Each ``u_i`` event lies inside the event of its formula."""
    return all(asg.of(Variable(i)) <= vs.event(f) for i, f in db.entries)


def random_valuation_space(rng: random.Random, n_outcomes: int = 16, n_atoms: int = 3,
                           max_weight: int = 5) -> ValuationSpace:
    raw = [rng.randint(0, max_weight) for _ in range(n_outcomes)]
    if not any(raw):
        raw[0] = 1
    total = sum(raw)
    outs = tuple(f"o{k}" for k in range(n_outcomes))
    sp = ProbabilitySpace(outs, tuple(Fraction(r, total) for r in raw))
    val = {o: frozenset(a for a in range(n_atoms) if rng.random() < 0.5) for o in outs}
    return ValuationSpace(sp, val)


def random_sound_assignment(rng: random.Random, db: EvidenceDatabase, vs: ValuationSpace) -> EventAssignment:
    events = {}
    for i, f in db.entries:
        events[Variable(i)] = {o for o in vs.event(f) if rng.random() < 0.7}
    return EventAssignment(vs.space.outcomes, events)


# ------------------------------------------------------------ one-world model


def single_world_model(universe: FormulaUniverse, world: str = "w", beta: Iterable = ()) -> SubsetModel:
    """One normal world where every atom is true and ``E(w,t)`` is ``{w}`` exactly when ``1 ⪯ t``."""
    if universe.dialect is not Dialect.PROB:
        raise ValueError("single_world_model needs a prob-dialect universe")
    config = LogicConfig(Dialect.PROB, frozenset(beta), True)
    if config.beta & {SchemeId.JD, SchemeId.JT}:
        raise ValueError("the one-world construction only supports j4 among the optional schemes")
    above = {t: term_geq_one(t) for t in universe.terms}
    V: dict[Formula, bool] = {}
    for f in universe.formulas:
        if isinstance(f, Atom):
            V[f] = True
        elif isinstance(f, Bottom):
            V[f] = False
        elif isinstance(f, Implies):
            V[f] = (not V[f.antecedent]) or V[f.consequent]
        elif isinstance(f, Justified):
            V[f] = (not above[f.term]) or V[f.body]
    E = {t: ({world} if above[t] else set()) for t in universe.terms}
    return SubsetModel(config, ConstantSpecification.total(), (world,), (world,), universe, {world: V}, {world: E})


# ------------------------------------------------------------------- file I/O

_ENTRY = re.compile(r"^u(\d+)\s*:\s*(.+)$")
_TARGET = re.compile(r"^target\s*:\s*(.+)$", re.IGNORECASE)
_ASG = re.compile(r"^u(\d+)\s*=\s*\{(.*)\}\s*$")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_database(text: str) -> EvidenceDatabase:
    """``u<i> : <formula>`` lines and one ``target: <formula>`` line."""
    entries = []
    target = None
    for lineno, line in _lines(text):
        m = _TARGET.match(line)
        if m:
            if target is not None:
                raise ValueError(f"line {lineno}: second target line")
            target = parse_formula(m.group(1), Dialect.STAR)
            continue
        m = _ENTRY.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'u<i> : <formula>' or 'target: <formula>'")
        entries.append((int(m.group(1)), parse_formula(m.group(2), Dialect.STAR)))
    if target is None:
        raise ValueError("database has no target line")
    return EvidenceDatabase(tuple(entries), target)


def format_database(db: EvidenceDatabase) -> str:
    lines = [f"u{i} : {print_formula(f)}" for i, f in db.entries]
    lines.append(f"target: {print_formula(db.target)}")
    return "\n".join(lines) + "\n"


def parse_space(text: str) -> ProbabilitySpace:
    """``<outcome> <weight>`` lines; weights are fractions like ``1/4``."""
    outs, weights = [], []
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<outcome> <weight>'")
        try:
            w = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"line {lineno}: bad weight {parts[1]!r}") from None
        outs.append(parts[0])
        weights.append(w)
    return ProbabilitySpace(tuple(outs), tuple(weights))


def format_space(sp: ProbabilitySpace) -> str:
    return "".join(f"{o} {w}\n" for o, w in zip(sp.outcomes, sp.weights))


def parse_assignment(text: str, omega: Iterable[str]) -> EventAssignment:
    """``u<i> = {o1,o2,...}`` lines."""
    events = {}
    for lineno, line in _lines(text):
        m = _ASG.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'u<i> = {{o1,o2,...}}'")
        members = [p.strip() for p in m.group(2).split(",") if p.strip()]
        v = Variable(int(m.group(1)))
        if v in events:
            raise ValueError(f"line {lineno}: u{m.group(1)} assigned twice")
        events[v] = members
    return EventAssignment(omega, events)


def format_assignment(asg: EventAssignment, order: Iterable[str] | None = None) -> str:
    rank = {o: k for k, o in enumerate(order)} if order is not None else {}
    lines = []
    for g in sorted(asg.events, key=lambda t: (getattr(t, "index", -1), print_term(t))):
        members = sorted(asg.events[g], key=lambda o: (rank.get(o, len(rank)), o))
        lines.append(f"{print_term(g, 'u')} = {{{','.join(members)}}}")
    return "\n".join(lines) + ("\n" if lines else "")


__all__ = [
    "EvidenceDatabase",
    "EventAssignment",
    "LatticeNF",
    "ProbabilitySpace",
    "ValuationSpace",
    "aggregated_evidence",
    "event_of",
    "format_assignment",
    "format_database",
    "format_space",
    "is_sound_assignment",
    "lattice_equal",
    "lattice_leq",
    "meet_term",
    "normal_form",
    "parse_assignment",
    "parse_database",
    "parse_space",
    "probability_lower_bound",
    "prop_entails",
    "random_sound_assignment",
    "random_valuation_space",
    "single_world_model",
    "supporting_subsets",
    "term_geq_one",
]
