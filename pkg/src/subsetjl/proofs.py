"""Hilbert-style derivations and their checker.

A derivation is a list of steps, each a formula plus the reason it may be
written down: an axiom instance, modus ponens on two earlier steps, axiom
necessitation from the constant specification, or a classical-reasoning
step that follows tautologically from earlier steps when every ``t:F`` is
read as an opaque atom.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union as _U

from .axioms import ConstantSpecification, LogicConfig, SchemeId, cs_contains, instantiate, match_scheme
from .syntax import (
    CSTAR,
    Constant,
    Dialect,
    DialectError,
    Formula,
    Implies,
    Justified,
    Sum,
    Term,
    bangs,
    check_term,
    formula_in_dialect,
    parse_formula,
    print_formula,
)
from .truthtable import DEFAULT_MAX_ATOMS, ResourceLimitError, taut_entails


@dataclass(frozen=True)
class AxiomInstance:
    scheme: SchemeId


@dataclass(frozen=True)
class ModusPonens:
    premise: int
    implication: int


@dataclass(frozen=True)
class AxiomNecessitation:
    n: int
    c: int
    a: Formula


@dataclass(frozen=True)
class ClassicalReasoning:
    premises: tuple[int, ...] = ()


StepJust = _U[AxiomInstance, ModusPonens, AxiomNecessitation, ClassicalReasoning]


@dataclass(frozen=True)
class Step:
    formula: Formula
    just: StepJust

    @property
    def label(self) -> str:
        j = self.just
        if isinstance(j, AxiomInstance):
            return j.scheme.label
        if isinstance(j, ModusPonens):
            return "MP"
        if isinstance(j, AxiomNecessitation):
            return "AN!"
        return "CR"


@dataclass(frozen=True)
class Derivation:
    steps: tuple[Step, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __getitem__(self, i: int) -> Step:
        return self.steps[i]

    @property
    def conclusion(self) -> Formula:
        if not self.steps:
            raise ValueError("empty derivation has no conclusion")
        return self.steps[-1].formula

    def labels(self) -> list[str]:
        return [s.label for s in self.steps]


def an_formula(n: int, c: int | Constant, a: Formula) -> Formula:
    """``!^n c : !^(n-1) c : ... : !c : c : a``; ``n = 0`` gives ``c : a``."""
    if n < 0:
        raise ValueError("bang depth must be non-negative")
    const = c if isinstance(c, Constant) else Constant(c)
    f = Justified(const, a)
    for k in range(1, n + 1):
        f = Justified(bangs(k, const), f)
    return f


class DerivationBuilder:
    """Append steps and get back their indices."""

    def __init__(self, dialect: Dialect = Dialect.STAR):
        self.dialect = dialect
        self.steps: list[Step] = []

    def _add(self, formula: Formula, just: StepJust) -> int:
        self.steps.append(Step(formula, just))
        return len(self.steps) - 1

    def formula(self, i: int) -> Formula:
        return self.steps[i].formula

    def axiom(self, scheme: SchemeId | str, **parts) -> int:
        scheme = SchemeId.from_name(scheme)
        return self._add(instantiate(scheme, self.dialect, **parts), AxiomInstance(scheme))

    def axiom_formula(self, f: Formula, scheme: SchemeId | str) -> int:
        return self._add(f, AxiomInstance(SchemeId.from_name(scheme)))

    def mp(self, premise: int, implication: int) -> int:
        imp = self.steps[implication].formula
        if not isinstance(imp, Implies):
            raise ValueError(f"step index {implication} is not an implication")
        return self._add(imp.consequent, ModusPonens(premise, implication))

    def an(self, n: int, c: int, a: Formula) -> int:
        return self._add(an_formula(n, c, a), AxiomNecessitation(n, c, a))

    def cr(self, formula: Formula, *premises: int) -> int:
        return self._add(formula, ClassicalReasoning(tuple(premises)))

    def include(self, d: Derivation) -> int:
        """Append ``d`` with references shifted; returns the index of its conclusion."""
        off = len(self.steps)
        for step in d.steps:
            j = step.just
            if isinstance(j, ModusPonens):
                j = ModusPonens(j.premise + off, j.implication + off)
            elif isinstance(j, ClassicalReasoning):
                j = ClassicalReasoning(tuple(i + off for i in j.premises))
            self.steps.append(Step(step.formula, j))
        return len(self.steps) - 1

    def build(self) -> Derivation:
        return Derivation(tuple(self.steps))


# ------------------------------------------------------------------- checker


@dataclass(frozen=True)
class StepReport:
    index: int
    ok: bool
    reason: str = ""


@dataclass
class Verdict:
    accepted: bool
    reports: list[StepReport] = field(default_factory=list)
    resource_error: bool = False

    def __bool__(self) -> bool:
        return self.accepted

    @property
    def failures(self) -> list[StepReport]:
        return [r for r in self.reports if not r.ok]

    @property
    def first_failure(self) -> StepReport | None:
        fails = self.failures
        return fails[0] if fails else None

    def summary(self) -> str:
        if self.accepted:
            return f"accepted ({len(self.reports)} steps)"
        first = self.first_failure
        if first is None:
            return "rejected: empty derivation"
        return f"rejected at step {first.index + 1}: {first.reason}"


def _check_step(
    k: int, d: Derivation, config: LogicConfig, cs: ConstantSpecification, max_atoms: int
) -> tuple[bool, str, bool]:
    step = d.steps[k]
    f, j = step.formula, step.just
    if not formula_in_dialect(f, config.dialect):
        return False, f"formula leaves the {config.dialect.value} dialect", False

    def earlier(i: int) -> bool:
        return isinstance(i, int) and 0 <= i < k

    if isinstance(j, AxiomInstance):
        if not config.is_active(j.scheme):
            return False, f"scheme {j.scheme.value} is not active in {config.describe()}", False
        if match_scheme(f, j.scheme, config) is None:
            return False, f"not an instance of {j.scheme.value}", False
        return True, "", False
    if isinstance(j, ModusPonens):
        if not (earlier(j.premise) and earlier(j.implication)):
            return False, f"MP refers to steps {j.premise + 1}, {j.implication + 1}; only 1..{k} are available", False
        needed = Implies(d.steps[j.premise].formula, f)
        if d.steps[j.implication].formula != needed:
            return False, f"step {j.implication + 1} is not the implication {print_formula(needed)}", False
        return True, "", False
    if isinstance(j, AxiomNecessitation):
        if j.n < 0:
            return False, "negative bang depth", False
        if not cs_contains(cs, j.c, j.a, config):
            return False, f"(c{j.c}, {print_formula(j.a)}) is not in the constant specification", False
        if f != an_formula(j.n, j.c, j.a):
            return False, f"formula is not the AN! conclusion for depth {j.n}", False
        return True, "", False
    if isinstance(j, ClassicalReasoning):
        bad = [i for i in j.premises if not earlier(i)]
        if bad:
            return False, f"CR refers to unavailable step {bad[0] + 1}", False
        try:
            ok = taut_entails([d.steps[i].formula for i in j.premises], f, max_atoms)
        except ResourceLimitError as exc:
            return False, f"resource limit: {exc}", True
        if not ok:
            return False, "not a tautological consequence of the cited steps", False
        return True, "", False
    return False, f"unknown justification {j!r}", False


def check_derivation(
    d: Derivation,
    config: LogicConfig,
    cs: ConstantSpecification,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> Verdict:
    """Check every step; the verdict lists a report per step."""
    reports = []
    resource = False
    for k in range(len(d.steps)):
        ok, reason, res = _check_step(k, d, config, cs, max_atoms)
        resource |= res
        reports.append(StepReport(k, ok, reason))
    accepted = bool(reports) and all(r.ok for r in reports)
    return Verdict(accepted, reports, resource)


# ------------------------------------------------------- stock derivation


def builtin_j_derivation(s: Term, t: Term, a: Formula, b: Formula) -> Derivation:
    """Derive ``s:(a->b) -> (t:a -> (s+t+cstar):b)`` in eight steps.

    Labels: j+, j+, CR, j+, j+, CR, jc*, CR.
    """
    for u in (s, t):
        try:
            check_term(u, Dialect.STAR)
        except DialectError as exc:
            raise DialectError(f"defined application needs star-dialect terms: {exc.message}") from None
    ab = Implies(a, b)
    st = Sum(s, t)
    app = Sum(st, CSTAR)
    bld = DerivationBuilder(Dialect.STAR)
    i0 = bld.axiom(SchemeId.JPlus, s=s, t=t, A=ab)
    i1 = bld.axiom(SchemeId.JPlus, s=st, t=CSTAR, A=ab)
    i2 = bld.cr(Implies(Justified(s, ab), Justified(app, ab)), i0, i1)
    i3 = bld.axiom(SchemeId.JPlus, s=s, t=t, A=a)
    i4 = bld.axiom(SchemeId.JPlus, s=st, t=CSTAR, A=a)
    i5 = bld.cr(Implies(Justified(t, a), Justified(app, a)), i3, i4)
    i6 = bld.axiom(SchemeId.JCStar, c=app, A=a, B=b)
    bld.cr(Implies(Justified(s, ab), Implies(Justified(t, a), Justified(app, b))), i2, i5, i6)
    return bld.build()


# --------------------------------------------------------- derivation files

_LINE = re.compile(r"^(\d+)\.\s*(.*?)\s*;\s*([A-Za-z]+)\((.*)\)\s*$")
_AN_ARGS = re.compile(r"^\s*(\d+)\s*,\s*c(\d+)\s*,\s*(.+?)\s*$")


def format_just(j: StepJust) -> str:
    if isinstance(j, AxiomInstance):
        return f"AX({j.scheme.value})"
    if isinstance(j, ModusPonens):
        return f"MP({j.premise + 1},{j.implication + 1})"
    if isinstance(j, AxiomNecessitation):
        return f"AN({j.n},c{j.c},{print_formula(j.a)})"
    return "CR(" + ",".join(str(i + 1) for i in j.premises) + ")"


def format_derivation(d: Derivation) -> str:
    """One numbered line per step; step numbers and references start at 1."""
    return "".join(
        f"{k}. {print_formula(step.formula)} ; {format_just(step.just)}\n"
        for k, step in enumerate(d.steps, 1)
    )


def _refs(text: str, lineno: int) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        return tuple(int(p) - 1 for p in parts)
    except ValueError:
        raise ValueError(f"line {lineno}: step references must be numbers, got {text!r}") from None


def parse_derivation(text: str, dialect: Dialect | str = Dialect.STAR) -> Derivation:
    dialect = Dialect.from_name(dialect)
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _LINE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'k. <formula> ; RULE(...)', got {raw!r}")
        number, ftext, rule, args = m.groups()
        if int(number) != len(steps) + 1:
            raise ValueError(f"line {lineno}: step numbered {number}, expected {len(steps) + 1}")
        formula = parse_formula(ftext, dialect)
        rule = rule.upper()
        if rule == "AX":
            just: StepJust = AxiomInstance(SchemeId.from_name(args))
        elif rule == "MP":
            refs = _refs(args, lineno)
            if len(refs) != 2:
                raise ValueError(f"line {lineno}: MP takes two step numbers")
            just = ModusPonens(*refs)
        elif rule == "AN":
            am = _AN_ARGS.match(args)
            if not am:
                raise ValueError(f"line {lineno}: expected AN(n,c<m>,<formula>)")
            just = AxiomNecessitation(int(am.group(1)), int(am.group(2)), parse_formula(am.group(3), dialect))
        elif rule == "CR":
            just = ClassicalReasoning(_refs(args, lineno))
        else:
            raise ValueError(f"line {lineno}: unknown rule {rule!r}")
        steps.append(Step(formula, just))
    return Derivation(tuple(steps))


__all__ = [
    "AxiomInstance",
    "AxiomNecessitation",
    "ClassicalReasoning",
    "Derivation",
    "DerivationBuilder",
    "ModusPonens",
    "Step",
    "StepJust",
    "StepReport",
    "Verdict",
    "an_formula",
    "builtin_j_derivation",
    "check_derivation",
    "format_derivation",
    "parse_derivation",
    "taut_entails",
]
