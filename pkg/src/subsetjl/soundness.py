"""Seeded soundness fuzzing: accepted derivations must hold in validated models."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from .axioms import ConstantSpecification, LogicConfig, SchemeId
from .generators import random_prop_formula, random_term
from .library import library_for
from .models import ModelParams, SubsetModel, random_model
from .proofs import Derivation, DerivationBuilder, check_derivation
from .syntax import (
    CSTAR,
    Dialect,
    Formula,
    Implies,
    Justified,
    Sum,
    Term,
    Union,
    print_formula,
)


@dataclass(frozen=True)
class Counterexample:
    seed: int
    source: str
    world: str
    formula: Formula

    def to_dict(self) -> dict:
        return {"seed": self.seed, "source": self.source, "world": self.world,
                "formula": print_formula(self.formula)}


@dataclass
class FuzzReport:
    models: int = 0
    checks: int = 0
    derivations: int = 0
    lemma_checks: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    rejected: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.rejected

    def to_dict(self) -> dict:
        return {
            "models": self.models,
            "derivations": self.derivations,
            "checks": self.checks,
            "lemma_checks": self.lemma_checks,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "rejected": list(self.rejected),
        }


def _params(rng: random.Random, dialect: Dialect) -> tuple[Term, Term, Formula, Formula, int]:
    s = random_term(rng, dialect, 1)
    t = random_term(rng, dialect, 1)
    a = random_prop_formula(rng, 1)
    b = random_prop_formula(rng, 1)
    return s, t, a, b, rng.randrange(3)


def _single(scheme: SchemeId, dialect: Dialect, **parts) -> Derivation:
    d = DerivationBuilder(dialect)
    d.axiom(scheme, **parts)
    return d.build()


def _app_derivations(rng: random.Random, config: LogicConfig) -> list[tuple[str, Derivation]]:
    out = []
    for k in range(4):
        s, t, a, b, _ = _params(rng, Dialect.APP)
        out.append((f"j#{k}", _single(SchemeId.J, Dialect.APP, s=s, t=t, A=a, B=b)))
    s, t, a, b, _ = _params(rng, Dialect.APP)
    out.append(("jplus", _single(SchemeId.JPlus, Dialect.APP, s=s, t=t, A=a)))
    for scheme in sorted(config.beta, key=lambda x: x.value):
        parts = {"t": s} if scheme is SchemeId.JD else {"t": s, "A": a}
        out.append((scheme.value, _single(scheme, Dialect.APP, **parts)))
    return out


def _prob_derivations(rng: random.Random, config: LogicConfig) -> list[tuple[str, Derivation]]:
    P = Dialect.PROB
    s, t, a, b, _ = _params(rng, P)
    r = random_term(rng, P, 1)
    out = [
        ("j", _single(SchemeId.J, P, s=s, t=t, A=a, B=b)),
        ("jplus", _single(SchemeId.JPlus, P, s=s, t=t, A=a)),
        ("jcstar", _single(SchemeId.JCStar, P, c=Sum(s, CSTAR), A=a, B=b)),
        ("pe-union", _single(SchemeId.PE_UnionIntro, P, s=s, t=t, A=a)),
        ("pe-one", _single(SchemeId.PE_One, P, A=Implies(a, Implies(b, a)))),
        ("pe-zero", _single(SchemeId.PE_Zero, P, A=b)),
        ("pe-monotone-meet", _single(SchemeId.PE_Monotone, P, s=Sum(t, r), t=t, X=a)),
        ("pe-monotone-join", _single(SchemeId.PE_Monotone, P, s=s, t=Union(r, s), X=b)),
    ]
    if SchemeId.J4 in config.beta:
        out.append(("J4", _single(SchemeId.J4, P, t=s, A=a)))
    return out


def _star_derivations(rng: random.Random, config: LogicConfig) -> list[tuple[str, Derivation]]:
    s, t, a, b, c = _params(rng, Dialect.STAR)
    return [(e.name, e.build(s, t, a, b, c)) for e in library_for(config.beta)]


def derivations_for(seed: int, config: LogicConfig) -> list[tuple[str, Derivation]]:
    """The named derivations instantiated for ``seed``."""
    rng = random.Random(seed ^ 0x5EED)
    if config.dialect is Dialect.APP:
        return _app_derivations(rng, config)
    if config.dialect is Dialect.PROB:
        return _prob_derivations(rng, config)
    return _star_derivations(rng, config)


def application_lemma_failures(m: SubsetModel) -> list[tuple[str, Formula, Formula, Formula]]:
    """Normal worlds where ``s:(A->B)`` and ``t:A`` hold but ``(s+t+c*):B`` fails."""
    u = m.universe
    by_term: dict[Term, list[Formula]] = {}
    for f in u.formulas:
        if isinstance(f, Justified):
            by_term.setdefault(f.term, []).append(f)
    bad = []
    for f in u.formulas:
        if not isinstance(f, Justified):
            continue
        app = f.term
        if not (isinstance(app, Sum) and app.right == CSTAR and isinstance(app.left, Sum)):
            continue
        s, t = app.left.left, app.left.right
        b = f.body
        for left in by_term.get(s, ()):
            imp = left.body
            if not (isinstance(imp, Implies) and imp.consequent == b):
                continue
            right = Justified(t, imp.antecedent)
            if right not in u:
                continue
            for w in sorted(m.normal):
                if m.val(w, left) and m.val(w, right) and not m.val(w, f):
                    bad.append((w, left, right, f))
    return bad


def count_application_instances(m: SubsetModel) -> int:
    """How many (s, t, A, B) instances :func:`application_lemma_failures` inspects."""
    n = 0
    u = m.universe
    for f in u.formulas:
        if isinstance(f, Justified) and isinstance(f.term, Sum) and f.term.right == CSTAR \
                and isinstance(f.term.left, Sum):
            s, t = f.term.left.left, f.term.left.right
            for g in u.formulas:
                if isinstance(g, Justified) and g.term == s and isinstance(g.body, Implies) \
                        and g.body.consequent == f.body and Justified(t, g.body.antecedent) in u:
                    n += 1
    return n


def fuzz_soundness(
    seeds: Iterable[int],
    config: LogicConfig,
    cs: ConstantSpecification | None = None,
    max_worlds: int = 5,
    n_atoms: int = 3,
    formula_depth: int = 3,
    n_formulas: int = 3,
    check_lemma: bool = True,
) -> FuzzReport:
    """Build a validated model per seed around freshly instantiated derivations.

    Every derivation is checked first; each accepted conclusion (and every
    step that lies in the universe) must hold at every normal world.
    """
    cs = cs or ConstantSpecification.total()
    report = FuzzReport()
    for seed in seeds:
        named = derivations_for(seed, config)
        accepted = []
        for name, d in named:
            v = check_derivation(d, config, cs)
            if v:
                accepted.append((name, d))
            else:
                report.rejected.append(f"seed {seed} {name}: {v.summary()}")
        params = ModelParams(
            config=config,
            cs=cs,
            max_worlds=max_worlds,
            n_atoms=n_atoms,
            formula_depth=formula_depth,
            n_formulas=n_formulas,
            seeds=tuple(d.conclusion for _, d in accepted),
        )
        m = random_model(seed, params)
        report.models += 1
        report.derivations += len(accepted)
        normal = sorted(m.normal)
        for name, d in accepted:
            for k, step in enumerate(d.steps):
                f = step.formula
                if f not in m.universe:
                    continue
                for w in normal:
                    report.checks += 1
                    if not m.val(w, f):
                        tag = name if k == len(d) - 1 else f"{name} step {k + 1}"
                        report.counterexamples.append(Counterexample(seed, tag, w, f))
        if check_lemma and config.dialect is not Dialect.APP:
            report.lemma_checks += count_application_instances(m) * len(normal)
            for w, _, _, f in application_lemma_failures(m):
                report.counterexamples.append(Counterexample(seed, "application lemma", w, f))
    return report


__all__ = [
    "Counterexample",
    "FuzzReport",
    "application_lemma_failures",
    "count_application_instances",
    "derivations_for",
    "fuzz_soundness",
]
