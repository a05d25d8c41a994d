"""Finite subset models.

A model has worlds ``W``, a nonempty set of normal worlds, a valuation ``V``
on a finite subformula-closed universe and an evidence function ``E`` that
sends each (world, term) pair to a set of worlds.  At normal worlds the
valuation must follow the logical clauses and ``E`` must satisfy the
conditions of the configured logic; non-normal worlds may carry any valuation
at all.  Every condition that would quantify over all formulas is read
relative to the universe.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterable, Mapping

from .axioms import (
    ConstantSpecification,
    LogicConfig,
    SchemeId,
    cs_contains,
    format_cs,
    parse_cs,
    parse_scheme_list,
)
from .generators import random_formula
from .lattice import lattice_leq, normal_form
from .proofs import an_formula
from .syntax import (
    CSTAR,
    ONE,
    ZERO,
    App,
    Atom,
    Bang,
    Bottom,
    Constant,
    Dialect,
    DialectError,
    Formula,
    FormulaUniverse,
    Implies,
    Justified,
    Sum,
    Term,
    Union,
    bang_depth,
    check_formula,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
    subformula_closure,
)

World = str

CONDITIONS: dict[str, str] = {
    "normal-nonempty": "W0 ≠ ∅",
    "v-bottom": "V(ω,⊥) = 0",
    "v-implies": "V(ω,A→B) = 1 iff V(ω,A) = 0 or V(ω,B) = 1",
    "v-justified": "V(ω,t:F) = 1 iff E(ω,t) ⊆ [F]",
    "sum": "E(ω,s+t) ⊆ E(ω,s) ∩ E(ω,t)",
    "cstar": "E(ω,c*) ⊆ W_MP",
    "jd": "jd: E(ω,t) ∩ W0 ≠ ∅",
    "jt": "jt: ω ∈ E(ω,t)",
    "j4": "j4: E(ω,!t) ⊆ {υ | V(ω,t:F) = 1 ⇒ V(υ,t:F) = 1}",
    "cs": "E(ω,c) ⊆ [A] for (c,A) ∈ CS",
    "cs-bang": "E(ω,!ⁿc) ⊆ [!ⁿ⁻¹c:…:c:A] for (c,A) ∈ CS",
    "app": "E(ω,s·t) ⊆ {υ | υ ∈ [F] for all F ∈ APP_ω(s,t)}",
    "pe-one": "E(ω,1) = W0",
    "pe-zero": "E(ω,0) = ∅",
    "pe-union": "E(ω,s∪t) = E(ω,s) ∪ E(ω,t)",
    "pe-monotone": "s ⪯ t ⇒ E(ω,s) ⊆ E(ω,t)",
}


@dataclass(frozen=True)
class Violation:
    """One failed model condition.

    ``term`` is the term whose evidence set is constrained (if any),
    ``formula`` the formula witness, ``offending`` the worlds that break it.
    """

    condition: str
    world: World | None
    term: Term | None = None
    formula: Formula | None = None
    offending: frozenset = frozenset()
    detail: str = ""

    @property
    def requirement(self) -> str:
        return CONDITIONS[self.condition]

    def __str__(self) -> str:
        parts = [f"[{self.condition}] {self.requirement}"]
        if self.world is not None:
            parts.append(f"fails at {self.world}")
        if self.term is not None:
            parts.append(f"term {print_term(self.term)}")
        if self.formula is not None:
            parts.append(f"formula {print_formula(self.formula)}")
        if self.offending:
            parts.append("offending {" + ",".join(sorted(self.offending)) + "}")
        if self.detail:
            parts.append(self.detail)
        return "; ".join(parts)

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "requirement": self.requirement,
            "world": self.world,
            "term": None if self.term is None else print_term(self.term),
            "formula": None if self.formula is None else print_formula(self.formula),
            "offending": sorted(self.offending),
            "detail": self.detail,
        }


class SubsetModel:
    """An immutable finite subset model over an explicit universe."""

    def __init__(
        self,
        config: LogicConfig,
        cs: ConstantSpecification,
        worlds: Iterable[World],
        normal: Iterable[World],
        universe: FormulaUniverse,
        V: Mapping[World, Mapping[Formula, bool]],
        E: Mapping[World, Mapping[Term, Iterable[World]]],
    ):
        self.config = config
        self.cs = cs
        self.worlds: tuple[World, ...] = tuple(worlds)
        if len(set(self.worlds)) != len(self.worlds):
            raise ValueError("duplicate world ids")
        wset = frozenset(self.worlds)
        self.normal = frozenset(normal)
        if not self.normal <= wset:
            raise ValueError(f"normal worlds {sorted(self.normal - wset)} are not worlds")
        if universe.dialect is not config.dialect:
            raise ValueError(f"universe is in the {universe.dialect.value} dialect, config in {config.dialect.value}")
        self.universe = universe
        self.V: dict[World, dict[Formula, bool]] = {}
        self.E: dict[World, dict[Term, frozenset]] = {}
        for w in self.worlds:
            row = V.get(w, {})
            missing = [f for f in universe.formulas if f not in row]
            if missing:
                raise ValueError(f"V is missing {print_formula(missing[0])} at world {w}")
            self.V[w] = {f: bool(row[f]) for f in universe.formulas}
            erow = E.get(w, {})
            self.E[w] = {}
            for t in universe.terms:
                if t not in erow:
                    raise ValueError(f"E is missing term {print_term(t)} at world {w}")
                s = frozenset(erow[t])
                if not s <= wset:
                    raise ValueError(f"E({w},{print_term(t)}) mentions unknown worlds {sorted(s - wset)}")
                self.E[w][t] = s
        self._truth: dict[Formula, frozenset] = {}

    def val(self, w: World, f: Formula) -> bool:
        return self.V[w][f]

    def ev(self, w: World, t: Term) -> frozenset:
        return self.E[w][t]

    def truth_set(self, f: Formula) -> frozenset:
        s = self._truth.get(f)
        if s is None:
            if f not in self.universe:
                raise ValueError(f"{print_formula(f)} is outside the model's universe")
            s = frozenset(w for w in self.worlds if self.V[w][f])
            self._truth[f] = s
        return s

    def _key(self):
        return (self.config, self.cs, self.worlds, self.normal, self.universe, self.V, self.E)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubsetModel) and self._key() == other._key()

    def __repr__(self) -> str:
        return (f"SubsetModel({self.config.describe()}, worlds={list(self.worlds)}, "
                f"normal={sorted(self.normal)}, {self.universe!r})")


@dataclass
class ModelSkeleton:
    """A model whose valuation at normal worlds is only given on atoms."""

    config: LogicConfig
    cs: ConstantSpecification
    worlds: tuple
    normal: frozenset
    universe: FormulaUniverse
    V: dict
    E: dict


def truth_set(m: SubsetModel, f: Formula) -> frozenset:
    return m.truth_set(f)


def eval_truth(m: SubsetModel, w: World, f: Formula) -> bool:
    if f not in m.universe:
        raise ValueError(f"{print_formula(f)} is outside the model's universe")
    if w not in m.V:
        raise ValueError(f"unknown world {w!r}")
    return m.V[w][f]


def mp_closed_worlds(m: SubsetModel) -> frozenset:
    """Worlds whose valuation is closed under modus ponens inside the universe."""
    imps = [f for f in m.universe.formulas if isinstance(f, Implies)]
    out = []
    for w in m.worlds:
        row = m.V[w]
        if all(not (row[f.antecedent] and row[f]) or row[f.consequent] for f in imps):
            out.append(w)
    return frozenset(out)


def app_set(m: SubsetModel, w: World, s: Term, t: Term) -> frozenset:
    """Formulas obtained at ``w`` by applying an s-justified implication to a t-justified antecedent.

    The antecedent ``H`` ranges over the universe only.
    """
    if m.config.dialect is not Dialect.APP:
        raise DialectError("app_set needs the app dialect")
    es, et = m.ev(w, s), m.ev(w, t)
    out = set()
    for f in m.universe.formulas:
        if isinstance(f, Implies) and es <= m.truth_set(f) and et <= m.truth_set(f.antecedent):
            out.add(f.consequent)
    return frozenset(out)


def complete_valuation(skel: ModelSkeleton | SubsetModel) -> SubsetModel:
    """Fill in ``V`` at normal worlds from atoms and ``E`` by the truth clauses.

    Non-normal rows are taken as given and must be total.
    """
    u = skel.universe
    worlds = tuple(skel.worlds)
    normal = frozenset(skel.normal)
    V: dict[World, dict[Formula, bool]] = {}
    for w in worlds:
        row = skel.V.get(w, {})
        if w in normal:
            missing = [f for f in u.formulas if isinstance(f, Atom) and f not in row]
            V[w] = {}
        else:
            missing = [f for f in u.formulas if f not in row]
            V[w] = {f: bool(row[f]) for f in u.formulas if f in row}
        if missing:
            kind = "atom" if w in normal else "formula"
            raise ValueError(f"skeleton lacks {kind} {print_formula(missing[0])} at world {w}")
    E = skel.E
    norm_list = [w for w in worlds if w in normal]
    truth: dict[Formula, frozenset] = {}
    for f in u.formulas:
        for w in norm_list:
            if isinstance(f, Atom):
                v = bool(skel.V[w][f])
            elif isinstance(f, Bottom):
                v = False
            elif isinstance(f, Implies):
                v = (not V[w][f.antecedent]) or V[w][f.consequent]
            else:
                v = frozenset(E[w][f.term]) <= truth[f.body]
            V[w][f] = v
        truth[f] = frozenset(w for w in worlds if V[w][f])
    return SubsetModel(skel.config, skel.cs, worlds, normal, u, V, E)


# ---------------------------------------------------------------- validation


@lru_cache(maxsize=256)
def _monotone_pairs(terms: tuple) -> tuple:
    return tuple((s, t) for s in terms for t in terms if s != t and lattice_leq(s, t))


def _cs_pairs(m: SubsetModel) -> list[tuple[Term, Formula, int]]:
    """(term, formula, depth) triples for the constant-specification conditions."""
    out = []
    for term in m.universe.terms:
        n, base = bang_depth(term)
        if not isinstance(base, Constant):
            continue
        for a in m.universe.formulas:
            if not cs_contains(m.cs, base.index, a, m.config):
                continue
            target = a if n == 0 else an_formula(n - 1, base, a)
            if target in m.universe:
                out.append((term, target, n))
    return out


def validate_model(m: SubsetModel) -> list[Violation]:
    """Every failed condition, world by world; empty when the model is valid."""
    out: list[Violation] = []
    if not m.normal:
        out.append(Violation("normal-nonempty", None))
    u = m.universe
    cfg = m.config
    beta = cfg.beta
    terms = u.terms
    W0 = m.normal
    wmp = mp_closed_worlds(m) if u.has_term(CSTAR) else frozenset()
    cs_pairs = _cs_pairs(m)
    justified_by: dict[Term, list[Formula]] = {}
    for f in u.formulas:
        if isinstance(f, Justified):
            justified_by.setdefault(f.term, []).append(f)
    mono = _monotone_pairs(terms) if cfg.pe_mode else ()

    for w in m.worlds:
        if w not in W0:
            continue
        row, E = m.V[w], m.E[w]
        for f in u.formulas:
            if isinstance(f, Bottom) and row[f]:
                out.append(Violation("v-bottom", w, formula=f))
            elif isinstance(f, Implies):
                if row[f] != ((not row[f.antecedent]) or row[f.consequent]):
                    out.append(Violation("v-implies", w, formula=f))
            elif isinstance(f, Justified):
                bad = E[f.term] - m.truth_set(f.body)
                if row[f] != (not bad):
                    out.append(Violation("v-justified", w, term=f.term, formula=f, offending=bad))
        for t in terms:
            e = E[t]
            if isinstance(t, Sum):
                bad = e - (E[t.left] & E[t.right])
                if bad:
                    out.append(Violation("sum", w, term=t, offending=bad))
            if isinstance(t, App):
                allowed = set(m.worlds)
                witnesses = sorted(app_set(m, w, t.left, t.right), key=lambda g: u.index(g))
                for g in witnesses:
                    allowed &= m.truth_set(g)
                bad = e - allowed
                if bad:
                    culprit = next(g for g in witnesses if bad - m.truth_set(g))
                    out.append(Violation("app", w, term=t, formula=culprit, offending=bad))
            if t == CSTAR:
                bad = e - wmp
                if bad:
                    out.append(Violation("cstar", w, term=t, offending=bad))
            if SchemeId.JD in beta and not (e & W0):
                out.append(Violation("jd", w, term=t))
            if SchemeId.JT in beta and w not in e:
                out.append(Violation("jt", w, term=t, offending=frozenset({w})))
            if SchemeId.J4 in beta and isinstance(t, Bang):
                inner = t.body
                held = [f for f in justified_by.get(inner, ()) if row[f]]
                bad = set()
                culprit = None
                for f in held:
                    miss = e - m.truth_set(f)
                    if miss and culprit is None:
                        culprit = f
                    bad |= miss
                if bad:
                    out.append(Violation("j4", w, term=t, formula=culprit, offending=frozenset(bad)))
            if cfg.pe_mode:
                if t == ONE and e != W0:
                    out.append(Violation("pe-one", w, term=t, offending=e ^ W0))
                if t == ZERO and e:
                    out.append(Violation("pe-zero", w, term=t, offending=e))
                if isinstance(t, Union) and e != E[t.left] | E[t.right]:
                    out.append(Violation("pe-union", w, term=t, offending=e ^ (E[t.left] | E[t.right])))
        for term, target, n in cs_pairs:
            bad = E[term] - m.truth_set(target)
            if bad:
                out.append(Violation("cs" if n == 0 else "cs-bang", w, term=term, formula=target, offending=bad))
        for s, t in mono:
            bad = E[s] - E[t]
            if bad:
                out.append(Violation("pe-monotone", w, term=s, offending=bad,
                                     detail=f"below {print_term(t)}"))
    return out


def is_valid_model(m: SubsetModel) -> bool:
    return not validate_model(m)


# ---------------------------------------------------------------- generation


@dataclass(frozen=True)
class ModelParams:
    """Size bounds and logic for :func:`random_model`."""

    config: LogicConfig = field(default_factory=LogicConfig)
    cs: ConstantSpecification = field(default_factory=ConstantSpecification.total)
    max_worlds: int = 4
    n_atoms: int = 3
    term_depth: int = 1
    formula_depth: int = 2
    n_formulas: int = 4
    seeds: tuple = ()
    max_attempts: int = 50

    def __post_init__(self):
        if not 1 <= self.max_worlds <= 8:
            raise ValueError("max_worlds must be between 1 and 8")
        if not 1 <= self.n_atoms <= 4:
            raise ValueError("n_atoms must be between 1 and 4")
        if not 0 <= self.term_depth <= 2:
            raise ValueError("term_depth must be between 0 and 2")
        if not 0 <= self.formula_depth <= 3:
            raise ValueError("formula_depth must be between 0 and 3")
        if self.config.pe_mode and self.config.beta & {SchemeId.JD, SchemeId.JT}:
            raise ValueError("evidence-mode models cannot meet jd or jt once 0 is in scope")
        object.__setattr__(self, "seeds", tuple(self.seeds))


class RepairError(RuntimeError):
    """No valid model found within the attempt budget."""


def _random_universe(rng: random.Random, p: ModelParams) -> FormulaUniverse:
    d = p.config.dialect
    fs = [check_formula(f, d) for f in p.seeds]
    for _ in range(p.n_formulas):
        fs.append(random_formula(rng, d, p.formula_depth, p.n_atoms, p.term_depth))
    return subformula_closure(fs, d)


def _lift(nf_cache: dict, gens: dict[Term, set], t: Term) -> set:
    nf = nf_cache[t]
    out: set = set()
    for meet in nf.meets:
        out |= reduce(set.intersection, (gens[g] for g in meet))
    return out


def _attempt(rng: random.Random, p: ModelParams, u: FormulaUniverse) -> SubsetModel | None:
    cfg = p.config
    n = rng.randint(1, p.max_worlds)
    worlds = tuple(f"w{i}" for i in range(n))
    normal = {w for w in worlds if rng.random() < 0.6} or {rng.choice(worlds)}
    normal = frozenset(normal)
    norm_list = [w for w in worlds if w in normal]
    density = rng.uniform(0.2, 0.8)

    V: dict[World, dict[Formula, bool]] = {}
    for w in worlds:
        if w in normal:
            V[w] = {f: rng.random() < 0.5 for f in u.formulas if isinstance(f, Atom)}
        else:
            V[w] = {f: rng.random() < 0.5 for f in u.formulas}

    def sample() -> set:
        return {v for v in worlds if rng.random() < density}

    protected: dict[tuple[World, Term], set] = {}
    if cfg.pe_mode:
        nf_cache = {t: normal_form(t) for t in u.terms}
        generators = sorted({g for t in u.terms for m in nf_cache[t].meets for g in m}, key=print_term)
        G = {w: {g: (set(normal) if g == ONE else sample()) for g in generators} for w in worlds}
        E = None
    else:
        E = {w: {t: sample() for t in u.terms} for w in worlds}
        for w in norm_list:
            for t in u.terms:
                keep = set()
                if SchemeId.JT in cfg.beta:
                    keep.add(w)
                if SchemeId.JD in cfg.beta and SchemeId.JT not in cfg.beta:
                    keep.add(rng.choice(norm_list))
                if keep:
                    E[w][t] |= keep
                    protected[(w, t)] = keep

    for _ in range(500):
        if cfg.pe_mode:
            E = {w: {t: _lift(nf_cache, G[w], t) for t in u.terms} for w in worlds}
        m = complete_valuation(ModelSkeleton(cfg, p.cs, worlds, normal, u, V, E))
        viols = validate_model(m)
        if not viols:
            return m
        for v in viols:
            if v.term is None or not v.offending or v.condition in ("pe-one", "pe-zero", "pe-union", "jt"):
                return None
            if cfg.pe_mode:
                for bad in sorted(v.offending):
                    for meet in nf_cache[v.term].meets:
                        if all(bad in G[v.world][g] for g in meet):
                            shrinkable = sorted((g for g in meet if g != ONE), key=print_term)
                            if not shrinkable:
                                return None
                            G[v.world][rng.choice(shrinkable)].discard(bad)
            else:
                if v.offending & protected.get((v.world, v.term), set()):
                    return None
                E[v.world][v.term] -= v.offending
    return None


def random_model(seed: int, params: ModelParams | None = None) -> SubsetModel:
    """A validated model, deterministic in ``seed``.

    Evidence sets are sampled, the valuation is completed on normal worlds,
    and evidence sets are shrunk until every condition holds.  Attempts that
    get stuck are resampled.
    """
    p = params or ModelParams()
    rng = random.Random(seed)
    u = _random_universe(rng, p)
    for _ in range(p.max_attempts):
        m = _attempt(rng, p, u)
        if m is not None:
            return m
    raise RepairError(f"no valid model for seed {seed} after {p.max_attempts} attempts")


# ---------------------------------------------------------------- model files


def model_to_dict(m: SubsetModel) -> dict:
    cfg = m.config
    return {
        "dialect": cfg.dialect.value,
        "beta": [s.value for s in SchemeId if s in cfg.beta],
        "pe_mode": cfg.pe_mode,
        "cs": "total" if m.cs == ConstantSpecification.total() else format_cs(m.cs),
        "worlds": list(m.worlds),
        "normal": [w for w in m.worlds if w in m.normal],
        "universe": [print_formula(f) for f in m.universe.formulas],
        "V": {w: {print_formula(f): int(m.V[w][f]) for f in m.universe.formulas} for w in m.worlds},
        "E": {
            w: {print_term(t): [v for v in m.worlds if v in m.E[w][t]] for t in m.universe.terms}
            for w in m.worlds
        },
    }


def dump_model(m: SubsetModel) -> str:
    return json.dumps(model_to_dict(m), indent=2, ensure_ascii=False) + "\n"


def model_from_dict(data: dict) -> SubsetModel:
    try:
        dialect = Dialect.from_name(data["dialect"])
        beta = data.get("beta", [])
        if isinstance(beta, str):
            beta = parse_scheme_list(beta)
        cfg = LogicConfig(dialect, frozenset(SchemeId.from_name(b) for b in beta), bool(data.get("pe_mode", False)))
        cs_text = data.get("cs", "total")
        cs = ConstantSpecification.total() if cs_text.strip() == "total" else parse_cs(cs_text, cfg)
        worlds = [str(w) for w in data["worlds"]]
        normal = [str(w) for w in data["normal"]]
        formulas = {s: parse_formula(s, dialect) for s in data["universe"]}
        u = FormulaUniverse(formulas.values(), dialect)
        V = {}
        for w, row in data["V"].items():
            V[str(w)] = {formulas[s] if s in formulas else parse_formula(s, dialect): bool(b) for s, b in row.items()}
        E = {}
        for w, row in data["E"].items():
            E[str(w)] = {parse_term(s, dialect): [str(v) for v in ids] for s, ids in row.items()}
    except KeyError as exc:
        raise ValueError(f"model file lacks field {exc.args[0]!r}") from None
    return SubsetModel(cfg, cs, worlds, normal, u, V, E)


def load_model(text: str) -> SubsetModel:
    return model_from_dict(json.loads(text))


__all__ = [
    "CONDITIONS",
    "ModelParams",
    "ModelSkeleton",
    "RepairError",
    "SubsetModel",
    "Violation",
    "app_set",
    "complete_valuation",
    "dump_model",
    "eval_truth",
    "is_valid_model",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "mp_closed_worlds",
    "random_model",
    "truth_set",
    "validate_model",
]
