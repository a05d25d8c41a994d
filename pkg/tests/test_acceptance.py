"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from functools import reduce

import pytest

from subsetjl.axioms import ConstantSpecification, LogicConfig, SchemeId, instantiate
from subsetjl.evidence import (
    EvidenceDatabase,
    aggregated_evidence,
    event_of,
    is_sound_assignment,
    meet_term,
    probability_lower_bound,
    random_sound_assignment,
    random_valuation_space,
    single_world_model,
    supporting_subsets,
)
from subsetjl.generators import random_formula, random_prop_formula, random_term
from subsetjl.lattice import lattice_leq
from subsetjl.library import LIBRARY
from subsetjl.models import ModelParams, dump_model, load_model, random_model, validate_model
from subsetjl.proofs import builtin_j_derivation, check_derivation, format_derivation, parse_derivation
from subsetjl.soundness import fuzz_soundness
from subsetjl.syntax import (
    BOTTOM,
    CSTAR,
    ONE,
    ZERO,
    Atom,
    Bang,
    Bottom,
    Constant,
    Dialect,
    Implies,
    Justified,
    Sum,
    Union,
    Variable,
    forget_translation,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
    subformula_closure,
)

RESULTS: list[str] = []
TOTAL = ConstantSpecification.total()
BETA_SUBSETS = [",".join(c) for k in range(4) for c in itertools.combinations(["jt", "jd", "j4"], k)]
x1, x2, c1 = Variable(1), Variable(2), Constant(1)
p0, p1 = Atom(0), Atom(1)


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] C{number} {title}: {detail}"
    RESULTS.append(line)
    print(line)


# ------------------------------------------------------------- oracles


def prop_value(f, true_atoms) -> bool:
    if isinstance(f, Atom):
        return f.index in true_atoms
    if isinstance(f, Bottom):
        return False
    return (not prop_value(f.antecedent, true_atoms)) or prop_value(f.consequent, true_atoms)


def atom_indices(f, acc=None) -> set:
    acc = set() if acc is None else acc
    if isinstance(f, Atom):
        acc.add(f.index)
    elif isinstance(f, Implies):
        atom_indices(f.antecedent, acc)
        atom_indices(f.consequent, acc)
    return acc


def rows(indices):
    idx = sorted(indices)
    for bits in itertools.product([False, True], repeat=len(idx)):
        yield {i for i, b in zip(idx, bits) if b}


def oracle_tautology(f) -> bool:
    return all(prop_value(f, r) for r in rows(atom_indices(f)))


def oracle_entails(premises, target) -> bool:
    idx = set().union(atom_indices(target), *(atom_indices(p) for p in premises))
    return all(prop_value(target, r) for r in rows(idx) if all(prop_value(p, r) for p in premises))


def lattice_eval(t, on) -> bool:
    if t == ZERO:
        return False
    if isinstance(t, Sum):
        return lattice_eval(t.left, on) and lattice_eval(t.right, on)
    if isinstance(t, Union):
        return lattice_eval(t.left, on) or lattice_eval(t.right, on)
    return t in on


# ------------------------------------------------------------- criteria


def criterion_1():
    start = time.perf_counter()
    d = builtin_j_derivation(x1, x2, p0, p1)
    verdict = check_derivation(d, LogicConfig.parse("star", "jt,jd,j4"), TOTAL)
    elapsed = time.perf_counter() - start
    labels = d.labels()
    ok = len(d) == 8 and bool(verdict) and labels == ["j+", "j+", "CR", "j+", "j+", "CR", "jc*", "CR"] \
        and elapsed < 1.0
    return ok, f"{len(d)} steps, {'accepted' if verdict else 'rejected'}, labels {' '.join(labels)}, {elapsed:.3f}s"


_STAR_RUN: dict = {}


def star_corpus():
    """Criterion 2 corpus, shared with criterion 3: seed k uses beta subset k mod 8."""
    if not _STAR_RUN:
        start = time.perf_counter()
        reports = []
        for i, beta in enumerate(BETA_SUBSETS):
            seeds = range(i, 500, len(BETA_SUBSETS))
            cfg = LogicConfig.parse("star", beta)
            reports.append(fuzz_soundness(seeds, cfg, TOTAL, max_worlds=5, n_atoms=3, formula_depth=3))
        _STAR_RUN.update(reports=reports, elapsed=time.perf_counter() - start)
    return _STAR_RUN


def criterion_2():
    run = star_corpus()
    reps = run["reports"]
    models = sum(r.models for r in reps)
    derivs = sum(r.derivations for r in reps)
    checks = sum(r.checks for r in reps)
    bad = [c for r in reps for c in r.counterexamples if c.source != "application lemma"]
    rejected = sum(len(r.rejected) for r in reps)
    ok = models == 500 and not bad and not rejected and len(LIBRARY) >= 20 and run["elapsed"] < 60
    return ok, (f"{models} models, {derivs} derivations, {checks} checks, {len(bad)} counterexamples, "
                f"{rejected} rejected, {run['elapsed']:.1f}s")


def criterion_3():
    reps = star_corpus()["reports"]
    inspected = sum(r.lemma_checks for r in reps)
    bad = [c for r in reps for c in r.counterexamples if c.source == "application lemma"]
    ok = inspected > 0 and not bad
    return ok, f"{inspected} instance-world checks, {len(bad)} counterexamples"


def criterion_4():
    start = time.perf_counter()
    reports = []
    for i, beta in enumerate(BETA_SUBSETS):
        cfg = LogicConfig.parse("app", beta)
        reports.append(fuzz_soundness(range(i, 300, len(BETA_SUBSETS)), cfg, TOTAL, max_worlds=5, formula_depth=3))
    elapsed = time.perf_counter() - start
    models = sum(r.models for r in reports)
    checks = sum(r.checks for r in reports)
    bad = sum(len(r.counterexamples) + len(r.rejected) for r in reports)
    ok = models == 300 and bad == 0 and checks > 0 and elapsed < 60
    return ok, f"{models} models, {checks} checks, {bad} counterexamples, {elapsed:.1f}s"


def _scheme_parts(rng, scheme, dialect):
    s, t = random_term(rng, dialect, 2), random_term(rng, dialect, 2)
    if dialect is Dialect.PROB:
        a, b, c = (random_prop_formula(rng, 2) for _ in range(3))
    else:
        a, b, c = (random_formula(rng, dialect, 2) for _ in range(3))
    if scheme is SchemeId.JCStar:
        return {"c": rng.choice([CSTAR, Sum(s, CSTAR), Sum(CSTAR, t)]), "A": a, "B": b}
    if scheme is SchemeId.PE_One:
        return {"A": Implies(a, Implies(b, a))}
    if scheme is SchemeId.PE_Monotone:
        return rng.choice([{"s": Sum(t, s), "t": t, "X": a}, {"s": s, "t": Union(s, t), "X": a}])
    return {"A": a, "B": b, "C": c, "s": s, "t": t, "X": a}


def _conservativity(config, seed):
    rng = random.Random(seed)
    per_scheme = {}
    for scheme in config.active_schemes():
        fails = 0
        for _ in range(200):
            f = instantiate(scheme, config.dialect, **_scheme_parts(rng, scheme, config.dialect))
            fails += not oracle_tautology(forget_translation(f))
        per_scheme[scheme] = fails
    return per_scheme


def criterion_5():
    configs = [
        LogicConfig.parse("star", "jt,jd,j4"),
        LogicConfig.parse("app", "jt,jd,j4"),
        LogicConfig.parse("prob", "jt,jd,j4", pe_mode=False),
    ]
    total = failures = 0
    for k, cfg in enumerate(configs):
        res = _conservativity(cfg, 50 + k)
        total += 200 * len(res)
        failures += sum(res.values())
    evidence = _conservativity(LogicConfig.parse("prob", "j4"), 99)
    pe = {s.value: n for s, n in evidence.items() if s.value.startswith("PE_")}
    note = ", ".join(f"{name} {n}/200 non-tautologous" for name, n in sorted(pe.items()))
    return failures == 0, f"{total} instances, {failures} failures; evidence postulates (not covered): {note}"


def criterion_6():
    base = [x1, x2, c1, CSTAR, ZERO, ONE, Bang(x1), Bang(ONE)]
    bodies = [p0, p1, BOTTOM, Implies(p0, p1), Implies(p1, p0)]
    seeds = [Justified(t, f) for t in base for f in bodies]
    seeds += [Justified(Union(s, t), p0) for s in base for t in base]
    seeds += [Justified(Sum(s, t), p1) for s in base for t in base]
    rng = random.Random(6)
    seeds += [random_formula(rng, Dialect.PROB, 2, term_depth=1) for _ in range(30)]
    u = subformula_closure(seeds, Dialect.PROB)
    m = single_world_model(u)
    viols = validate_model(m)
    terms = set(u.terms)
    pairs = mismatched = 0
    for s in base:
        for t in base:
            pairs += 1
            if Union(s, t) not in terms or m.ev("w", Union(s, t)) != m.ev("w", s) | m.ev("w", t):
                mismatched += 1
    ok = not viols and mismatched == 0
    return ok, (f"{len(u)} formulas, {len(u.terms)} terms, {len(viols)} violations, "
                f"{pairs} union pairs, {mismatched} mismatches")


def criterion_7():
    leaves = [Variable(1), Variable(2), Variable(3), ZERO]
    by_size = {1: list(leaves)}
    for size in range(2, 7):
        out = []
        for left in range(1, size - 1):
            right = size - 1 - left
            for a in by_size.get(left, []):
                for b in by_size.get(right, []):
                    out += [Sum(a, b), Union(a, b)]
        by_size[size] = out
    terms = [t for size in sorted(by_size) for t in by_size[size]]
    assignments = [set(c) for k in range(4) for c in itertools.combinations(leaves[:3], k)]
    tables = [tuple(lattice_eval(t, on) for on in assignments) for t in terms]
    disagreements = 0
    for t_s, s in zip(tables, terms):
        for t_t, t in zip(tables, terms):
            oracle = all(b or not a for a, b in zip(t_s, t_t))
            disagreements += lattice_leq(s, t) != oracle
    return disagreements == 0, f"{len(terms)} terms, {len(terms) ** 2} pairs, {disagreements} disagreements"


def criterion_8():
    start = time.perf_counter()
    rng = random.Random(8)
    failures = {"a": 0, "b": 0, "c": 0, "sound": 0}
    for _ in range(200):
        n = rng.randint(0, 4)
        db = EvidenceDatabase(tuple((k, random_prop_formula(rng, 2, 3)) for k in range(1, n + 1)),
                              random_prop_formula(rng, 2, 3))
        vs = random_valuation_space(rng, 16, 3)
        asg = random_sound_assignment(rng, db, vs)
        if not is_sound_assignment(db, asg, vs):
            failures["sound"] += 1
        ae = aggregated_evidence(db)
        omega = frozenset(vs.space.outcomes)
        brute = set()
        for k in range(n + 1):
            for sub in itertools.combinations(range(1, n + 1), k):
                if oracle_entails([db.entries[i - 1][1] for i in sub], db.target):
                    brute |= reduce(frozenset.__and__, (asg.of(Variable(i)) for i in sub), omega)
        failures["a"] += event_of(ae, asg) != brute
        x_event = {o for o in vs.space.outcomes if prop_value(db.target, vs.valuation[o])}
        failures["b"] += probability_lower_bound(db, asg, vs.space) > vs.space.prob(x_event)
        failures["c"] += not all(lattice_leq(meet_term(db, sub), ae) for sub in supporting_subsets(db))
    elapsed = time.perf_counter() - start
    ok = not any(failures.values()) and elapsed < 30
    detail = ", ".join(f"({k}) {v}" for k, v in failures.items() if k != "sound")
    return ok, f"200 databases, failures {detail}, unsound assignments {failures['sound']}, {elapsed:.1f}s"


def criterion_9():
    rng = random.Random(9)
    bad_terms = bad_formulas = 0
    for dialect in Dialect:
        for _ in range(1000):
            t = random_term(rng, dialect, 3)
            bad_terms += parse_term(print_term(t), dialect) != t
            f = random_formula(rng, dialect, 3, term_depth=2)
            bad_formulas += parse_formula(print_formula(f), dialect) != f
    bad_models = 0
    for logic in ("star", "app", "prob"):
        for seed in range(20):
            m = random_model(seed, ModelParams(LogicConfig.parse(logic, "j4"), max_worlds=5))
            text = dump_model(m)
            again = load_model(text)
            bad_models += again != m or dump_model(again) != text
    bad_proofs = 0
    for entry in LIBRARY:
        d = entry.build(x1, Sum(x2, c1), p0, Implies(p1, p0), 2)
        text = format_derivation(d)
        again = parse_derivation(text)
        bad_proofs += again != d or format_derivation(again) != text
    ok = not (bad_terms or bad_formulas or bad_models or bad_proofs)
    return ok, (f"3x1000 terms ({bad_terms} bad), 3x1000 formulas ({bad_formulas} bad), "
                f"60 model files ({bad_models} bad), {len(LIBRARY)} derivation files ({bad_proofs} bad)")


CRITERIA = [
    (1, "derivation fixture", criterion_1),
    (2, "star soundness", criterion_2),
    (3, "application lemma", criterion_3),
    (4, "app soundness", criterion_4),
    (5, "conservativity", criterion_5),
    (6, "one-world evidence model", criterion_6),
    (7, "lattice oracle", criterion_7),
    (8, "aggregated evidence", criterion_8),
    (9, "round trips", criterion_9),
]


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"C{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check):
    ok, detail = check()
    record(number, title, ok, detail)
    assert ok, detail


def main() -> int:
    failed = 0
    for number, title, check in CRITERIA:
        ok, detail = check()
        record(number, title, ok, detail)
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
