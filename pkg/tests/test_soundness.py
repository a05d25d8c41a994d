import pytest

from subsetjl.axioms import ConstantSpecification, LogicConfig
from subsetjl.models import ModelSkeleton, complete_valuation, validate_model
from subsetjl.proofs import check_derivation
from subsetjl.soundness import (
    application_lemma_failures,
    count_application_instances,
    derivations_for,
    fuzz_soundness,
)
from subsetjl.syntax import CSTAR, Atom, Implies, Justified, Sum, Variable, subformula_closure

p0, p1 = Atom(0), Atom(1)
x1, x2 = Variable(1), Variable(2)


@pytest.mark.parametrize("logic,beta", [("star", ""), ("star", "jt,jd,j4"), ("app", "jt,j4"), ("prob", "j4")])
def test_fuzz_finds_nothing(logic, beta):
    cfg = LogicConfig.parse(logic, beta)
    report = fuzz_soundness(range(25), cfg)
    assert report.ok, report.counterexamples[:3] or report.rejected[:3]
    assert report.models == 25 and report.checks > 0


@pytest.mark.parametrize("logic,beta", [("star", "jt,jd,j4"), ("app", "jt,jd,j4"), ("prob", "j4")])
def test_generated_derivations_are_accepted(logic, beta):
    cfg = LogicConfig.parse(logic, beta)
    for seed in range(10):
        for name, d in derivations_for(seed, cfg):
            assert check_derivation(d, cfg, ConstantSpecification.total()), name


def test_derivations_are_seeded():
    cfg = LogicConfig.parse("star", "j4")
    assert derivations_for(4, cfg) == derivations_for(4, cfg)


def test_lemma_is_exercised():
    report = fuzz_soundness(range(40), LogicConfig.parse("star", ""))
    assert report.lemma_checks > 0


def _lemma_model(app_evidence):
    cfg = LogicConfig.parse("star", "")
    app = Sum(Sum(x1, x2), CSTAR)
    u = subformula_closure([Justified(x1, Implies(p0, p1)), Justified(x2, p0), Justified(app, p1)])
    V = {"w": {p0: True, p1: True}, "v": {f: f != p1 for f in u.formulas}}
    E = {w: {t: frozenset() for t in u.terms} for w in ("w", "v")}
    E["w"][app] = frozenset(app_evidence)
    skel = ModelSkeleton(cfg, ConstantSpecification.empty(), ("w", "v"), frozenset({"w"}), u, V, E)
    return complete_valuation(skel)


def test_lemma_failure_is_reported_for_an_invalid_model():
    bad = _lemma_model({"v"})
    assert validate_model(bad)
    assert count_application_instances(bad) == 1
    [(world, left, right, concl)] = application_lemma_failures(bad)
    assert world == "w" and concl.body == p1


def test_lemma_holds_in_the_repaired_model():
    good = _lemma_model(set())
    assert validate_model(good) == []
    assert application_lemma_failures(good) == []
