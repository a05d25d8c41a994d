# %% [markdown]
# # Subset models and soundness fuzzing
#
# A subset model assigns each world and term a set of worlds (the evidence)
# and gives every formula a truth value per world. Normal worlds obey the
# usual truth clauses; the other worlds may be arbitrary, even inconsistent.

# %%
from subsetjl import LogicConfig, ModelParams, dump_model, random_model, validate_model
from subsetjl.models import mp_closed_worlds
from subsetjl.syntax import print_formula, print_term

config = LogicConfig.parse("star", "jt")
m = random_model(3, ModelParams(config, max_worlds=4))
print(m)
print("normal:", sorted(m.normal), "closed under MP:", sorted(mp_closed_worlds(m)))
print("violations:", validate_model(m))

# %%
w = sorted(m.normal)[0]
for f in m.universe.formulas[:12]:
    print(f"{print_formula(f):40s}", sorted(m.truth_set(f)))
for t in m.universe.terms[:6]:
    print(f"E({w}, {print_term(t)}) =", sorted(m.ev(w, t)))

# %% [markdown]
# The JSON form is what `subsetjl check-model` and `subsetjl eval` read.

# %%
print(dump_model(m)[:400], "...")

# %% [markdown]
# Soundness as a property: every conclusion of an accepted derivation must
# hold at every normal world of every validated model.

# %%
from subsetjl import fuzz_soundness

for logic, beta in [("star", ""), ("star", "jt,j4"), ("app", "jd"), ("prob", "j4")]:
    report = fuzz_soundness(range(40), LogicConfig.parse(logic, beta))
    print(f"{logic:5s} {beta:6s} models={report.models} checks={report.checks} "
          f"lemma={report.lemma_checks} counterexamples={len(report.counterexamples)}")
