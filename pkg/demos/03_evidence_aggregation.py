# %% [markdown]
# # Aggregating probabilistic evidence
#
# Each database entry `u_i : F_i` records that evidence `u_i` supports `F_i`.
# The aggregated evidence for a target is the join, over the minimal subsets
# of entries that entail it, of the meet of their evidence variables.

# %%
from fractions import Fraction

from subsetjl import (
    EventAssignment,
    ProbabilitySpace,
    aggregated_evidence,
    event_of,
    parse_database,
    probability_lower_bound,
    supporting_subsets,
)
from subsetjl.syntax import print_term

db = parse_database("""
u1 : p0
u2 : p1
u3 : p0 -> p1
target: p1
""")
print(supporting_subsets(db))
print(print_term(aggregated_evidence(db), "u"))

# %%
space = ProbabilitySpace(("a", "b", "c", "d"), tuple(Fraction(1, 4) for _ in range(4)))
asg = EventAssignment(space.outcomes, {db.variables[0]: {"a", "b", "c"},
                                       db.variables[1]: {"d"},
                                       db.variables[2]: {"b", "c", "d"}})
ae = aggregated_evidence(db)
print(sorted(event_of(ae, asg)), probability_lower_bound(db, asg, space))

# %% [markdown]
# The lattice order decides which evidence is weaker. `1` is a generator,
# not the top element.

# %%
from subsetjl import lattice_leq, normal_form, parse_term
from subsetjl.syntax import Dialect

for s, t in [("u1 + u2", "u1"), ("u1", "u1 \\/ u2"), ("u1", "1"), ("1", "u1 \\/ 1")]:
    print(f"{s:10s} <= {t:10s}", lattice_leq(parse_term(s, Dialect.PROB), parse_term(t, Dialect.PROB)))
print(print_term(normal_form(parse_term("u1 + (u2 \\/ u3)", Dialect.PROB)).to_term(), "u"))

# %% [markdown]
# One normal world where exactly the terms above `1` carry evidence gives a
# model of all the evidence postulates.

# %%
from subsetjl import single_world_model, validate_model
from subsetjl.syntax import parse_formula, subformula_closure

u = subformula_closure([parse_formula(f, Dialect.PROB)
                        for f in ["1 : (p0 -> p0)", "0 : p1", "(u1 \\/ 1) : (p0 -> p0)", "u1 : _|_"]], Dialect.PROB)
m = single_world_model(u)
print(validate_model(m))
