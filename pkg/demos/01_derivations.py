# %% [markdown]
# # Checking Hilbert-style derivations
#
# Application is not a primitive in the star dialect. `s . t` abbreviates
# `s + t + cstar`, and the implication it should satisfy has to be derived
# from the sum axiom and the cstar axiom.

# %%
from subsetjl import (
    ConstantSpecification,
    LogicConfig,
    builtin_j_derivation,
    check_derivation,
    format_derivation,
    parse_derivation,
    parse_formula,
    parse_term,
)

s, t = parse_term("x1"), parse_term("c2 + x3")
a, b = parse_formula("p0"), parse_formula("p0 -> p1")
d = builtin_j_derivation(s, t, a, b)
print(format_derivation(d))

# %%
config = LogicConfig.parse("star", "jt,jd,j4")
verdict = check_derivation(d, config, ConstantSpecification.total())
print(verdict.summary())
print(d.labels())

# %% [markdown]
# Derivation files are plain text, one numbered step per line. A broken
# modus ponens step gets a per-step diagnostic instead of an exception.

# %%
broken = parse_derivation("""
1. p0 -> p1 -> p0 ; AX(CL1)
2. p1 -> p0 ; MP(1,1)
""")
verdict = check_derivation(broken, config, ConstantSpecification.total())
print(verdict.summary())

# %% [markdown]
# Axiom necessitation needs the constant specification to grant the axiom.

# %%
an = parse_derivation("1. !c1 : c1 : (p0 -> p1 -> p0) ; AN(1,c1,p0 -> p1 -> p0)")
for name, cs in [("total", ConstantSpecification.total()), ("empty", ConstantSpecification.empty())]:
    print(name, check_derivation(an, config, cs).summary())
