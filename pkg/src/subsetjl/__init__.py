"""Justification logic with subset semantics: parsing, proof checking,
model checking and aggregated probabilistic evidence."""

from .axioms import (
    ConstantSpecification,
    LogicConfig,
    SchemeId,
    cs_contains,
    instantiate,
    is_axiomatically_appropriate,
    match_axiom,
    parse_cs,
)
from .evidence import (
    EventAssignment,
    EvidenceDatabase,
    ProbabilitySpace,
    aggregated_evidence,
    event_of,
    parse_database,
    probability_lower_bound,
    single_world_model,
    supporting_subsets,
)
from .lattice import LatticeNF, lattice_leq, normal_form, term_geq_one
from .models import (
    ModelParams,
    SubsetModel,
    Violation,
    app_set,
    complete_valuation,
    dump_model,
    eval_truth,
    load_model,
    mp_closed_worlds,
    random_model,
    truth_set,
    validate_model,
)
from .proofs import (
    Derivation,
    DerivationBuilder,
    an_formula,
    builtin_j_derivation,
    check_derivation,
    format_derivation,
    parse_derivation,
)
from .soundness import FuzzReport, fuzz_soundness
from .syntax import (
    Dialect,
    DialectError,
    FormulaUniverse,
    ParseError,
    forget_translation,
    is_atomic_term,
    is_cstar_term,
    mk_application,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
    subformula_closure,
)
from .truthtable import ResourceLimitError, prop_entails, taut_entails

__all__ = [name for name in dir() if not name.startswith("_")]
