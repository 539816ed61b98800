"""Exact trace semantics for branching systems, with determinization,
minimization, and machine-checked laws.

The package works over exact carriers only (Booleans, machine integers for
the naturals, fractions for the rationals): every reported value and every
law check is a literal equality, never a float comparison.
"""

from .automata import (
    GPS,
    LTS,
    NFA,
    TERM,
    AlternatingAut,
    MooreAut,
    Tree,
    UnknownStateError,
    ValidationError,
    WeightedAut,
    WeightedTreeAut,
    all_trees,
    format_tree,
    require_valid,
    reverse_nfa,
    tree_height,
    validate,
)
from .determinize import (
    BudgetExceeded,
    DetResult,
    alt_to_nfa,
    canonical_det_nfa,
    chi_good,
    chi_wrong,
    det_subset,
    det_weighted,
)
from .laws import (
    BOX,
    CHI_GOOD,
    CHI_WRONG,
    DIAMOND,
    IDENTITY_NAT,
    LawFailure,
    LawReport,
    PredicateAction,
    SemiringAction,
    check_action_laws,
    check_correctness,
    check_exchange,
    check_logic_morphism_diagram,
    check_monad_morphism,
    check_naturality,
    format_report,
    known_counterexample,
)
from .minimize import (
    ObservableDFA,
    brzozowski_minimal,
    brzozowski_observable,
    dfa_equiv,
    partition_refine,
)
from .semantics import (
    LanguageTable,
    TraceDist,
    TreeLanguageTable,
    alt_trace,
    bottom_up_algebra,
    bt_nfa_trace,
    fold_tree,
    format_word,
    gps_trace,
    length_semantics,
    lts_traces,
    moore_trace,
    nfa_trace,
    wa_trace,
    word_at,
    wta_trace,
)
from .weights import (
    BOOL,
    NAT,
    RAT,
    SEMIRINGS,
    UNDEFINED,
    PartialProb,
    Semiring,
    WeightVec,
    map_weights,
    monad_mul,
    prob_add,
    prob_mul,
    scale,
    unit,
    vec_sum,
)

__all__ = [
    "GPS",
    "LTS",
    "NFA",
    "TERM",
    "AlternatingAut",
    "MooreAut",
    "Tree",
    "UnknownStateError",
    "ValidationError",
    "WeightedAut",
    "WeightedTreeAut",
    "all_trees",
    "format_tree",
    "require_valid",
    "reverse_nfa",
    "tree_height",
    "validate",
    "BudgetExceeded",
    "DetResult",
    "alt_to_nfa",
    "canonical_det_nfa",
    "chi_good",
    "chi_wrong",
    "det_subset",
    "det_weighted",
    "BOX",
    "CHI_GOOD",
    "CHI_WRONG",
    "DIAMOND",
    "IDENTITY_NAT",
    "LawFailure",
    "LawReport",
    "PredicateAction",
    "SemiringAction",
    "check_action_laws",
    "check_correctness",
    "check_exchange",
    "check_logic_morphism_diagram",
    "check_monad_morphism",
    "check_naturality",
    "format_report",
    "known_counterexample",
    "ObservableDFA",
    "brzozowski_minimal",
    "brzozowski_observable",
    "dfa_equiv",
    "partition_refine",
    "LanguageTable",
    "TraceDist",
    "TreeLanguageTable",
    "alt_trace",
    "bottom_up_algebra",
    "bt_nfa_trace",
    "fold_tree",
    "format_word",
    "gps_trace",
    "length_semantics",
    "lts_traces",
    "moore_trace",
    "nfa_trace",
    "wa_trace",
    "word_at",
    "wta_trace",
    "BOOL",
    "NAT",
    "RAT",
    "SEMIRINGS",
    "UNDEFINED",
    "PartialProb",
    "Semiring",
    "WeightVec",
    "map_weights",
    "monad_mul",
    "prob_add",
    "prob_mul",
    "scale",
    "unit",
    "vec_sum",
]
