"""Guarded variable automata over infinite alphabets."""
from .closure import (
    async_product,
    async_product_with_origin,
    complement_fa,
    gen_ln,
    gva_concat,
    gva_intersection,
    gva_star,
    gva_union,
    nfma_to_gva,
    rename_apart,
)
from .coherence import CoherenceContext, Pool, big_theta, coherent, theta, xi
from .core import (
    EPS,
    TRUE,
    Atom,
    Diagnostic,
    Disjunction,
    Fa,
    Guard,
    Gva,
    Letter,
    Nfma,
    NfmaTransition,
    Substitution,
    Transition,
    Var,
    eq,
    guard_apply,
    guard_free_vars,
    guard_satisfiable_ext,
    guard_satisfies,
    neq,
    normalize_disjunction,
    subst_disjoint_union,
    subst_restrict,
    validate_gva,
    word_of,
)
from .decisions import FaInGva, GvaInFa, containment_vs_fa, nonemptiness
from .dsl import parse_automaton, print_automaton
from .errors import *  # noqa: F401,F403
from .export import export_dot, export_strategy_json
from .semantics import (
    Configuration,
    StepWitness,
    accepts_trace,
    enumerate_language,
    eps_closure,
    membership,
    step,
)
from .simulation import (
    build_restricted_game,
    check_sim_preconditions,
    compose_services,
    extract_strategy,
    simulates,
    solve_safety_game,
)
