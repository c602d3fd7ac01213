"""Exact verification engine for Paretian aggregation of multi-prior agents.

Agents hold incomplete preferences: a ranking is declared only when it holds
under every prior in the agent's belief polytope.  This package decides, in
exact rational arithmetic, whether a candidate society respects the Pareto
family of unanimity axioms, checks the equivalent representation-level
conditions, and constructs certified counterexample act pairs when they
fail.
"""

from .axioms import (
    AXIOM_CHECKS,
    AxiomVerdict,
    ct_pareto_check,
    ct_pareto_star_check,
    exchange_pareto_check,
    exchange_pareto_star_check,
    pareto_check,
    pareto_star_check,
)
from .characterizations import (
    ConditionReport,
    Decomposition,
    aggregate_society,
    check_corollary2,
    check_eq1_dght1,
    check_eq4_dght2,
    check_lemma1_superset,
    check_prop1,
    check_prop2,
    check_seu_existence,
    check_thm1_condition,
    check_thm2_condition,
    utilitarian_decompose,
)
from .errors import (
    CapExceededError,
    DimensionMismatchError,
    DocumentError,
    MissingSocietyError,
    ParetoStarError,
    PreconditionError,
)
from .geometry import (
    HRep,
    Hyperplane,
    LPResult,
    Polytope,
    Vec,
    frac,
    hrep_vertices,
    lp_solve,
    membership,
    remove_redundant,
    separate,
    simplex_point,
    support,
    vec,
    vrep_to_hrep,
)
from .harness import (
    CrossValidation,
    FuzzReport,
    GenParams,
    SplitMix64,
    cross_validate,
    fuzz_axiom,
    random_profile,
)
from .preferences import (
    Act,
    AffineUtility,
    Agent,
    Profile,
    act,
    bewley_geq,
    bewley_incomparable,
    check_c_diversity,
    check_c_minimal_agreement,
    constant_act,
    expected_utility,
    no_taste_disagreement,
    profile,
    utility,
    validate_profile,
)
from .witnesses import (
    WitnessCertificate,
    revalidate,
    witness_ct_pareto_star,
    witness_lemma1,
    witness_spurious_unanimity,
)

__version__ = "0.1.0"
