"""Exact inference for coherent choice functions over gambles on a finite space.

The package is layered: :mod:`.model` holds the exact-rational types,
:mod:`.lp` an exact simplex, :mod:`.cones` the conic predicates built on it,
:mod:`.desirability` and :mod:`.choice` the inference queries, and
:mod:`.operators` the set-level operators.
"""

from .choice import (
    ArchMargin,
    Verdict,
    arch_margin,
    certificate_from_json,
    choice_set,
    e_admissible_choice,
    enumerate_selections,
    k_consistent,
    k_entails,
    k_entails_mixing,
    k_lower_prevision,
    reject_set,
    totality_query,
    verify_certificate,
)
from .cones import (
    UNBOUNDED,
    ConeWitness,
    MixWitness,
    cone_consistent,
    cone_contains,
    credal_accepts,
    lower_prevision,
    posi_meets_cone,
)
from .desirability import (
    DesirabilityModel,
    d_consistent,
    d_entails,
    d_maximality_choice,
    lowprev_from_model,
    strict_desirable_under_lowprev,
)
from .lp import LinearProgram, LpOutcome, Relation, Status, lp_solve
from .model import (
    CredalSet,
    Gamble,
    GambleAssessment,
    ModelError,
    OptionSet,
    OptionSetAssessment,
    Ordering,
    SpaceSpec,
    dominates_background,
    dump_model,
    gamble_add,
    gamble_scale,
    gamble_sub,
    parse_model,
)

__all__ = [
    "ArchMargin",
    "ConeWitness",
    "CredalSet",
    "DesirabilityModel",
    "Gamble",
    "GambleAssessment",
    "LinearProgram",
    "LpOutcome",
    "MixWitness",
    "ModelError",
    "OptionSet",
    "OptionSetAssessment",
    "Ordering",
    "Relation",
    "SpaceSpec",
    "Status",
    "UNBOUNDED",
    "Verdict",
    "arch_margin",
    "certificate_from_json",
    "choice_set",
    "cone_consistent",
    "cone_contains",
    "credal_accepts",
    "d_consistent",
    "d_entails",
    "d_maximality_choice",
    "dominates_background",
    "dump_model",
    "e_admissible_choice",
    "enumerate_selections",
    "gamble_add",
    "gamble_scale",
    "gamble_sub",
    "k_consistent",
    "k_entails",
    "k_entails_mixing",
    "k_lower_prevision",
    "lower_prevision",
    "lowprev_from_model",
    "lp_solve",
    "parse_model",
    "posi_meets_cone",
    "reject_set",
    "strict_desirable_under_lowprev",
    "totality_query",
    "verify_certificate",
]

__version__ = "0.1.0"
