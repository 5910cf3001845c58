"""Duality hyperdoctrines Hom(-, Omega) over finite base categories."""

from .model import (
    FibreRule,
    Model,
    Predicate,
    enumerate_fibre,
    fibre_array,
    fibre_mask,
    fibre_witness,
    first_violation,
    implies,
    in_fibre,
    iter_fibre,
    join,
    leq,
    meet,
    ortho,
    pullback,
    validate_model,
)
from .quantifiers import (
    Quantifier,
    comprehension,
    equality_along,
    exists_along,
    forall_along,
    quantify_rows,
)
from .verifiers import (
    check_adjunction,
    check_beck_chevalley,
    check_comprehension_adjunction,
    check_frobenius,
    check_generic_object,
    check_lifting,
    frobenius_report,
    grothendieck_hom,
)

__all__ = [
    "FibreRule",
    "Model",
    "Predicate",
    "Quantifier",
    "check_adjunction",
    "check_beck_chevalley",
    "check_comprehension_adjunction",
    "check_frobenius",
    "check_generic_object",
    "check_lifting",
    "comprehension",
    "enumerate_fibre",
    "equality_along",
    "exists_along",
    "fibre_array",
    "fibre_mask",
    "fibre_witness",
    "first_violation",
    "forall_along",
    "frobenius_report",
    "grothendieck_hom",
    "implies",
    "in_fibre",
    "iter_fibre",
    "join",
    "leq",
    "meet",
    "ortho",
    "pullback",
    "quantify_rows",
    "validate_model",
]
