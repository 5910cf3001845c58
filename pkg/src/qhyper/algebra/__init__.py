"""Finite value algebras: representation, law checking and generators."""

from .generators import (
    boolean_algebra,
    chain,
    heyting_implication,
    is_isomorphic,
    mo2,
    o6,
    two_chain,
)
from .lattice import (
    AlgebraClass,
    FiniteAlgebra,
    aggregate,
    find_distributivity_counterexample,
    from_order,
)
from .laws import check_laws
from .subspaces import (
    Subspace,
    SubspaceLatticeSpec,
    close_subspaces,
    spec_from_vectors,
    subspace_lattice,
)

__all__ = [
    "AlgebraClass",
    "FiniteAlgebra",
    "Subspace",
    "SubspaceLatticeSpec",
    "aggregate",
    "boolean_algebra",
    "chain",
    "check_laws",
    "close_subspaces",
    "find_distributivity_counterexample",
    "from_order",
    "heyting_implication",
    "is_isomorphic",
    "mo2",
    "o6",
    "spec_from_vectors",
    "subspace_lattice",
    "two_chain",
]
