"""Tripos-to-topos PER category and the Omega-valued set universe."""

from .category import CategoryData, build_topos, check_category_laws, standard_objects, summarize
from .pers import (
    FunctionalRelation,
    Per,
    check_functional_relation,
    check_per,
    compose_relations,
    describe_per,
    enumerate_functional_relations,
    enumerate_pers,
    equivalent,
    identity_relation,
    per_from_matrix,
    relation_from_matrix,
    relation_leq,
)
from .universe import (
    EMPTY,
    QSet,
    VElement,
    VUniverse,
    check_qset,
    distinct_encodings,
    numeral,
    per_to_qset,
    qset_to_v,
    v_build,
    v_count,
    v_stage_of,
)

__all__ = [
    "EMPTY",
    "CategoryData",
    "FunctionalRelation",
    "Per",
    "QSet",
    "VElement",
    "VUniverse",
    "build_topos",
    "check_category_laws",
    "check_functional_relation",
    "check_per",
    "check_qset",
    "compose_relations",
    "describe_per",
    "distinct_encodings",
    "enumerate_functional_relations",
    "enumerate_pers",
    "equivalent",
    "identity_relation",
    "numeral",
    "per_from_matrix",
    "per_to_qset",
    "qset_to_v",
    "relation_from_matrix",
    "relation_leq",
    "standard_objects",
    "summarize",
    "v_build",
    "v_count",
    "v_stage_of",
]
