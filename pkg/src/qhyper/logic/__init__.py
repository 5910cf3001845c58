"""Typed first-order quantum logic interpreted in finite hyperdoctrine models."""

from .parser import parse, parse_formula, parse_judgement, parse_sequent, parse_sort, tokenize
from .rules import (
    Rule,
    RuleSet,
    SideCondition,
    baseline_rules,
    check_rule_soundness,
    check_ruleset_soundness,
    classical_schemas,
    load_ruleset,
    rule_from_dict,
    ruleset_from_dict,
)
from .search import (
    Countermodel,
    PoolEntry,
    enumerate_interpretations,
    find_countermodel,
    model_pool,
    search_countermodels,
    vocabulary_of,
)
from .semantics import (
    FunctionType,
    Signature,
    Vocabulary,
    check_sequent,
    context_object,
    infer_context,
    interpret_formula,
    interpret_substitution,
    interpret_term,
    is_valid,
    sort_of,
    typecheck,
    typecheck_sequent,
)
from .syntax import (
    And,
    Apply,
    Atom,
    BaseSort,
    Bottom,
    Equals,
    Exists,
    Forall,
    Not,
    Or,
    Pair,
    ProductSort,
    Proj,
    Sequent,
    Top,
    Var,
    format_formula,
    format_sequent,
    format_term,
    free_variables,
    substitute,
    substitute_term,
)

__all__ = [
    "And",
    "Apply",
    "Atom",
    "BaseSort",
    "Bottom",
    "Countermodel",
    "Equals",
    "Exists",
    "Forall",
    "FunctionType",
    "Not",
    "Or",
    "Pair",
    "PoolEntry",
    "ProductSort",
    "Proj",
    "Rule",
    "RuleSet",
    "Sequent",
    "SideCondition",
    "Signature",
    "Top",
    "Var",
    "Vocabulary",
    "baseline_rules",
    "check_rule_soundness",
    "check_ruleset_soundness",
    "check_sequent",
    "classical_schemas",
    "context_object",
    "enumerate_interpretations",
    "find_countermodel",
    "format_formula",
    "format_sequent",
    "format_term",
    "free_variables",
    "infer_context",
    "interpret_formula",
    "interpret_substitution",
    "interpret_term",
    "is_valid",
    "load_ruleset",
    "model_pool",
    "parse",
    "parse_formula",
    "parse_judgement",
    "parse_sequent",
    "parse_sort",
    "rule_from_dict",
    "ruleset_from_dict",
    "search_countermodels",
    "sort_of",
    "substitute",
    "substitute_term",
    "tokenize",
    "typecheck",
    "typecheck_sequent",
    "vocabulary_of",
]
