"""Countermodel search over a pool of small finite models.

The sequent's symbols are left uninterpreted; every interpretation of them in
every pool entry is tried, in pool order and lexicographic order of tables,
until one makes the sequent invalid or the per-entry bound runs out.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..algebra import FiniteAlgebra
from ..base import BaseKind, BaseMorphism, BaseObject, enumerate_morphisms, finset
from ..config import DEFAULT_BOUNDS, Bounds
from ..errors import LiftingError, ModelError, TypeCheckError
from ..hyperdoctrine import Model, Predicate, fibre_array
from ..reports import LawReport
from .semantics import (
    FunctionType,
    Signature,
    Vocabulary,
    check_sequent,
    function_tables,
    predicate_tables,
)
from .syntax import (
    And,
    Apply,
    Atom,
    BaseSort,
    Context,
    Equals,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    Pair,
    ProductSort,
    Proj,
    Sequent,
    Sort,
    Term,
    Var,
    format_sequent,
    free_variables,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PoolEntry:
    """A model plus the base objects its sort names denote."""

    name: str
    model: Model
    sorts: Mapping[str, BaseObject] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.sorts:
            object.__setattr__(self, "sorts", dict(self.model.objects))


@dataclass(frozen=True)
class Countermodel:
    entry: str
    predicates: Dict[str, Dict[str, str]]
    functions: Dict[str, Dict[str, str]]
    witness: Mapping[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.entry,
            "predicates": self.predicates,
            "functions": self.functions,
            **dict(self.witness),
        }


def model_pool(
    omegas: Sequence[Tuple[str, FiniteAlgebra]],
    sizes: Sequence[int] = (1, 2),
    sort_names: Sequence[str] = ("S", "T"),
    bounds: Optional[Bounds] = None,
) -> List[PoolEntry]:
    """Finite-set models, one per omega and carrier size; every sort gets that carrier."""
    bounds = bounds or DEFAULT_BOUNDS
    pool = []
    for label, omega in omegas:
        for n in sizes:
            carrier = finset([f"p{i}" for i in range(n)])
            objects = {name: carrier for name in sort_names}
            model = Model(BaseKind.FINSET, omega, bounds=bounds, objects=objects, name=label)
            pool.append(PoolEntry(f"{label}/{n}", model))
    return pool


# =============================================================================
# VOCABULARY INFERENCE
# =============================================================================


class _Collector:
    def __init__(self, default: Sort) -> None:
        self.default = default
        self.functions: Dict[str, FunctionType] = {}
        self.predicates: Dict[str, Tuple[Sort, ...]] = {}

    def term(self, term: Term, scope: Mapping[str, Sort]) -> Sort:
        if isinstance(term, Var):
            return scope.get(term.name, self.default)
        if isinstance(term, Apply):
            args = tuple(self.term(a, scope) for a in term.args)
            seen = self.functions.setdefault(term.symbol, FunctionType(args, self.default))
            if seen.args != args:
                raise TypeCheckError(f"function {term.symbol!r} used with two arities")
            return seen.result
        if isinstance(term, Pair):
            return ProductSort(self.term(term.left, scope), self.term(term.right, scope))
        if isinstance(term, Proj):
            inner = self.term(term.term, scope)
            if not isinstance(inner, ProductSort):
                raise TypeCheckError("projection of a non-pair", "a product sort", str(inner))
            return inner.left if term.index == 1 else inner.right
        raise TypeError(f"not a term: {term!r}")

    def formula(self, formula: Formula, scope: Mapping[str, Sort]) -> None:
        if isinstance(formula, Atom):
            args = tuple(self.term(a, scope) for a in formula.args)
            if self.predicates.setdefault(formula.symbol, args) != args:
                raise TypeCheckError(f"predicate {formula.symbol!r} used with two arities")
        elif isinstance(formula, Equals):
            self.term(formula.left, scope)
            self.term(formula.right, scope)
        elif isinstance(formula, (And, Or)):
            self.formula(formula.left, scope)
            self.formula(formula.right, scope)
        elif isinstance(formula, Not):
            self.formula(formula.body, scope)
        elif isinstance(formula, (Forall, Exists)):
            self.formula(formula.body, {**scope, formula.var: formula.sort})


def vocabulary_of(sequent: Sequent, default_sort: str = "S") -> Tuple[Vocabulary, Context]:
    """Symbol arities read off a sequent whose symbols carry no declarations.

    Undeclared variables and function results take ``default_sort``.
    """
    default = BaseSort(default_sort)
    context: Context = sequent.context if sequent.context is not None else tuple(
        (name, default) for name in free_variables(sequent)
    )
    collector = _Collector(default)
    for side in (sequent.left, sequent.right):
        collector.formula(side, dict(context))
    clash = set(collector.functions) & set(collector.predicates)
    if clash:
        raise TypeCheckError(f"symbol used as function and predicate: {', '.join(sorted(clash))}")
    return Vocabulary(collector.functions, collector.predicates), context


# =============================================================================
# SEARCH
# =============================================================================


def _candidates(entry: PoolEntry, base: Signature, vocabulary: Vocabulary) -> List[Tuple[str, List[Any]]]:
    model = entry.model
    space: List[Tuple[str, List[Any]]] = []
    for symbol in sorted(vocabulary.predicates):
        over = base.arity_object(vocabulary.predicates[symbol])
        space.append((symbol, [Predicate(over, tuple(int(e) for e in row)) for row in fibre_array(model, over)]))
    for symbol in sorted(vocabulary.functions):
        declared = vocabulary.functions[symbol]
        dom, cod = base.arity_object(declared.args), base.sort_object(declared.result)
        space.append((symbol, enumerate_morphisms(dom, cod, model.bounds)))
    return space


def enumerate_interpretations(
    entry: PoolEntry, vocabulary: Vocabulary, limit: Optional[int] = None
) -> Iterator[Signature]:
    """Signatures interpreting ``vocabulary`` in the entry, lexicographically."""
    base = Signature(entry.sorts)
    space = _candidates(entry, base, vocabulary)
    picks = itertools.product(*(candidates for _, candidates in space))
    for chosen in itertools.islice(picks, limit):
        predicates = {s: c for (s, _), c in zip(space, chosen) if isinstance(c, Predicate)}
        functions = {s: c for (s, _), c in zip(space, chosen) if isinstance(c, BaseMorphism)}
        yield Signature(entry.sorts, vocabulary, functions, predicates)


def interpretation_count(entry: PoolEntry, vocabulary: Vocabulary) -> int:
    total = 1
    for _, candidates in _candidates(entry, Signature(entry.sorts), vocabulary):
        total *= len(candidates)
    return total


def search_countermodels(
    sequent: Sequent,
    pool: Sequence[PoolEntry],
    bounds: Optional[Bounds] = None,
    default_sort: str = "S",
) -> LawReport:
    """Report ``pass`` when no entry refutes the sequent, ``fail`` with the countermodel otherwise.

    Mode is ``exhaustive`` when every interpretation of every usable entry was
    tried and ``bounded`` when some entry had more than the interpretation bound.
    """
    bounds = bounds or DEFAULT_BOUNDS
    vocabulary, context = vocabulary_of(sequent, default_sort)
    typed = Sequent(sequent.left, sequent.right, context)
    searched = 0
    complete = True
    skipped: List[str] = []
    found: Optional[Countermodel] = None
    for entry in pool:
        try:
            total = interpretation_count(entry, vocabulary)
            if total > bounds.interpretations:
                complete = False
            for signature in enumerate_interpretations(entry, vocabulary, bounds.interpretations):
                searched += 1
                report = check_sequent(entry.model, signature, typed)
                if not report.passed:
                    found = Countermodel(
                        entry.name,
                        predicate_tables(entry.model, signature.predicates),
                        function_tables(signature.functions),
                        dict(report.witness or {}),
                    )
                    break
        except (ModelError, LiftingError, TypeCheckError) as e:
            logger.debug("skipping %s: %s", entry.name, e)
            skipped.append(entry.name)
            continue
        if found is not None:
            break
    logger.info("countermodel search for %s: %d interpretations", format_sequent(typed), searched)
    return LawReport.single(
        "countermodel-search",
        found is None,
        searched,
        None if found is None else found.to_dict(),
        mode="exhaustive" if complete else "bounded",
        extra={"sequent": format_sequent(typed), "pool": [e.name for e in pool], "skipped": skipped},
    )


def find_countermodel(
    sequent: Sequent,
    pool: Sequence[PoolEntry],
    bounds: Optional[Bounds] = None,
    default_sort: str = "S",
) -> Optional[Countermodel]:
    """The first interpretation in pool order that invalidates the sequent."""
    report = search_countermodels(sequent, pool, bounds, default_sort)
    if report.passed:
        return None
    witness = dict(report.witness or {})
    entry = witness.pop("model")
    return Countermodel(entry, witness.pop("predicates"), witness.pop("functions"), witness)
