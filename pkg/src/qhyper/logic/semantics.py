"""Signatures, sort checking and the interpretation of formulas in a model.

A context ``[x1:S1, ..., xn:Sn]`` denotes the n-ary product of its sort objects
(the terminal object when empty). A term denotes a base morphism out of the
context object, a formula a predicate over it. Connectives act pointwise;
quantifiers are taken along the projection that forgets the bound variable and
equality is pulled back from the equality predicate on the diagonal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Mapping, MutableMapping, Optional, Sequence, Tuple, Union

from ..base import (
    BaseKind,
    BaseMorphism,
    BaseObject,
    compose,
    diagonal,
    pairing,
    point_label,
    product,
    product_of,
)
from ..errors import DomainMismatchError, TypeCheckError
from ..hyperdoctrine import (
    Model,
    Predicate,
    equality_along,
    exists_along,
    first_violation,
    forall_along,
    join,
    meet,
    ortho,
    pullback,
)
from ..reports import LawReport
from .syntax import (
    And,
    Apply,
    Atom,
    BaseSort,
    Bottom,
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
    Top,
    Var,
    format_sequent,
    free_variables,
)

logger = logging.getLogger(__name__)


# =============================================================================
# VOCABULARY AND SIGNATURE
# =============================================================================


@dataclass(frozen=True)
class FunctionType:
    args: Tuple[Sort, ...]
    result: Sort


@dataclass(frozen=True)
class Vocabulary:
    """Symbol arities without interpretations."""

    functions: Mapping[str, FunctionType] = field(default_factory=dict)
    predicates: Mapping[str, Tuple[Sort, ...]] = field(default_factory=dict)

    def merge(self, other: "Vocabulary") -> "Vocabulary":
        clash = (set(self.functions) | set(self.predicates)) & (
            set(other.functions) | set(other.predicates)
        )
        if clash:
            raise TypeCheckError(f"symbol declared twice: {', '.join(sorted(clash))}")
        return Vocabulary(
            {**self.functions, **other.functions}, {**self.predicates, **other.predicates}
        )


@dataclass(frozen=True, eq=False)
class Signature:
    """Sorts bound to base objects and symbols bound to morphisms and predicates."""

    sorts: Mapping[str, BaseObject]
    vocabulary: Vocabulary = field(default_factory=Vocabulary)
    functions: Mapping[str, BaseMorphism] = field(default_factory=dict)
    predicates: Mapping[str, Predicate] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if set(self.functions) != set(self.vocabulary.functions):
            raise TypeCheckError("function symbols and their interpretations differ")
        if set(self.predicates) != set(self.vocabulary.predicates):
            raise TypeCheckError("predicate symbols and their interpretations differ")
        for name, f in self.functions.items():
            declared = self.vocabulary.functions[name]
            dom, cod = self.arity_object(declared.args), self.sort_object(declared.result)
            if f.dom != dom or f.cod != cod:
                raise TypeCheckError(
                    f"function {name!r} is interpreted with the wrong type",
                    f"{dom} -> {cod}", f"{f.dom} -> {f.cod}",
                )
        for name, v in self.predicates.items():
            over = self.arity_object(self.vocabulary.predicates[name])
            if v.over != over:
                raise TypeCheckError(f"predicate {name!r} lives over the wrong object", str(over), str(v.over))

    def sort_object(self, sort: Sort) -> BaseObject:
        if isinstance(sort, BaseSort):
            try:
                return self.sorts[sort.name]
            except KeyError:
                raise TypeCheckError(f"unknown sort {sort.name!r}") from None
        left, right = self.sort_object(sort.left), self.sort_object(sort.right)
        return product(left, right)[0]

    def arity_object(self, sorts: Sequence[Sort]) -> BaseObject:
        """The object of arguments: the sort itself for one argument, a product otherwise."""
        if len(sorts) == 1:
            return self.sort_object(sorts[0])
        kind = next(iter(self.sorts.values())).kind if self.sorts else None
        return product_of([self.sort_object(s) for s in sorts], kind)[0]

    def extend(
        self,
        vocabulary: Vocabulary,
        functions: Mapping[str, BaseMorphism],
        predicates: Mapping[str, Predicate],
    ) -> "Signature":
        return Signature(
            self.sorts,
            self.vocabulary.merge(vocabulary),
            {**self.functions, **functions},
            {**self.predicates, **predicates},
        )


# =============================================================================
# SORT CHECKING
# =============================================================================


def _symbol_error(kind: str, name: str) -> TypeCheckError:
    return TypeCheckError(f"unknown {kind} symbol {name!r}")


def sort_of(vocabulary: Vocabulary, context: Mapping[str, Sort], term: Term) -> Sort:
    if isinstance(term, Var):
        try:
            return context[term.name]
        except KeyError:
            raise TypeCheckError(f"variable {term.name!r} is not in the context") from None
    if isinstance(term, Apply):
        if term.symbol not in vocabulary.functions:
            raise _symbol_error("function", term.symbol)
        declared = vocabulary.functions[term.symbol]
        _check_arguments(vocabulary, context, term.symbol, declared.args, term.args)
        return declared.result
    if isinstance(term, Pair):
        return ProductSort(sort_of(vocabulary, context, term.left), sort_of(vocabulary, context, term.right))
    if isinstance(term, Proj):
        inner = sort_of(vocabulary, context, term.term)
        if not isinstance(inner, ProductSort):
            raise TypeCheckError("projection of a non-pair", "a product sort", str(inner))
        return inner.left if term.index == 1 else inner.right
    raise TypeError(f"not a term: {term!r}")


def _check_arguments(
    vocabulary: Vocabulary,
    context: Mapping[str, Sort],
    symbol: str,
    expected: Sequence[Sort],
    args: Sequence[Term],
) -> None:
    if len(expected) != len(args):
        raise TypeCheckError(f"{symbol} takes {len(expected)} arguments", str(len(expected)), str(len(args)))
    for position, (want, arg) in enumerate(zip(expected, args), start=1):
        got = sort_of(vocabulary, context, arg)
        if got != want:
            raise TypeCheckError(f"argument {position} of {symbol}", str(want), str(got))


def typecheck(
    vocabulary: Vocabulary, context: Mapping[str, Sort], node: Union[Term, Formula]
) -> Optional[Sort]:
    """The sort of a term, or ``None`` for a well-sorted formula."""
    if isinstance(node, (Var, Apply, Pair, Proj)):
        return sort_of(vocabulary, context, node)
    if isinstance(node, (Top, Bottom)):
        return None
    if isinstance(node, Atom):
        if node.symbol not in vocabulary.predicates:
            raise _symbol_error("predicate", node.symbol)
        _check_arguments(vocabulary, context, node.symbol, vocabulary.predicates[node.symbol], node.args)
        return None
    if isinstance(node, Equals):
        left = sort_of(vocabulary, context, node.left)
        right = sort_of(vocabulary, context, node.right)
        if left != right:
            raise TypeCheckError("both sides of an equation need one sort", str(left), str(right))
        return None
    if isinstance(node, (And, Or)):
        typecheck(vocabulary, context, node.left)
        typecheck(vocabulary, context, node.right)
        return None
    if isinstance(node, Not):
        typecheck(vocabulary, context, node.body)
        return None
    if isinstance(node, (Forall, Exists)):
        typecheck(vocabulary, {**context, node.var: node.sort}, node.body)
        return None
    raise TypeError(f"not a formula: {node!r}")


def _infer(
    vocabulary: Vocabulary,
    node: Union[Term, Formula],
    expected: Optional[Sort],
    bound: Mapping[str, Sort],
    found: MutableMapping[str, Sort],
) -> Optional[Sort]:
    """Record sorts of free variables from the positions they occupy."""
    if isinstance(node, Var):
        if node.name in bound:
            return bound[node.name]
        if expected is not None and node.name not in found:
            found[node.name] = expected
        return found.get(node.name)
    if isinstance(node, Apply):
        declared = vocabulary.functions.get(node.symbol)
        if declared is None:
            raise _symbol_error("function", node.symbol)
        for want, arg in zip(declared.args, node.args):
            _infer(vocabulary, arg, want, bound, found)
        return declared.result
    if isinstance(node, Pair):
        left_want = right_want = None
        if isinstance(expected, ProductSort):
            left_want, right_want = expected.left, expected.right
        left = _infer(vocabulary, node.left, left_want, bound, found)
        right = _infer(vocabulary, node.right, right_want, bound, found)
        return ProductSort(left, right) if left is not None and right is not None else None
    if isinstance(node, Proj):
        inner = _infer(vocabulary, node.term, None, bound, found)
        if isinstance(inner, ProductSort):
            return inner.left if node.index == 1 else inner.right
        return None
    if isinstance(node, Atom):
        arity = vocabulary.predicates.get(node.symbol)
        if arity is None:
            raise _symbol_error("predicate", node.symbol)
        for want, arg in zip(arity, node.args):
            _infer(vocabulary, arg, want, bound, found)
    elif isinstance(node, Equals):
        left = _infer(vocabulary, node.left, None, bound, found)
        right = _infer(vocabulary, node.right, left, bound, found)
        if left is None and right is not None:
            _infer(vocabulary, node.left, right, bound, found)
    elif isinstance(node, (And, Or)):
        _infer(vocabulary, node.left, None, bound, found)
        _infer(vocabulary, node.right, None, bound, found)
    elif isinstance(node, Not):
        _infer(vocabulary, node.body, None, bound, found)
    elif isinstance(node, (Forall, Exists)):
        _infer(vocabulary, node.body, None, {**bound, node.var: node.sort}, found)
    return None


def infer_context(vocabulary: Vocabulary, sequent: Sequent) -> Context:
    """The declared context, or the free variables typed from symbol arities."""
    if sequent.context is not None:
        return sequent.context
    found: Dict[str, Sort] = {}
    # equations may only be typed once a later occurrence has fixed a side
    for _ in range(2):
        for side in (sequent.left, sequent.right):
            _infer(vocabulary, side, None, {}, found)
    context = []
    for name in free_variables(sequent):
        if name not in found:
            raise TypeCheckError(f"cannot infer the sort of variable {name!r}; declare it in a context")
        context.append((name, found[name]))
    return tuple(context)


def typecheck_sequent(vocabulary: Vocabulary, sequent: Sequent) -> Context:
    context = infer_context(vocabulary, sequent)
    scope = dict(context)
    typecheck(vocabulary, scope, sequent.left)
    typecheck(vocabulary, scope, sequent.right)
    return context


# =============================================================================
# INTERPRETATION
# =============================================================================


def context_object(model: Model, signature: Signature, context: Context) -> Tuple[BaseObject, Tuple[BaseMorphism, ...]]:
    """The product of the context's sort objects, with one projection per variable."""
    return _product(tuple(signature.sort_object(s) for _, s in context), model.base_kind)


@lru_cache(maxsize=512)
def _product(objects: Tuple[BaseObject, ...], kind: BaseKind) -> Tuple[BaseObject, Tuple[BaseMorphism, ...]]:
    return product_of(objects, kind)


def _into_arity(
    model: Model, signature: Signature, context: Context, dom: BaseObject, args: Sequence[Term]
) -> BaseMorphism:
    maps = [interpret_term(model, signature, context, arg) for arg in args]
    if len(maps) == 1:
        return maps[0]
    return pairing(dom, maps)


def interpret_term(model: Model, signature: Signature, context: Context, term: Term) -> BaseMorphism:
    """``[[term]] : [[context]] -> [[sort]]``."""
    dom, projections = context_object(model, signature, context)
    if isinstance(term, Var):
        for (name, _), projection in zip(reversed(context), reversed(projections)):
            if name == term.name:
                return projection
        raise TypeCheckError(f"variable {term.name!r} is not in the context")
    if isinstance(term, Apply):
        if term.symbol not in signature.functions:
            raise _symbol_error("function", term.symbol)
        return compose(_into_arity(model, signature, context, dom, term.args), signature.functions[term.symbol])
    if isinstance(term, Pair):
        return pairing(dom, [
            interpret_term(model, signature, context, term.left),
            interpret_term(model, signature, context, term.right),
        ])
    if isinstance(term, Proj):
        inner = interpret_term(model, signature, context, term.term)
        sort = sort_of(signature.vocabulary, dict(context), term.term)
        if not isinstance(sort, ProductSort):
            raise TypeCheckError("projection of a non-pair", "a product sort", str(sort))
        _, p1, p2 = product(signature.sort_object(sort.left), signature.sort_object(sort.right))
        return compose(inner, p1 if term.index == 1 else p2)
    raise TypeError(f"not a term: {term!r}")


def _without(context: Context, name: str) -> Context:
    return tuple((n, s) for n, s in context if n != name)


def _weakening(model: Model, signature: Signature, big: Context, small: Context) -> BaseMorphism:
    """The projection ``[[big]] -> [[small]]`` for ``small`` a sub-context of ``big``."""
    dom, _ = context_object(model, signature, big)
    return pairing(dom, [interpret_term(model, signature, big, Var(name)) for name, _ in small])


def interpret_formula(model: Model, signature: Signature, context: Context, formula: Formula) -> Predicate:
    """``[[formula]]`` as a predicate over ``[[context]]``."""
    obj, _ = context_object(model, signature, context)
    if isinstance(formula, Top):
        return model.top(obj)
    if isinstance(formula, Bottom):
        return model.bottom(obj)
    if isinstance(formula, Atom):
        if formula.symbol not in signature.predicates:
            raise _symbol_error("predicate", formula.symbol)
        v = signature.predicates[formula.symbol]
        return pullback(model, _into_arity(model, signature, context, obj, formula.args), v)
    if isinstance(formula, And):
        return meet(model, interpret_formula(model, signature, context, formula.left),
                    interpret_formula(model, signature, context, formula.right))
    if isinstance(formula, Or):
        return join(model, interpret_formula(model, signature, context, formula.left),
                    interpret_formula(model, signature, context, formula.right))
    if isinstance(formula, Not):
        return ortho(model, interpret_formula(model, signature, context, formula.body))
    if isinstance(formula, Equals):
        sort = sort_of(signature.vocabulary, dict(context), formula.left)
        carrier = signature.sort_object(sort)
        delta = diagonal(carrier)
        eq = equality_along(model, delta, model.top(carrier))
        both = pairing(obj, [
            interpret_term(model, signature, context, formula.left),
            interpret_term(model, signature, context, formula.right),
        ])
        return pullback(model, both, eq)
    if isinstance(formula, (Forall, Exists)):
        rest = _without(context, formula.var)
        extended = rest + ((formula.var, formula.sort),)
        body = interpret_formula(model, signature, extended, formula.body)
        forget = _weakening(model, signature, extended, rest)
        along = forall_along if isinstance(formula, Forall) else exists_along
        quantified = along(model, forget, body)
        if rest == context:
            return quantified
        return pullback(model, _weakening(model, signature, context, rest), quantified)
    raise TypeError(f"not a formula: {formula!r}")


def interpret_substitution(
    model: Model,
    signature: Signature,
    target: Context,
    source: Context,
    mapping: Mapping[str, Term],
) -> BaseMorphism:
    """``[[target]] -> [[source]]`` sending each source variable to its term.

    Source variables absent from ``mapping`` are sent to themselves.
    """
    dom, _ = context_object(model, signature, target)
    scope = dict(target)
    maps = []
    for name, sort in source:
        term = mapping.get(name, Var(name))
        got = sort_of(signature.vocabulary, scope, term)
        if got != sort:
            raise TypeCheckError(f"substitution for {name!r}", str(sort), str(got))
        maps.append(interpret_term(model, signature, target, term))
    return pairing(dom, maps)


# =============================================================================
# SEQUENT VALIDITY
# =============================================================================


def point_assignment(context: Context, obj: BaseObject, point: object) -> Dict[str, str]:
    """Variable name -> point label for a point of the context object."""
    assert isinstance(point, tuple)
    return {name: point_label(value) for (name, _), value in zip(context, point)}


def check_sequent(model: Model, signature: Signature, sequent: Sequent) -> LawReport:
    """Valid iff the left side is below the right side at every point of the context."""
    check_domain(model, signature)
    context = typecheck_sequent(signature.vocabulary, sequent)
    obj, _ = context_object(model, signature, context)
    left = interpret_formula(model, signature, context, sequent.left)
    right = interpret_formula(model, signature, context, sequent.right)
    point = first_violation(model, left, right)
    witness = None
    if point is not None:
        index = obj.index(point)
        witness = {
            "point": point_assignment(context, obj, point),
            "left": model.omega.label(left.table[index]),
            "right": model.omega.label(right.table[index]),
        }
    logger.debug("sequent %s: %s", format_sequent(sequent), "valid" if point is None else "invalid")
    return LawReport.single(
        "sequent", point is None, obj.size, witness, extra={"sequent": format_sequent(sequent)}
    )


def is_valid(model: Model, signature: Signature, sequent: Sequent) -> bool:
    return check_sequent(model, signature, sequent).passed


def check_domain(model: Model, signature: Signature) -> None:
    for name, obj in signature.sorts.items():
        if obj.kind is not model.base_kind:
            raise DomainMismatchError(f"sort {name!r} is a {obj.kind.value} object, model is {model.base_kind.value}")


def predicate_tables(model: Model, predicates: Mapping[str, Predicate]) -> Dict[str, Dict[str, str]]:
    return {name: v.to_mapping(model.omega) for name, v in sorted(predicates.items())}


def function_tables(functions: Mapping[str, BaseMorphism]) -> Dict[str, Dict[str, str]]:
    return {name: f.to_mapping() for name, f in sorted(functions.items())}
