"""Abstract syntax of typed first-order quantum logic, with a printer.

The printer emits the ASCII grammar the parser reads, parenthesising only
where precedence (``'`` over ``&`` over ``|``) or maximal quantifier scope
demands it, so ``parse(format(node)) == node``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple, Union

# =============================================================================
# SORTS
# =============================================================================


@dataclass(frozen=True)
class BaseSort:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ProductSort:
    left: "Sort"
    right: "Sort"

    def __str__(self) -> str:
        right = f"({self.right})" if isinstance(self.right, ProductSort) else str(self.right)
        return f"{self.left}*{right}"


Sort = Union[BaseSort, ProductSort]

# =============================================================================
# TERMS
# =============================================================================


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Apply:
    """Function symbol application; constants are written ``c()``."""

    symbol: str
    args: Tuple["Term", ...] = ()


@dataclass(frozen=True)
class Pair:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Proj:
    index: int  # 1 for fst, 2 for snd
    term: "Term"


Term = Union[Var, Apply, Pair, Proj]

# =============================================================================
# FORMULAS
# =============================================================================


@dataclass(frozen=True)
class Atom:
    """Predicate symbol application; nullary predicates are bare names."""

    symbol: str
    args: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Not:
    """Ortho-negation, written postfix as ``'``."""

    body: "Formula"


@dataclass(frozen=True)
class Equals:
    left: Term
    right: Term


@dataclass(frozen=True)
class Forall:
    var: str
    sort: Sort
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    sort: Sort
    body: "Formula"


Formula = Union[Atom, Top, Bottom, And, Or, Not, Equals, Forall, Exists]
Quantified = (Forall, Exists)

Context = Tuple[Tuple[str, Sort], ...]


@dataclass(frozen=True)
class Sequent:
    """``[x:S, ...] left |- right``; ``context`` is ``None`` when left to inference."""

    left: Formula
    right: Formula
    context: Optional[Context] = None


# =============================================================================
# PRINTER
# =============================================================================


def format_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Apply):
        return f"{term.symbol}({', '.join(format_term(a) for a in term.args)})"
    if isinstance(term, Pair):
        return f"<{format_term(term.left)}, {format_term(term.right)}>"
    if isinstance(term, Proj):
        return f"{'fst' if term.index == 1 else 'snd'}({format_term(term.term)})"
    raise TypeError(f"not a term: {term!r}")


_LEVEL = {Or: 1, And: 2}


def _operand(formula: Formula, level: int, right_side: bool) -> str:
    text = format_formula(formula)
    inner = _LEVEL.get(type(formula))
    if isinstance(formula, Quantified) or isinstance(formula, Equals) and level == 3:
        return f"({text})"
    if inner is not None and (inner < level or inner == level and right_side):
        return f"({text})"
    return text


def format_formula(formula: Formula) -> str:
    if isinstance(formula, Top):
        return "top"
    if isinstance(formula, Bottom):
        return "bot"
    if isinstance(formula, Atom):
        if not formula.args:
            return formula.symbol
        return f"{formula.symbol}({', '.join(format_term(a) for a in formula.args)})"
    if isinstance(formula, Equals):
        return f"{format_term(formula.left)} = {format_term(formula.right)}"
    if isinstance(formula, (And, Or)):
        level = _LEVEL[type(formula)]
        op = " & " if isinstance(formula, And) else " | "
        return _operand(formula.left, level, False) + op + _operand(formula.right, level, True)
    if isinstance(formula, Not):
        return _operand(formula.body, 3, True) + "'"
    if isinstance(formula, (Forall, Exists)):
        word = "forall" if isinstance(formula, Forall) else "exists"
        return f"{word} {formula.var}:{formula.sort}. {format_formula(formula.body)}"
    raise TypeError(f"not a formula: {formula!r}")


def format_context(context: Context) -> str:
    return "[" + ", ".join(f"{name}:{sort}" for name, sort in context) + "]"


def format_sequent(sequent: Sequent) -> str:
    body = f"{format_formula(sequent.left)} |- {format_formula(sequent.right)}"
    if sequent.context is None:
        return body
    return f"{format_context(sequent.context)} {body}"


# =============================================================================
# VARIABLES AND SUBSTITUTION
# =============================================================================


def _term_variables(term: Term) -> Iterator[str]:
    if isinstance(term, Var):
        yield term.name
    elif isinstance(term, Apply):
        for arg in term.args:
            yield from _term_variables(arg)
    elif isinstance(term, Pair):
        yield from _term_variables(term.left)
        yield from _term_variables(term.right)
    elif isinstance(term, Proj):
        yield from _term_variables(term.term)


def _formula_variables(formula: Formula, bound: frozenset) -> Iterator[str]:
    if isinstance(formula, (Atom,)):
        for arg in formula.args:
            yield from (v for v in _term_variables(arg) if v not in bound)
    elif isinstance(formula, Equals):
        for side in (formula.left, formula.right):
            yield from (v for v in _term_variables(side) if v not in bound)
    elif isinstance(formula, (And, Or)):
        yield from _formula_variables(formula.left, bound)
        yield from _formula_variables(formula.right, bound)
    elif isinstance(formula, Not):
        yield from _formula_variables(formula.body, bound)
    elif isinstance(formula, (Forall, Exists)):
        yield from _formula_variables(formula.body, bound | {formula.var})


def free_variables(node: Union[Term, Formula, Sequent]) -> Tuple[str, ...]:
    """Free variables in order of first occurrence."""
    if isinstance(node, Sequent):
        names = itertools.chain(
            _formula_variables(node.left, frozenset()), _formula_variables(node.right, frozenset())
        )
    elif isinstance(node, (Var, Apply, Pair, Proj)):
        names = _term_variables(node)
    else:
        names = _formula_variables(node, frozenset())
    return tuple(dict.fromkeys(names))


def substitute_term(term: Term, mapping: Dict[str, Term]) -> Term:
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if isinstance(term, Apply):
        return Apply(term.symbol, tuple(substitute_term(a, mapping) for a in term.args))
    if isinstance(term, Pair):
        return Pair(substitute_term(term.left, mapping), substitute_term(term.right, mapping))
    if isinstance(term, Proj):
        return Proj(term.index, substitute_term(term.term, mapping))
    raise TypeError(f"not a term: {term!r}")


def _fresh(name: str, avoid: set) -> str:
    for i in itertools.count(1):
        candidate = f"{name}_{i}"
        if candidate not in avoid:
            return candidate
    raise AssertionError("unreachable")


def substitute(formula: Formula, mapping: Dict[str, Term]) -> Formula:
    """Capture-avoiding simultaneous substitution of terms for free variables."""
    if isinstance(formula, (Top, Bottom)):
        return formula
    if isinstance(formula, Atom):
        return Atom(formula.symbol, tuple(substitute_term(a, mapping) for a in formula.args))
    if isinstance(formula, Equals):
        return Equals(substitute_term(formula.left, mapping), substitute_term(formula.right, mapping))
    if isinstance(formula, (And, Or)):
        return type(formula)(substitute(formula.left, mapping), substitute(formula.right, mapping))
    if isinstance(formula, Not):
        return Not(substitute(formula.body, mapping))
    if isinstance(formula, (Forall, Exists)):
        inner = {k: v for k, v in mapping.items() if k != formula.var}
        if not inner:
            return formula
        incoming = {v for term in inner.values() for v in _term_variables(term)}
        var, body = formula.var, formula.body
        if var in incoming:
            avoid = incoming | set(free_variables(body)) | set(inner)
            renamed = _fresh(var, avoid)
            body = substitute(body, {var: Var(renamed)})
            var = renamed
        return type(formula)(var, formula.sort, substitute(body, inner))
    raise TypeError(f"not a formula: {formula!r}")


def predicate_symbols(formula: Formula) -> Tuple[Atom, ...]:
    """Every atom in the formula, in order of occurrence."""
    if isinstance(formula, Atom):
        return (formula,)
    if isinstance(formula, (And, Or)):
        return predicate_symbols(formula.left) + predicate_symbols(formula.right)
    if isinstance(formula, (Not, Forall, Exists)):
        return predicate_symbols(formula.body)
    return ()


def function_applications(node: Union[Term, Formula]) -> Tuple[Apply, ...]:
    if isinstance(node, Apply):
        return (node,) + tuple(a for arg in node.args for a in function_applications(arg))
    if isinstance(node, Pair):
        return function_applications(node.left) + function_applications(node.right)
    if isinstance(node, Proj):
        return function_applications(node.term)
    if isinstance(node, (Atom,)):
        return tuple(a for arg in node.args for a in function_applications(arg))
    if isinstance(node, Equals):
        return function_applications(node.left) + function_applications(node.right)
    if isinstance(node, (And, Or)):
        return function_applications(node.left) + function_applications(node.right)
    if isinstance(node, (Not, Forall, Exists)):
        return function_applications(node.body)
    return ()
