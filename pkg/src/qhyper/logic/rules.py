"""Inference rules as data and a seeded soundness harness.

A rule is a list of premise sequents and a conclusion sequent written over
metavariables: predicate and function symbols the rule declares with their
arities. An instantiation interprets every metavariable in a model; the rule is
sound there when valid premises always give a valid conclusion.

Side conditions ``{"fresh": "x", "notin": "phi"}`` say the eigenvariable ``x``
never occurs as an argument of the metavariable ``phi`` and is not declared in
the conclusion's context. They are checked when a rule is loaded.
"""

from __future__ import annotations

import itertools
import json
import logging
import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..base import BaseMorphism, enumerate_morphisms
from ..config import DEFAULT_SEED, Bounds
from ..errors import CapacityError, InputError, LiftingError, StructuralError
from ..hyperdoctrine import Model, Predicate, fibre_array
from ..reports import LawCheck, LawReport
from .parser import parse_sequent, parse_sort
from .semantics import (
    FunctionType,
    Signature,
    Vocabulary,
    check_sequent,
    function_tables,
    predicate_tables,
    typecheck_sequent,
)
from .syntax import Sequent, format_sequent, free_variables, predicate_symbols

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SideCondition:
    fresh: str
    notin: str


@dataclass(frozen=True)
class Rule:
    name: str
    premises: Tuple[Sequent, ...]
    conclusion: Sequent
    metavariables: Vocabulary = field(default_factory=Vocabulary)
    side_conditions: Tuple[SideCondition, ...] = ()
    description: str = ""

    def __post_init__(self) -> None:
        for sequent in (*self.premises, self.conclusion):
            typecheck_sequent(self.metavariables, sequent)
        for condition in self.side_conditions:
            self._check_side_condition(condition)

    def _check_side_condition(self, condition: SideCondition) -> None:
        if condition.notin not in self.metavariables.predicates:
            raise StructuralError(f"rule {self.name}", f"{condition.notin!r} is not a predicate metavariable")
        for sequent in (*self.premises, self.conclusion):
            for side in (sequent.left, sequent.right):
                for atom in predicate_symbols(side):
                    if atom.symbol != condition.notin:
                        continue
                    used = {v for arg in atom.args for v in free_variables(arg)}
                    if condition.fresh in used:
                        raise StructuralError(
                            f"rule {self.name}",
                            f"eigenvariable {condition.fresh!r} occurs in {condition.notin!r}",
                        )
        declared = typecheck_sequent(self.metavariables, self.conclusion)
        if any(name == condition.fresh for name, _ in declared):
            raise StructuralError(
                f"rule {self.name}", f"eigenvariable {condition.fresh!r} is free in the conclusion"
            )


@dataclass(frozen=True)
class RuleSet:
    name: str
    rules: Tuple[Rule, ...]

    def rule(self, name: str) -> Rule:
        for rule in self.rules:
            if rule.name == name:
                return rule
        raise InputError(f"rule set {self.name!r} has no rule {name!r}")

    @property
    def names(self) -> List[str]:
        return [rule.name for rule in self.rules]


# =============================================================================
# LOADING
# =============================================================================


def rule_from_dict(data: Mapping[str, Any]) -> Rule:
    try:
        name = str(data["name"])
        predicates = {
            symbol: tuple(parse_sort(s) for s in sorts)
            for symbol, sorts in data.get("predicates", {}).items()
        }
        functions = {
            symbol: FunctionType(tuple(parse_sort(s) for s in spec["args"]), parse_sort(spec["result"]))
            for symbol, spec in data.get("functions", {}).items()
        }
        premises = tuple(parse_sequent(text) for text in data.get("premises", []))
        conclusion = parse_sequent(data["conclusion"])
        conditions = tuple(
            SideCondition(str(c["fresh"]), str(c["notin"])) for c in data.get("side_conditions", [])
        )
    except KeyError as e:
        raise InputError(f"rule is missing the {e.args[0]!r} field") from None
    return Rule(name, premises, conclusion, Vocabulary(functions, predicates), conditions,
                str(data.get("description", "")))


def ruleset_from_dict(data: Mapping[str, Any]) -> RuleSet:
    if "rules" not in data:
        raise InputError("rule set needs a 'rules' list")
    rules = tuple(rule_from_dict(item) for item in data["rules"])
    names = [rule.name for rule in rules]
    if len(set(names)) != len(names):
        raise InputError("rule names must be unique")
    return RuleSet(str(data.get("name", "rules")), rules)


def load_ruleset(path: Union[str, Path]) -> RuleSet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read rule set {path}: {e}") from None
    try:
        return ruleset_from_dict(json.loads(text))
    except json.JSONDecodeError as e:
        raise InputError(f"rule set {path} is not valid JSON: {e}") from None


def _packaged(name: str) -> RuleSet:
    text = resources.files("qhyper.logic").joinpath("data", name).read_text(encoding="utf-8")
    return ruleset_from_dict(json.loads(text))


def baseline_rules() -> RuleSet:
    """Single-formula sequent rules for orthomodular logic with quantifiers and equality."""
    return _packaged("baseline_rules.json")


def classical_schemas() -> RuleSet:
    """Distributivity and Frobenius: sound for Boolean truth values only."""
    return _packaged("classical_schemas.json")


# =============================================================================
# SOUNDNESS
# =============================================================================


Candidate = Union[Predicate, BaseMorphism]


def instantiation_space(
    model: Model, signature: Signature, rule: Rule, bounds: Bounds
) -> List[Tuple[str, List[Candidate]]]:
    """Every admissible interpretation of each metavariable, by sorted symbol name."""
    space: List[Tuple[str, List[Candidate]]] = []
    vocabulary = rule.metavariables
    for symbol in sorted(vocabulary.predicates):
        over = signature.arity_object(vocabulary.predicates[symbol])
        rows = fibre_array(model, over)
        space.append((symbol, [Predicate(over, tuple(int(e) for e in row)) for row in rows]))
    for symbol in sorted(vocabulary.functions):
        declared = vocabulary.functions[symbol]
        dom, cod = signature.arity_object(declared.args), signature.sort_object(declared.result)
        space.append((symbol, list(enumerate_morphisms(dom, cod, bounds))))
    return space


def _instantiate(
    signature: Signature, rule: Rule, chosen: Sequence[Tuple[str, Candidate]]
) -> Signature:
    predicates = {s: c for s, c in chosen if isinstance(c, Predicate)}
    functions = {s: c for s, c in chosen if isinstance(c, BaseMorphism)}
    return signature.extend(rule.metavariables, functions, predicates)


def _choices(
    space: Sequence[Tuple[str, List[Candidate]]],
    rule: Rule,
    seed: int,
    samples: Optional[int],
) -> Iterator[Tuple[int, List[Tuple[str, Candidate]]]]:
    if samples is None:
        ranges = [range(len(candidates)) for _, candidates in space]
        for i, picks in enumerate(itertools.product(*ranges)):
            yield i, [(symbol, candidates[k]) for (symbol, candidates), k in zip(space, picks)]
        return
    for i in range(samples):
        rng = random.Random(f"{seed}:{rule.name}:{i}")
        yield i, [(symbol, candidates[rng.randrange(len(candidates))]) for symbol, candidates in space]


def check_rule_soundness(
    model: Model,
    signature: Signature,
    rule: Rule,
    samples: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    exhaustive: bool = False,
    bounds: Optional[Bounds] = None,
) -> LawReport:
    """Premises valid implies conclusion valid, on sampled or all instantiations.

    Sample ``i`` draws from ``random.Random(f"{seed}:{rule}:{i}")``, so any
    sample can be replayed on its own.
    """
    bounds = bounds or model.bounds
    space = instantiation_space(model, signature, rule, bounds)
    total = 1
    for _, candidates in space:
        total *= len(candidates)
    if exhaustive and total > bounds.law_instances:
        raise CapacityError(f"instantiations of rule {rule.name}", total, bounds.law_instances)
    if samples is not None and samples < 1:
        raise InputError(f"samples must be positive, got {samples}")
    count = bounds.samples if samples is None else samples
    # a space no larger than the sample budget is walked in full
    if exhaustive or total <= count:
        count, mode = None, "exhaustive"
    else:
        mode = "sampled"

    checked = held = 0
    witness: Optional[Dict[str, Any]] = None
    if total:
        for i, chosen in _choices(space, rule, seed, count):
            checked += 1
            instance = _instantiate(signature, rule, chosen)
            try:
                if not all(check_sequent(model, instance, p).passed for p in rule.premises):
                    continue
                held += 1
                report = check_sequent(model, instance, rule.conclusion)
            except LiftingError as e:
                witness = {"sample": i, "lifting": e.quantifier, **e.witness}
                break
            if not report.passed:
                witness = {
                    "sample": i,
                    "predicates": predicate_tables(model, instance.predicates),
                    "functions": function_tables(instance.functions),
                    "conclusion": format_sequent(rule.conclusion),
                    **dict(report.witness or {}),
                }
                break
    logger.info("rule %s: %d instantiations, premises held in %d", rule.name, checked, held)
    check = LawCheck("sound", witness is None, checked, witness)
    return LawReport(
        f"soundness-{rule.name}",
        (check,),
        mode=mode,
        seed=seed if mode == "sampled" else None,
        extra={"premises_held": held, "instantiation_space": total},
    )


def check_ruleset_soundness(
    model: Model,
    signature: Signature,
    ruleset: RuleSet,
    samples: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    exhaustive: bool = False,
    bounds: Optional[Bounds] = None,
) -> List[LawReport]:
    return [
        check_rule_soundness(model, signature, rule, samples, seed, exhaustive, bounds)
        for rule in ruleset.rules
    ]
