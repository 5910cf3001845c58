"""Request-level operations shared by the command line and the tool server.

Each command takes loaded values, runs one workbench operation and returns an
:class:`Outcome`: a JSON-ready report plus whether every law held. Loading
files and mapping outcomes to exit codes or tool results is left to callers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from .algebra import (
    AlgebraClass,
    FiniteAlgebra,
    check_laws,
    find_distributivity_counterexample,
    subspace_lattice,
)
from .base import BaseKind, BaseObject, finconv, finset, fintop, validate_object
from .config import DEFAULT_BOUNDS, DEFAULT_SEED, Bounds
from .errors import InputError
from .hyperdoctrine import (
    Model,
    check_adjunction,
    check_beck_chevalley,
    check_comprehension_adjunction,
    check_generic_object,
    check_lifting,
    fibre_array,
    frobenius_report,
    iter_fibre,
    validate_model,
)
from .logic import (
    PoolEntry,
    RuleSet,
    Sequent,
    Signature,
    Top,
    check_rule_soundness,
    check_sequent,
    format_formula,
    infer_context,
    interpret_formula,
    model_pool,
    parse_judgement,
    parse_sequent,
    search_countermodels,
)
from .reports import LawCheck, LawReport
from .serialization import (
    algebra_to_dict,
    builtin_algebra,
    category_to_dict,
    model_from_dict,
    predicate_to_dict,
    resolve_omega,
    subspace_spec_from_dict,
    universe_to_dict,
)
from .tripos_topos import build_topos, check_category_laws, v_build, v_count

logger = logging.getLogger(__name__)

LAWS = ("adjunction", "bc", "frobenius", "comprehension", "generic", "lifting")
QUANTIFIERS = ("forall", "exists", "equality")


@dataclass(frozen=True)
class Outcome:
    """A JSON-ready report; ``ok`` is false when a law fails or a countermodel exists."""

    report: Dict[str, Any]
    ok: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "report": self.report}


def _from_reports(reports: Sequence[LawReport], **extra: Any) -> Outcome:
    if len(reports) == 1 and not extra:
        return Outcome(reports[0].to_dict(), reports[0].passed)
    passed = all(r.passed for r in reports)
    body: Dict[str, Any] = {"status": "pass" if passed else "fail"}
    body.update(extra)
    body["reports"] = [r.to_dict() for r in reports]
    return Outcome(body, passed)


# =============================================================================
# ALGEBRA
# =============================================================================


def algebra_check(algebra: FiniteAlgebra, tag: Optional[str] = None) -> Outcome:
    try:
        cls = AlgebraClass(tag) if tag is not None else None
    except ValueError:
        choices = ", ".join(c.value for c in AlgebraClass)
        raise InputError(f"unknown algebra class {tag!r}; choose from {choices}") from None
    report = check_laws(algebra, cls)
    data = report.to_dict()
    counterexample = find_distributivity_counterexample(algebra)
    if counterexample is not None:
        data["distributivity_counterexample"] = list(counterexample)
    return Outcome(data, report.passed)


def algebra_generate(
    name: Optional[str] = None,
    subspaces: Optional[Mapping[str, Any]] = None,
    bounds: Optional[Bounds] = None,
) -> Outcome:
    """A builtin algebra by name, or the subspace lattice a spec generates."""
    if subspaces is not None:
        algebra = subspace_lattice(subspace_spec_from_dict(subspaces, bounds))
    elif name is not None:
        found = builtin_algebra(name, bounds)
        if found is None:
            raise InputError(f"unknown algebra {name!r}; use 2, mo2, o6, boolean:K or chain:N")
        algebra = found
    else:
        raise InputError("give an algebra name or a subspace spec")
    return Outcome(algebra_to_dict(algebra))


# =============================================================================
# MODELS
# =============================================================================


def sized_objects(kind: BaseKind, sizes: Sequence[int]) -> List[BaseObject]:
    """Objects ``X, Y, Z, ...`` with points ``x1, x2, ...``; structured kinds are discrete."""
    objects = []
    for position, n in enumerate(sizes):
        if n < 0:
            raise InputError("object sizes must be non-negative")
        letter = "xyzuvw"[position] if position < 6 else f"o{position}_"
        points = [f"{letter}{i + 1}" for i in range(n)]
        name = letter.upper() if position < 6 else f"O{position}"
        subsets = [[p for k, p in enumerate(points) if mask >> k & 1] for mask in range(1 << n)]
        if kind is BaseKind.FINSET:
            objects.append(finset(points, name))
        elif kind is BaseKind.FINTOP:
            objects.append(fintop(points, subsets, name))
        else:
            objects.append(finconv(points, subsets, name))
    return objects


def finset_model(
    omega: FiniteAlgebra,
    sizes: Sequence[int],
    bounds: Optional[Bounds] = None,
    sort_names: Sequence[str] = (),
    name: str = "",
) -> Model:
    """A finite-set model whose objects are ``X, Y, ...`` or, given names, the sorts."""
    if sort_names:
        objects = {
            sort: finset([f"p{i}" for i in range(n)], sort) for sort, n in zip(sort_names, sizes)
        }
    else:
        objects = {obj.name: obj for obj in sized_objects(BaseKind.FINSET, sizes)}
    return Model(BaseKind.FINSET, omega, bounds=bounds or DEFAULT_BOUNDS, objects=objects, name=name)


def resolve_model(
    model: Optional[Mapping[str, Any]] = None,
    omega: Optional[Union[str, Mapping[str, Any]]] = None,
    sizes: Sequence[int] = (),
    sort_names: Sequence[str] = (),
    bounds: Optional[Bounds] = None,
) -> Model:
    """An inline model document, or a finite-set model over ``omega`` with the given sizes."""
    if model is not None:
        return model_from_dict(model, None, bounds)
    if omega is None:
        raise InputError("give a model or an omega")
    name = omega if isinstance(omega, str) else "omega"
    return finset_model(resolve_omega(omega, None, bounds), sizes, bounds, sort_names, name)


def pick_objects(
    model: Model, sizes: Optional[Sequence[int]] = None, names: Optional[Sequence[str]] = None
) -> List[BaseObject]:
    if names:
        return [model.object(name) for name in names]
    if sizes:
        return sized_objects(model.base_kind, sizes)
    return list(model.objects.values())


def model_validate(model: Model) -> Outcome:
    reports = [validate_model(model)]
    reports += [validate_object(obj) for obj in model.objects.values()]
    return _from_reports(reports, model=model.name)


def model_fibre(model: Model, obj: BaseObject, limit: Optional[int] = None) -> Outcome:
    rows = fibre_array(model, obj)
    shown = rows if limit is None else rows[:limit]
    return Outcome({
        "object": str(obj),
        "fibre_rule": model.rule.value,
        "size": int(len(rows)),
        "predicates": [
            {obj.label(i): model.omega.label(e) for i, e in enumerate(row)} for row in shown
        ],
    })


def model_eval(model: Model, signature: Signature, text: str) -> Outcome:
    """Interpret ``[x:S, ...] phi`` (context optional) as a predicate over the context."""
    context, formula = parse_judgement(text)
    context = infer_context(signature.vocabulary, Sequent(formula, Top(), context))
    value = interpret_formula(model, signature, context, formula)
    return Outcome({
        "formula": format_formula(formula),
        "context": [f"{name}:{sort}" for name, sort in context],
        "value": predicate_to_dict(model, value),
    })


# =============================================================================
# HYPERDOCTRINE LAWS
# =============================================================================


def _need(objects: Sequence[BaseObject], count: int, law: str) -> None:
    if len(objects) < count:
        raise InputError(f"{law} needs {count} objects, got {len(objects)}")


def comprehension_suite(model: Model, x: BaseObject, y: BaseObject) -> LawReport:
    """The comprehension adjunction for every predicate over ``x``."""
    instances = 0
    checked = 0
    for v in iter_fibre(model, x):
        report = check_comprehension_adjunction(model, y, v)
        instances += report.instances
        checked += 1
        failure = report.first_failure
        if failure is not None:
            witness = {"v": v.to_mapping(model.omega), "law": failure.law, **dict(failure.witness or {})}
            return LawReport.single("comprehension-adjunction", False, instances, witness,
                                    extra={"predicates": checked})
    return LawReport.single("comprehension-adjunction", True, instances, extra={"predicates": checked})


def law_check(
    model: Model,
    law: str,
    objects: Sequence[BaseObject],
    which: Optional[str] = None,
) -> Outcome:
    """One hyperdoctrine law over the given objects ``X, Y, Z``.

    Without ``which``, adjunction and lifting run for every quantifier and
    Beck-Chevalley for ``forall`` and ``exists``.
    """
    if law not in LAWS:
        raise InputError(f"unknown law {law!r}; choose from {', '.join(LAWS)}")
    if which is not None and which not in QUANTIFIERS:
        raise InputError(f"unknown quantifier {which!r}")
    reports: List[LawReport] = []
    if law in ("adjunction", "lifting"):
        _need(objects, 1, law)
        y = objects[1] if len(objects) > 1 else None
        check = check_adjunction if law == "adjunction" else check_lifting
        for q in [which] if which else [q for q in QUANTIFIERS if y is not None or q == "equality"]:
            reports.append(check(model, q, objects[0], y))  # type: ignore[arg-type]
    elif law == "bc":
        _need(objects, 3, law)
        for q in [which] if which else ["forall", "exists"]:
            reports.append(check_beck_chevalley(model, q, objects[0], objects[1], objects[2]))  # type: ignore[arg-type]
    elif law == "frobenius":
        _need(objects, 2, law)
        reports.append(frobenius_report(model, objects[0], objects[1]))
    elif law == "comprehension":
        _need(objects, 2, law)
        reports.append(comprehension_suite(model, objects[0], objects[1]))
    else:
        _need(objects, 1, law)
        reports.append(check_generic_object(model, objects[0], objects[1] if len(objects) > 1 else None))
    return _from_reports(reports)


# =============================================================================
# TOPOS AND UNIVERSE
# =============================================================================


def topos_build(
    model: Model, size_cap: Optional[int] = None, seed: int = DEFAULT_SEED, bounds: Optional[Bounds] = None
) -> Outcome:
    data = build_topos(model, size_cap, bounds=bounds)
    laws = check_category_laws(data, bounds, seed)
    body = category_to_dict(data)
    body["laws"] = laws.to_dict()
    return Outcome(body, laws.passed)


def vset_count(omega: FiniteAlgebra, rank: int, bounds: Optional[Bounds] = None) -> Outcome:
    return Outcome({"omega": list(omega.carrier), "counts": v_count(omega, rank, bounds)})


def vset_build(
    omega: FiniteAlgebra,
    rank: int,
    cap: Optional[int] = None,
    bounds: Optional[Bounds] = None,
    elements: bool = True,
) -> Outcome:
    universe = v_build(omega, rank, cap, bounds)
    body = universe_to_dict(universe, elements)
    expected = v_count(omega, rank, bounds)
    check = LawCheck("matches-closed-form", universe.counts == expected, rank + 1,
                     None if universe.counts == expected else {"expected": expected})
    body["check"] = check.to_dict()
    return Outcome(body, check.passed)


# =============================================================================
# LOGIC
# =============================================================================


def _default_sort(model: Model) -> str:
    if "S" in model.objects or not model.objects:
        return "S"
    return next(iter(model.objects))


def logic_check(model: Model, signature: Optional[Signature], text: str) -> Outcome:
    """Validity under a signature, or under every interpretation in the model without one."""
    sequent = parse_sequent(text)
    if signature is not None:
        report = check_sequent(model, signature, sequent)
    else:
        entry = PoolEntry(model.name or "model", model)
        report = search_countermodels(sequent, [entry], model.bounds, _default_sort(model))
    return Outcome(report.to_dict(), report.passed)


def logic_soundness(
    model: Model,
    signature: Optional[Signature],
    ruleset: RuleSet,
    rules: Optional[Sequence[str]] = None,
    samples: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    exhaustive: bool = False,
) -> Outcome:
    signature = signature or Signature(dict(model.objects))
    selected = [ruleset.rule(name) for name in rules] if rules else list(ruleset.rules)
    reports = [
        check_rule_soundness(model, signature, rule, samples, seed, exhaustive, model.bounds)
        for rule in selected
    ]
    return _from_reports(reports, ruleset=ruleset.name)


def logic_countermodel(
    text: str,
    omegas: Sequence[tuple],
    sizes: Sequence[int] = (1, 2),
    bounds: Optional[Bounds] = None,
) -> Outcome:
    pool = model_pool(omegas, sizes, bounds=bounds)
    report = search_countermodels(parse_sequent(text), pool, bounds)
    return Outcome(report.to_dict(), report.passed)
