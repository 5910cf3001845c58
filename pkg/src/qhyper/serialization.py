"""JSON formats for algebras, base objects, models, signatures and results.

Every reader raises :class:`InputError` for documents it cannot understand and
lets the structural checks of the constructed values speak for themselves.
Writers produce labels, never indices, so output is stable across runs.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from .algebra import (
    FiniteAlgebra,
    SubspaceLatticeSpec,
    boolean_algebra,
    chain,
    from_order,
    mo2,
    o6,
    spec_from_vectors,
    two_chain,
)
from .base import (
    BaseKind,
    BaseMorphism,
    BaseObject,
    validate_morphism,
)
from .config import DEFAULT_BOUNDS, Bounds
from .errors import InputError, ModelError
from .hyperdoctrine import FibreRule, Model, Predicate
from .logic.parser import parse_sort
from .logic.semantics import FunctionType, Signature, Vocabulary
from .tripos_topos import CategoryData, VElement, VUniverse, summarize

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def read_json(path: PathLike) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def dump_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _field(data: Mapping[str, Any], key: str, what: str) -> Any:
    if not isinstance(data, Mapping):
        raise InputError(f"{what} must be a JSON object")
    try:
        return data[key]
    except KeyError:
        raise InputError(f"{what} is missing the {key!r} field") from None


# =============================================================================
# ALGEBRAS
# =============================================================================


def algebra_from_dict(data: Mapping[str, Any]) -> FiniteAlgebra:
    """Read an algebra; ``meet``/``join``/``bot``/``top`` are derived from ``leq`` when absent."""
    carrier = _field(data, "carrier", "algebra")
    leq = _field(data, "leq", "algebra")
    tag = data.get("class", "bounded-lattice")
    if "meet" not in data or "join" not in data:
        return from_order(carrier, leq, data.get("ortho"), data.get("impl"), tag)
    return FiniteAlgebra(
        tuple(carrier), leq, data["meet"], data["join"],
        bot=_field(data, "bot", "algebra"), top=_field(data, "top", "algebra"),
        ortho=data.get("ortho"), impl=data.get("impl"), class_tag=tag,
    )


def algebra_to_dict(algebra: FiniteAlgebra) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "carrier": list(algebra.carrier),
        "leq": algebra.leq.tolist(),
        "meet": algebra.meet.tolist(),
        "join": algebra.join.tolist(),
        "bot": algebra.bot,
        "top": algebra.top,
        "class": algebra.class_tag.value,
    }
    if algebra.ortho is not None:
        data["ortho"] = algebra.ortho.tolist()
    if algebra.impl is not None:
        data["impl"] = algebra.impl.tolist()
    return data


def subspace_spec_from_dict(data: Mapping[str, Any], bounds: Optional[Bounds] = None) -> SubspaceLatticeSpec:
    bounds = bounds or DEFAULT_BOUNDS
    return spec_from_vectors(
        int(_field(data, "dim", "subspace spec")),
        _field(data, "generators", "subspace spec"),
        int(data.get("size_cap", bounds.subspace_size)),
    )


def builtin_algebra(name: str, bounds: Optional[Bounds] = None) -> Optional[FiniteAlgebra]:
    """``2``, ``mo2``, ``o6``, ``boolean:K`` or ``chain:N``; ``None`` for other names."""
    key = name.strip().lower()
    if key == "2":
        return two_chain()
    if key == "mo2":
        return mo2()
    if key == "o6":
        return o6()
    family, _, arg = key.partition(":")
    if family in ("boolean", "chain") and arg:
        try:
            size = int(arg)
        except ValueError:
            raise InputError(f"{family} needs an integer, got {arg!r}") from None
        return boolean_algebra(size, bounds) if family == "boolean" else chain(size, bounds)
    return None


def resolve_omega(spec: Union[str, Mapping[str, Any]], base_dir: Optional[Path] = None,
                  bounds: Optional[Bounds] = None) -> FiniteAlgebra:
    """A builtin name, a path to an algebra file or an inline algebra object."""
    if isinstance(spec, Mapping):
        return algebra_from_dict(spec)
    builtin = builtin_algebra(str(spec), bounds)
    if builtin is not None:
        return builtin
    path = Path(spec)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    return algebra_from_dict(read_json(path))


# =============================================================================
# BASE OBJECTS AND MORPHISMS
# =============================================================================

_STRUCTURE_KEYS = {BaseKind.FINTOP: "opens", BaseKind.FINCONV: "convex"}


def object_from_dict(data: Union[Mapping[str, Any], Sequence[Any]],
                     default_kind: BaseKind = BaseKind.FINSET, name: str = "") -> BaseObject:
    """``{"kind", "carrier", "opens"|"convex"}``; a bare list is a carrier of the default kind."""
    if isinstance(data, (list, tuple)):
        data = {"carrier": data}
    try:
        kind = BaseKind(data.get("kind", default_kind))
    except ValueError:
        raise InputError(f"unknown base kind {data.get('kind')!r}") from None
    carrier = [str(p) for p in _field(data, "carrier", "object")]
    structure: List[List[str]] = []
    if kind is not BaseKind.FINSET:
        key = _STRUCTURE_KEYS[kind]
        structure = data.get(key, data.get("structure"))
        if structure is None:
            raise InputError(f"a {kind.value} object needs {key!r}")
    family = frozenset(frozenset(str(p) for p in s) for s in structure)
    return BaseObject(kind, tuple(carrier), family, str(data.get("name", name)))


def object_to_dict(obj: BaseObject) -> Dict[str, Any]:
    data: Dict[str, Any] = {"kind": obj.kind.value, "carrier": obj.labels(range(obj.size))}
    if obj.is_structured:
        family = sorted((obj.subset_labels(s) for s in obj.structure), key=lambda s: (len(s), s))
        data[_STRUCTURE_KEYS[obj.kind]] = family
    if obj.name:
        data["name"] = obj.name
    return data


def _resolve_object(ref: Any, objects: Mapping[str, BaseObject], kind: BaseKind) -> BaseObject:
    if isinstance(ref, str):
        try:
            return objects[ref]
        except KeyError:
            raise InputError(f"unknown object {ref!r}") from None
    return object_from_dict(ref, kind)


def _table(data: Any, dom: BaseObject, cod_index: Any) -> List[int]:
    """A table given as ``{point label: value}`` or as a list in carrier order."""
    if isinstance(data, Mapping):
        missing = [dom.label(i) for i in range(dom.size) if dom.label(i) not in data]
        if missing:
            raise InputError(f"table has no entry for {', '.join(missing)}")
        values = [data[dom.label(i)] for i in range(dom.size)]
    else:
        values = list(data)
        if len(values) != dom.size:
            raise InputError(f"table needs {dom.size} entries, got {len(values)}")
    return [cod_index(v) for v in values]


def morphism_from_dict(data: Mapping[str, Any], objects: Mapping[str, BaseObject] = {},
                       kind: BaseKind = BaseKind.FINSET) -> BaseMorphism:
    dom = _resolve_object(_field(data, "dom", "morphism"), objects, kind)
    cod = _resolve_object(_field(data, "cod", "morphism"), objects, kind)
    table = _table(_field(data, "table", "morphism"), dom, lambda v: cod.index_of_label(str(v)))
    return BaseMorphism(dom, cod, tuple(table))


def morphism_to_dict(f: BaseMorphism) -> Dict[str, Any]:
    return {"dom": object_to_dict(f.dom), "cod": object_to_dict(f.cod), "table": f.to_mapping()}


# =============================================================================
# MODELS
# =============================================================================


def model_from_dict(data: Mapping[str, Any], base_dir: Optional[Path] = None,
                    bounds: Optional[Bounds] = None) -> Model:
    """``{"kind", "omega", "fibre_rule"?, "bounds"?, "objects"?, "name"?}``.

    ``omega`` is a builtin name, a path relative to the model file or an inline
    algebra. File bounds override the defaults and ``bounds`` overrides both.
    """
    try:
        kind = BaseKind(data.get("kind", "finset"))
    except ValueError:
        raise InputError(f"unknown base kind {data.get('kind')!r}") from None
    file_bounds = DEFAULT_BOUNDS
    if data.get("bounds"):
        try:
            file_bounds = DEFAULT_BOUNDS.override(**data["bounds"])
        except ValueError as e:
            raise InputError(str(e)) from None
    if bounds is not None:
        file_bounds = file_bounds.override(
            **{k: v for k, v in vars(bounds).items() if v != getattr(DEFAULT_BOUNDS, k)}
        )
    omega = resolve_omega(_field(data, "omega", "model"), base_dir, file_bounds)
    objects = {
        name: object_from_dict(spec, kind, name) for name, spec in data.get("objects", {}).items()
    }
    rule = data.get("fibre_rule")
    try:
        fibre_rule = FibreRule(rule) if rule is not None else None
    except ValueError:
        raise InputError(f"unknown fibre rule {rule!r}") from None
    return Model(kind, omega, fibre_rule, file_bounds, objects, str(data.get("name", "")))


def load_model(path: PathLike, bounds: Optional[Bounds] = None) -> Model:
    path = Path(path)
    return model_from_dict(read_json(path), path.parent, bounds)


def model_to_dict(model: Model) -> Dict[str, Any]:
    return {
        "name": model.name,
        "kind": model.base_kind.value,
        "fibre_rule": model.rule.value,
        "omega": algebra_to_dict(model.omega),
        "objects": {name: object_to_dict(obj) for name, obj in model.objects.items()},
    }


def predicate_from_dict(model: Model, over: BaseObject, data: Any) -> Predicate:
    table = _table(data, over, lambda v: model.omega.index(str(v)))
    return model.predicate(over, table)


def predicate_to_dict(model: Model, v: Predicate) -> Dict[str, str]:
    return v.to_mapping(model.omega)


# =============================================================================
# SIGNATURES
# =============================================================================


def signature_from_dict(model: Model, data: Mapping[str, Any]) -> Signature:
    """``{"sorts"?, "functions", "predicates"}`` interpreted in ``model``.

    Sorts map a sort name to a model object name or an inline object and
    default to the model's objects. Symbols give ``args`` (sort names), a
    ``result`` sort for functions and a ``table`` keyed by argument labels;
    tuples of arguments are written ``"(p,q)"`` and no arguments ``"()"``.
    """
    raw_sorts = data.get("sorts")
    if raw_sorts is None:
        sorts = dict(model.objects)
    else:
        sorts = {name: _resolve_object(ref, model.objects, model.base_kind) for name, ref in raw_sorts.items()}
    shell = Signature(sorts)

    vocabulary_functions: Dict[str, FunctionType] = {}
    functions: Dict[str, BaseMorphism] = {}
    for name, spec in data.get("functions", {}).items():
        declared = FunctionType(
            tuple(parse_sort(s) for s in spec.get("args", [])),
            parse_sort(_field(spec, "result", f"function {name}")),
        )
        dom, cod = shell.arity_object(declared.args), shell.sort_object(declared.result)
        table = _table(_field(spec, "table", f"function {name}"), dom, lambda v, c=cod: c.index_of_label(str(v)))
        f = BaseMorphism(dom, cod, tuple(table))
        if not validate_morphism(f).passed:
            raise ModelError(f"function {name!r} does not preserve the structure of its sorts")
        vocabulary_functions[name] = declared
        functions[name] = f

    vocabulary_predicates = {}
    predicates: Dict[str, Predicate] = {}
    for name, spec in data.get("predicates", {}).items():
        args = tuple(parse_sort(s) for s in spec.get("args", []))
        over = shell.arity_object(args)
        vocabulary_predicates[name] = args
        predicates[name] = predicate_from_dict(model, over, _field(spec, "table", f"predicate {name}"))

    vocabulary = Vocabulary(vocabulary_functions, vocabulary_predicates)
    return Signature(sorts, vocabulary, functions, predicates)


def load_signature(model: Model, path: PathLike) -> Signature:
    return signature_from_dict(model, read_json(path))


# =============================================================================
# TOPOS AND UNIVERSE EXPORT
# =============================================================================


def category_to_dict(data: CategoryData) -> Dict[str, Any]:
    """Objects, hom counts, global elements and how many composites are defined per triple."""
    summary = summarize(data)
    summary["composition_defined"] = {
        f"{i},{j},{k}": int((table >= 0).sum()) for (i, j, k), table in sorted(data.composition.items())
    }
    return summary


def velement_to_dict(u: VElement, omega: FiniteAlgebra) -> Dict[str, Any]:
    return {
        "rank": u.rank,
        "entries": [
            {"key": velement_to_dict(key, omega), "value": omega.label(value)} for key, value in u.entries
        ],
    }


def velement_from_dict(data: Mapping[str, Any], omega: FiniteAlgebra) -> VElement:
    entries = tuple(
        (velement_from_dict(_field(item, "key", "entry"), omega), omega.index(str(_field(item, "value", "entry"))))
        for item in data.get("entries", [])
    )
    return VElement(entries, int(data.get("rank", -1)))


def universe_to_dict(universe: VUniverse, include_elements: bool = True) -> Dict[str, Any]:
    data: Dict[str, Any] = {"omega": list(universe.omega.carrier), "counts": universe.counts}
    if include_elements:
        data["stages"] = [[velement_to_dict(u, universe.omega) for u in stage] for stage in universe.stages]
    return data
