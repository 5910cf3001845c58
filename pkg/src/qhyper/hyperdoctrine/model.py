"""Duality hyperdoctrine models Hom(-, Omega) and their fibres.

A predicate over ``X`` is a table ``carrier(X) -> Omega``. Which tables belong
to the fibre is decided by the model's fibre rule:

- ``all``: every table (finite sets);
- ``open``: the preimage of every principal filter ``up(e)`` is open;
- ``convex``: the preimage of every principal filter is convex.

For the two-element chain the last two rules say exactly that the true-set is
open (resp. convex).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..algebra import FiniteAlgebra, check_laws
from ..base import (
    BaseKind,
    BaseMorphism,
    BaseObject,
    Point,
    terminal,
)
from ..config import DEFAULT_BOUNDS, Bounds
from ..errors import CapacityError, DomainMismatchError, ModelError, StructuralError
from ..reports import LawCheck, LawReport

logger = logging.getLogger(__name__)


class FibreRule(str, Enum):
    ALL = "all"
    OPEN = "open"
    CONVEX = "convex"


DEFAULT_RULES = {
    BaseKind.FINSET: FibreRule.ALL,
    BaseKind.FINTOP: FibreRule.OPEN,
    BaseKind.FINCONV: FibreRule.CONVEX,
}


@dataclass(frozen=True)
class Predicate:
    """An element of the fibre over ``over``: one omega index per point."""

    over: BaseObject
    table: Tuple[int, ...]

    def __post_init__(self) -> None:
        table = tuple(int(e) for e in self.table)
        if len(table) != self.over.size:
            raise StructuralError(
                "predicate", f"{len(table)} values for {self.over.size} points of {self.over}"
            )
        object.__setattr__(self, "table", table)

    def value(self, point: Point) -> int:
        return self.table[self.over.index(point)]

    def as_array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.intp)

    def to_mapping(self, omega: FiniteAlgebra) -> Dict[str, str]:
        return {self.over.label(i): omega.label(e) for i, e in enumerate(self.table)}


@dataclass(frozen=True, eq=False)
class Model:
    """Hom(-, omega) over one kind of base object.

    ``objects`` names the base objects a model file declares, so signatures
    and command lines can refer to them.
    """

    base_kind: BaseKind
    omega: FiniteAlgebra
    fibre_rule: Optional[FibreRule] = None
    bounds: Bounds = DEFAULT_BOUNDS
    objects: Mapping[str, BaseObject] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        kind = BaseKind(self.base_kind)
        object.__setattr__(self, "base_kind", kind)
        rule = DEFAULT_RULES[kind] if self.fibre_rule is None else FibreRule(self.fibre_rule)
        if kind is BaseKind.FINSET and rule is not FibreRule.ALL:
            raise ModelError(f"finite-set models use the 'all' fibre rule, not {rule.value!r}")
        object.__setattr__(self, "fibre_rule", rule)
        for label, obj in self.objects.items():
            if obj.kind is not kind:
                raise ModelError(f"object {label!r} is {obj.kind.value}, model is {kind.value}")

    @property
    def rule(self) -> FibreRule:
        assert self.fibre_rule is not None
        return self.fibre_rule

    def object(self, name: str) -> BaseObject:
        try:
            return self.objects[name]
        except KeyError:
            raise ModelError(f"model has no base object {name!r}") from None

    def check_object(self, obj: BaseObject) -> None:
        if obj.kind is not self.base_kind:
            raise DomainMismatchError(
                f"{obj} is a {obj.kind.value} object, the model is over {self.base_kind.value}"
            )

    def predicate(self, over: BaseObject, values: Sequence[Any]) -> Predicate:
        """Build a fibre member from omega labels or indices; rejects non-members."""
        self.check_object(over)
        table = tuple(
            v if isinstance(v, (int, np.integer)) and not isinstance(v, bool) else self.omega.index(v)
            for v in values
        )
        if any(not 0 <= e < self.omega.size for e in table):
            raise StructuralError("predicate", f"value outside 0..{self.omega.size - 1}")
        v = Predicate(over, table)
        witness = fibre_witness(self, over, v.table)
        if witness is not None:
            raise ModelError(f"table is not in the {self.rule.value} fibre over {over}: {witness}")
        return v

    def top(self, over: BaseObject) -> Predicate:
        return Predicate(over, (self.omega.top,) * over.size)

    def bottom(self, over: BaseObject) -> Predicate:
        return Predicate(over, (self.omega.bot,) * over.size)

    def constant(self, over: BaseObject, element: int) -> Predicate:
        return Predicate(over, (element,) * over.size)


# =============================================================================
# FIBRE MEMBERSHIP
# =============================================================================


def _admissible_masks(obj: BaseObject) -> np.ndarray:
    weights = 1 << np.arange(obj.size, dtype=np.int64)
    masks = [sum(int(weights[obj.index(p)]) for p in subset) for subset in obj.structure]
    return np.array(sorted(masks), dtype=np.int64)


def fibre_mask(model: Model, obj: BaseObject, tables: np.ndarray) -> np.ndarray:
    """Boolean vector: which rows of ``tables`` (shape ``k x |X|``) are in the fibre."""
    tables = np.asarray(tables, dtype=np.intp)
    if model.rule is FibreRule.ALL:
        return np.ones(len(tables), dtype=bool)
    weights = 1 << np.arange(obj.size, dtype=np.int64)
    # up[e, r, i]: point i of row r lies in the preimage of up(e)
    up = model.omega.leq[:, tables]
    masks = (up.astype(np.int64) * weights).sum(axis=-1)
    return np.isin(masks, _admissible_masks(obj)).all(axis=0)


def fibre_witness(model: Model, obj: BaseObject, table: Sequence[int]) -> Optional[Dict[str, Any]]:
    """Why ``table`` is not in the fibre: a filter element, its preimage and a point."""
    if model.rule is FibreRule.ALL:
        return None
    values = np.asarray(table, dtype=np.intp)
    for e in range(model.omega.size):
        preimage = [obj.carrier[i] for i in np.flatnonzero(model.omega.leq[e, values])]
        if not obj.admits(preimage):
            point = obj.closure_witness(preimage)
            return {
                "element": model.omega.label(e),
                "preimage": obj.subset_labels(preimage),
                "point": None if point is None else obj.label(obj.index(point)),
            }
    return None


def in_fibre(model: Model, v: Predicate) -> bool:
    return fibre_witness(model, v.over, v.table) is None


def _fibre_size(model: Model, obj: BaseObject) -> int:
    return model.omega.size**obj.size


def fibre_array(model: Model, obj: BaseObject) -> np.ndarray:
    """All fibre tables over ``obj`` as a ``k x |X|`` index array, lexicographic."""
    model.check_object(obj)
    space = _fibre_size(model, obj)
    if space > model.bounds.fibre:
        raise CapacityError(f"fibre over {obj}", space, model.bounds.fibre)
    tables = np.array(
        list(itertools.product(range(model.omega.size), repeat=obj.size)), dtype=np.intp
    ).reshape(space, obj.size)
    members = tables[fibre_mask(model, obj, tables)]
    logger.debug("fibre over %s: %d of %d tables", obj, len(members), space)
    return members


def iter_fibre(model: Model, obj: BaseObject) -> Iterator[Predicate]:
    for row in fibre_array(model, obj):
        yield Predicate(obj, tuple(int(e) for e in row))


def enumerate_fibre(model: Model, obj: BaseObject) -> List[Predicate]:
    return list(iter_fibre(model, obj))


def pullback(model: Model, f: BaseMorphism, v: Predicate) -> Predicate:
    """Reindex ``v`` along ``f``: ``(f* v)(x) = v(f(x))``."""
    if v.over != f.cod:
        raise DomainMismatchError(f"predicate over {v.over} cannot be pulled back along a map into {f.cod}")
    return Predicate(f.dom, tuple(v.table[j] for j in f.table))


# =============================================================================
# POINTWISE ALGEBRA
# =============================================================================


def _same_object(u: Predicate, v: Predicate) -> None:
    if u.over != v.over:
        raise DomainMismatchError(f"predicates over {u.over} and {v.over}")


def meet(model: Model, u: Predicate, v: Predicate) -> Predicate:
    _same_object(u, v)
    return Predicate(u.over, tuple(int(model.omega.meet[a, b]) for a, b in zip(u.table, v.table)))


def join(model: Model, u: Predicate, v: Predicate) -> Predicate:
    _same_object(u, v)
    return Predicate(u.over, tuple(int(model.omega.join[a, b]) for a, b in zip(u.table, v.table)))


def ortho(model: Model, v: Predicate) -> Predicate:
    if model.omega.ortho is None:
        raise ModelError("omega has no orthocomplement")
    return Predicate(v.over, tuple(int(model.omega.ortho[a]) for a in v.table))


def implies(model: Model, u: Predicate, v: Predicate) -> Predicate:
    if model.omega.impl is None:
        raise ModelError("omega has no implication")
    _same_object(u, v)
    return Predicate(u.over, tuple(int(model.omega.impl[a, b]) for a, b in zip(u.table, v.table)))


def leq(model: Model, u: Predicate, v: Predicate) -> bool:
    """Fibre order: ``u <= v`` iff ``u(x) <= v(x)`` at every point."""
    _same_object(u, v)
    return all(model.omega.leq[a, b] for a, b in zip(u.table, v.table))


def first_violation(model: Model, u: Predicate, v: Predicate) -> Optional[Point]:
    """First point (carrier order) where ``u(x) <= v(x)`` fails."""
    _same_object(u, v)
    for point, a, b in zip(u.over.carrier, u.table, v.table):
        if not model.omega.leq[a, b]:
            return point
    return None


# =============================================================================
# MODEL VALIDATION
# =============================================================================

_POINTWISE_OPERATIONS = {
    FibreRule.OPEN: ("meet", "join"),
    FibreRule.CONVEX: ("meet",),
}


def _closure_check(model: Model, operation: str, samples: Sequence[BaseObject]) -> LawCheck:
    omega = model.omega
    table = omega.meet if operation == "meet" else omega.join
    instances = 0
    for obj in samples:
        members = fibre_array(model, obj)
        if len(members) ** 2 > model.bounds.law_instances:
            raise CapacityError(f"fibre pairs over {obj}", len(members) ** 2,
                                model.bounds.law_instances)
        left, right = np.divmod(np.arange(len(members) ** 2), len(members))
        results = table[members[left], members[right]]
        instances += len(results)
        inside = fibre_mask(model, obj, results)
        if not inside.all():
            bad = int(np.argmin(inside))
            witness = {
                "object": str(obj),
                "left": Predicate(obj, members[left[bad]]).to_mapping(omega),
                "right": Predicate(obj, members[right[bad]]).to_mapping(omega),
            }
            return LawCheck(f"fibre-closed-under-{operation}", False, instances, witness)
    return LawCheck(f"fibre-closed-under-{operation}", True, instances)


def validate_model(model: Model, samples: Optional[Iterable[BaseObject]] = None) -> LawReport:
    """Omega's laws plus closure of the fibre rule on sample objects.

    Samples default to the model's named objects and the terminal object.
    """
    laws = check_laws(model.omega)
    failure = laws.first_failure
    checks = [LawCheck(
        "omega-laws", laws.passed, laws.instances,
        None if failure is None else {"law": failure.law, **dict(failure.witness or {})},
    )]
    objects = list(samples) if samples is not None else [
        *model.objects.values(), terminal(model.base_kind)
    ]
    if model.rule is not FibreRule.ALL:
        for obj in objects:
            model.check_object(obj)
        for operation in _POINTWISE_OPERATIONS[model.rule]:
            checks.append(_closure_check(model, operation, objects))
        top_ok = all(fibre_mask(model, o, np.array([model.top(o).table])).all() for o in objects)
        bot_ok = all(fibre_mask(model, o, np.array([model.bottom(o).table])).all() for o in objects)
        checks.append(LawCheck("fibre-contains-top", top_ok, len(objects)))
        checks.append(LawCheck("fibre-contains-bottom", bot_ok, len(objects)))
    return LawReport("model", tuple(checks))

