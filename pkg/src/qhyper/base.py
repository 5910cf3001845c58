"""Finite base categories: finite sets, finite topological and convexity spaces.

Objects carry a carrier (the faithful functor U is carrier extraction) and,
for structured kinds, the family of open or convex subsets. Morphisms are total
index tables; morphism equality is table equality.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import (
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from .config import DEFAULT_BOUNDS, Bounds
from .errors import (
    CapacityError,
    DomainMismatchError,
    InputError,
    StructuralError,
    UnsupportedKindError,
)
from .reports import LawCheck, LawReport

logger = logging.getLogger(__name__)

Point = Hashable
Subset = FrozenSet[Point]


class BaseKind(str, Enum):
    FINSET = "finset"
    FINTOP = "fintop"
    FINCONV = "finconv"


def point_label(point: Point) -> str:
    if isinstance(point, tuple):
        return "(" + ",".join(point_label(p) for p in point) + ")"
    return str(point)


@dataclass(frozen=True)
class BaseObject:
    """A finite carrier, with opens (fintop) or convex sets (finconv)."""

    kind: BaseKind
    carrier: Tuple[Point, ...]
    structure: FrozenSet[Subset] = frozenset()
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", BaseKind(self.kind))
        carrier = tuple(self.carrier)
        if len(set(carrier)) != len(carrier):
            raise StructuralError("carrier", "points must be distinct")
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(
            self, "structure", frozenset(frozenset(s) for s in self.structure)
        )
        if self.kind is BaseKind.FINSET and self.structure:
            raise StructuralError("structure", "finite sets carry no structure")

    @property
    def size(self) -> int:
        return len(self.carrier)

    @cached_property
    def _positions(self) -> Dict[Point, int]:
        return {p: i for i, p in enumerate(self.carrier)}

    @cached_property
    def _label_positions(self) -> Dict[str, int]:
        return {point_label(p): i for i, p in enumerate(self.carrier)}

    def index(self, point: Point) -> int:
        try:
            return self._positions[point]
        except KeyError:
            raise DomainMismatchError(f"{point_label(point)} is not a point of {self}") from None

    def index_of_label(self, label: str) -> int:
        try:
            return self._label_positions[label]
        except KeyError:
            raise InputError(f"unknown point {label!r} of {self}") from None

    def label(self, i: int) -> str:
        return point_label(self.carrier[i])

    def labels(self, indices: Iterable[int]) -> List[str]:
        return [self.label(i) for i in indices]

    def subset_labels(self, subset: Iterable[Point]) -> List[str]:
        members = set(subset)
        return [point_label(p) for p in self.carrier if p in members]

    @property
    def is_structured(self) -> bool:
        return self.kind is not BaseKind.FINSET

    def admits(self, subset: Iterable[Point]) -> bool:
        """Whether ``subset`` is open (fintop) or convex (finconv)."""
        return not self.is_structured or frozenset(subset) in self.structure

    def neighbourhood(self, point: Point) -> Subset:
        """Smallest open set containing ``point``."""
        result = frozenset(self.carrier)
        for open_set in self.structure:
            if point in open_set:
                result &= open_set
        return result

    def hull(self, subset: Iterable[Point]) -> Subset:
        """Smallest convex set containing ``subset``."""
        members = frozenset(subset)
        result = frozenset(self.carrier)
        for convex in self.structure:
            if members <= convex:
                result &= convex
        return result

    def closure_witness(self, subset: Iterable[Point]) -> Optional[Point]:
        """A point showing ``subset`` is not open/convex, or ``None``."""
        members = frozenset(subset)
        if self.kind is BaseKind.FINTOP:
            return next(
                (p for p in self.carrier if p in members and not self.neighbourhood(p) <= members),
                None,
            )
        if self.kind is BaseKind.FINCONV:
            outside = self.hull(members) - members
            return next((p for p in self.carrier if p in outside), None)
        return None

    def __str__(self) -> str:
        return self.name or f"{self.kind.value}{{{','.join(self.labels(range(self.size)))}}}"


@dataclass(frozen=True)
class BaseMorphism:
    """A total map ``dom -> cod``; ``table[i]`` is the image index of ``dom.carrier[i]``."""

    dom: BaseObject
    cod: BaseObject
    table: Tuple[int, ...]

    def __post_init__(self) -> None:
        table = tuple(int(j) for j in self.table)
        if len(table) != self.dom.size:
            raise StructuralError("table", f"expected {self.dom.size} entries, got {len(table)}")
        if any(not 0 <= j < self.cod.size for j in table):
            raise StructuralError("table", f"image index outside 0..{self.cod.size - 1}")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_mapping(
        cls, dom: BaseObject, cod: BaseObject, mapping: Mapping[Point, Point]
    ) -> "BaseMorphism":
        missing = [point_label(p) for p in dom.carrier if p not in mapping]
        if missing:
            raise StructuralError("table", f"no image for {', '.join(missing)}")
        return cls(dom, cod, tuple(cod.index(mapping[p]) for p in dom.carrier))

    def __call__(self, point: Point) -> Point:
        return self.cod.carrier[self.table[self.dom.index(point)]]

    def preimage(self, subset: Iterable[Point]) -> Subset:
        members = frozenset(self.cod.index(p) for p in subset)
        return frozenset(p for p, j in zip(self.dom.carrier, self.table) if j in members)

    def to_mapping(self) -> Dict[str, str]:
        return {self.dom.label(i): self.cod.label(j) for i, j in enumerate(self.table)}


# =============================================================================
# OBJECT CONSTRUCTORS
# =============================================================================


def finset(points: Iterable[Point], name: str = "") -> BaseObject:
    return BaseObject(BaseKind.FINSET, tuple(points), name=name)


def fintop(points: Iterable[Point], opens: Iterable[Iterable[Point]], name: str = "") -> BaseObject:
    return BaseObject(BaseKind.FINTOP, tuple(points), frozenset(map(frozenset, opens)), name)


def finconv(points: Iterable[Point], convex: Iterable[Iterable[Point]], name: str = "") -> BaseObject:
    return BaseObject(BaseKind.FINCONV, tuple(points), frozenset(map(frozenset, convex)), name)


def sierpinski() -> BaseObject:
    return fintop(("0", "1"), ([], ["1"], ["0", "1"]), name="Sierpinski")


def interval_convexity(points: Sequence[Point], name: str = "") -> BaseObject:
    """Convex sets of a linear order: the empty set and every interval."""
    intervals = [points[i : j + 1] for i in range(len(points)) for j in range(i, len(points))]
    return finconv(points, [[], *intervals], name=name)


def omega_object(labels: Sequence[str]) -> BaseObject:
    """The set of truth values as a finite set (generic object of finset models)."""
    return finset(labels, name="|Omega|")


def terminal(kind: BaseKind = BaseKind.FINSET) -> BaseObject:
    return product_of((), kind)[0]


# =============================================================================
# VALIDATION
# =============================================================================


def _closed_under(family: FrozenSet[Subset], op: str) -> Optional[Tuple[Subset, Subset]]:
    ordered = sorted(family, key=lambda s: (len(s), sorted(map(point_label, s))))
    for u, v in itertools.combinations(ordered, 2):
        combined = u | v if op == "union" else u & v
        if combined not in family:
            return u, v
    return None


def validate_object(obj: BaseObject) -> LawReport:
    """Check the closure axioms of the object's structure exhaustively."""
    family = obj.structure
    carrier = frozenset(obj.carrier)
    checks: List[LawCheck] = []
    if obj.kind is BaseKind.FINSET:
        return LawReport.single("finset", True, 0)
    stray = next((s for s in family if not s <= carrier), None)
    checks.append(LawCheck("subsets-of-carrier", stray is None, len(family),
                           None if stray is None else {"set": sorted(map(point_label, stray))}))
    checks.append(LawCheck("contains-empty", frozenset() in family, 1,
                           None if frozenset() in family else {"missing": []}))
    checks.append(LawCheck("contains-carrier", carrier in family, 1,
                           None if carrier in family else {"missing": obj.subset_labels(carrier)}))
    pairs = len(family) * (len(family) - 1) // 2
    operations = ("union", "intersection") if obj.kind is BaseKind.FINTOP else ("intersection",)
    for op in operations:
        bad = _closed_under(family, op)
        witness = None
        if bad is not None:
            witness = {"left": obj.subset_labels(bad[0]), "right": obj.subset_labels(bad[1])}
        checks.append(LawCheck(f"{op}-closed", bad is None, pairs, witness))
    return LawReport(f"{obj.kind.value}-object", tuple(checks))


def validate_morphism(f: BaseMorphism) -> LawReport:
    """Preimages of opens must be open, preimages of convex sets convex."""
    law = "structure-preserving"
    if f.dom.kind is not f.cod.kind:
        return LawReport.single(law, False, 0, {"dom": f.dom.kind.value, "cod": f.cod.kind.value})
    if not f.cod.is_structured:
        return LawReport.single(law, True, 0)
    family = sorted(f.cod.structure, key=lambda s: (len(s), sorted(map(point_label, s))))
    for subset in family:
        pre = f.preimage(subset)
        if not f.dom.admits(pre):
            return LawReport.single(law, False, len(family), {
                "set": f.cod.subset_labels(subset), "preimage": f.dom.subset_labels(pre),
            })
    return LawReport.single(law, True, len(family))


def enumerate_morphisms(
    dom: BaseObject, cod: BaseObject, bounds: Optional[Bounds] = None
) -> List[BaseMorphism]:
    """All structure-preserving maps, in lexicographic order of their tables."""
    bounds = bounds or DEFAULT_BOUNDS
    space = cod.size**dom.size
    if space > bounds.morphisms:
        raise CapacityError(f"morphisms {dom} -> {cod}", space, bounds.morphisms)
    found = []
    for table in itertools.product(range(cod.size), repeat=dom.size):
        f = BaseMorphism(dom, cod, table)
        if validate_morphism(f).passed:
            found.append(f)
    logger.debug("%d of %d tables %s -> %s are morphisms", len(found), space, dom, cod)
    return found


# =============================================================================
# CATEGORY STRUCTURE
# =============================================================================


def identity(obj: BaseObject) -> BaseMorphism:
    return BaseMorphism(obj, obj, tuple(range(obj.size)))


def compose(f: BaseMorphism, g: BaseMorphism) -> BaseMorphism:
    """``f`` followed by ``g``."""
    if f.cod != g.dom:
        raise DomainMismatchError(f"cannot compose: {f.cod} is not {g.dom}")
    return BaseMorphism(f.dom, g.cod, tuple(g.table[j] for j in f.table))


def _product_structure(kind: BaseKind, objects: Sequence[BaseObject], carrier: Sequence[Point]) -> FrozenSet[Subset]:
    if kind is BaseKind.FINSET:
        return frozenset()
    boxes = [frozenset(itertools.product(*parts))
             for parts in itertools.product(*(sorted(o.structure, key=len) for o in objects))]
    if kind is BaseKind.FINTOP:
        family = {frozenset()}
        for box in boxes:
            family |= {s | box for s in family}
    else:
        family = {frozenset(carrier)}
        for box in boxes:
            family |= {s & box for s in family}
        family.add(frozenset())
    return frozenset(family)


def product_of(
    objects: Sequence[BaseObject], kind: Optional[BaseKind] = None
) -> Tuple[BaseObject, Tuple[BaseMorphism, ...]]:
    """n-ary product with carrier of tuples and its projections.

    The empty product is the terminal object with the single point ``()``.
    """
    kinds = {o.kind for o in objects}
    if len(kinds) > 1:
        raise DomainMismatchError(f"product of mixed kinds {sorted(k.value for k in kinds)}")
    kind = BaseKind(kind) if kind is not None else (kinds.pop() if kinds else BaseKind.FINSET)
    if objects and objects[0].kind is not kind:
        raise DomainMismatchError(f"product of {objects[0].kind.value} objects as {kind.value}")
    carrier = tuple(itertools.product(*(o.carrier for o in objects)))
    structure = _product_structure(kind, objects, carrier)
    if kind is not BaseKind.FINSET and not objects:
        structure = frozenset({frozenset(), frozenset(carrier)})
    name = "x".join(str(o) for o in objects) if objects else "1"
    obj = BaseObject(kind, carrier, structure, name)
    projections = tuple(
        BaseMorphism(obj, factor, tuple(factor.index(point[k]) for point in carrier))
        for k, factor in enumerate(objects)
    )
    return obj, projections


def product(x: BaseObject, y: BaseObject) -> Tuple[BaseObject, BaseMorphism, BaseMorphism]:
    obj, (p1, p2) = product_of((x, y))
    return obj, p1, p2


def pairing(dom: BaseObject, morphisms: Sequence[BaseMorphism]) -> BaseMorphism:
    """The map ``x -> (f1(x), ..., fn(x))`` into the product of the codomains."""
    for f in morphisms:
        if f.dom != dom:
            raise DomainMismatchError(f"pairing needs maps out of {dom}, got one out of {f.dom}")
    cod, _ = product_of([f.cod for f in morphisms], dom.kind if not morphisms else None)
    table = tuple(
        cod.index(tuple(f.cod.carrier[f.table[i]] for f in morphisms)) for i in range(dom.size)
    )
    return BaseMorphism(dom, cod, table)


def product_morphism(f: BaseMorphism, g: BaseMorphism) -> BaseMorphism:
    """``f x g : dom f x dom g -> cod f x cod g``."""
    dom, p1, p2 = product(f.dom, g.dom)
    return pairing(dom, (compose(p1, f), compose(p2, g)))


def diagonal(obj: BaseObject) -> BaseMorphism:
    return pairing(obj, (identity(obj), identity(obj)))


def exponential(x: BaseObject, y: BaseObject) -> BaseObject:
    """``Y^X`` for finite sets: every function table, as a tuple of ``(x, y)`` pairs."""
    if x.kind is not BaseKind.FINSET or y.kind is not BaseKind.FINSET:
        raise UnsupportedKindError("exponentials exist here only for finite sets")
    tables = itertools.product(y.carrier, repeat=x.size)
    return finset((tuple(zip(x.carrier, values)) for values in tables), name=f"{y}^{x}")


def evaluation(x: BaseObject, y: BaseObject) -> BaseMorphism:
    """``ev : Y^X x X -> Y``."""
    power = exponential(x, y)
    dom, _, _ = product(power, x)
    table = tuple(y.index(dict(function)[point]) for function, point in dom.carrier)
    return BaseMorphism(dom, y, table)


def subobject(obj: BaseObject, points: Iterable[Point]) -> Tuple[BaseObject, BaseMorphism]:
    """Induced sub-object (subspace opens / trace convexity) and its inclusion."""
    members = frozenset(points)
    carrier = tuple(p for p in obj.carrier if p in members)
    structure = frozenset(s & members for s in obj.structure)
    sub = BaseObject(obj.kind, carrier, structure, name=f"{{{','.join(map(point_label, carrier))}}}")
    return sub, BaseMorphism(sub, obj, tuple(obj.index(p) for p in carrier))


def iter_points(obj: BaseObject) -> Iterator[Tuple[int, Point]]:
    return iter(enumerate(obj.carrier))
