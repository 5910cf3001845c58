"""The tripos-to-topos category at desk scale.

Objects are PERs over small base objects; morphisms are functional relations.
Equivalence ``F ~ G`` (``F <= G`` and ``G <= F``) is table equality in a
pointwise ordered fibre, so every relation is the unique representative of its
class and hom-sets are stored as sorted lists of relations.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra import FiniteAlgebra
from ..base import BaseKind, BaseObject, finconv, finset, fintop
from ..config import Bounds
from ..errors import CapacityError
from ..hyperdoctrine import Model
from ..reports import LawCheck, LawReport
from .pers import (
    FunctionalRelation,
    Per,
    compose_relations,
    describe_per,
    enumerate_functional_relations,
    enumerate_pers,
    identity_relation,
)

logger = logging.getLogger(__name__)

HomKey = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class CategoryData:
    """Objects, hom-class representatives and the composition table.

    ``composition[(i, j, k)][a, b]`` is the position in ``homs[(i, k)]`` of
    ``homs[(i, j)][a]`` followed by ``homs[(j, k)][b]``, or ``-1`` when the
    composite is not a functional relation.
    """

    model: Model
    objects: Tuple[Per, ...]
    homs: Dict[HomKey, Tuple[FunctionalRelation, ...]]
    composition: Dict[Tuple[int, int, int], np.ndarray] = field(default_factory=dict)

    def hom(self, i: int, j: int) -> Tuple[FunctionalRelation, ...]:
        return self.homs[(i, j)]

    def hom_counts(self) -> List[List[int]]:
        n = len(self.objects)
        return [[len(self.homs[(i, j)]) for j in range(n)] for i in range(n)]

    def position(self, f: FunctionalRelation, i: int, j: int) -> int:
        target = f.rel.table
        for index, g in enumerate(self.homs[(i, j)]):
            if g.rel.table == target:
                return index
        return -1

    def identity_index(self, i: int) -> int:
        return self.position(identity_relation(self.objects[i]), i, i)

    def global_elements(self) -> List[int]:
        """``|Hom(1, P)|`` for every object, where ``1`` is the top PER on a point."""
        unit = next(
            (i for i, p in enumerate(self.objects)
             if p.size == 1 and p.eq.table == (self.model.omega.top,)),
            None,
        )
        if unit is None:
            return []
        return [len(self.homs[(unit, j)]) for j in range(len(self.objects))]


def standard_objects(model: Model, size_cap: int) -> List[BaseObject]:
    """Base objects of every size ``0..size_cap`` for the model's kind."""
    objects = []
    for n in range(size_cap + 1):
        points = [f"x{i + 1}" for i in range(n)]
        subsets = [c for r in range(n + 1) for c in itertools.combinations(points, r)]
        if model.base_kind is BaseKind.FINSET:
            objects.append(finset(points))
        elif model.base_kind is BaseKind.FINTOP:
            objects.append(fintop(points, subsets))
        else:
            objects.append(finconv(points, subsets))
    return objects


def build_topos(
    model: Model,
    size_cap: Optional[int] = None,
    objects: Optional[Sequence[Per]] = None,
    bounds: Optional[Bounds] = None,
) -> CategoryData:
    """Enumerate PERs on carriers up to ``size_cap``, their hom-sets and compositions.

    Structured kinds use discrete base objects. Passing ``objects`` skips PER
    enumeration and studies the full subcategory on the given PERs.
    """
    bounds = bounds or model.bounds
    cap = bounds.topos_carrier if size_cap is None else size_cap
    if objects is None:
        if cap > bounds.topos_carrier:
            raise CapacityError("topos carrier size", cap, bounds.topos_carrier)
        pers: List[Per] = []
        for base in standard_objects(model, cap):
            pers.extend(enumerate_pers(model, base))
            if len(pers) > bounds.topos_objects:
                raise CapacityError("topos objects", len(pers), bounds.topos_objects)
    else:
        pers = list(objects)
        if len(pers) > bounds.topos_objects:
            raise CapacityError("topos objects", len(pers), bounds.topos_objects)

    n = len(pers)
    homs = {
        (i, j): tuple(enumerate_functional_relations(model, pers[i], pers[j]))
        for i in range(n)
        for j in range(n)
    }
    size = {key: len(value) for key, value in homs.items()}
    compositions = sum(size[(i, j)] * size[(j, k)] for i, j, k in itertools.product(range(n), repeat=3))
    if compositions > bounds.compositions:
        raise CapacityError("composition table", compositions, bounds.compositions)

    data = CategoryData(model, tuple(pers), homs)
    lookup = {key: {f.rel.table: a for a, f in enumerate(fs)} for key, fs in homs.items()}
    stacks = {key: _stack(fs, pers[key[0]].size, pers[key[1]].size) for key, fs in homs.items()}
    for i, j, k in itertools.product(range(n), repeat=3):
        data.composition[(i, j, k)] = _composition_table(
            model.omega, stacks[(i, j)], stacks[(j, k)], lookup[(i, k)]
        )
    logger.info("topos: %d objects, %d compositions", n, compositions)
    return data


def _stack(relations: Sequence[FunctionalRelation], rows: int, cols: int) -> np.ndarray:
    if not relations:
        return np.zeros((0, rows, cols), dtype=np.intp)
    return np.stack([f.matrix() for f in relations])


def _composition_table(
    omega: FiniteAlgebra, first: np.ndarray, second: np.ndarray, lookup: Dict[Tuple[int, ...], int]
) -> np.ndarray:
    """Positions of every composite ``f ; g`` in the target hom-set, ``-1`` when absent.

    ``first`` is ``A x X x Y`` and ``second`` is ``B x Y x Z``; the composites
    are computed for all ``A * B`` pairs at once.
    """
    a, rows, middle = first.shape
    b, _, cols = second.shape
    composite = np.full((a, b, rows, cols), omega.bot, dtype=np.intp)
    for y in range(middle):
        chained = omega.meet[first[:, None, :, y, None], second[None, :, None, y, :]]
        composite = omega.join[composite, chained]
    keys = composite.reshape(a * b, rows * cols).tolist()
    positions = [lookup.get(tuple(key), -1) for key in keys]
    return np.array(positions, dtype=np.intp).reshape(a, b)


# =============================================================================
# CATEGORY LAWS
# =============================================================================


def _triple_count(data: CategoryData, quad: Tuple[int, int, int, int]) -> int:
    i, j, k, l = quad
    return len(data.homs[(i, j)]) * len(data.homs[(j, k)]) * len(data.homs[(k, l)])


def _associativity_instances(
    data: CategoryData, bounds: Bounds, seed: int
) -> Tuple[str, List[Tuple[Tuple[int, int, int, int], int, int, int]]]:
    quads = [q for q in itertools.product(range(len(data.objects)), repeat=4)
             if _triple_count(data, q)]
    total = sum(_triple_count(data, q) for q in quads)
    if total <= bounds.law_instances:
        instances = []
        for q in quads:
            i, j, k, l = q
            for a, b, c in itertools.product(
                range(len(data.homs[(i, j)])), range(len(data.homs[(j, k)])), range(len(data.homs[(k, l)]))
            ):
                instances.append((q, a, b, c))
        return "exhaustive", instances
    rng = random.Random(f"{seed}:associative")
    weights = [_triple_count(data, q) for q in quads]
    picked = []
    for q in rng.choices(quads, weights=weights, k=bounds.samples):
        i, j, k, l = q
        picked.append((q, rng.randrange(len(data.homs[(i, j)])),
                       rng.randrange(len(data.homs[(j, k)])), rng.randrange(len(data.homs[(k, l)]))))
    return "sampled", picked


def _associates_by_table(
    data: CategoryData, quad: Tuple[int, int, int, int], a: int, b: int, c: int
) -> bool:
    """True when both bracketings land on the same hom-set entry.

    Any composite that leaves the hom-sets (position ``-1``) needs the explicit
    relations, so this returns False and the caller recomposes.
    """
    i, j, k, l = quad
    tables = data.composition
    if not all(key in tables for key in ((i, j, k), (j, k, l), (i, k, l), (i, j, l))):
        return False
    ab, bc = int(tables[(i, j, k)][a, b]), int(tables[(j, k, l)][b, c])
    if ab < 0 or bc < 0:
        return False
    left, right = int(tables[(i, k, l)][ab, c]), int(tables[(i, j, l)][a, bc])
    return left >= 0 and left == right


def _describe(data: CategoryData, f: FunctionalRelation) -> Dict[str, Any]:
    omega = data.model.omega
    return {
        "dom": describe_per(data.model, f.dom),
        "cod": describe_per(data.model, f.cod),
        "rel": [[omega.label(e) for e in row] for row in f.matrix()],
    }


def check_category_laws(
    data: CategoryData, bounds: Optional[Bounds] = None, seed: int = 0
) -> LawReport:
    """Composition closure, unit laws and associativity modulo equivalence."""
    bounds = bounds or data.model.bounds
    model = data.model
    n = len(data.objects)

    closed_witness = None
    closed_instances = 0
    for (i, j, k), table in sorted(data.composition.items()):
        closed_instances += table.size
        missing = np.argwhere(table < 0)
        if closed_witness is None and len(missing):
            a, b = (int(v) for v in missing[0])
            composite = compose_relations(model, data.homs[(i, j)][a], data.homs[(j, k)][b])
            closed_witness = {
                "f": _describe(data, data.homs[(i, j)][a]),
                "g": _describe(data, data.homs[(j, k)][b]),
                "composite": _describe(data, composite)["rel"],
            }

    unit_witness: Dict[str, Optional[Dict[str, Any]]] = {"left-unit": None, "right-unit": None}
    unit_instances = 0
    for i, j in itertools.product(range(n), repeat=2):
        left_id = identity_relation(data.objects[i])
        right_id = identity_relation(data.objects[j])
        for f in data.homs[(i, j)]:
            unit_instances += 1
            if unit_witness["left-unit"] is None and compose_relations(model, left_id, f).rel != f.rel:
                unit_witness["left-unit"] = _describe(data, f)
            if unit_witness["right-unit"] is None and compose_relations(model, f, right_id).rel != f.rel:
                unit_witness["right-unit"] = _describe(data, f)

    mode, instances = _associativity_instances(data, bounds, seed)
    assoc_witness = None
    for (i, j, k, l), a, b, c in instances:
        if _associates_by_table(data, (i, j, k, l), a, b, c):
            continue
        f, g, h = data.homs[(i, j)][a], data.homs[(j, k)][b], data.homs[(k, l)][c]
        left = compose_relations(model, compose_relations(model, f, g), h)
        right = compose_relations(model, f, compose_relations(model, g, h))
        if left.rel != right.rel:
            assoc_witness = {"f": _describe(data, f), "g": _describe(data, g), "h": _describe(data, h)}
            break

    checks = (
        LawCheck("composition-closed", closed_witness is None, closed_instances, closed_witness),
        LawCheck("left-unit", unit_witness["left-unit"] is None, unit_instances,
                 None if unit_witness["left-unit"] is None else {"f": unit_witness["left-unit"]}),
        LawCheck("right-unit", unit_witness["right-unit"] is None, unit_instances,
                 None if unit_witness["right-unit"] is None else {"f": unit_witness["right-unit"]}),
        LawCheck("associative", assoc_witness is None, len(instances), assoc_witness),
    )
    return LawReport("category-laws", checks, mode=mode,
                     seed=seed if mode == "sampled" else None)


def summarize(data: CategoryData) -> Dict[str, Any]:
    model = data.model
    return {
        "objects": [describe_per(model, p) for p in data.objects],
        "hom_counts": data.hom_counts(),
        "global_elements": data.global_elements(),
    }
