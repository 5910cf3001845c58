"""Partial equivalence relations and functional relations between them.

All four functional-relation inequalities and both PER inequalities are
evaluated on stacked candidate matrices, so the same code checks a single
relation and filters every candidate table of a fibre.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..algebra import FiniteAlgebra
from ..base import BaseObject, product
from ..errors import DomainMismatchError
from ..hyperdoctrine import Model, Predicate, fibre_array, in_fibre
from ..reports import LawCheck, LawReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Per:
    """An object of the tripos-to-topos category: ``(X, eq)`` with ``eq`` over ``X x X``."""

    over: BaseObject
    eq: Predicate

    def __post_init__(self) -> None:
        square, _, _ = product(self.over, self.over)
        if self.eq.over != square:
            raise DomainMismatchError(f"a PER on {self.over} needs a predicate over {square}")

    @property
    def size(self) -> int:
        return self.over.size

    def matrix(self) -> np.ndarray:
        return np.array(self.eq.table, dtype=np.intp).reshape(self.size, self.size)

    def extent(self) -> np.ndarray:
        """``eq(x, x)`` for every point."""
        return np.diag(self.matrix())


@dataclass(frozen=True)
class FunctionalRelation:
    """A morphism ``dom -> cod`` given by a predicate over ``X x Y``."""

    dom: Per
    cod: Per
    rel: Predicate

    def __post_init__(self) -> None:
        square, _, _ = product(self.dom.over, self.cod.over)
        if self.rel.over != square:
            raise DomainMismatchError(f"relation must live over {square}, not {self.rel.over}")

    def matrix(self) -> np.ndarray:
        return np.array(self.rel.table, dtype=np.intp).reshape(self.dom.size, self.cod.size)


def per_from_matrix(over: BaseObject, matrix: Sequence[Sequence[int]]) -> Per:
    square, _, _ = product(over, over)
    flat = np.asarray(matrix, dtype=np.intp).reshape(over.size * over.size)
    return Per(over, Predicate(square, tuple(int(e) for e in flat)))


def relation_from_matrix(dom: Per, cod: Per, matrix: Sequence[Sequence[int]]) -> FunctionalRelation:
    square, _, _ = product(dom.over, cod.over)
    flat = np.asarray(matrix, dtype=np.intp).reshape(dom.size * cod.size)
    return FunctionalRelation(dom, cod, Predicate(square, tuple(int(e) for e in flat)))


# =============================================================================
# STACKED LAW EVALUATION
# =============================================================================


def _per_violations(omega: FiniteAlgebra, eq: np.ndarray) -> Dict[str, np.ndarray]:
    """Violation arrays for stacked PER candidates ``eq`` of shape ``k x n x n``."""
    leq, meet = omega.leq, omega.meet
    symmetric = ~leq[eq, eq.transpose(0, 2, 1)]
    # (k, x, y, z): eq(x,y) ^ eq(y,z) <= eq(x,z)
    chained = meet[eq[:, :, :, None], eq[:, None, :, :]]
    transitive = ~leq[chained, eq[:, :, None, :]]
    return {"symmetric": symmetric, "transitive": transitive}


def _join_rows(omega: FiniteAlgebra, rel: np.ndarray) -> np.ndarray:
    """``V_y rel(x, y)`` for stacked relations of shape ``k x nx x ny``."""
    total = np.full(rel.shape[:2], omega.bot, dtype=np.intp)
    for j in range(rel.shape[2]):
        total = omega.join[total, rel[:, :, j]]
    return total


def _relation_violations(
    omega: FiniteAlgebra, ex: np.ndarray, ey: np.ndarray, rel: np.ndarray
) -> Dict[str, np.ndarray]:
    """Violation arrays for stacked candidates ``rel`` (``k x nx x ny``)."""
    leq, meet = omega.leq, omega.meet
    dx, dy = np.diag(ex), np.diag(ey)
    strict = ~leq[rel, meet[dx[:, None], dy[None, :]][None, :, :]]
    # (k, x, x', y, y'): eqX(x,x') ^ rel(x,y) ^ eqY(y,y') <= rel(x',y')
    moved = meet[meet[ex[None, :, :, None, None], rel[:, :, None, :, None]], ey[None, None, None, :, :]]
    congruent = ~leq[moved, rel[:, None, :, None, :]]
    # (k, x, y, y'): rel(x,y) ^ rel(x,y') <= eqY(y,y')
    single = ~leq[meet[rel[:, :, :, None], rel[:, :, None, :]], ey[None, None, :, :]]
    total = ~leq[dx[None, :], _join_rows(omega, rel)]
    return {"strict": strict, "congruent": congruent, "single-valued": single, "total": total}


def _report(
    subject: str,
    violations: Dict[str, np.ndarray],
    names: Dict[str, Tuple[str, ...]],
    labels: Dict[str, BaseObject],
    extra_checks: Sequence[LawCheck] = (),
) -> LawReport:
    checks = list(extra_checks)
    for law, bad in violations.items():
        hits = np.argwhere(bad[0])
        witness = None
        if len(hits):
            first = (int(i) for i in hits[0])
            witness = {
                var: labels[var[0]].label(i) for var, i in zip(names[law], first)
            }
        checks.append(LawCheck(law, witness is None, int(bad[0].size), witness))
    return LawReport(subject, tuple(checks))


def check_per(model: Model, p: Per) -> LawReport:
    """Symmetry and pointwise-meet transitivity of ``p.eq``."""
    violations = _per_violations(model.omega, p.matrix()[None, :, :])
    fibre = LawCheck("in-fibre", in_fibre(model, p.eq), 1)
    return _report("per", violations, {
        "symmetric": ("x", "y"), "transitive": ("x", "y", "z"),
    }, {"x": p.over, "y": p.over, "z": p.over}, (fibre,))


def check_functional_relation(model: Model, f: FunctionalRelation) -> LawReport:
    violations = _relation_violations(
        model.omega, f.dom.matrix(), f.cod.matrix(), f.matrix()[None, :, :]
    )
    fibre = LawCheck("in-fibre", in_fibre(model, f.rel), 1)
    # witness variables: first letter selects the object the index refers to
    return _report("functional-relation", violations, {
        "strict": ("x", "y"),
        "congruent": ("x", "x'", "y", "y'"),
        "single-valued": ("x", "y", "y'"),
        "total": ("x",),
    }, {"x": f.dom.over, "y": f.cod.over}, (fibre,))


# =============================================================================
# CATEGORY OPERATIONS
# =============================================================================


def identity_relation(p: Per) -> FunctionalRelation:
    """The identity on ``p`` is its own equality predicate."""
    return relation_from_matrix(p, p, p.matrix())


def compose_relations(model: Model, f: FunctionalRelation, g: FunctionalRelation) -> FunctionalRelation:
    """``f`` then ``g``: ``rel(x, z) = V_y f(x, y) ^ g(y, z)``."""
    if f.cod != g.dom:
        raise DomainMismatchError("relations do not compose: codomain and domain PERs differ")
    omega = model.omega
    chained = omega.meet[f.matrix()[:, :, None], g.matrix()[None, :, :]]
    composite = np.full((f.dom.size, g.cod.size), omega.bot, dtype=np.intp)
    for j in range(f.cod.size):
        composite = omega.join[composite, chained[:, j, :]]
    return relation_from_matrix(f.dom, g.cod, composite)


def relation_leq(model: Model, f: FunctionalRelation, g: FunctionalRelation) -> bool:
    return bool(model.omega.leq[f.matrix(), g.matrix()].all())


def equivalent(model: Model, f: FunctionalRelation, g: FunctionalRelation) -> bool:
    """``f ~ g`` iff ``f <= g`` and ``g <= f`` in the fibre order."""
    if (f.dom, f.cod) != (g.dom, g.cod):
        return False
    return relation_leq(model, f, g) and relation_leq(model, g, f)


# =============================================================================
# ENUMERATION
# =============================================================================


def _any_rows(bad: np.ndarray) -> np.ndarray:
    return bad.any(axis=tuple(range(1, bad.ndim)))


def enumerate_pers(model: Model, over: BaseObject) -> List[Per]:
    """Every PER on ``over`` in the fibre, in lexicographic order of tables."""
    n = over.size
    square, _, _ = product(over, over)
    rows = fibre_array(model, square)
    stacked = rows.reshape(len(rows), n, n)
    bad = _per_violations(model.omega, stacked)
    keep = ~(_any_rows(bad["symmetric"]) | _any_rows(bad["transitive"]))
    logger.debug("%d PERs among %d tables over %s", int(keep.sum()), len(rows), over)
    return [Per(over, Predicate(square, tuple(int(e) for e in row))) for row in rows[keep]]


def enumerate_functional_relations(model: Model, dom: Per, cod: Per) -> List[FunctionalRelation]:
    """Every functional relation ``dom -> cod`` in the fibre, lexicographically."""
    square, _, _ = product(dom.over, cod.over)
    rows = fibre_array(model, square)
    stacked = rows.reshape(len(rows), dom.size, cod.size)
    bad = _relation_violations(model.omega, dom.matrix(), cod.matrix(), stacked)
    keep = np.ones(len(rows), dtype=bool)
    for violation in bad.values():
        keep &= ~_any_rows(violation)
    return [
        FunctionalRelation(dom, cod, Predicate(square, tuple(int(e) for e in row)))
        for row in rows[keep]
    ]


def describe_per(model: Model, p: Per) -> Dict[str, Any]:
    omega = model.omega
    return {
        "carrier": p.over.labels(range(p.size)),
        "eq": [[omega.label(e) for e in row] for row in p.matrix()],
    }
