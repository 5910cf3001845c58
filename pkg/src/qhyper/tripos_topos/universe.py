"""Omega-valued sets and the rank-bounded Omega-valued universe.

``V_0`` holds only the empty map and ``V_(a+1)`` holds every map from a subset
of ``V_a`` into omega, so ``|V_(a+1)| = (1 + |omega|) ** |V_a|``. Elements are
immutable and canonical: entries are kept sorted by a structural key, so two
elements are equal exactly when their maps are equal.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra import FiniteAlgebra
from ..config import DEFAULT_BOUNDS, Bounds
from ..errors import CapacityError, InputError, StructuralError
from ..reports import LawCheck, LawReport
from .pers import Per

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VElement:
    entries: Tuple[Tuple["VElement", int], ...] = ()
    rank: int = field(default=-1, compare=False)

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.entries, key=lambda item: (item[0].key, item[1])))
        keys = [key for key, _ in ordered]
        if len(set(keys)) != len(keys):
            raise StructuralError("entries", "a key occurs twice")
        least = 1 + max((key.rank for key in keys), default=-1)
        rank = least if self.rank < 0 else self.rank
        if rank < least:
            raise StructuralError("rank", f"rank {rank} does not exceed the rank of every key")
        object.__setattr__(self, "entries", ordered)
        object.__setattr__(self, "rank", rank)

    @classmethod
    def of(cls, mapping: Mapping["VElement", int]) -> "VElement":
        return cls(tuple((key, int(value)) for key, value in mapping.items()))

    @cached_property
    def key(self) -> Tuple[Any, ...]:
        """Structural sort key; a total order on canonical elements."""
        return (self.rank, tuple((k.key, v) for k, v in self.entries))

    def as_dict(self) -> dict:
        return dict(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


EMPTY = VElement()


def v_stage_of(u: VElement) -> int:
    """Least ``a`` with ``u`` in ``V_a``."""
    return u.rank


def numeral(n: int, omega: FiniteAlgebra) -> VElement:
    """The canonical numeral: ``0 = {}`` and ``n = {j: top | j < n}``."""
    if n < 0:
        raise InputError("numerals are non-negative")
    previous: List[VElement] = []
    current = EMPTY
    for _ in range(n):
        previous.append(current)
        current = VElement(tuple((k, omega.top) for k in previous))
    return current


# =============================================================================
# OMEGA-VALUED SETS
# =============================================================================


@dataclass(frozen=True)
class QSet:
    """A carrier with omega-valued equality ``eq[i][j]`` (element indices)."""

    carrier: Tuple[str, ...]
    eq: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.carrier)
        eq = tuple(tuple(int(e) for e in row) for row in self.eq)
        if len(eq) != n or any(len(row) != n for row in eq):
            raise StructuralError("eq", f"expected a {n} x {n} table")
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "eq", eq)

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.eq[i][i] for i in range(len(self.carrier)))


def check_qset(q: QSet, omega: FiniteAlgebra) -> LawReport:
    """Symmetry and transitivity of the equality table, as for PERs."""
    eq = np.array(q.eq, dtype=np.intp).reshape(len(q.carrier), len(q.carrier))
    symmetric = ~omega.leq[eq, eq.T]
    transitive = ~omega.leq[omega.meet[eq[:, :, None], eq[None, :, :]], eq[:, None, :]]
    checks = []
    for law, bad, names in (("symmetric", symmetric, "xy"), ("transitive", transitive, "xyz")):
        hits = np.argwhere(bad)
        witness = None
        if len(hits):
            witness = {name: q.carrier[int(i)] for name, i in zip(names, hits[0])}
        checks.append(LawCheck(law, witness is None, int(bad.size), witness))
    return LawReport("qset", tuple(checks))


def per_to_qset(p: Per) -> QSet:
    matrix = p.matrix()
    return QSet(tuple(p.over.labels(range(p.size))), tuple(tuple(int(e) for e in row) for row in matrix))


def qset_to_v(q: QSet, omega: FiniteAlgebra) -> VElement:
    """Encode the i-th carrier element as the numeral ``i`` valued ``eq(x_i, x_i)``.

    Only the diagonal (extents) is encoded.
    """
    return VElement(tuple((numeral(i, omega), e) for i, e in enumerate(q.diagonal())))


# =============================================================================
# THE UNIVERSE
# =============================================================================


@dataclass(frozen=True)
class VUniverse:
    omega: FiniteAlgebra
    stages: Tuple[Tuple[VElement, ...], ...]

    @property
    def counts(self) -> List[int]:
        return [len(stage) for stage in self.stages]


def v_count(
    omega: Union[FiniteAlgebra, int], max_rank: int, bounds: Optional[Bounds] = None
) -> List[int]:
    """``|V_0|, ..., |V_max_rank|`` from the closed form.

    ``omega`` is the value algebra; only its size matters, so a bare size is accepted too.
    """
    bounds = bounds or DEFAULT_BOUNDS
    omega_size = omega if isinstance(omega, int) else omega.size
    if max_rank < 0:
        raise InputError("rank must be non-negative")
    if max_rank > bounds.v_rank:
        raise CapacityError("universe rank", max_rank, bounds.v_rank)
    counts = [1]
    for _ in range(max_rank):
        if counts[-1] > bounds.v_enumeration:
            raise CapacityError("universe count exponent", counts[-1], bounds.v_enumeration)
        counts.append((1 + omega_size) ** counts[-1])
    return counts


def v_build(omega: FiniteAlgebra, max_rank: int, cap: Optional[int] = None,
            bounds: Optional[Bounds] = None) -> VUniverse:
    """Enumerate ``V_0 .. V_max_rank``; each stage is sorted by structural key."""
    bounds = bounds or DEFAULT_BOUNDS
    cap = bounds.v_enumeration if cap is None else cap
    if max_rank > bounds.v_rank:
        raise CapacityError("universe rank", max_rank, bounds.v_rank)
    stages: List[Tuple[VElement, ...]] = [(EMPTY,)]
    for _ in range(max_rank):
        previous = stages[-1]
        size = (1 + omega.size) ** len(previous)
        if size > cap:
            raise CapacityError(f"V_{len(stages)}", size, cap)
        stage = []
        # -1 marks a key left out of the domain
        for values in itertools.product(range(-1, omega.size), repeat=len(previous)):
            stage.append(VElement(tuple((k, v) for k, v in zip(previous, values) if v >= 0)))
        stages.append(tuple(sorted(stage, key=lambda u: u.key)))
        logger.debug("V_%d has %d elements", len(stages) - 1, len(stage))
    return VUniverse(omega, tuple(stages))


def distinct_encodings(qsets: Sequence[QSet], omega: FiniteAlgebra) -> bool:
    """Whether QSets with distinct diagonals receive distinct encodings."""
    seen = {}
    for q in qsets:
        u = qset_to_v(q, omega)
        if u in seen and seen[u] != q.diagonal():
            return False
        seen[u] = q.diagonal()
    return True
