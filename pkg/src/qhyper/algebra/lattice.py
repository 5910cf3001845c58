"""Finite ordered algebras stored as numpy order matrices and index tables."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, reduce
from typing import Any, Dict, Iterable, Literal, Optional, Sequence, Tuple

import numpy as np

from ..errors import AlgebraIncompleteError, InputError, StructuralError

logger = logging.getLogger(__name__)

AggregateKind = Literal["meet", "join"]


class AlgebraClass(str, Enum):
    POSET = "poset"
    BOUNDED_LATTICE = "bounded-lattice"
    DISTRIBUTIVE = "distributive"
    HEYTING = "heyting"
    FRAME = "frame"
    BOOLEAN = "boolean"
    ORTHOLATTICE = "ortholattice"
    ORTHOMODULAR = "orthomodular"


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _bool_table(name: str, value: Any, shape: Tuple[int, ...]) -> np.ndarray:
    try:
        array = np.array(value)
    except ValueError as exc:
        raise StructuralError(name, str(exc)) from exc
    if array.shape != shape:
        raise StructuralError(name, f"expected shape {shape}, got {array.shape}")
    if array.size and array.dtype.kind != "b":
        raise StructuralError(name, f"expected booleans, got {array.dtype}")
    return _readonly(array.astype(bool))


def _index_table(name: str, value: Any, shape: Tuple[int, ...], n: int) -> np.ndarray:
    try:
        array = np.array(value)
    except ValueError as exc:
        raise StructuralError(name, str(exc)) from exc
    if array.shape != shape:
        raise StructuralError(name, f"expected shape {shape}, got {array.shape}")
    if array.size and array.dtype.kind not in "iu":
        raise StructuralError(name, f"expected element indices, got {array.dtype}")
    array = array.astype(np.intp)
    if array.size and (array.min() < 0 or array.max() >= n):
        raise StructuralError(name, f"index out of range 0..{n - 1}")
    return _readonly(array)


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """A finite bounded poset with lattice tables and optional ortho/implication.

    Elements are the indices ``0..n-1``; ``carrier`` holds their labels.
    ``leq[x, y]`` is ``x <= y``; ``meet``/``join``/``impl`` are ``n x n`` index
    tables and ``ortho`` an ``n`` index table.
    """

    carrier: Tuple[str, ...]
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    bot: int
    top: int
    ortho: Optional[np.ndarray] = None
    impl: Optional[np.ndarray] = None
    class_tag: AlgebraClass = AlgebraClass.BOUNDED_LATTICE

    def __post_init__(self) -> None:
        carrier = tuple(str(label) for label in self.carrier)
        n = len(carrier)
        if n == 0:
            raise StructuralError("carrier", "an algebra needs at least one element")
        if len(set(carrier)) != n:
            raise StructuralError("carrier", "labels must be distinct")
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "leq", _bool_table("leq", self.leq, (n, n)))
        object.__setattr__(self, "meet", _index_table("meet", self.meet, (n, n), n))
        object.__setattr__(self, "join", _index_table("join", self.join, (n, n), n))
        if self.ortho is not None:
            object.__setattr__(self, "ortho", _index_table("ortho", self.ortho, (n,), n))
        if self.impl is not None:
            object.__setattr__(self, "impl", _index_table("impl", self.impl, (n, n), n))
        for name in ("bot", "top"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or not 0 <= value < n:
                raise StructuralError(name, f"expected an index in 0..{n - 1}")
            object.__setattr__(self, name, int(value))
        try:
            object.__setattr__(self, "class_tag", AlgebraClass(self.class_tag))
        except ValueError as exc:
            raise StructuralError("class", str(exc)) from exc

    @property
    def size(self) -> int:
        return len(self.carrier)

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.carrier)}

    def index(self, label: str) -> int:
        try:
            return self._positions[str(label)]
        except KeyError:
            raise InputError(f"unknown element {label!r}") from None

    def label(self, element: int) -> str:
        return self.carrier[int(element)]

    def labels(self, elements: Iterable[int]) -> Tuple[str, ...]:
        return tuple(self.carrier[int(e)] for e in elements)

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    @property
    def has_ortho(self) -> bool:
        return self.ortho is not None

    @property
    def has_impl(self) -> bool:
        return self.impl is not None

    def meet_all(self, elements: Iterable[int]) -> int:
        return int(reduce(lambda a, b: self.meet[a, b], elements, self.top))

    def join_all(self, elements: Iterable[int]) -> int:
        return int(reduce(lambda a, b: self.join[a, b], elements, self.bot))

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.class_tag.value}, carrier={list(self.carrier)})"


def _greatest(leq: np.ndarray, candidates: np.ndarray) -> Optional[int]:
    members = np.flatnonzero(candidates)
    for g in members:
        if np.all(leq[members, g]):
            return int(g)
    return None


def _least(leq: np.ndarray, candidates: np.ndarray) -> Optional[int]:
    members = np.flatnonzero(candidates)
    for g in members:
        if np.all(leq[g, members]):
            return int(g)
    return None


def _bound(leq: np.ndarray, kind: AggregateKind, members: Sequence[int]) -> Optional[int]:
    index = list(members)
    if kind == "meet":
        return _greatest(leq, np.all(leq[:, index], axis=1))
    return _least(leq, np.all(leq[index, :], axis=0))


def aggregate(algebra: FiniteAlgebra, kind: AggregateKind, elements: Iterable[int]) -> int:
    """Greatest lower (``meet``) or least upper (``join``) bound of a set.

    The empty meet is top and the empty join is bottom. Bounds are located from
    the order relation alone, so a poset without the bound raises
    :class:`AlgebraIncompleteError`.
    """
    if kind not in ("meet", "join"):
        raise InputError(f"unknown aggregate kind {kind!r}")
    members = sorted({int(e) for e in elements})
    result = _bound(algebra.leq, kind, members)
    if result is None:
        raise AlgebraIncompleteError(
            f"{kind} of {list(algebra.labels(members))} does not exist"
        )
    return result


def from_order(
    carrier: Sequence[str],
    leq: Any,
    ortho: Optional[Sequence[int]] = None,
    impl: Optional[Any] = None,
    class_tag: AlgebraClass | str = AlgebraClass.BOUNDED_LATTICE,
) -> FiniteAlgebra:
    """Build an algebra from its order, deriving meet, join and the bounds."""
    n = len(carrier)
    order = _bool_table("leq", leq, (n, n))
    meet = np.zeros((n, n), dtype=np.intp)
    join = np.zeros((n, n), dtype=np.intp)
    for x in range(n):
        for y in range(x, n):
            lower = _bound(order, "meet", (x, y))
            upper = _bound(order, "join", (x, y))
            if lower is None or upper is None:
                kind = "meet" if lower is None else "join"
                raise AlgebraIncompleteError(
                    f"{kind} of {carrier[x]!r} and {carrier[y]!r} does not exist"
                )
            meet[x, y] = meet[y, x] = lower
            join[x, y] = join[y, x] = upper
    bot = _bound(order, "join", ())
    top = _bound(order, "meet", ())
    if bot is None or top is None:
        raise AlgebraIncompleteError("the order has no bottom or no top")
    return FiniteAlgebra(
        tuple(carrier), order, meet, join, bot, top, ortho=ortho, impl=impl,
        class_tag=AlgebraClass(class_tag),
    )


def find_distributivity_counterexample(
    algebra: FiniteAlgebra,
) -> Optional[Tuple[str, str, str]]:
    """First ``(x, y, z)`` in index order with ``x^(yvz) != (x^y)v(x^z)``."""
    idx = np.arange(algebra.size)
    meet, join = algebra.meet, algebra.join
    x, y, z = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    lhs = meet[x, join[y, z]]
    rhs = join[meet[x, y], meet[x, z]]
    hits = np.argwhere(lhs != rhs)
    if len(hits) == 0:
        return None
    a, b, c = (int(i) for i in hits[0])
    logger.debug("distributivity fails at %s", algebra.labels((a, b, c)))
    return algebra.label(a), algebra.label(b), algebra.label(c)
