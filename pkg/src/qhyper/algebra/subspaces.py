"""Finitely generated sublattices of the subspace lattice of Q^d.

Subspaces are canonicalised by their reduced row-echelon basis over exact
rationals, so equality of subspaces is equality of tuples.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..config import DEFAULT_BOUNDS
from ..errors import CapacityError, InputError, StructuralError
from .lattice import AlgebraClass, FiniteAlgebra

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


def parse_rational(value: object) -> Fraction:
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {value!r}") from exc


def rref(rows: Iterable[Sequence[Fraction]], dim: int) -> Tuple[Vector, ...]:
    """Reduced row-echelon form with the zero rows dropped."""
    matrix = [list(row) for row in rows]
    pivot_row = 0
    for col in range(dim):
        if pivot_row == len(matrix):
            break
        pivot = next((r for r in range(pivot_row, len(matrix)) if matrix[r][col] != 0), None)
        if pivot is None:
            continue
        matrix[pivot_row], matrix[pivot] = matrix[pivot], matrix[pivot_row]
        lead = matrix[pivot_row][col]
        matrix[pivot_row] = [value / lead for value in matrix[pivot_row]]
        for r in range(len(matrix)):
            factor = matrix[r][col]
            if r != pivot_row and factor != 0:
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[pivot_row])]
        pivot_row += 1
    return tuple(tuple(row) for row in matrix[:pivot_row])


def _format_vector(vector: Vector) -> str:
    return ",".join(str(v) for v in vector)


@dataclass(frozen=True, order=True)
class Subspace:
    dim: int
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Fraction]], dim: int) -> "Subspace":
        rows = [tuple(Fraction(v) for v in vector) for vector in vectors]
        for row in rows:
            if len(row) != dim:
                raise StructuralError("generators", f"vector {row} is not in Q^{dim}")
        return cls(dim, rref(rows, dim))

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim, ())

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls.span(
            [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)], dim
        )

    @property
    def rank(self) -> int:
        return len(self.basis)

    def join(self, other: "Subspace") -> "Subspace":
        return Subspace(self.dim, rref(self.basis + other.basis, self.dim))

    @cached_property
    def _perp(self) -> "Subspace":
        pivots = [next(c for c, v in enumerate(row) if v != 0) for row in self.basis]
        free = [c for c in range(self.dim) if c not in pivots]
        vectors = []
        for f in free:
            vector = [Fraction(0)] * self.dim
            vector[f] = Fraction(1)
            for row, p in zip(self.basis, pivots):
                vector[p] = -row[f]
            vectors.append(vector)
        return Subspace(self.dim, rref(vectors, self.dim))

    def perp(self) -> "Subspace":
        """Orthogonal complement for the standard rational inner product."""
        return self._perp

    def meet(self, other: "Subspace") -> "Subspace":
        return self.perp().join(other.perp()).perp()

    def contains(self, other: "Subspace") -> bool:
        return self.join(other) == self

    @property
    def label(self) -> str:
        if self.rank == 0:
            return "0"
        if self.rank == self.dim:
            return f"Q^{self.dim}"
        if self.rank == 1:
            return f"span({_format_vector(self.basis[0])})"
        return "span(" + ",".join(f"({_format_vector(v)})" for v in self.basis) + ")"


@dataclass(frozen=True)
class SubspaceLatticeSpec:
    dim: int
    generators: Tuple[Tuple[Vector, ...], ...] = ()
    size_cap: int = DEFAULT_BOUNDS.subspace_size

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise StructuralError("dim", "dimension must be positive")
        if self.size_cap < 2:
            raise StructuralError("size_cap", "size_cap must be at least 2")
        for i, generator in enumerate(self.generators):
            space = Subspace.span(generator, self.dim)
            if space.rank != len(generator):
                raise StructuralError("generators", f"generator {i} is linearly dependent")


def close_subspaces(spec: SubspaceLatticeSpec) -> Tuple[Subspace, ...]:
    """Smallest family with the generators, 0 and Q^d closed under meet, join, perp."""
    cap = spec.size_cap
    family = {Subspace.zero(spec.dim), Subspace.full(spec.dim)}
    family.update(Subspace.span(g, spec.dim) for g in spec.generators)
    while True:
        current = sorted(family)
        found = {u.perp() for u in current}
        for u, v in itertools.combinations(current, 2):
            found.add(u.meet(v))
            found.add(u.join(v))
        fresh = found - family
        if not fresh:
            break
        family |= fresh
        logger.debug("subspace closure grew to %d elements", len(family))
        if len(family) > cap:
            raise CapacityError("subspace lattice closure", len(family), cap)
    return tuple(sorted(family, key=lambda s: (s.rank, s.basis)))


def subspace_lattice(spec: SubspaceLatticeSpec) -> FiniteAlgebra:
    """The closed family as an orthomodular algebra ordered by inclusion."""
    elements = close_subspaces(spec)
    position: Dict[Subspace, int] = {s: i for i, s in enumerate(elements)}
    n = len(elements)
    leq = np.array([[v.contains(u) for v in elements] for u in elements], dtype=bool)
    meet = np.array([[position[u.meet(v)] for v in elements] for u in elements], dtype=np.intp)
    join = np.array([[position[u.join(v)] for v in elements] for u in elements], dtype=np.intp)
    ortho = np.array([position[u.perp()] for u in elements], dtype=np.intp)
    logger.info("subspace lattice of Q^%d has %d elements", spec.dim, n)
    return FiniteAlgebra(
        tuple(s.label for s in elements), leq, meet, join, bot=0, top=n - 1,
        ortho=ortho, class_tag=AlgebraClass.ORTHOMODULAR,
    )


def spec_from_vectors(dim: int, generators: List[List[Sequence[object]]], size_cap: int) -> SubspaceLatticeSpec:
    """Build a spec from nested lists of rational strings such as ``"1/2"``."""
    parsed = tuple(
        tuple(tuple(parse_rational(v) for v in vector) for vector in generator)
        for generator in generators
    )
    return SubspaceLatticeSpec(dim, parsed, size_cap)
