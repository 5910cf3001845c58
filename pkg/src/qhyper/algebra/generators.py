"""Standard finite value algebras."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional

import numpy as np

from ..config import DEFAULT_BOUNDS, Bounds
from ..errors import AlgebraIncompleteError, CapacityError, InputError
from .lattice import AlgebraClass, FiniteAlgebra, from_order


def _order_from_covers(labels: tuple, covers: list) -> np.ndarray:
    n = len(labels)
    pos = {label: i for i, label in enumerate(labels)}
    leq = np.eye(n, dtype=bool)
    for low, high in covers:
        leq[pos[low], pos[high]] = True
    # transitive closure
    for k in range(n):
        leq |= leq[:, k : k + 1] & leq[k : k + 1, :]
    return leq


def mo2() -> FiniteAlgebra:
    """The six-element orthomodular lattice with two incomparable complement pairs."""
    labels = ("0", "a", "a'", "b", "b'", "1")
    covers = [("0", atom) for atom in labels[1:5]] + [(atom, "1") for atom in labels[1:5]]
    ortho = [5, 2, 1, 4, 3, 0]
    return from_order(labels, _order_from_covers(labels, covers), ortho=ortho,
                      class_tag=AlgebraClass.ORTHOMODULAR)


def o6() -> FiniteAlgebra:
    """The benzene ortholattice: ``a < b`` and ``b' < a'``; not orthomodular."""
    labels = ("0", "a", "b", "b'", "a'", "1")
    covers = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")]
    ortho = [5, 4, 3, 2, 1, 0]
    return from_order(labels, _order_from_covers(labels, covers), ortho=ortho,
                      class_tag=AlgebraClass.ORTHOLATTICE)


def _subset_label(mask: int, k: int) -> str:
    if mask == 0:
        return "0"
    if mask == (1 << k) - 1:
        return "1"
    return "+".join(f"a{i + 1}" for i in range(k) if mask >> i & 1)


def boolean_algebra(k: int, bounds: Optional[Bounds] = None) -> FiniteAlgebra:
    """Powerset of ``k`` atoms; ``boolean_algebra(1)`` is the two-element chain."""
    bounds = bounds or DEFAULT_BOUNDS
    if k < 0:
        raise InputError("the number of atoms must be non-negative")
    if k > bounds.boolean_atoms:
        raise CapacityError("boolean algebra atoms", k, bounds.boolean_atoms)
    full = (1 << k) - 1
    masks = np.arange(1 << k, dtype=np.intp)
    meet = masks[:, None] & masks[None, :]
    join = masks[:, None] | masks[None, :]
    leq = (masks[:, None] & ~masks[None, :]) == 0
    ortho = full ^ masks
    impl = (ortho[:, None] | masks[None, :]) & full
    labels = tuple(_subset_label(int(m), k) for m in masks)
    return FiniteAlgebra(labels, leq, meet, join, bot=0, top=full, ortho=ortho,
                         impl=impl, class_tag=AlgebraClass.BOOLEAN)


def two_chain() -> FiniteAlgebra:
    return boolean_algebra(1)


def chain(n: int, bounds: Optional[Bounds] = None) -> FiniteAlgebra:
    """The ``n``-element chain ``0 < 1/(n-1) < ... < 1`` with Goedel implication."""
    bounds = bounds or DEFAULT_BOUNDS
    if n < 1:
        raise InputError("a chain needs at least one element")
    if n > bounds.chain_length:
        raise CapacityError("chain length", n, bounds.chain_length)
    idx = np.arange(n, dtype=np.intp)
    leq = idx[:, None] <= idx[None, :]
    meet = np.minimum(idx[:, None], idx[None, :])
    join = np.maximum(idx[:, None], idx[None, :])
    impl = np.where(leq, n - 1, idx[None, :])
    labels = tuple(str(Fraction(i, n - 1)) if n > 1 else "0" for i in range(n))
    return FiniteAlgebra(labels, leq, meet, join, bot=0, top=n - 1, impl=impl,
                         class_tag=AlgebraClass.HEYTING)


def heyting_implication(algebra: FiniteAlgebra) -> FiniteAlgebra:
    """Attach the relative pseudo-complement ``y -> z = V{x | x ^ y <= z}``."""
    n = algebra.size
    impl = np.zeros((n, n), dtype=np.intp)
    for y in range(n):
        for z in range(n):
            allowed = algebra.leq[algebra.meet[:, y], z]
            best = algebra.join_all(np.flatnonzero(allowed))
            if not allowed[best]:
                raise AlgebraIncompleteError(
                    f"no implication {algebra.label(y)} -> {algebra.label(z)}"
                )
            impl[y, z] = best
    return FiniteAlgebra(algebra.carrier, algebra.leq, algebra.meet, algebra.join,
                         algebra.bot, algebra.top, ortho=algebra.ortho, impl=impl,
                         class_tag=AlgebraClass.HEYTING)


def is_isomorphic(first: FiniteAlgebra, second: FiniteAlgebra, max_size: int = 8) -> bool:
    """Order (and ortho, when both carry one) isomorphism by bijection search."""
    n = first.size
    if n != second.size:
        return False
    if n > max_size:
        raise CapacityError("isomorphism search size", n, max_size)
    check_ortho = first.ortho is not None and second.ortho is not None
    for perm in itertools.permutations(range(n)):
        p = np.array(perm, dtype=np.intp)
        if not np.array_equal(second.leq[p[:, None], p[None, :]], first.leq):
            continue
        if check_ortho and not np.array_equal(second.ortho[p], p[first.ortho]):
            continue
        return True
    return False
