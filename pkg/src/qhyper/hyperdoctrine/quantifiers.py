"""Pointwise quantifiers, equality and comprehension.

Along a map ``f: A -> B`` the universal quantifier takes the meet of a
predicate over each fibre ``f^-1(b)`` and the existential quantifier takes the
join; equality along the diagonal is the existential quantifier along it. The
results are candidates only: they must lie in the fibre over ``B``, otherwise
the construction does not lift and :class:`LiftingError` is raised.
"""

from __future__ import annotations

from typing import Literal, Tuple

import numpy as np

from ..algebra import FiniteAlgebra
from ..base import BaseMorphism, BaseObject, diagonal, subobject
from ..errors import DomainMismatchError, LiftingError
from .model import Model, Predicate, fibre_witness

Quantifier = Literal["forall", "exists", "equality"]


def quantify_rows(
    omega: FiniteAlgebra, kind: Quantifier, rows: np.ndarray, f: BaseMorphism
) -> np.ndarray:
    """Apply the pointwise quantifier along ``f`` to every row of ``rows`` at once.

    ``rows`` has shape ``k x |dom f|``; the result has shape ``k x |cod f|``.
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=np.intp))
    if kind == "forall":
        table, start = omega.meet, omega.top
    else:
        table, start = omega.join, omega.bot
    result = np.full((len(rows), f.cod.size), start, dtype=np.intp)
    for i, j in enumerate(f.table):
        result[:, j] = table[result[:, j], rows[:, i]]
    return result


def _lift(model: Model, kind: Quantifier, f: BaseMorphism, v: Predicate) -> Predicate:
    if v.over != f.dom:
        raise DomainMismatchError(f"predicate over {v.over}, map out of {f.dom}")
    row = quantify_rows(model.omega, kind, np.array([v.table]), f)[0]
    witness = fibre_witness(model, f.cod, row)
    if witness is not None:
        raise LiftingError(kind, witness)
    return Predicate(f.cod, tuple(int(e) for e in row))


def forall_along(model: Model, f: BaseMorphism, v: Predicate) -> Predicate:
    """``(forall_f v)(y) = meet { v(x) | f(x) = y }``; empty meets are top."""
    return _lift(model, "forall", f, v)


def exists_along(model: Model, f: BaseMorphism, v: Predicate) -> Predicate:
    """``(exists_f v)(y) = join { v(x) | f(x) = y }``; empty joins are bottom."""
    return _lift(model, "exists", f, v)


def equality_along(model: Model, delta: BaseMorphism, v: Predicate) -> Predicate:
    """``Eq(v)(x, x) = v(x)`` and bottom off the diagonal."""
    expected = diagonal(delta.dom)
    if delta.cod != expected.cod or delta.table != expected.table:
        raise DomainMismatchError(f"equality is taken along the diagonal of {delta.dom}")
    return _lift(model, "equality", delta, v)


def comprehension(model: Model, obj: BaseObject, v: Predicate) -> Tuple[BaseObject, BaseMorphism]:
    """The sub-object where ``v`` is top, with its inclusion."""
    if v.over != obj:
        raise DomainMismatchError(f"predicate over {v.over}, not {obj}")
    points = [p for p, e in zip(obj.carrier, v.table) if e == model.omega.top]
    return subobject(obj, points)
