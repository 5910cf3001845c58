"""Exhaustive verifiers for the hyperdoctrine laws.

Each verifier enumerates the fibres involved as index arrays and evaluates the
law for whole blocks of predicates with numpy. Violations are reported in
enumeration order, so the first witness is the lexicographically least one.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..algebra import FiniteAlgebra
from ..base import (
    BaseKind,
    BaseMorphism,
    BaseObject,
    compose,
    diagonal,
    enumerate_morphisms,
    identity,
    omega_object,
    product,
    product_morphism,
)
from ..errors import InputError, UnsupportedKindError
from ..reports import LawCheck, LawReport
from .model import Model, Predicate, fibre_array, fibre_mask, fibre_witness, pullback
from .quantifiers import Quantifier, comprehension, quantify_rows

logger = logging.getLogger(__name__)

_CHUNK = 256


def _mapping(model: Model, obj: BaseObject, row: np.ndarray) -> Dict[str, str]:
    return {obj.label(i): model.omega.label(e) for i, e in enumerate(row)}


def _columns(rows: np.ndarray, f: BaseMorphism) -> np.ndarray:
    """Pull every row back along ``f``."""
    return rows[:, np.asarray(f.table, dtype=np.intp)]


def _le(omega: FiniteAlgebra, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    return omega.leq[lower, upper].all(axis=-1)


def _along(x: BaseObject, y: Optional[BaseObject], which: Quantifier) -> Tuple[BaseMorphism, BaseObject]:
    """The map a quantifier is taken along and its domain."""
    if which == "equality":
        delta = diagonal(x)
        return delta, x
    if which not in ("forall", "exists"):
        raise InputError(f"unknown quantifier {which!r}")
    if y is None:
        raise InputError(f"{which} needs both X and Y")
    xy, _, p2 = product(x, y)
    return p2, xy


def _lifting_check(
    model: Model, which: Quantifier, f: BaseMorphism, rows: np.ndarray, quantified: np.ndarray
) -> LawCheck:
    lifted = fibre_mask(model, f.cod, quantified)
    if lifted.all():
        return LawCheck("lifting", True, len(rows))
    i = int(np.argmin(lifted))
    witness = {
        "quantifier": which,
        "v": _mapping(model, f.dom, rows[i]),
        **(fibre_witness(model, f.cod, quantified[i]) or {}),
    }
    return LawCheck("lifting", False, len(rows), witness)


def check_lifting(
    model: Model, which: Quantifier, x: BaseObject, y: Optional[BaseObject] = None
) -> LawReport:
    """Whether the pointwise quantifier lands in the fibre for every predicate."""
    f, source = _along(x, y, which)
    rows = fibre_array(model, source)
    check = _lifting_check(model, which, f, rows, quantify_rows(model.omega, which, rows, f))
    return LawReport(f"lifting-{which}", (check,))


def check_adjunction(
    model: Model, which: Quantifier, x: BaseObject, y: Optional[BaseObject] = None
) -> LawReport:
    """Galois condition of the quantifier against pullback, over all fibre pairs.

    ``exists``/``equality``: ``Q(v) <= w`` iff ``v <= f* w``;
    ``forall``: ``w <= Q(v)`` iff ``f* w <= v``.
    """
    omega = model.omega
    f, source = _along(x, y, which)
    v_rows = fibre_array(model, source)
    w_rows = fibre_array(model, f.cod)
    quantified = quantify_rows(omega, which, v_rows, f)
    pulled = _columns(w_rows, f)
    lifting = _lifting_check(model, which, f, v_rows, quantified)

    violation = None
    for start in range(0, len(v_rows), _CHUNK):
        v_block = v_rows[start : start + _CHUNK, None, :]
        q_block = quantified[start : start + _CHUNK, None, :]
        if which == "forall":
            lhs = _le(omega, w_rows[None, :, :], q_block)
            rhs = _le(omega, pulled[None, :, :], v_block)
        else:
            lhs = _le(omega, q_block, w_rows[None, :, :])
            rhs = _le(omega, v_block, pulled[None, :, :])
        hits = np.argwhere(lhs != rhs)
        if len(hits):
            violation = (start + int(hits[0][0]), int(hits[0][1]))
            break

    witness = None
    if violation is not None:
        i, j = violation
        witness = {
            "v": _mapping(model, f.dom, v_rows[i]),
            "w": _mapping(model, f.cod, w_rows[j]),
            "quantified": _mapping(model, f.cod, quantified[i]),
        }
    galois = LawCheck("galois", violation is None, len(v_rows) * len(w_rows), witness)
    report = LawReport(f"adjunction-{which}", (lifting, galois))
    logger.info("adjunction-%s over %s: %s", which, source, "pass" if report.passed else "fail")
    return report


def check_beck_chevalley(
    model: Model, which: Quantifier, x: BaseObject, y: BaseObject, z: BaseObject
) -> LawReport:
    """``f* (Q_pi v) = Q_pi' ((X x f)* v)`` for every ``f: Z -> Y`` and ``v`` over ``X x Y``."""
    if which not in ("forall", "exists"):
        raise InputError(f"Beck-Chevalley is checked for forall and exists, not {which!r}")
    omega = model.omega
    xy, _, p_y = product(x, y)
    _, _, p_z = product(x, z)
    v_rows = fibre_array(model, xy)
    quantified = quantify_rows(omega, which, v_rows, p_y)
    lifting = _lifting_check(model, which, p_y, v_rows, quantified)
    arrows = enumerate_morphisms(z, y, model.bounds)

    witness = None
    for f in arrows:
        reindex = product_morphism(identity(x), f)
        lhs = _columns(quantified, f)
        moved = _columns(v_rows, reindex)
        rhs = quantify_rows(omega, which, moved, p_z)
        bad = np.flatnonzero((lhs != rhs).any(axis=1))
        if len(bad):
            i = int(bad[0])
            witness = {
                "f": f.to_mapping(),
                "v": _mapping(model, xy, v_rows[i]),
                "lhs": _mapping(model, z, lhs[i]),
                "rhs": _mapping(model, z, rhs[i]),
            }
            break
    square = LawCheck("square-commutes", witness is None, len(arrows) * len(v_rows), witness)
    report = LawReport(f"beck-chevalley-{which}", (lifting, square),
                       extra={"morphisms": len(arrows)})
    logger.info("beck-chevalley-%s: %d maps, %s", which, len(arrows),
                "pass" if report.passed else "fail")
    return report


def check_frobenius(model: Model, x: BaseObject, y: BaseObject) -> Optional[Dict[str, Any]]:
    """First ``(v, w)`` with ``exists(v ^ pi* w) != exists(v) ^ w``, or ``None``.

    ``v`` ranges over the fibre of ``X x Y`` (outer loop) and ``w`` over the fibre
    of ``Y`` (inner loop), both in lexicographic order.
    """
    omega = model.omega
    xy, _, pi = product(x, y)
    v_rows = fibre_array(model, xy)
    w_rows = fibre_array(model, y)
    pulled = _columns(w_rows, pi)
    exists_v = quantify_rows(omega, "exists", v_rows, pi)
    for start in range(0, len(v_rows), _CHUNK):
        block = v_rows[start : start + _CHUNK]
        meets = omega.meet[block[:, None, :], pulled[None, :, :]]
        lhs = quantify_rows(omega, "exists", meets.reshape(len(block) * len(w_rows), xy.size), pi)
        lhs = lhs.reshape(len(block), len(w_rows), y.size)
        rhs = omega.meet[exists_v[start : start + _CHUNK, None, :], w_rows[None, :, :]]
        hits = np.argwhere((lhs != rhs).any(axis=-1))
        if len(hits):
            i, j = (int(k) for k in hits[0])
            logger.info("frobenius fails over %s", xy)
            return {
                "v": _mapping(model, xy, block[i]),
                "w": _mapping(model, y, w_rows[j]),
                "lhs": _mapping(model, y, lhs[i, j]),
                "rhs": _mapping(model, y, rhs[i, j]),
            }
    return None


def frobenius_report(model: Model, x: BaseObject, y: BaseObject) -> LawReport:
    counterexample = check_frobenius(model, x, y)
    xy, _, _ = product(x, y)
    instances = len(fibre_array(model, xy)) * len(fibre_array(model, y))
    return LawReport.single("frobenius", counterexample is None, instances, counterexample)


# =============================================================================
# GROTHENDIECK CONSTRUCTION, COMPREHENSION, GENERIC OBJECT
# =============================================================================


def grothendieck_hom(model: Model, u: Predicate, v: Predicate) -> List[BaseMorphism]:
    """Arrows ``(X, u) -> (Y, v)`` of the total category: maps ``f`` with ``u <= f* v``."""
    omega = model.omega
    arrows = []
    for f in enumerate_morphisms(u.over, v.over, model.bounds):
        pulled = pullback(model, f, v)
        if all(omega.leq[a, b] for a, b in zip(u.table, pulled.table)):
            arrows.append(f)
    return arrows


def _corestrict(f: BaseMorphism, sub: BaseObject) -> Optional[BaseMorphism]:
    """``f`` with its codomain cut down to ``sub``, matched by point; ``None`` if it leaves ``sub``."""
    points = [f.cod.carrier[j] for j in f.table]
    if any(p not in sub.carrier for p in points):
        return None
    return BaseMorphism(f.dom, sub, tuple(sub.carrier.index(p) for p in points))


def check_comprehension_adjunction(model: Model, y: BaseObject, v: Predicate) -> LawReport:
    """``Hom((Y, top), (X, v)) ~ Hom(Y, {(X, v)})`` by counting, transposition and naturality.

    One direction composes with the inclusion, the other corestricts point by
    point; naturality compares the corestriction of ``h ; f`` with ``h`` followed
    by the corestriction of ``f`` for every endomap ``h`` of ``Y``.
    """
    omega = model.omega
    sub, inclusion = comprehension(model, v.over, v)
    counit = pullback(model, inclusion, v)
    counit_ok = all(e == omega.top for e in counit.table)

    total = grothendieck_hom(model, model.top(y), v)
    base = enumerate_morphisms(y, sub, model.bounds)
    transposed = {compose(g, inclusion).table for g in base}
    expected = {f.table for f in total}
    bijection_witness = None
    if transposed != expected or len(base) != len(total):
        extra_arrow = sorted(expected - transposed)
        bijection_witness = {
            "grothendieck": len(total),
            "base": len(base),
            "untransposed": [BaseMorphism(y, v.over, t).to_mapping() for t in extra_arrow[:1]],
        }
    else:
        for f in total:
            g = _corestrict(f, sub)
            if g is None or compose(g, inclusion).table != f.table:
                bijection_witness = {"untransposed": [f.to_mapping()]}
                break

    naturality_witness = None
    instances = 0
    for h in enumerate_morphisms(y, y, model.bounds):
        for f in total:
            instances += 1
            moved = compose(h, f)
            back, g = _corestrict(moved, sub), _corestrict(f, sub)
            if moved.table not in expected or back is None or g is None or back != compose(h, g):
                naturality_witness = {"h": h.to_mapping(), "f": f.to_mapping()}
                break
        if naturality_witness is not None:
            break

    checks = (
        LawCheck("counit", counit_ok, 1, None if counit_ok else {"inclusion": inclusion.to_mapping()}),
        LawCheck("bijection", bijection_witness is None, len(total) + len(base), bijection_witness),
        LawCheck("naturality", naturality_witness is None, instances, naturality_witness),
    )
    return LawReport("comprehension-adjunction", checks,
                     extra={"hom_total": len(total), "hom_base": len(base)})


def check_generic_object(
    model: Model, x: BaseObject, source: Optional[BaseObject] = None
) -> LawReport:
    """The fibre over ``X`` is in bijection with maps ``X -> |Omega|``, naturally.

    A map ``phi`` classifies ``phi* generic``; a predicate is named by sending each
    point to the truth value with its label. Naturality is
    ``(f ; phi)* generic = f* (phi* generic)`` for every map ``f: source -> X``
    (default: endomaps of X).
    """
    if model.base_kind is not BaseKind.FINSET:
        raise UnsupportedKindError("the generic object is checked for finite-set models only")
    omega = model.omega
    classifier = omega_object(omega.carrier)
    generic = Predicate(classifier, tuple(range(omega.size)))
    fibre = {tuple(int(e) for e in row) for row in fibre_array(model, x)}
    arrows = enumerate_morphisms(x, classifier, model.bounds)
    classified = {pullback(model, phi, generic).table for phi in arrows}
    bijection = classified == fibre and len(classified) == len(arrows)

    represented = None
    for table in sorted(fibre):
        name = BaseMorphism(x, classifier, tuple(classifier.index(omega.label(e)) for e in table))
        if pullback(model, name, generic).table != table:
            represented = {"v": _mapping(model, x, np.array(table))}
            break

    source = x if source is None else source
    naturality_witness = None
    instances = 0
    for f in enumerate_morphisms(source, x, model.bounds):
        for phi in arrows:
            instances += 1
            if pullback(model, compose(f, phi), generic) != pullback(model, f, pullback(model, phi, generic)):
                naturality_witness = {"f": f.to_mapping(), "name": phi.to_mapping()}
                break
        if naturality_witness is not None:
            break

    checks = (
        LawCheck("bijection", bijection, len(arrows),
                 None if bijection else {"fibre": len(fibre), "maps": len(arrows)}),
        LawCheck("classifies", represented is None, len(fibre), represented),
        LawCheck("naturality", naturality_witness is None, instances, naturality_witness),
    )
    return LawReport("generic-object", checks, extra={"size": len(fibre)})
