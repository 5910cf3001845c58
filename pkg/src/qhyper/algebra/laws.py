"""Exhaustive law checking for finite algebras.

Every law is evaluated as one numpy boolean array over all of its variable
assignments; the first ``True`` entry in C order is the lexicographically first
violating tuple.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..reports import LawCheck, LawReport
from .lattice import AlgebraClass, FiniteAlgebra

Law = Callable[[FiniteAlgebra], LawCheck]


def _verdict(
    law: str,
    algebra: FiniteAlgebra,
    bad: np.ndarray,
    names: Sequence[str],
    instances: Optional[int] = None,
    detail: Optional[Callable[..., Dict[str, str]]] = None,
) -> LawCheck:
    count = int(bad.size) if instances is None else instances
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return LawCheck(law, True, count)
    first = tuple(int(i) for i in hits[0])
    witness = {name: algebra.label(i) for name, i in zip(names, first)}
    if detail is not None:
        witness.update(detail(*first))
    return LawCheck(law, False, count, witness)


def _missing(law: str, table: str) -> LawCheck:
    return LawCheck(law, False, 0, {"table": table, "problem": "not defined"})


def reflexive(a: FiniteAlgebra) -> LawCheck:
    return _verdict("reflexive", a, ~np.diag(a.leq), ("x",))


def antisymmetric(a: FiniteAlgebra) -> LawCheck:
    bad = a.leq & a.leq.T & ~np.eye(a.size, dtype=bool)
    return _verdict("antisymmetric", a, bad, ("x", "y"))


def transitive(a: FiniteAlgebra) -> LawCheck:
    leq = a.leq
    bad = leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :]
    return _verdict("transitive", a, bad, ("x", "y", "z"))


def meet_glb(a: FiniteAlgebra) -> LawCheck:
    leq, meet, idx = a.leq, a.meet, np.arange(a.size)
    not_lower = ~(leq[meet, idx[:, None]] & leq[meet, idx[None, :]])
    instances = a.size**3
    if not_lower.any():
        return _verdict("meet-glb", a, not_lower, ("x", "y"), instances,
                        lambda x, y: {"meet": a.label(meet[x, y])})
    bad = (
        leq.T[:, None, :]
        & leq.T[None, :, :]
        & ~leq[idx[None, None, :], meet[:, :, None]]
    )
    return _verdict("meet-glb", a, bad, ("x", "y", "z"), instances,
                    lambda x, y, z: {"meet": a.label(meet[x, y])})


def join_lub(a: FiniteAlgebra) -> LawCheck:
    leq, join, idx = a.leq, a.join, np.arange(a.size)
    not_upper = ~(leq[idx[:, None], join] & leq[idx[None, :], join])
    instances = a.size**3
    if not_upper.any():
        return _verdict("join-lub", a, not_upper, ("x", "y"), instances,
                        lambda x, y: {"join": a.label(join[x, y])})
    bad = leq[:, None, :] & leq[None, :, :] & ~leq[join[:, :, None], idx[None, None, :]]
    return _verdict("join-lub", a, bad, ("x", "y", "z"), instances,
                    lambda x, y, z: {"join": a.label(join[x, y])})


def bounds(a: FiniteAlgebra) -> LawCheck:
    bad = ~a.leq[a.bot, :] | ~a.leq[:, a.top]
    return _verdict("bounds", a, bad, ("x",))


def distributive(a: FiniteAlgebra) -> LawCheck:
    idx, meet, join = np.arange(a.size), a.meet, a.join
    x, y, z = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    lhs = meet[x, join[y, z]]
    rhs = join[meet[x, y], meet[x, z]]
    return _verdict("distributive", a, lhs != rhs, ("x", "y", "z"),
                    detail=lambda i, j, k: {"lhs": a.label(lhs[i, j, k]),
                                            "rhs": a.label(rhs[i, j, k])})


def implication_adjunction(a: FiniteAlgebra) -> LawCheck:
    if a.impl is None:
        return _missing("implication-adjunction", "impl")
    idx, leq = np.arange(a.size), a.leq
    lhs = leq[a.meet[:, :, None], idx[None, None, :]]
    rhs = leq[idx[:, None, None], a.impl[None, :, :]]
    return _verdict("implication-adjunction", a, lhs != rhs, ("x", "y", "z"))


def _ortho_law(name: str, build: Callable[[FiniteAlgebra, np.ndarray], np.ndarray],
               names: Tuple[str, ...]) -> Law:
    def law(a: FiniteAlgebra) -> LawCheck:
        if a.ortho is None:
            return _missing(name, "ortho")
        return _verdict(name, a, build(a, a.ortho), names)

    law.__name__ = name.replace("-", "_")
    return law


ortho_involution = _ortho_law(
    "ortho-involution", lambda a, o: o[o] != np.arange(a.size), ("x",))
ortho_antitone = _ortho_law(
    "ortho-antitone", lambda a, o: a.leq & ~a.leq[o[None, :], o[:, None]], ("x", "y"))
ortho_noncontradiction = _ortho_law(
    "ortho-noncontradiction", lambda a, o: a.meet[np.arange(a.size), o] != a.bot, ("x",))
ortho_excluded_middle = _ortho_law(
    "ortho-excluded-middle", lambda a, o: a.join[np.arange(a.size), o] != a.top, ("x",))


def orthomodular(a: FiniteAlgebra) -> LawCheck:
    if a.ortho is None:
        return _missing("orthomodular", "ortho")
    idx, o = np.arange(a.size), a.ortho
    value = a.join[idx[:, None], a.meet[o[:, None], idx[None, :]]]
    bad = a.leq & (value != idx[None, :])
    return _verdict("orthomodular", a, bad, ("x", "y"),
                    detail=lambda x, y: {"x v (x' ^ y)": a.label(value[x, y])})


ORDER_LAWS: List[Law] = [reflexive, antisymmetric, transitive]
LATTICE_LAWS: List[Law] = ORDER_LAWS + [meet_glb, join_lub, bounds]
ORTHO_LAWS: List[Law] = [
    ortho_involution, ortho_antitone, ortho_noncontradiction, ortho_excluded_middle,
]

LAWS_BY_CLASS: Dict[AlgebraClass, List[Law]] = {
    AlgebraClass.POSET: ORDER_LAWS + [bounds],
    AlgebraClass.BOUNDED_LATTICE: LATTICE_LAWS,
    AlgebraClass.DISTRIBUTIVE: LATTICE_LAWS + [distributive],
    AlgebraClass.HEYTING: LATTICE_LAWS + [distributive, implication_adjunction],
    AlgebraClass.FRAME: LATTICE_LAWS + [distributive],
    AlgebraClass.BOOLEAN: LATTICE_LAWS + [distributive] + ORTHO_LAWS,
    AlgebraClass.ORTHOLATTICE: LATTICE_LAWS + ORTHO_LAWS,
    AlgebraClass.ORTHOMODULAR: LATTICE_LAWS + ORTHO_LAWS + [orthomodular],
}


def laws_for(algebra: FiniteAlgebra, tag: AlgebraClass) -> List[Law]:
    """Laws of ``tag`` plus the laws attached to whichever optional tables exist."""
    selected = list(LAWS_BY_CLASS[tag])
    if algebra.ortho is not None:
        selected += [law for law in ORTHO_LAWS if law not in selected]
    if algebra.impl is not None and implication_adjunction not in selected:
        selected.append(implication_adjunction)
    return selected


def check_laws(algebra: FiniteAlgebra, tag: Optional[AlgebraClass | str] = None) -> LawReport:
    """Check every law of ``tag`` (default: the algebra's own class tag)."""
    cls = AlgebraClass(tag) if tag is not None else algebra.class_tag
    checks = tuple(law(algebra) for law in laws_for(algebra, cls))
    return LawReport(f"algebra-{cls.value}", checks)
