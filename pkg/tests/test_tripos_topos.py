import itertools

import pytest

from qhyper.algebra import mo2, two_chain
from qhyper.base import BaseKind, finset
from qhyper.config import Bounds
from qhyper.errors import CapacityError, InputError, StructuralError
from qhyper.hyperdoctrine import Model
from qhyper.tripos_topos import (
    EMPTY,
    CategoryData,
    QSet,
    VElement,
    build_topos,
    check_category_laws,
    check_functional_relation,
    check_per,
    check_qset,
    compose_relations,
    distinct_encodings,
    enumerate_pers,
    identity_relation,
    numeral,
    per_from_matrix,
    per_to_qset,
    qset_to_v,
    relation_from_matrix,
    summarize,
    v_build,
    v_count,
    v_stage_of,
)


@pytest.fixture
def classical() -> Model:
    return Model(BaseKind.FINSET, two_chain())


def test_pers_on_two_points(classical, X):
    tables = [p.eq.table for p in enumerate_pers(classical, X)]
    assert tables == [(0, 0, 0, 0), (0, 0, 0, 1), (1, 0, 0, 0), (1, 0, 0, 1), (1, 1, 1, 1)]


def test_check_per_reports_asymmetry(classical, X):
    report = check_per(classical, per_from_matrix(X, [[1, 1], [0, 1]]))
    assert not report.passed
    assert report.check("symmetric").witness == {"x": "x1", "y": "x2"}


def test_identity_is_functional(classical, X):
    p = per_from_matrix(X, [[1, 0], [0, 1]])
    identity = identity_relation(p)
    assert check_functional_relation(classical, identity).passed
    assert compose_relations(classical, identity, identity).rel == identity.rel


def test_classical_topos_up_to_two_points(classical):
    data = build_topos(classical, 2)
    assert len(data.objects) == 8
    assert data.global_elements() == [0, 0, 1, 0, 1, 1, 2, 1]
    assert check_category_laws(data).passed
    summary = summarize(data)
    assert len(summary["hom_counts"]) == 8


def _classes(p):
    """Equivalence classes of a two-valued PER, counted on its support."""
    matrix = p.matrix()
    support = [i for i in range(p.size) if matrix[i, i] == 1]
    return len({tuple(matrix[i].tolist()) for i in support})


def test_classical_hom_sets_are_functions_between_quotients(classical):
    data = build_topos(classical, 2)
    counts = data.hom_counts()
    classes = [_classes(p) for p in data.objects]
    for i, j in itertools.product(range(len(data.objects)), repeat=2):
        assert counts[i][j] == classes[j] ** classes[i]
    total = [i for i, p in enumerate(data.objects) if all(e == 1 for e in p.extent())]
    assert total == [0, 2, 6, 7]
    assert [[counts[i][j] for j in total] for i in total] == [
        [1, 1, 1, 1],
        [0, 1, 2, 1],
        [0, 1, 4, 1],
        [0, 1, 2, 1],
    ]


def test_topos_cap_is_enforced(classical):
    with pytest.raises(CapacityError):
        build_topos(classical, 3)
    with pytest.raises(CapacityError):
        build_topos(classical, 2, bounds=Bounds(topos_objects=5))


def test_composition_leaves_the_category_in_mo2():
    model = Model(BaseKind.FINSET, mo2())
    omega = model.omega
    a, a_perp, b = omega.index("a"), omega.index("a'"), omega.index("b")
    point, pair = finset(["p"]), finset(["q1", "q2"])
    small = per_from_matrix(point, [[b]])
    unit = per_from_matrix(point, [[omega.top]])
    split = per_from_matrix(pair, [[a, 0], [0, a_perp]])
    data = build_topos(model, objects=[small, unit, split])
    assert data.composition[(0, 1, 2)].tolist() == [[-1]]

    f = relation_from_matrix(small, unit, [[b]])
    g = relation_from_matrix(unit, split, [[a, a_perp]])
    composite = compose_relations(model, f, g)
    assert composite.matrix().tolist() == [[0, 0]]
    assert not check_functional_relation(model, composite).check("total").passed

    report = check_category_laws(data)
    assert not report.check("composition-closed").passed
    assert report.check("left-unit").passed
    assert report.check("right-unit").passed


def test_associativity_fails_in_mo2():
    model = Model(BaseKind.FINSET, mo2())
    omega = model.omega
    bot, top = omega.bot, omega.top
    a, a_perp, b, b_perp = (omega.index(s) for s in ("a", "a'", "b", "b'"))
    discrete = per_from_matrix(finset(["d1", "d2"], "D"), [[top, bot], [bot, top]])
    tilted = per_from_matrix(finset(["q1", "q2"], "Q"), [[top, b_perp], [b_perp, top]])
    f = relation_from_matrix(discrete, discrete, [[bot, top], [a, a_perp]])
    g = relation_from_matrix(discrete, discrete, [[a, a_perp], [a_perp, b]])
    h = relation_from_matrix(discrete, tilted, [[b_perp, top], [a_perp, b]])
    for r in (f, g, h):
        assert check_functional_relation(model, r).passed

    data = build_topos(model, objects=[discrete, tilted])
    assert data.hom_counts() == [[196, 64], [68, 40]]
    pf, pg, ph = data.position(f, 0, 0), data.position(g, 0, 0), data.position(h, 0, 1)
    assert min(pf, pg, ph) >= 0

    fg = compose_relations(model, f, g)
    gh = compose_relations(model, g, h)
    assert fg.matrix().tolist() == [[a_perp, b], [top, bot]]
    assert data.composition[(0, 0, 0)][pf, pg] == data.position(fg, 0, 0)
    assert data.composition[(0, 0, 1)][data.position(fg, 0, 0), ph] == -1
    assert data.composition[(0, 0, 1)][pg, ph] == -1

    left = compose_relations(model, fg, h)
    right = compose_relations(model, f, gh)
    assert left.matrix().tolist() == [[bot, top], [b_perp, top]]
    assert right.matrix().tolist() == [[bot, top], [bot, top]]

    witness = CategoryData(model, data.objects, {(0, 0): (f, g), (0, 1): (h,), (1, 0): (), (1, 1): ()})
    report = check_category_laws(witness)
    assert report.mode == "exhaustive"
    assert report.check("associative").instances == 12
    assert not report.check("associative").passed


def test_v_counts():
    assert v_count(2, 2) == [1, 3, 27]
    assert v_count(6, 1) == [1, 7]
    assert v_count(mo2(), 1) == [1, 7]
    assert v_count(two_chain(), 2) == [1, 3, 27]
    with pytest.raises(CapacityError):
        v_count(2, 4)
    with pytest.raises(InputError):
        v_count(2, -1)


def test_v_build_matches_closed_form():
    universe = v_build(two_chain(), 2)
    assert universe.counts == [1, 3, 27]
    second = universe.stages[2]
    assert len(set(second)) == 27
    assert [u.key for u in second] == sorted(u.key for u in second)
    assert EMPTY in second


def test_v_build_respects_cap():
    assert v_build(mo2(), 1).counts == [1, 7]
    with pytest.raises(CapacityError):
        v_build(mo2(), 2)


def test_numerals_and_ranks():
    omega = two_chain()
    two = numeral(2, omega)
    assert v_stage_of(two) == 2
    assert two.as_dict() == {EMPTY: 1, numeral(1, omega): 1}
    assert two in v_build(omega, 2).stages[2]
    with pytest.raises(StructuralError):
        VElement(((EMPTY, 1),), rank=0)


def test_qsets_encode_their_extents(X):
    omega = two_chain()
    q = per_to_qset(per_from_matrix(X, [[1, 0], [0, 1]]))
    assert check_qset(q, omega).passed
    assert qset_to_v(q, omega) == VElement(((numeral(0, omega), 1), (numeral(1, omega), 1)))
    bad = QSet(("x", "y"), ((1, 1), (0, 1)))
    assert check_qset(bad, omega).check("symmetric").witness == {"x": "x", "y": "y"}
    other = QSet(("x", "y"), ((1, 0), (0, 0)))
    assert distinct_encodings([q, other], omega)
