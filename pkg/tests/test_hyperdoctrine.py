import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhyper.algebra import boolean_algebra, mo2, o6, two_chain
from qhyper.base import (
    BaseKind,
    BaseMorphism,
    finconv,
    finset,
    fintop,
    interval_convexity,
    product,
    sierpinski,
)
from qhyper.commands import comprehension_suite
from qhyper.config import Bounds
from qhyper.errors import CapacityError, LiftingError, ModelError, UnsupportedKindError
from qhyper.hyperdoctrine import (
    FibreRule,
    Model,
    Predicate,
    check_adjunction,
    check_beck_chevalley,
    check_comprehension_adjunction,
    check_frobenius,
    check_generic_object,
    check_lifting,
    comprehension,
    enumerate_fibre,
    equality_along,
    exists_along,
    fibre_array,
    forall_along,
    frobenius_report,
    grothendieck_hom,
    join,
    meet,
    ortho,
    pullback,
    validate_model,
)

OMEGAS = [two_chain(), boolean_algebra(2), mo2(), o6()]


def finset_model(omega):
    return Model(BaseKind.FINSET, omega)


def test_finset_models_use_every_table(X):
    model = finset_model(mo2())
    assert model.rule is FibreRule.ALL
    assert len(fibre_array(model, X)) == 36
    with pytest.raises(ModelError):
        Model(BaseKind.FINSET, mo2(), FibreRule.OPEN)


def test_open_fibre_over_sierpinski():
    s = sierpinski()
    model = Model(BaseKind.FINTOP, two_chain())
    assert model.rule is FibreRule.OPEN
    assert [v.table for v in enumerate_fibre(model, s)] == [(0, 0), (0, 1), (1, 1)]
    with pytest.raises(ModelError):
        model.predicate(s, ["1", "0"])


def test_model_rejects_foreign_objects():
    with pytest.raises(ModelError):
        Model(BaseKind.FINTOP, two_chain(), objects={"X": finset(["p"])})


def test_fibre_bound(X):
    model = Model(BaseKind.FINSET, mo2(), bounds=Bounds(fibre=10))
    with pytest.raises(CapacityError):
        fibre_array(model, X)


def test_quantifiers_along_projection(X, Y):
    model = finset_model(mo2())
    xy, _, p2 = product(X, Y)
    v = model.predicate(xy, ["a", "a'"])
    assert exists_along(model, p2, v).to_mapping(model.omega) == {"y1": "1"}
    assert forall_along(model, p2, v).to_mapping(model.omega) == {"y1": "0"}


def test_empty_quantifiers(Y):
    model = finset_model(mo2())
    empty = finset([], "E")
    ey, _, p2 = product(empty, Y)
    v = Predicate(ey, ())
    assert forall_along(model, p2, v).table == (model.omega.top,)
    assert exists_along(model, p2, v).table == (model.omega.bot,)


def test_equality_is_bottom_off_the_diagonal(X):
    model = finset_model(two_chain())
    delta = BaseMorphism(X, product(X, X)[0], (0, 3))
    eq = equality_along(model, delta, model.top(X))
    assert eq.table == (1, 0, 0, 1)


PRODUCT_SIZES = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (4, 1), (2, 2)]
SMALL = [1, 2]


def points(name, n):
    return finset([f"{name.lower()}{i + 1}" for i in range(n)], name)


@pytest.mark.parametrize("omega", OMEGAS, ids=lambda a: a.class_tag.value)
@pytest.mark.parametrize("which", ["forall", "exists"])
@pytest.mark.parametrize("nx, ny", PRODUCT_SIZES)
def test_adjunctions_hold_on_finite_sets(omega, which, nx, ny):
    report = check_adjunction(finset_model(omega), which, points("X", nx), points("Y", ny))
    assert report.passed


@pytest.mark.parametrize("omega", OMEGAS, ids=lambda a: a.class_tag.value)
@pytest.mark.parametrize("n", SMALL)
def test_equality_adjunction(omega, n):
    assert check_adjunction(finset_model(omega), "equality", points("X", n)).passed


@pytest.mark.parametrize("omega", OMEGAS, ids=lambda a: a.class_tag.value)
@pytest.mark.parametrize("which", ["forall", "exists"])
@pytest.mark.parametrize("nx, ny, nz", list(itertools.product(SMALL, repeat=3)))
def test_beck_chevalley_on_finite_sets(omega, which, nx, ny, nz):
    x, y, z = points("X", nx), points("Y", ny), points("Z", nz)
    report = check_beck_chevalley(finset_model(omega), which, x, y, z)
    assert report.passed
    assert report.extra["morphisms"] == ny**nz


CHAIN3 = fintop(["0", "1", "2"], [[], ["2"], ["1", "2"], ["0", "1", "2"]], "C3")
VEE = fintop(["l", "m", "r"], [[], ["l"], ["r"], ["l", "r"], ["l", "m", "r"]], "V")
POINT = fintop(["p"], [[], ["p"]], "P")


@pytest.mark.parametrize("which", ["forall", "exists"])
@pytest.mark.parametrize(
    "x, y, z",
    [
        (sierpinski(), sierpinski(), sierpinski()),
        (CHAIN3, sierpinski(), POINT),
        (sierpinski(), CHAIN3, sierpinski()),
        (POINT, VEE, sierpinski()),
        (VEE, sierpinski(), CHAIN3),
    ],
    ids=["SSS", "C3-S-P", "S-C3-S", "P-V-S", "V-S-C3"],
)
def test_beck_chevalley_on_finite_spaces(which, x, y, z):
    model = Model(BaseKind.FINTOP, two_chain())
    report = check_beck_chevalley(model, which, x, y, z)
    assert report.passed
    assert report.extra["morphisms"] > 0


def test_frobenius_fails_in_mo2(X, Y):
    model = finset_model(mo2())
    witness = check_frobenius(model, X, Y)
    assert witness == {
        "v": {"(x1,y1)": "a", "(x2,y1)": "a'"},
        "w": {"y1": "b"},
        "lhs": {"y1": "0"},
        "rhs": {"y1": "b"},
    }
    report = frobenius_report(model, X, Y)
    assert not report.passed
    assert report.instances == 36 * 6


@pytest.mark.parametrize("k", [1, 2])
def test_frobenius_holds_for_boolean_truth_values(k, X, Y):
    model = finset_model(boolean_algebra(k))
    assert check_frobenius(model, X, Y) is None
    assert check_frobenius(model, Y, X) is None


def test_equality_does_not_lift_in_sierpinski_models():
    s = sierpinski()
    model = Model(BaseKind.FINTOP, two_chain())
    report = check_lifting(model, "equality", s)
    assert not report.passed
    assert report.witness["quantifier"] == "equality"
    assert not check_adjunction(model, "equality", s).check("lifting").passed


def test_exists_does_not_lift_in_convex_models():
    model = Model(BaseKind.FINCONV, mo2())
    x = finconv(["x1", "x2"], [[], ["x1"], ["x2"], ["x1", "x2"]], "X")
    line = interval_convexity(["1", "2", "3"], "L")
    xl, _, p2 = product(x, line)
    v = model.predicate(xl, ["a", "0", "b", "a'", "0", "b'"])
    with pytest.raises(LiftingError) as caught:
        exists_along(model, p2, v)
    assert caught.value.quantifier == "exists"
    assert caught.value.witness["preimage"] == ["1", "3"]


def test_comprehension_carves_out_the_top_points(X):
    model = finset_model(mo2())
    v = model.predicate(X, ["1", "a"])
    sub, inclusion = comprehension(model, X, v)
    assert sub.carrier == ("x1",)
    assert inclusion.table == (0,)


@pytest.mark.parametrize("omega", OMEGAS, ids=lambda a: a.class_tag.value)
@pytest.mark.parametrize("nx, ny", list(itertools.product(SMALL, repeat=2)))
def test_comprehension_adjunction(omega, nx, ny):
    model = finset_model(omega)
    x, y = points("X", nx), points("Y", ny)
    for v in enumerate_fibre(model, x):
        assert check_comprehension_adjunction(model, y, v).passed
    suite = comprehension_suite(model, x, y)
    assert suite.passed
    assert suite.extra["predicates"] == omega.size**nx


def test_comprehension_naturality_runs_over_endomaps(X):
    model = finset_model(mo2())
    report = check_comprehension_adjunction(model, X, model.predicate(X, ["1", "1"]))
    assert report.passed
    assert report.extra == {"hom_total": 4, "hom_base": 4}
    assert report.check("naturality").instances == 16

    partial = check_comprehension_adjunction(model, X, model.predicate(X, ["1", "b"]))
    assert partial.passed
    assert partial.extra["hom_total"] == 1
    assert partial.check("naturality").instances == 4


def test_grothendieck_arrows_from_top(X, Y):
    model = finset_model(mo2())
    v = model.predicate(X, ["1", "a"])
    arrows = grothendieck_hom(model, model.top(Y), v)
    assert [f.table for f in arrows] == [(0,)]


@pytest.mark.parametrize("omega", OMEGAS, ids=lambda a: a.class_tag.value)
@pytest.mark.parametrize("nx, ns", list(itertools.product(SMALL, repeat=2)))
def test_generic_object(omega, nx, ns):
    model = finset_model(omega)
    report = check_generic_object(model, points("X", nx), points("S", ns))
    assert report.passed
    assert report.check("bijection").instances == omega.size**nx
    assert report.check("naturality").instances == nx**ns * omega.size**nx


def test_generic_object_counts_every_name(X):
    report = check_generic_object(finset_model(mo2()), X)
    assert report.passed
    assert report.check("bijection").instances == 36
    assert report.check("classifies").instances == 36
    assert report.check("naturality").instances == 144


def test_generic_object_needs_finite_sets():
    with pytest.raises(UnsupportedKindError):
        check_generic_object(Model(BaseKind.FINTOP, two_chain()), sierpinski())


def test_validate_model():
    s = sierpinski()
    assert validate_model(finset_model(mo2())).passed
    report = validate_model(Model(BaseKind.FINTOP, two_chain(), objects={"S": s}))
    assert report.passed
    assert report.check("fibre-closed-under-join").instances > 0


tables = st.lists(st.integers(min_value=0, max_value=5), min_size=2, max_size=2)


@given(tables, tables, st.tuples(st.integers(0, 1), st.integers(0, 1)))
def test_pullback_is_an_algebra_homomorphism(u_table, v_table, f_table):
    model = finset_model(mo2())
    x = finset(["x1", "x2"], "X")
    u, v = Predicate(x, tuple(u_table)), Predicate(x, tuple(v_table))
    f = BaseMorphism(x, x, f_table)
    assert pullback(model, f, meet(model, u, v)) == meet(model, pullback(model, f, u), pullback(model, f, v))
    assert pullback(model, f, join(model, u, v)) == join(model, pullback(model, f, u), pullback(model, f, v))
    assert pullback(model, f, ortho(model, u)) == ortho(model, pullback(model, f, u))
