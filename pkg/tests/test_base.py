import pytest

from qhyper.base import (
    BaseKind,
    BaseMorphism,
    compose,
    diagonal,
    enumerate_morphisms,
    evaluation,
    exponential,
    finset,
    fintop,
    identity,
    interval_convexity,
    pairing,
    product,
    product_of,
    sierpinski,
    subobject,
    terminal,
    validate_morphism,
    validate_object,
)
from qhyper.config import Bounds
from qhyper.errors import CapacityError, DomainMismatchError, StructuralError, UnsupportedKindError


def test_sierpinski_square_has_six_opens():
    s = sierpinski()
    square, p1, p2 = product(s, s)
    assert square.size == 4
    assert len(square.structure) == 6
    assert validate_object(square).passed
    assert validate_morphism(p1).passed and validate_morphism(p2).passed


def test_continuous_self_maps_of_sierpinski():
    s = sierpinski()
    maps = enumerate_morphisms(s, s)
    assert [f.table for f in maps] == [(0, 0), (0, 1), (1, 1)]


def test_topology_missing_a_union_is_reported():
    bad = fintop(["p", "q"], [[], ["p"], ["q"]], "bad")
    report = validate_object(bad)
    assert not report.passed
    assert not report.check("contains-carrier").passed
    assert report.check("union-closed").witness == {"left": ["p"], "right": ["q"]}


def test_interval_convexity():
    line = interval_convexity(["1", "2", "3"])
    assert validate_object(line).passed
    assert line.admits(["1", "2"])
    assert not line.admits(["1", "3"])
    assert line.closure_witness(["1", "3"]) == "2"


def test_compose_is_f_then_g(X, Y):
    swap = BaseMorphism(X, X, (1, 0))
    collapse = BaseMorphism(X, Y, (0, 0))
    assert compose(swap, swap) == identity(X)
    assert compose(swap, collapse).table == (0, 0)
    with pytest.raises(DomainMismatchError):
        compose(collapse, swap)


def test_empty_product_is_terminal():
    one, projections = product_of(())
    assert one.carrier == ((),)
    assert projections == ()
    assert terminal(BaseKind.FINTOP).structure == frozenset({frozenset(), frozenset({()})})


def test_pairing_into_empty_product(X):
    to_one = pairing(X, [])
    assert to_one.cod == terminal()
    assert to_one.table == (0, 0)


def test_diagonal(X):
    delta = diagonal(X)
    assert delta.table == (0, 3)
    assert delta("x2") == ("x2", "x2")


def test_exponential_and_evaluation(X, Y):
    three = finset(["a", "b", "c"])
    power = exponential(X, three)
    assert power.size == 9
    ev = evaluation(X, three)
    for function, point in ev.dom.carrier:
        assert ev((function, point)) == dict(function)[point]
    with pytest.raises(UnsupportedKindError):
        exponential(sierpinski(), sierpinski())


def test_subobject_traces_structure():
    line = interval_convexity(["1", "2", "3"])
    sub, inclusion = subobject(line, ["1", "3"])
    assert sub.carrier == ("1", "3")
    assert sub.admits(["1", "3"])
    assert validate_morphism(inclusion).passed


def test_morphism_tables_are_checked(X, Y):
    with pytest.raises(StructuralError):
        BaseMorphism(X, Y, (0,))
    with pytest.raises(StructuralError):
        BaseMorphism(X, Y, (0, 1))


def test_mixed_kinds():
    with pytest.raises(DomainMismatchError):
        product(sierpinski(), finset(["p"]))
    cross = BaseMorphism(finset(["0", "1"]), sierpinski(), (0, 1))
    assert not validate_morphism(cross).passed


def test_morphism_enumeration_bound():
    big = finset(range(5))
    with pytest.raises(CapacityError):
        enumerate_morphisms(big, big, Bounds(morphisms=100))
    assert len(enumerate_morphisms(big, finset(["p"]), Bounds(morphisms=100))) == 1
