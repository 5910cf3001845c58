import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhyper.algebra import (
    AlgebraClass,
    FiniteAlgebra,
    aggregate,
    boolean_algebra,
    chain,
    check_laws,
    find_distributivity_counterexample,
    from_order,
    heyting_implication,
    is_isomorphic,
    mo2,
    spec_from_vectors,
    subspace_lattice,
)
from qhyper.config import Bounds
from qhyper.errors import AlgebraIncompleteError, CapacityError, InputError, StructuralError


def test_mo2_is_orthomodular(mo):
    report = check_laws(mo)
    assert report.subject == "algebra-orthomodular"
    assert report.passed
    assert report.check("orthomodular").instances == 36


def test_o6_is_an_ortholattice_but_not_orthomodular(benzene):
    assert check_laws(benzene).passed
    report = check_laws(benzene, "orthomodular")
    assert not report.passed
    failure = report.check("orthomodular")
    assert failure.witness["x"] == "a"
    assert failure.witness["y"] == "b"
    assert report.to_dict()["failed_law"] == "orthomodular"


@pytest.mark.parametrize("k", [1, 2, 3])
def test_boolean_algebras_pass_boolean_laws(k):
    algebra = boolean_algebra(k)
    assert algebra.size == 2**k
    assert check_laws(algebra, AlgebraClass.BOOLEAN).passed


def test_boolean_algebra_respects_atom_bound():
    with pytest.raises(CapacityError):
        boolean_algebra(6)
    assert boolean_algebra(6, Bounds(boolean_atoms=6)).size == 64


def test_distributivity_counterexample_in_mo2(mo, bool2):
    assert find_distributivity_counterexample(mo) == ("a", "a'", "b")
    assert find_distributivity_counterexample(bool2) is None
    assert not check_laws(mo, "distributive").passed


def test_chain_carries_goedel_implication():
    three = chain(3)
    assert three.carrier == ("0", "1/2", "1")
    assert three.class_tag is AlgebraClass.HEYTING
    assert check_laws(three).passed
    half, one = three.index("1/2"), three.index("1")
    assert three.impl[one, half] == half
    assert three.impl[half, one] == one


def test_chain_rejects_bad_lengths():
    with pytest.raises(InputError):
        chain(0)
    with pytest.raises(CapacityError):
        chain(13)


def test_heyting_implication_matches_boolean_table(bool2):
    derived = heyting_implication(bool2)
    assert np.array_equal(derived.impl, bool2.impl)


def test_heyting_implication_missing_in_mo2(mo):
    with pytest.raises(AlgebraIncompleteError):
        heyting_implication(mo)


def test_from_order_derives_tables(mo, mo2_document):
    built = from_order(mo2_document["carrier"], mo2_document["leq"], mo2_document["ortho"],
                       class_tag="orthomodular")
    assert np.array_equal(built.meet, mo.meet)
    assert np.array_equal(built.join, mo.join)
    assert (built.bot, built.top) == (0, 5)


def test_from_order_without_top_fails():
    with pytest.raises(AlgebraIncompleteError):
        from_order(("a", "b"), [[True, False], [False, True]])


def test_structural_checks():
    with pytest.raises(StructuralError):
        FiniteAlgebra(("0", "0"), np.eye(2, dtype=bool), np.zeros((2, 2)), np.zeros((2, 2)), 0, 1)
    with pytest.raises(StructuralError):
        FiniteAlgebra(("0", "1"), np.eye(2, dtype=bool), np.zeros((2, 3)), np.zeros((2, 2)), 0, 1)
    with pytest.raises(InputError):
        mo2().index("c")


def test_subspace_lattice_of_two_lines_is_mo2(mo):
    spec = spec_from_vectors(2, [[[1, 0]], [[1, 1]]], 50)
    lattice = subspace_lattice(spec)
    assert lattice.size == 6
    assert "span(1,0)" in lattice.carrier
    assert check_laws(lattice).passed
    assert is_isomorphic(lattice, mo)
    assert find_distributivity_counterexample(lattice) is not None


def test_subspace_closure_respects_cap():
    spec = spec_from_vectors(2, [[[1, 0]], [[1, 1]], [[1, 2]]], 7)
    with pytest.raises(CapacityError):
        subspace_lattice(spec)


def test_rational_generators():
    spec = spec_from_vectors(2, [[["1/2", "1/2"]]], 50)
    lattice = subspace_lattice(spec)
    assert "span(1,1)" in lattice.carrier
    assert lattice.size == 4


def test_isomorphism_distinguishes_mo2_and_o6(mo, benzene):
    assert not is_isomorphic(mo, benzene)


@given(st.sets(st.integers(min_value=0, max_value=5)))
def test_aggregates_are_bounds(members):
    algebra = mo2()
    low = aggregate(algebra, "meet", members)
    high = aggregate(algebra, "join", members)
    for e in members:
        assert algebra.leq[low, e]
        assert algebra.leq[e, high]
    if not members:
        assert (low, high) == (algebra.top, algebra.bot)
