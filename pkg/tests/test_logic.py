import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhyper.algebra import boolean_algebra, mo2, o6
from qhyper.base import BaseKind, BaseMorphism, finset
from qhyper.errors import FormulaSyntaxError, InputError, StructuralError, TypeCheckError
from qhyper.hyperdoctrine import Model, Predicate, pullback
from qhyper.logic import (
    And,
    Apply,
    Atom,
    BaseSort,
    Bottom,
    Equals,
    Exists,
    Forall,
    FunctionType,
    Not,
    Or,
    ProductSort,
    Signature,
    Top,
    Var,
    Vocabulary,
    baseline_rules,
    check_rule_soundness,
    check_ruleset_soundness,
    check_sequent,
    classical_schemas,
    find_countermodel,
    format_formula,
    infer_context,
    interpret_formula,
    interpret_substitution,
    model_pool,
    parse,
    parse_formula,
    parse_sequent,
    parse_sort,
    rule_from_dict,
    ruleset_from_dict,
    search_countermodels,
    substitute,
    typecheck,
)

S = BaseSort("S")
ORTHOMODULAR = "P(x) & (P(x)' | (P(x) & Q(x))) |- Q(x)"
DISTRIBUTIVE = "P(x) & (Q(x) | R(x)) |- P(x) & Q(x) | P(x) & R(x)"


def sorted_model(omega, **sizes):
    objects = {name: finset([f"p{i}" for i in range(n)], name) for name, n in sizes.items()}
    return Model(BaseKind.FINSET, omega, objects=objects)


def signature(model, **predicates):
    s = model.object("S")
    vocabulary = Vocabulary(predicates={name: (S,) for name in predicates})
    tables = {name: model.predicate(s, values) for name, values in predicates.items()}
    return Signature(dict(model.objects), vocabulary, predicates=tables)


# -- parsing -----------------------------------------------------------------


def test_precedence():
    assert parse_formula("P | Q & R'") == Or(Atom("P"), And(Atom("Q"), Not(Atom("R"))))
    assert parse_formula("(P | Q) & R") == And(Or(Atom("P"), Atom("Q")), Atom("R"))


def test_quantifier_scope_is_maximal():
    formula = parse_formula("forall x:S. P(x) & Q")
    assert formula == Forall("x", S, And(Atom("P", (Var("x"),)), Atom("Q")))


def test_sequent_with_context():
    sequent = parse_sequent("[x:S, y:S*T] x = fst(y) |- top")
    assert sequent.context == (("x", S), ("y", ProductSort(S, BaseSort("T"))))
    assert sequent.right == Top()
    assert isinstance(sequent.left, Equals)


def test_unicode_connectives():
    assert parse("∀x:S. P(x) ∧ ⊥ ⊢ ⊤") == parse("forall x:S. P(x) & bot |- top")


def test_syntax_error_reports_column():
    with pytest.raises(FormulaSyntaxError) as caught:
        parse_sequent("P(x |-")
    assert caught.value.column == 4
    with pytest.raises(FormulaSyntaxError):
        parse_formula("P $ Q")


def test_sort_parsing():
    assert parse_sort("S*(T*S)") == ProductSort(S, ProductSort(BaseSort("T"), S))


def test_printer_parenthesises_where_needed():
    formula = And(Or(Atom("P"), Atom("Q")), Not(And(Atom("P"), Atom("Q"))))
    assert format_formula(formula) == "(P | Q) & (P & Q)'"


atoms = st.one_of(
    st.sampled_from([Top(), Bottom(), Atom("P"), Atom("Q")]),
    st.builds(lambda v: Atom("R", (Var(v),)), st.sampled_from(["x", "y"])),
    st.builds(lambda a, b: Equals(Var(a), Var(b)), st.sampled_from(["x", "y"]), st.sampled_from(["x", "y"])),
)
formulas = st.recursive(
    atoms,
    lambda inner: st.one_of(
        st.builds(And, inner, inner),
        st.builds(Or, inner, inner),
        st.builds(Not, inner),
        st.builds(lambda v, body: Forall(v, S, body), st.sampled_from(["x", "y"]), inner),
    ),
    max_leaves=8,
)


@given(formulas)
def test_printed_formulas_parse_back(formula):
    assert parse_formula(format_formula(formula)) == formula


# -- sorts -------------------------------------------------------------------


def test_typecheck_reports_expected_and_actual():
    vocabulary = Vocabulary(predicates={"P": (S,)})
    with pytest.raises(TypeCheckError) as caught:
        typecheck(vocabulary, {"x": BaseSort("T")}, parse_formula("P(x)"))
    assert (caught.value.expected, caught.value.actual) == ("S", "T")
    with pytest.raises(TypeCheckError):
        typecheck(vocabulary, {"x": S}, parse_formula("Q(x)"))


def test_context_inference():
    vocabulary = Vocabulary(predicates={"P": (S,)})
    assert infer_context(vocabulary, parse_sequent("P(x) |- x = y")) == (("x", S), ("y", S))
    with pytest.raises(TypeCheckError):
        infer_context(Vocabulary(), parse_sequent("x = y |- top"))


# -- validity ----------------------------------------------------------------


def test_orthocomplement_is_a_complement():
    model = sorted_model(mo2(), S=2)
    sig = signature(model, P=["a", "b'"])
    assert check_sequent(model, sig, parse_sequent("[x:S] P(x) & P(x)' |- bot")).passed
    assert check_sequent(model, sig, parse_sequent("[x:S] top |- P(x) | P(x)'")).passed


def test_invalid_sequent_names_a_point():
    model = sorted_model(mo2(), S=2)
    sig = signature(model, P=["a", "b"], Q=["a", "a"])
    report = check_sequent(model, sig, parse_sequent("[x:S] P(x) |- Q(x)"))
    assert not report.passed
    assert report.witness == {"point": {"x": "p1"}, "left": "b", "right": "a"}


def test_quantifiers_in_mo2():
    model = sorted_model(mo2(), S=2)
    sig = signature(model, P=["a", "a'"])
    exists = interpret_formula(model, sig, (), parse_formula("exists x:S. P(x)"))
    forall = interpret_formula(model, sig, (), parse_formula("forall x:S. P(x)"))
    assert exists.to_mapping(model.omega) == {"()": "1"}
    assert forall.to_mapping(model.omega) == {"()": "0"}


def test_equality_is_the_diagonal():
    model = sorted_model(mo2(), S=2)
    sig = Signature(dict(model.objects))
    value = interpret_formula(model, sig, (("x", S), ("y", S)), parse_formula("x = y"))
    assert value.table == (5, 0, 0, 5)
    assert check_sequent(model, sig, parse_sequent("[x:S] top |- x = x")).passed


def test_unknown_sort():
    model = sorted_model(mo2(), S=1)
    with pytest.raises(TypeCheckError):
        check_sequent(model, Signature(dict(model.objects)), parse_sequent("[x:U] top |- top"))


# -- substitution ------------------------------------------------------------


OUTER = (("x", S), ("y", S))
INNER = (("z", S), ("y", S))

names = st.sampled_from(["x", "y"])
binary_atoms = st.one_of(
    st.builds(lambda a, b: Atom("P", (Var(a), Var(b))), names, names),
    st.builds(lambda a: Atom("Q", (Var(a),)), names),
    st.builds(lambda a: Atom("Q", (Apply("f", (Var(a),)),)), names),
    st.sampled_from([Top(), Bottom(), Equals(Var("x"), Var("y"))]),
)
quantified_formulas = st.recursive(
    binary_atoms,
    lambda inner: st.one_of(
        st.builds(And, inner, inner),
        st.builds(Or, inner, inner),
        st.builds(Not, inner),
        st.builds(lambda v, body: Forall(v, S, body), names, inner),
        st.builds(lambda v, body: Exists(v, S, body), names, inner),
    ),
    max_leaves=6,
)
replacements = st.sampled_from(
    [Var("z"), Var("y"), Apply("f", (Var("z"),)), Apply("f", (Var("y"),))]
)
values = st.integers(min_value=0, max_value=5)


def function_signature(p_table, q_table, f_table):
    model = sorted_model(mo2(), S=2)
    s = model.object("S")
    base = Signature(dict(model.objects))
    vocabulary = Vocabulary(
        functions={"f": FunctionType((S,), S)},
        predicates={"P": (S, S), "Q": (S,)},
    )
    return model, base.extend(
        vocabulary,
        {"f": BaseMorphism(s, s, tuple(f_table))},
        {"P": Predicate(base.arity_object((S, S)), tuple(p_table)), "Q": Predicate(s, tuple(q_table))},
    )


def substituted_both_ways(model, sig, formula, term):
    direct = interpret_formula(model, sig, INNER, substitute(formula, {"x": term}))
    reindex = interpret_substitution(model, sig, INNER, OUTER, {"x": term})
    return direct, pullback(model, reindex, interpret_formula(model, sig, OUTER, formula))


@given(
    quantified_formulas,
    replacements,
    st.lists(values, min_size=4, max_size=4),
    st.lists(values, min_size=2, max_size=2),
    st.lists(st.integers(0, 1), min_size=2, max_size=2),
)
def test_substitution_is_reindexing(formula, term, p_table, q_table, f_table):
    model, sig = function_signature(p_table, q_table, f_table)
    direct, reindexed = substituted_both_ways(model, sig, formula, term)
    assert direct == reindexed


def test_substitution_renames_a_capturing_binder():
    formula = Exists("y", S, Atom("P", (Var("x"), Var("y"))))
    renamed = substitute(formula, {"x": Var("y")})
    assert renamed == Exists("y_1", S, Atom("P", (Var("y"), Var("y_1"))))

    a, a_perp, b = (mo2().index(s) for s in ("a", "a'", "b"))
    model, sig = function_signature([a, 0, b, a_perp], [0, 0], [0, 1])
    direct, reindexed = substituted_both_ways(model, sig, formula, Var("y"))
    assert direct == reindexed
    # points of z x y in order; the value is P(y, p0) | P(y, p1)
    assert [model.omega.label(e) for e in direct.table] == ["a", "1", "a", "1"]


# -- rules -------------------------------------------------------------------


def test_packaged_rule_sets():
    assert "orthomodular" in baseline_rules().names
    assert classical_schemas().names == ["distributivity", "frobenius", "frobenius-converse"]


def test_side_conditions_are_enforced_on_load():
    bad = {
        "name": "bad",
        "predicates": {"phi": ["S"], "psi": ["S"]},
        "conclusion": "[x:S] phi(x) |- psi(x)",
        "side_conditions": [{"fresh": "x", "notin": "psi"}],
    }
    with pytest.raises(StructuralError):
        rule_from_dict(bad)
    with pytest.raises(InputError):
        rule_from_dict({"name": "no-conclusion"})
    with pytest.raises(InputError):
        ruleset_from_dict({"name": "empty"})


def test_distributivity_is_unsound_in_mo2():
    model = sorted_model(mo2(), S=1)
    rule = classical_schemas().rule("distributivity")
    report = check_rule_soundness(model, Signature(dict(model.objects)), rule)
    assert not report.passed
    assert report.mode == "exhaustive"
    assert report.extra["instantiation_space"] == 216
    assert report.witness["conclusion"].startswith("[x:S]")


def test_frobenius_schema_is_unsound_in_mo2():
    model = sorted_model(mo2(), S=2, T=1)
    rule = classical_schemas().rule("frobenius")
    report = check_rule_soundness(model, Signature(dict(model.objects)), rule)
    assert not report.passed
    assert report.extra["instantiation_space"] == 216


def test_frobenius_converse_holds_in_every_lattice():
    rule = classical_schemas().rule("frobenius-converse")
    for omega in (mo2(), o6()):
        model = sorted_model(omega, S=2, T=1)
        report = check_rule_soundness(model, Signature(dict(model.objects)), rule)
        assert report.passed
        assert report.mode == "exhaustive"
        assert report.extra["instantiation_space"] == omega.size**3


def test_sample_count_must_be_positive():
    model = sorted_model(mo2(), S=2, T=2)
    rule = baseline_rules().rule("cut")
    with pytest.raises(InputError):
        check_rule_soundness(model, Signature(dict(model.objects)), rule, samples=0)
    with pytest.raises(InputError):
        check_rule_soundness(model, Signature(dict(model.objects)), rule, samples=-5)


def test_classical_schemas_are_sound_for_boolean_values():
    model = sorted_model(boolean_algebra(1), S=2, T=1)
    reports = check_ruleset_soundness(model, Signature(dict(model.objects)), classical_schemas())
    assert all(r.passed for r in reports)


@pytest.mark.parametrize("omega", [boolean_algebra(2), mo2()], ids=["boolean2", "mo2"])
def test_baseline_rules_are_sound(omega):
    model = sorted_model(omega, S=2, T=2)
    reports = check_ruleset_soundness(model, Signature(dict(model.objects)), baseline_rules(),
                                      samples=1000, seed=7)
    failed = [r.subject for r in reports if not r.passed]
    assert failed == []


def test_sampling_is_reproducible():
    model = sorted_model(mo2(), S=2, T=2)
    rule = baseline_rules().rule("cut")
    first = check_rule_soundness(model, Signature(dict(model.objects)), rule, samples=25, seed=3)
    second = check_rule_soundness(model, Signature(dict(model.objects)), rule, samples=25, seed=3)
    assert first.to_dict() == second.to_dict()
    assert first.mode == "sampled"
    assert first.seed == 3


# -- countermodels -----------------------------------------------------------


def test_orthomodular_schema_separates_mo2_from_o6():
    sequent = parse_sequent(ORTHOMODULAR)
    assert search_countermodels(sequent, model_pool([("mo2", mo2())])).passed
    found = find_countermodel(sequent, model_pool([("o6", o6())], sizes=(1,)))
    assert found is not None
    assert found.entry == "o6/1"


def test_distributivity_countermodel_in_mo2():
    sequent = parse_sequent(DISTRIBUTIVE)
    assert find_countermodel(sequent, model_pool([("boolean:2", boolean_algebra(2))])) is None
    report = search_countermodels(sequent, model_pool([("mo2", mo2())], sizes=(1,)))
    assert not report.passed
    assert report.witness["model"] == "mo2/1"
    assert set(report.witness["predicates"]) == {"P", "Q", "R"}


def test_identity_has_no_countermodel():
    pool = model_pool([("2", boolean_algebra(1)), ("mo2", mo2())])
    report = search_countermodels(parse_sequent("P(x) |- P(x)"), pool)
    assert report.passed
    assert report.mode == "exhaustive"
    assert report.extra["pool"] == ["2/1", "2/2", "mo2/1", "mo2/2"]
