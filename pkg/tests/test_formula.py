import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fomod.corpus import CORPUS, DIAMETER_TWO, NO_ISOLATED, VERTEX_COVER
from fomod.formula import (EXISTS, FALSE, FORALL, TRUE, Adj, And, Eq, Formula, FormulaError, FormulaSyntaxError,
                           Iff, Implies, Not, Or, Side, build_vertex_formula, classify, cnf_clauses,
                           complement_formula, evaluate_matrix, is_cnf, nnf, open_formula, parse, pretty,
                           prefix_matches, to_cnf)


def test_parse_vertex_cover():
    f = parse("A u. A v. !(u ~ v)")
    assert f.prefix == ((FORALL, "u"), (FORALL, "v"))
    assert f.matrix == Not(Adj("u", "v"))
    assert f.is_sentence


def test_parse_precedence_and_sugar():
    f = parse("A x. A y. x ~ y & x != y | x = y -> !(x ~ y) <-> true")
    m = f.matrix
    assert isinstance(m, Iff)
    assert isinstance(m.left, Implies)
    assert m.left.left == Or((And((Adj("x", "y"), Not(Eq("x", "y")))), Eq("x", "y")))
    assert m.right == TRUE


def test_implication_is_right_associative():
    f = parse("E a. E b. E c. a ~ b -> b ~ c -> a ~ c")
    assert f.matrix == Implies(Adj("a", "b"), Implies(Adj("b", "c"), Adj("a", "c")))


def test_free_header():
    f = parse("free x, y; E z. (x ~ z) & (z ~ y)")
    assert f.free_vars == ("x", "y")
    assert not f.is_sentence


@pytest.mark.parametrize("text", [
    "A u. A u. u ~ u",            # quantified twice
    "A u. u ~ v",                 # unquantified variable
    "A u. (u ~ u) & A v. v ~ u",  # quantifier inside the matrix
    "A u. u ~",                   # truncated
    "A u. u ~ u )",               # trailing token
    "A u. u ? u",                 # bad character
])
def test_parse_errors(text):
    with pytest.raises(FormulaError):
        parse(text)


def test_syntax_error_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("A u.\n  u ~ ")
    assert info.value.line == 2


def test_formula_validation():
    with pytest.raises(FormulaError):
        Formula(((FORALL, "x"), (EXISTS, "x")), TRUE)
    with pytest.raises(FormulaError):
        Formula(((FORALL, "x"),), Adj("x", "y"))
    with pytest.raises(FormulaError):
        Formula(((FORALL, "x"),), TRUE, ("x",))


@pytest.mark.parametrize("text, expected", [
    ("A u. A v. !(u ~ v)", "Pi 1"),
    ("A u. A v. E w. (u = v) | (u ~ v) | ((u ~ w) & (v ~ w))", "Pi 2"),
    ("E x. A y. A z. ((x ~ y) & (x ~ z)) -> ((y = z) | (y ~ z))", "Sigma 2"),
    ("E x. E y. x ~ y", "Sigma 1"),
    ("A x. E y. A z. x ~ y | y ~ z", "Pi 3"),
    ("true", "Sigma 0 (= Pi 0)"),
])
def test_classify(text, expected):
    assert str(classify(parse(text))) == expected


def test_class_subsumption():
    pi1 = classify(VERTEX_COVER)
    assert pi1.within(1, Side.PI) and not pi1.within(1, Side.SIGMA)
    assert pi1.within(2, Side.SIGMA) and pi1.within(3, Side.PI)
    assert not classify(DIAMETER_TWO).within(1, Side.PI)
    assert classify(parse("true")).within(0, Side.SIGMA)


def test_prefix_matches():
    assert prefix_matches(DIAMETER_TWO, "E*A*E*")
    assert not prefix_matches(parse("A x. E y. A z. x ~ y | y ~ z"), "E*A*E*")


def test_open_formula():
    g = open_formula(DIAMETER_TWO, 2)
    assert g.free_vars == ("u", "v") and g.prefix == ((EXISTS, "w"),)
    with pytest.raises(FormulaError):
        open_formula(DIAMETER_TWO, 4)


def test_complement_formula_rewrites_adjacency_only():
    c = complement_formula(VERTEX_COVER)
    assert c.prefix == VERTEX_COVER.prefix
    assert c.matrix == Not(And((Not(Eq("u", "v")), Not(Adj("u", "v")))))


# -- random matrices ------------------------------------------------------------

VARS = ("a", "b", "c")
atoms = st.builds(Adj, st.sampled_from(VARS), st.sampled_from(VARS)) | \
    st.builds(Eq, st.sampled_from(VARS), st.sampled_from(VARS)) | st.sampled_from([TRUE, FALSE])


def _extend(children):
    pairs = st.lists(children, min_size=2, max_size=3).map(tuple)
    return (st.builds(Not, children) | st.builds(And, pairs) | st.builds(Or, pairs)
            | st.builds(Implies, children, children) | st.builds(Iff, children, children))


matrices = st.recursive(atoms, _extend, max_leaves=8)
prefixes = st.lists(st.sampled_from([FORALL, EXISTS]), min_size=3, max_size=3)


def _atom_keys(m):
    from fomod.formula import atoms as all_atoms
    return sorted(set(all_atoms(m)), key=repr)


def _truth_table(m, keys):
    for values in itertools.product([False, True], repeat=len(keys)):
        table = dict(zip(keys, values))
        yield values, evaluate_matrix(m, lambda a: table[a])


@settings(max_examples=200, deadline=None)
@given(matrices, prefixes)
def test_pretty_parse_round_trip(m, qs):
    f = Formula(tuple(zip(qs, VARS)), m)
    assert parse(pretty(f)) == f


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_nnf_and_cnf_preserve_truth_tables(m):
    keys = _atom_keys(m)
    cnf = to_cnf(m)
    assert is_cnf(cnf)
    for (values, expected), (_, got) in zip(_truth_table(m, keys), _truth_table(nnf(m), keys)):
        assert expected == got
    table_keys = keys
    for values in itertools.product([False, True], repeat=len(table_keys)):
        table = dict(zip(table_keys, values))
        assert evaluate_matrix(m, table.__getitem__) == evaluate_matrix(cnf, table.__getitem__)
        assert evaluate_matrix(m, table.__getitem__) != evaluate_matrix(nnf(m, negate=True), table.__getitem__)


def test_cnf_clauses_roundtrip():
    m = parse("A a. A b. A c. (a ~ b) -> ((b ~ c) & !(a = c))").matrix
    clauses = cnf_clauses(to_cnf(m))
    assert len(clauses) == 2 and all(len(cl) == 2 for cl in clauses)


# -- vertex formula construction ---------------------------------------------------

def test_vertex_formula_needs_universal():
    with pytest.raises(FormulaError):
        build_vertex_formula(parse("E x. E y. x ~ y"))


def test_vertex_formula_prefix_length():
    for f in CORPUS.values():
        if FORALL not in {q for q, _ in f.prefix}:
            continue
        parts = build_vertex_formula(f, with_intermediates=True)
        p = len(f.prefix)
        assert len(parts.psi.prefix) == 4 * p + parts.positive + parts.negative + 2
        assert parts.psi.is_sentence and parts.gamma.is_sentence and parts.alpha.is_sentence


def test_vertex_formula_intermediates_have_no_adjacency_between_originals():
    parts = build_vertex_formula(NO_ISOLATED, with_intermediates=True)
    # alpha keeps the original prefix and appends one existential per positive literal
    assert parts.alpha.prefix[:2] == NO_ISOLATED.prefix
    assert parts.positive == 1 and parts.negative == 0
    assert parts.alpha.quantifier_string == "AEE"
