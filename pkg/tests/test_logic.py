import itertools

import pytest
from hypothesis import given, strategies as st

from travlab.logic import (
    EvaluationError, FormulaSyntaxError, evaluate, naive_evaluate, parse_formula, parse_term,
)
from travlab.logic.solve import count_solutions, solutions
from travlab.logic.syntax import (
    FALSE, TRUE, And, App, Eq, Exists, Forall, Implies, Not, Or, Rel, Var, conj, disj, exists,
    forall, neg, nnf, quantifier_depth, substitute, to_text,
)
from travlab.structures import LinearOrder, Signature, Structure, graph, order_expansion, with_order

SIG = Signature({"E": 2, "P": 1}, {"f": 1, "c": 0})
VARS = ("x", "y", "z")


def terms(depth=1):
    base = st.one_of(st.sampled_from(VARS).map(Var), st.just(App("c")))
    if depth == 0:
        return base
    return st.one_of(base, terms(depth - 1).map(lambda t: App("f", (t,))))


def atoms():
    return st.one_of(
        st.tuples(terms(), terms()).map(lambda p: Rel("E", p)),
        terms().map(lambda t: Rel("P", (t,))),
        st.tuples(terms(), terms()).map(lambda p: Eq(*p)),
        st.sampled_from([TRUE, FALSE]),
    )


def formulas():
    return st.recursive(atoms(), lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda p: And(p)),
        st.tuples(sub, sub).map(lambda p: Or(p)),
        st.tuples(sub, sub).map(lambda p: Implies(*p)),
        st.tuples(st.sampled_from(VARS), sub).map(lambda p: Exists(*p)),
        st.tuples(st.sampled_from(VARS), sub).map(lambda p: Forall(*p)),
    ), max_leaves=8)


@st.composite
def structures(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.product(range(n), repeat=2))
    E = [p for p in pairs if draw(st.booleans())]
    P = [(a,) for a in range(n) if draw(st.booleans())]
    f = {(a,): draw(st.integers(0, n - 1)) for a in range(n)}
    c = draw(st.integers(0, n - 1))
    return Structure(SIG, n, {"E": E, "P": P}, {"f": f, "c": c})


# -- parser ----------------------------------------------------------------


def test_parse_basic_connectives():
    f = parse_formula("exists x (E(x, y) & !P(x)) -> y = c", SIG)
    assert isinstance(f, Implies)
    assert f.fv == frozenset({"y"})


def test_quantifiers_bind_tightly():
    f = parse_formula("exists x P(x) & P(y)")
    assert isinstance(f, And) and isinstance(f.items[0], Exists)


def test_comparison_sugar_and_chains():
    sig = with_order(Signature({"E": 2}))
    f = parse_formula("u < v <= w", sig)
    g = parse_formula("u < v & (v < w | v = w)", sig)
    A = order_expansion(graph(3, []), LinearOrder.identity(3))
    for vals in itertools.product(range(3), repeat=3):
        env = dict(zip("uvw", vals))
        assert evaluate(A, f, env) == evaluate(A, g, env)
    assert parse_formula("u != v") == Not(Eq(Var("u"), Var("v")))


def test_bounded_quantifiers():
    sig = with_order(Signature({"E": 2}))
    f = parse_formula("exists x < v E(x, v)", sig)
    g = parse_formula("exists x (x < v & E(x, v))", sig)
    assert f == g
    h = parse_formula("forall x < v E(x, v)", sig)
    assert h == parse_formula("forall x (x < v -> E(x, v))", sig)


@pytest.mark.parametrize("text", [
    "E(x", "exists (x)", "P(x) &", "x <", "E(x, y, z)", "Q(x)", "f(x)", "exists E P(E)",
])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text, SIG)


def test_syntax_error_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("P(x) & & P(y)", SIG)
    assert info.value.position == 7


def test_parse_term():
    assert parse_term("f(f(c))", SIG) == App("f", (App("f", (App("c"),)),))


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(to_text(f), SIG) == f


# -- evaluation ------------------------------------------------------------


@given(structures(), formulas())
def test_evaluator_matches_naive(A, f):
    for vals in itertools.product(range(A.size), repeat=len(f.fv)):
        env = dict(zip(sorted(f.fv), vals))
        assert evaluate(A, f, env) == naive_evaluate(A, f, env)


@given(structures(), formulas())
def test_nnf_preserves_truth(A, f):
    g = nnf(f)
    for vals in itertools.product(range(A.size), repeat=len(f.fv)):
        env = dict(zip(sorted(f.fv), vals))
        assert naive_evaluate(A, f, env) == naive_evaluate(A, g, env)


def test_unbound_and_out_of_range():
    A = graph(2, [(0, 1)])
    with pytest.raises(EvaluationError):
        evaluate(A, parse_formula("E(x, y)"), {"x": 0})
    with pytest.raises(EvaluationError):
        evaluate(A, parse_formula("E(x, y)"), {"x": 0, "y": 5})
    with pytest.raises(EvaluationError):
        evaluate(A, parse_formula("P(x)"), {"x": 0})


def test_empty_domain_quantifiers():
    A = Structure(Signature({"E": 2}), 0)
    assert not evaluate(A, parse_formula("exists x x = x"))
    assert evaluate(A, parse_formula("forall x !(x = x)"))


def test_quantifier_depth():
    assert quantifier_depth(parse_formula("exists x forall y (E(x,y) | exists z E(z,z))")) == 3


def test_substitution_avoids_capture():
    f = parse_formula("exists y E(x, y)")
    g = substitute(f, {"x": Var("y")})
    assert g.fv == frozenset({"y"})
    A = graph(2, [(0, 1)])
    assert evaluate(A, g, {"y": 0}) and evaluate(A, g, {"y": 1})


def test_smart_constructors():
    assert conj([]) == TRUE and disj([]) == FALSE
    assert conj([TRUE, Rel("P", (Var("x"),))]) == Rel("P", (Var("x"),))
    assert neg(neg(Rel("P", (Var("x"),)))) == Rel("P", (Var("x"),))
    assert exists([], TRUE) == TRUE and forall(["x"], TRUE).fv == frozenset()


# -- solutions -------------------------------------------------------------


@given(structures(), formulas())
def test_solutions_match_brute_force(A, f):
    free = sorted(f.fv | {"x"})
    expected = {vals for vals in itertools.product(range(A.size), repeat=len(free))
                if naive_evaluate(A, f, dict(zip(free, vals)))}
    assert set(solutions(A, f, free)) == expected
    assert count_solutions(A, f, free) == len(expected)


@given(structures())
def test_wide_disjunctions_are_split_correctly(A):
    cases = [parse_formula(t, SIG) for t in
             ("x = c & E(x, y)", "y = f(x) & P(y)", "E(y, x) & x = y", "P(x) & !P(y)", "x = f(c)")]
    f = disj(cases)
    got = set(solutions(A, f, ("x", "y")))
    expected = {(a, b) for a in range(A.size) for b in range(A.size)
                if naive_evaluate(A, f, {"x": a, "y": b})}
    assert got == expected


def test_solutions_with_fixed_values():
    A = graph(3, [(0, 1), (1, 2)])
    assert sorted(solutions(A, parse_formula("E(x, y)"), ("y",), {"x": 1})) == [(0,), (2,)]
    with pytest.raises(EvaluationError):
        list(solutions(A, parse_formula("E(x, y)"), ("y",)))
