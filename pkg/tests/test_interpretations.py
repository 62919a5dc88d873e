import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from travlab.families import random_formula, random_interpretation, random_structure
from travlab.interpretations import (
    Cases, Interpretation, InterpretationError, check_fundamental_property, compose,
    identity_interpretation, translate_formula, translate_structure,
)
from travlab.logic import eval_term, naive_evaluate, parse_formula
from travlab.logic.syntax import TRUE, App
from travlab.reductions import square_interpretation
from travlab.structures import Signature, Structure, graph

SOURCE = Signature({"E": 2, "P": 1}, {"c": 0})
TARGET = Signature({"E": 2, "P": 1}, {"f": 1, "c": 0})
GRAPH = Signature({"E": 2})


def brute_translate(pi, A):
    """Image of ``A`` under ``pi`` computed straight from the definitions."""
    k = pi.dim
    dvars, dform = pi.domain
    dom = [t for t in itertools.product(range(A.size), repeat=k)
           if naive_evaluate(A, dform, dict(zip(dvars, t)))]
    rels = {}
    for r, arity in pi.source.relations.items():
        vs, f = pi.relations[r]
        rels[r] = {combo for combo in itertools.product(dom, repeat=arity)
                   if naive_evaluate(A, f, dict(zip(vs, (c for b in combo for c in b))))}
    funs = {}
    for fn, arity in pi.source.functions.items():
        defn = pi.functions[fn]
        table = {}
        for combo in itertools.product(dom, repeat=arity):
            env = dict(zip(defn.args, (c for b in combo for c in b)))
            for guard, terms in defn.cases:
                if naive_evaluate(A, guard, env):
                    table[combo] = tuple(eval_term(A, t, env) for t in terms)
                    break
        funs[fn] = table
    return dom, rels, funs


def as_tuples(B):
    lab = B.labels
    rels = {r: {tuple(lab[i] for i in t) for t in B.relation(r)} for r in B.signature.relations}
    funs = {f: {tuple(lab[i] for i in args): lab[v] for args, v in B.function(f).items()}
            for f in B.signature.functions}
    return list(lab), rels, funs


seeds = st.integers(0, 2 ** 32 - 1)


@settings(max_examples=60)
@given(seeds)
def test_translation_matches_definitions(seed):
    rng = random.Random(seed)
    pi = random_interpretation(rng)
    A = random_structure(rng, TARGET, rng.randint(1, 3))
    assert as_tuples(translate_structure(pi, A)) == brute_translate(pi, A)


@settings(max_examples=60)
@given(seeds)
def test_fundamental_property_on_random_interpretations(seed):
    rng = random.Random(seed)
    pi = random_interpretation(rng)
    A = random_structure(rng, TARGET, rng.randint(1, 3))
    f = random_formula(rng, SOURCE, ["x"], 3, quantifiers=2)
    assert check_fundamental_property(pi, A, f).agree


@settings(max_examples=30)
@given(seeds)
def test_composition_equals_two_steps(seed):
    rng = random.Random(seed)
    inner = random_interpretation(rng, dim=1, source=TARGET, target=TARGET)
    outer = random_interpretation(rng, dim=rng.choice((1, 2)))
    A = random_structure(rng, TARGET, rng.randint(1, 3))
    two = translate_structure(outer, translate_structure(inner, A))
    one = translate_structure(compose(outer, inner), A)
    assert one.size == two.size
    for r in SOURCE.relations:
        assert one.relation(r).as_frozenset() == two.relation(r).as_frozenset()
    assert one.constant("c") == two.constant("c")


def test_identity_interpretation():
    A = Structure(TARGET, 3, {"E": [(0, 1), (2, 2)], "P": [(1,)]},
                  {"f": {(0,): 1, (1,): 2, (2,): 0}, "c": 2})
    B = translate_structure(identity_interpretation(TARGET), A)
    assert B.relation("E").as_frozenset() == A.relation("E").as_frozenset()
    assert dict(B.function("f")) == dict(A.function("f")) and B.constant("c") == 2


def test_square_of_path():
    B = translate_structure(square_interpretation(), graph(4, [(0, 1), (1, 2), (2, 3)]))
    assert B.relation("E").as_frozenset() == {(0, 2), (2, 0), (1, 3), (3, 1)}


def test_translate_formula_relativizes_quantifiers():
    pi = Interpretation("half", GRAPH, GRAPH, 1, (("x",), parse_formula("exists y E(x, y)")),
                        {"E": (("x", "y"), parse_formula("E(x, y)"))})
    f = translate_formula(pi, parse_formula("forall x exists y E(x, y)"))
    assert naive_evaluate(graph(3, [(0, 1)]), f)
    assert not naive_evaluate(graph(3, [(0, 1)]), parse_formula("forall x exists y E(x, y)"))


def test_invalid_definitions():
    e = (("x", "y"), parse_formula("E(x, y)"))
    with pytest.raises(InterpretationError, match="no definition"):
        Interpretation("bad", GRAPH, GRAPH, 1, (("x",), TRUE), {})
    with pytest.raises(InterpretationError, match="unbound"):
        Interpretation("bad", GRAPH, GRAPH, 1, (("x",), parse_formula("E(x, z)")), {"E": e})
    with pytest.raises(InterpretationError, match="distinct variables"):
        Interpretation("bad", GRAPH, GRAPH, 2, (("x",), TRUE), {"E": e})
    sig = Signature({}, {"c": 0})
    target = Signature({"E": 2}, {"d": 0})
    with pytest.raises(InterpretationError, match="default"):
        Interpretation("bad", sig, target, 1, (("x",), TRUE), {},
                       {"c": Cases((), [(parse_formula("E(d, d)"), (App("d"),))])})
    with pytest.raises(InterpretationError, match="dimension"):
        Interpretation("bad", GRAPH, GRAPH, 0, ((), TRUE), {"E": ((), TRUE)})


def test_constant_outside_domain_is_rejected():
    sig = Signature({}, {"c": 0})
    target = Signature({"P": 1}, {"d": 0})
    pi = Interpretation("off", sig, target, 1, (("x",), parse_formula("P(x)")), {},
                        {"c": Cases((), [(TRUE, (App("d"),))])})
    A = Structure(target, 2, {"P": [(1,)]}, {"d": 0})
    with pytest.raises(InterpretationError, match="outside the domain"):
        translate_structure(pi, A)


def test_wrong_input_signature():
    with pytest.raises(InterpretationError, match="needs signature"):
        translate_structure(square_interpretation(), Structure(Signature({"P": 1}), 2))
