import itertools

import pytest
from hypothesis import given, strategies as st

from travlab.structures import (
    LinearOrder, Signature, Structure, StructureError, char_predicate, digraph, find_isomorphism,
    gamma, graph, is_isomorphic, order_expansion, reduct, string_to_structure, successor_expansion,
    successor_expansions, with_constants, with_successor,
)

from strategies import graphs


def test_signature_arities_and_constants():
    sig = Signature({"E": 2, "P": 1}, {"f": 1, "c": 0})
    assert sig.arity("E") == 2 and sig.arity("c") == 0
    assert sig.constants == ("c",)
    assert sig.is_relation("P") and sig.is_function("f") and "c" in sig
    assert Signature({"E": 2}) <= sig
    assert sig.without(["P"]) == Signature({"E": 2}, {"f": 1, "c": 0})


def test_signature_rejects_bad_symbols():
    with pytest.raises(StructureError):
        Signature({"E": 0})
    with pytest.raises(StructureError):
        Signature({"E": 2}, {"E": 1})


def test_gamma_constants():
    assert gamma(2).constants == ("s", "t")
    assert gamma(3).constants == ("x", "y", "z")
    assert gamma(6).constants == ("x1", "y1", "z1", "x2", "y2", "z2")


def test_graph_profile_needs_symmetry_and_no_loops():
    assert graph(3, [(0, 1)]).is_graph
    assert not digraph(2, [(0, 1)]).is_graph
    with pytest.raises(StructureError):
        Structure(Signature({"E": 2}), 2, {"E": [(0, 0)]}, profiles=("graph",))
    with pytest.raises(StructureError):
        Structure(Signature({"E": 2}), 2, {"E": [(0, 1)]}, profiles=("graph",))


def test_tuples_must_lie_in_the_domain():
    with pytest.raises(StructureError):
        Structure(Signature({"E": 2}), 2, {"E": [(0, 2)]})
    with pytest.raises(StructureError):
        Structure(Signature({}, {"f": 1}), 2, {}, {"f": {(0,): 1}})


def test_linear_order_sequence_and_ranks():
    o = LinearOrder.from_sequence([2, 0, 1])
    assert o.sequence == (2, 0, 1)
    assert o.less(2, 0) and not o.less(1, 0)
    assert str(o) == "2,0,1"
    assert sorted(LinearOrder.all_orders(3)) == sorted(set(LinearOrder.all_orders(3)))
    assert len(list(LinearOrder.all_orders(4))) == 24


def test_successor_expansion_fixes_max():
    A = successor_expansion(graph(3, [(0, 1)]), LinearOrder.from_sequence([1, 2, 0]))
    assert A.constant("min") == 1 and A.constant("max") == 0
    assert A.apply("S", (1,)) == 2 and A.apply("S", (0,)) == 0
    assert A.successor_order() == LinearOrder.from_sequence([1, 2, 0])
    assert A.is_successor


def test_successor_profile_rejects_cycles():
    sig = with_successor(Signature())
    bad = {"min": 0, "max": 2, "S": {(0,): 1, (1,): 0, (2,): 2}}
    with pytest.raises(StructureError):
        Structure(sig, 3, {}, bad, profiles=("successor",))


def test_successor_expansions_count():
    assert len(list(successor_expansions(graph(3, [])))) == 6


def test_order_expansion_relation():
    A = order_expansion(graph(3, []), LinearOrder.from_sequence([2, 0, 1]))
    assert (2, 0) in A.relation("<") and (0, 2) not in A.relation("<")
    assert len(A.relation("<")) == 3


def test_string_structure():
    s = string_to_structure("01#", alphabet="01#")
    assert s.size == 3 and s.is_successor
    assert (0,) in s.relation(char_predicate("0"))
    assert (2,) in s.relation(char_predicate("#"))
    assert s.apply("S", (2,)) == 2
    with pytest.raises(StructureError):
        string_to_structure("")
    with pytest.raises(StructureError):
        string_to_structure("2", alphabet="01")


def test_char_predicate_names():
    assert char_predicate("a") == "a"
    assert char_predicate("0") == "c48" and char_predicate("#") == "c35"


def test_reduct_and_constants():
    g = with_constants(graph(3, [(0, 1)]), s=0, t=2)
    assert g.constant("t") == 2
    r = reduct(g, ["E"])
    assert r.signature == Signature({"E": 2}) and r.is_graph


@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_isomorphism_finds_relabelings(g, rnd):
    perm = list(range(g.size))
    rnd.shuffle(perm)
    h = graph(g.size, [(perm[u], perm[v]) for u, v in g.relation("E")])
    iso = find_isomorphism(g, h)
    assert iso is not None
    assert {(iso[u], iso[v]) for u, v in g.relation("E")} == h.relation("E").as_frozenset()


def test_non_isomorphic_graphs():
    p4 = graph(4, [(0, 1), (1, 2), (2, 3)])
    star = graph(4, [(0, 1), (0, 2), (0, 3)])
    assert not is_isomorphic(p4, star)
    assert is_isomorphic(p4, graph(4, [(3, 1), (1, 0), (0, 2)]))


def test_isomorphism_respects_constants():
    a = with_constants(graph(2, [(0, 1)]), s=0)
    b = with_constants(graph(2, [(0, 1)]), s=1)
    assert is_isomorphic(a, b)
    c = with_constants(graph(3, [(0, 1)]), s=2)
    d = with_constants(graph(3, [(0, 1)]), s=0)
    assert not is_isomorphic(c, d)


def test_structure_equality_ignores_names():
    assert graph(2, [(0, 1)], name="a") == graph(2, [(1, 0)], name="b")
    assert graph(2, [(0, 1)]) != graph(2, [])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_all_successor_expansions_are_isomorphic_for_empty_signature(n):
    exps = list(successor_expansions(Structure(Signature(), n)))
    assert all(is_isomorphic(exps[0], e) for e in exps)
    assert len(exps) == len(list(itertools.permutations(range(n))))
