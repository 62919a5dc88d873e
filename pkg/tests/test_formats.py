import random

import pytest
from hypothesis import given, strategies as st

from travlab.families import random_structure
from travlab.formats import (
    FormatError, interpretation_to_text, load_formula, load_interpretation, load_structure,
    load_structures, parse_interpretation, parse_signature, parse_structure, save_structure,
    signature_to_text, structure_to_text,
)
from travlab.interpretations import translate_structure
from travlab.logic import parse_formula
from travlab.machines import parity_machine, pi_interpretation
from travlab.reductions import parity_interpretation, rho, square_interpretation, tau
from travlab.structures import (
    LinearOrder, Signature, gamma, graph, string_signature, string_to_structure,
    successor_expansion, with_order, with_successor,
)


@pytest.mark.parametrize("text, expected", [
    ("", Signature()),
    ("empty", Signature()),
    ("graph", Signature({"E": 2})),
    ("gamma2", gamma(2)),
    ("gamma3+succ", with_successor(gamma(3))),
    ("graph+order", with_order(Signature({"E": 2}))),
    ("string[01#]", string_signature("01#")),
    ("E/2, P/1, f:1, c:0", Signature({"E": 2, "P": 1}, {"f": 1, "c": 0})),
])
def test_parse_signature(text, expected):
    assert parse_signature(text) == expected
    assert parse_signature(signature_to_text(expected)) == expected


@pytest.mark.parametrize("text", ["E/x", "E/2,E/1", "gamma9", "graph+sideways", "E-2"])
def test_bad_signatures(text):
    with pytest.raises((FormatError, ValueError)):
        parse_signature(text)


SIGS = [Signature({"E": 2}), Signature({"E": 2, "P": 1}, {"f": 1, "c": 0}),
        Signature({"R": 3}, {"g": 2}), Signature({}, {"s": 0, "t": 0})]


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from(SIGS), st.integers(1, 4))
def test_structure_round_trip(seed, sig, n):
    A = random_structure(random.Random(seed), sig, n)
    B = parse_structure(structure_to_text(A))
    assert B.signature == A.signature and B.size == A.size
    for r in sig.relations:
        assert B.relation(r).as_frozenset() == A.relation(r).as_frozenset()
    for f in sig.functions:
        assert dict(B.function(f)) == dict(A.function(f))


def test_signature_read_off_symbol_lines():
    A = parse_structure("""% a pointed path
structure p sig=E/2,s:0 n=3
rel E: (0,1) (1,0) (1,2) (2,1)
const s=0
""")
    assert A.constant("s") == 0 and A.is_graph
    B = parse_structure("structure u n=2\nrel P: (0,) (1,)\n")
    assert B.signature == Signature({"P": 1}) and len(B.relation("P")) == 2


def test_successor_structure_round_trip(tmp_path):
    A = successor_expansion(graph(3, [(0, 2)]), LinearOrder.from_sequence([2, 0, 1]))
    path = tmp_path / "a.struct"
    save_structure(A, str(path))
    B = load_structure(str(path))
    assert B.is_successor and B.successor_order().sequence == (2, 0, 1)


def test_signature_file_reference(tmp_path):
    (tmp_path / "sig.txt").write_text("E/2, s:0, t:0\n")
    (tmp_path / "a.struct").write_text("structure a sig=sig.txt n=2\nrel E: (0,1)\nconst s=0 t=1\n")
    A = load_structure(str(tmp_path / "a.struct"))
    assert A.signature == gamma(2)


def test_load_directory(tmp_path):
    for i in range(3):
        save_structure(graph(i + 1, []), str(tmp_path / f"g{i}.struct"))
    (tmp_path / "notes.txt").write_text("ignored")
    assert [A.size for A in load_structures(str(tmp_path))] == [1, 2, 3]
    with pytest.raises(FormatError):
        load_structures(str(tmp_path / "nothing-here"))


@pytest.mark.parametrize("text, line", [
    ("rel E: (0,1)\n", 1),
    ("structure a n=2\nrel E: (0,5)\n", 2),
    ("structure a n=2\nrel E: (0,1\n", 2),
    ("structure a n=2\nfun f: 0->1\n", None),
    ("structure a n=x\n", 1),
    ("structure a n=2\nconst s\n", 2),
    ("structure a sig=E/2 n=2\nrel P: (0,)\n", 2),
])
def test_structure_errors(text, line):
    with pytest.raises(FormatError) as info:
        parse_structure(text, source="bad.struct")
    assert "bad.struct" in str(info.value)
    if line is not None:
        assert info.value.line == line


def test_load_formula(tmp_path):
    path = tmp_path / "f.formula"
    path.write_text("% comment line\nexists x\n  E(x, x) % trailing\n")
    sig = Signature({"E": 2})
    assert load_formula(str(path), sig) == parse_formula("exists x E(x, x)", sig)
    path.write_text("exists x (\n")
    with pytest.raises(FormatError):
        load_formula(str(path), sig)


INTERPRETATIONS = [rho(), tau(), square_interpretation(), parity_interpretation(),
                   pi_interpretation(parity_machine())]


@pytest.mark.parametrize("pi", INTERPRETATIONS, ids=lambda pi: pi.name)
def test_interpretation_round_trip(pi, tmp_path):
    text = interpretation_to_text(pi)
    again = parse_interpretation(text)
    assert (again.name, again.dim, again.source, again.target) == (pi.name, pi.dim, pi.source, pi.target)
    assert again.requires == pi.requires and again.produces == pi.produces
    path = tmp_path / "pi.interp"
    path.write_text(text)
    assert interpretation_to_text(load_interpretation(str(path))) == text


def test_round_tripped_interpretation_translates_the_same():
    pi = pi_interpretation(parity_machine())
    again = parse_interpretation(interpretation_to_text(pi))
    x = string_to_structure("0110", alphabet="01#")
    A, B = translate_structure(pi, x), translate_structure(again, x)
    assert A.relation("E").as_frozenset() == B.relation("E").as_frozenset()
    assert dict(A.function("S")) == dict(B.function("S"))


def test_default_variable_blocks():
    pi = parse_interpretation("""interp swap dim=2 from=E/2 to=E/2
domain: true
rel E: E(x1, y2) & x2 = y1
""")
    assert pi.relations["E"][0] == ("x1", "x2", "y1", "y2")


@pytest.mark.parametrize("text", [
    "domain: true\n",
    "interp a dim=1 from=E/2 to=E/2\ndomain: true\n",
    "interp a dim=1 from=E/2 to=E/2\ndomain: true\nrel E: E(x, z)\n",
    "interp a dim=1 from=c:0 to=E/2\ndomain: true\nconst c: case E(x, x) => (x)\n",
    "interp a dim=1 from=E/2 to=E/2\ndomain: true\nrel E: E(x, y\n",
])
def test_interpretation_errors(text):
    with pytest.raises(FormatError):
        parse_interpretation(text)
