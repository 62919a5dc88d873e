import itertools
import re

import networkx as nx
import pytest

from travlab.interpretations import translate_structure
from travlab.machines import (
    ACCEPT, START, Machine, MachineError, Transition, block_count_machine, bounce_machine,
    config_graph, configurations, empty_machine, is_symmetric, machine_to_text, parity_machine,
    parse_machine, pi_config_of, pi_interpretation, reference_machines, run_machine,
    validate_machine,
)
from travlab.structures import is_isomorphic, string_to_structure

SIGMA = "01#"


def strings(max_len, min_len=0):
    for n in range(min_len, max_len + 1):
        for chars in itertools.product(SIGMA, repeat=n):
            yield "".join(chars)


LANGUAGES = {
    "parity": lambda x: x.count("1") % 2 == 0,
    "block_count": lambda x: bool(re.fullmatch(r"1*#[01#]*", x))
    and x.split("#", 1)[1].count("1") == len(x.split("#", 1)[0]),
    "bounce": lambda x: "#" in x,
}


@pytest.mark.parametrize("name", sorted(LANGUAGES))
def test_reference_languages(name):
    m = reference_machines()[name]
    for x in strings(6):
        assert run_machine(m, x) == LANGUAGES[name](x), x


def test_block_count_examples():
    m = block_count_machine()
    assert run_machine(m, "11#0101")
    assert run_machine(m, "#00")
    assert not run_machine(m, "11#01")
    assert not run_machine(m, "10#1")


@pytest.mark.parametrize("name", sorted(LANGUAGES))
def test_acceptance_is_reachability_in_the_configuration_graph(name):
    m = reference_machines()[name]
    for x in strings(4):
        cg = config_graph(m, x)
        assert cg.graph.size == m.q * (len(x) + 2) ** m.k
        D = nx.DiGraph()
        D.add_nodes_from(range(cg.graph.size))
        D.add_edges_from(cg.graph.relation("E"))
        s, t = cg.graph.constant("s"), cg.graph.constant("t")
        assert cg.configs[s] == (START,) + (0,) * m.k
        assert cg.configs[t] == (ACCEPT,) + (0,) * m.k
        assert run_machine(m, x) == nx.has_path(D, s, t)


def test_symmetry():
    for x in strings(4, 1):
        assert is_symmetric(bounce_machine(), x)
        assert is_symmetric(bounce_machine("0"), x)
    assert not is_symmetric(parity_machine(), "01")
    assert not is_symmetric(block_count_machine(), "1#1")


def test_symmetric_machine_connectivity_is_reachability():
    m = bounce_machine()
    for x in strings(4, 1):
        cg = config_graph(m, x)
        G = nx.Graph()
        G.add_nodes_from(range(cg.graph.size))
        G.add_edges_from(cg.graph.relation("E"))
        assert nx.has_path(G, cg.graph.constant("s"), cg.graph.constant("t")) == run_machine(m, x)


@pytest.mark.parametrize("x", ["000", "1#1", "0110", "##1"])
@pytest.mark.parametrize("name", ["parity", "bounce"])
def test_interpretation_reproduces_the_configuration_graph(name, x):
    m = reference_machines()[name]
    B = translate_structure(pi_interpretation(m), string_to_structure(x, alphabet=m.sigma))
    cg = config_graph(m, x)
    assert is_isomorphic(B, cg.successor)
    decoded = sorted(pi_config_of(m, len(x), label) for label in B.labels)
    assert decoded == configurations(m, len(x))


def test_interpretation_dimension():
    assert pi_interpretation(parity_machine()).dim == 3
    assert pi_interpretation(block_count_machine()).dim == 5


def test_homing_is_implicit():
    m = empty_machine()
    assert m.delta == ()
    assert Transition(ACCEPT, ("0",), ACCEPT, (-1,)) in m.transitions
    assert not run_machine(m, "01")


def test_validation_messages():
    bad = Machine.__new__(Machine)
    object.__setattr__(bad, "q", 1)
    object.__setattr__(bad, "k", 1)
    object.__setattr__(bad, "sigma", ("0", "^", "0"))
    object.__setattr__(bad, "delta", (
        Transition(0, ("^",), 3, (-1,)),
        Transition(0, ("$",), 0, (1,)),
        Transition(0, ("0", "0"), 0, (1,)),
        Transition(ACCEPT, ("0",), 0, (1,)),
    ))
    problems = "\n".join(validate_machine(bad))
    for fragment in ("two states", "invalid alphabet symbol", "repeated", "out of range",
                     "moves left off", "moves right off", "needs 1 reads", "accepting state"):
        assert fragment in problems
    with pytest.raises(MachineError):
        Machine(2, 1, SIGMA, (Transition(0, ("x",), 0, (1,)),))


def test_unknown_input_symbol():
    with pytest.raises(MachineError, match="not in the alphabet"):
        run_machine(parity_machine(), "012")


@pytest.mark.parametrize("m", list(reference_machines().values()), ids=lambda m: m.name)
def test_text_round_trip(m):
    again = parse_machine(machine_to_text(m))
    assert (again.q, again.k, again.sigma, again.delta, again.name) == (m.q, m.k, m.sigma, m.delta, m.name)


def test_parse_wildcards_and_comments():
    text = """% walk right, accept at the right end
machine q=2 heads=1 sigma=ab
delta: (0, *) -> (0, R)   % never off the tape
delta: (0, $) -> (1, S)
"""
    m = parse_machine(text)
    assert len(m.delta) == 4
    assert run_machine(m, "abba")


@pytest.mark.parametrize("text, fragment", [
    ("", "empty"),
    ("machine q=2\n", "expected 'machine"),
    ("machine q=2 heads=1 sigma=ab\ndelta: 0 -> 1\n", "expected 'delta"),
    ("machine q=2 heads=1 sigma=ab\ndelta: (0, a) -> (1, 2)\n", "invalid move"),
    ("machine q=2 heads=1 sigma=ab\ndelta: (0, a, b) -> (1, 0)\n", "need 1 reads"),
    ("machine q=2 heads=1 sigma=ab\ndelta: (x, a) -> (1, 0)\n", "integers"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(MachineError, match=fragment):
        parse_machine(text)
