"""Nondeterministic multihead finite automata and their configuration graphs.

A machine has states ``0..q-1`` (``0`` initial, ``1`` accepting), ``k``
read-only heads on ``^ x $`` (the input between two endmarkers) and a
transition relation.  A configuration is a state plus head positions
``0..n+1``; position ``0`` holds ``^`` and ``n+1`` holds ``$``.  The
machine accepts ``x`` if the final configuration (state 1, all heads on
``^``) is reachable from the initial one (state 0, all heads on ``^``).

From state 1 the machine only walks its heads home: every head not on
``^`` moves left, the others stay.  These homing transitions are added
automatically, so entering state 1 always leads to the final
configuration.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .interpretations import Cases, Interpretation
from .logic.syntax import (
    TRUE, App, Eq, Formula, Rel, Term, Var, conj, disj, neg,
)
from .structures import (
    LinearOrder, Structure, char_predicate, digraph, gamma, string_signature,
    successor_expansion, with_successor,
)

__all__ = [
    "LEFT_END", "RIGHT_END", "START", "ACCEPT", "MachineError", "Machine", "Transition",
    "validate_machine", "configurations", "config_index", "run_machine", "ConfigGraph",
    "config_graph", "is_symmetric", "pi_interpretation", "pi_config_of",
    "parity_machine", "block_count_machine", "bounce_machine", "empty_machine",
    "parse_machine", "machine_to_text", "reference_machines",
]

LEFT_END, RIGHT_END = "^", "$"
START, ACCEPT = 0, 1
MOVES = (-1, 0, 1)


class MachineError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Transition:
    state: int
    reads: tuple
    target: int
    moves: tuple

    def __str__(self) -> str:
        moves = ", ".join(f"{m:+d}" if m else "0" for m in self.moves)
        return f"({self.state}, {', '.join(self.reads)}) -> ({self.target}, {moves})"


def _homing(k: int, sigma: Sequence[str]) -> list[Transition]:
    out = []
    for reads in itertools.product((LEFT_END, *sigma, RIGHT_END), repeat=k):
        moves = tuple(0 if r == LEFT_END else -1 for r in reads)
        if any(moves):
            out.append(Transition(ACCEPT, reads, ACCEPT, moves))
    return out


@dataclass(frozen=True)
class Machine:
    """``delta`` holds the transitions given by the user; ``transitions``
    adds the homing transitions of the accepting state."""

    q: int
    k: int
    sigma: tuple
    delta: tuple
    name: str = "machine"
    transitions: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "delta", tuple(sorted(set(self.delta))))
        problems = validate_machine(self)
        if problems:
            raise MachineError("; ".join(problems))
        homing = [t for t in _homing(self.k, self.sigma) if t not in self.delta]
        object.__setattr__(self, "transitions", tuple(sorted(self.delta + tuple(homing))))

    @property
    def symbols(self) -> tuple:
        return (LEFT_END, *self.sigma, RIGHT_END)


def validate_machine(m: Machine) -> list[str]:
    """Every violated well-formedness condition, as messages (empty if fine)."""
    problems = []
    if m.q < 2:
        problems.append("need at least two states (initial 0 and accepting 1)")
    if m.k < 1:
        problems.append("need at least one head")
    for ch in m.sigma:
        if len(ch) != 1 or ch in (LEFT_END, RIGHT_END, "*", " ", ",", "(", ")"):
            problems.append(f"invalid alphabet symbol {ch!r}")
    if len(set(m.sigma)) != len(m.sigma):
        problems.append("alphabet has repeated symbols")
    symbols = (LEFT_END, *m.sigma, RIGHT_END)
    for t in m.delta:
        where = f"transition {t}"
        if not (0 <= t.state < m.q and 0 <= t.target < m.q):
            problems.append(f"{where}: state out of range")
        if len(t.reads) != m.k or len(t.moves) != m.k:
            problems.append(f"{where}: needs {m.k} reads and {m.k} moves")
            continue
        for i, (r, mv) in enumerate(zip(t.reads, t.moves)):
            if r not in symbols:
                problems.append(f"{where}: head {i + 1} reads unknown symbol {r!r}")
            if mv not in MOVES:
                problems.append(f"{where}: head {i + 1} has invalid move {mv!r}")
            if r == LEFT_END and mv == -1:
                problems.append(f"{where}: head {i + 1} moves left off {LEFT_END}")
            if r == RIGHT_END and mv == 1:
                problems.append(f"{where}: head {i + 1} moves right off {RIGHT_END}")
        if t.state == ACCEPT:
            homing = tuple(0 if r == LEFT_END else -1 for r in t.reads)
            if t.target != ACCEPT or t.moves != homing:
                problems.append(
                    f"{where}: from the accepting state heads may only move left, "
                    f"or stay on {LEFT_END}")
    return problems


# --------------------------------------------------------------------------
# configurations


def configurations(m: Machine, n: int) -> list[tuple]:
    """All configurations ``(state, p1..pk)`` in lexicographic order."""
    return [(s, *ps) for s in range(m.q) for ps in itertools.product(range(n + 2), repeat=m.k)]


def config_index(m: Machine, n: int, config: Sequence[int]) -> int:
    idx = config[0]
    for p in config[1:]:
        idx = idx * (n + 2) + p
    return idx


def _tape(x: str) -> str:
    return LEFT_END + x + RIGHT_END


def _table(m: Machine) -> dict:
    table: dict = {}
    for t in m.transitions:
        table.setdefault((t.state, t.reads), []).append((t.target, t.moves))
    return table


def successors(m: Machine, x: str, config: Sequence[int]) -> Iterator[tuple]:
    tape = _tape(x)
    table = m.__dict__.get("_table")
    if table is None:
        table = _table(m)
        object.__setattr__(m, "_table", table)
    reads = tuple(tape[p] for p in config[1:])
    for target, moves in table.get((config[0], reads), ()):
        yield (target, *(p + d for p, d in zip(config[1:], moves)))


def run_machine(m: Machine, x: str) -> bool:
    """Accept iff the final configuration is reachable from the initial one."""
    for ch in x:
        if ch not in m.sigma:
            raise MachineError(f"symbol {ch!r} not in the alphabet of {m.name}")
    start = (START,) + (0,) * m.k
    goal = (ACCEPT,) + (0,) * m.k
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        if c == goal:
            return True
        for d in successors(m, x, c):
            if d not in seen:
                seen.add(d)
                queue.append(d)
    return False


@dataclass
class ConfigGraph:
    """``graph``: 2-pointed digraph (``s`` initial, ``t`` final);
    ``successor``: its expansion by the lexicographic order of configurations;
    ``configs[i]``: the configuration of vertex ``i``."""

    graph: Structure
    successor: Structure
    configs: list

    def index(self, config: Sequence[int]) -> int:
        return self.configs.index(tuple(config))


def config_graph(m: Machine, x: str) -> ConfigGraph:
    n = len(x)
    configs = configurations(m, n)
    arcs = set()
    for i, c in enumerate(configs):
        for d in successors(m, x, c):
            arcs.add((i, config_index(m, n, d)))
    s = config_index(m, n, (START,) + (0,) * m.k)
    t = config_index(m, n, (ACCEPT,) + (0,) * m.k)
    # loops are kept: a transition may leave the configuration unchanged
    g = digraph(len(configs), arcs, {"s": s, "t": t}, name=f"{m.name}[{x}]", profiles=())
    succ = successor_expansion(g, LinearOrder.identity(len(configs)))
    return ConfigGraph(g, succ, configs)


def is_symmetric(m: Machine, x: str) -> bool:
    """Every step between non-accepting configurations can be reversed.

    Steps into or inside the accepting state are exempt: homing is
    one-way by construction, and entering the accepting state cannot be
    undone in a machine whose accepting state only homes.
    """
    cg = config_graph(m, x)
    arcs = cg.graph.relation("E").as_frozenset()
    for u, v in arcs:
        if cg.configs[u][0] != ACCEPT and cg.configs[v][0] != ACCEPT and (v, u) not in arcs:
            return False
    return True


# --------------------------------------------------------------------------
# the configuration graph as an interpretation in the input string
#
# A configuration is a (2k+1)-tuple of string positions: the state j is
# S^j(min); each head is a pair (a, b) with (min, b) the cell at position b
# and (S(min), min), (S(min), max) the left and right endmarkers.


def _s(t: Term) -> Term:
    return App("S", (t,))


_MIN, _MAX = App("min"), App("max")
_MIN1 = _s(_MIN)


def _state_term(j: int) -> Term:
    t: Term = _MIN
    for _ in range(j):
        t = _s(t)
    return t


def _eq(a: Term, b: Term) -> Formula:
    return Eq(a, b)


def _is_left(a: Term, b: Term) -> Formula:
    return conj([_eq(a, _MIN1), _eq(b, _MIN)])


def _is_right(a: Term, b: Term) -> Formula:
    return conj([_eq(a, _MIN1), _eq(b, _MAX)])


def _reads(a: Term, b: Term, symbol: str) -> Formula:
    if symbol == LEFT_END:
        return _is_left(a, b)
    if symbol == RIGHT_END:
        return _is_right(a, b)
    return conj([_eq(a, _MIN), Rel(char_predicate(symbol), (b,))])


def _move(a, b, a2, b2, symbol: str, d: int) -> Formula:
    """Head at (a, b) reading ``symbol`` moves by ``d`` to (a2, b2)."""
    if d == 0:
        return conj([_eq(a2, a), _eq(b2, b)])
    if symbol == LEFT_END:  # d == +1: first cell
        return conj([_eq(a2, _MIN), _eq(b2, _MIN)])
    if symbol == RIGHT_END:  # d == -1: last cell
        return conj([_eq(a2, _MIN), _eq(b2, _MAX)])
    if d == 1:
        return disj([
            conj([neg(_eq(b, _MAX)), _eq(a2, _MIN), _eq(b2, _s(b))]),
            conj([_eq(b, _MAX), _is_right(a2, b2)]),
        ])
    return disj([
        conj([neg(_eq(b, _MIN)), _eq(a2, _MIN), _eq(_s(b2), b), neg(_eq(b2, b))]),
        conj([_eq(b, _MIN), _is_left(a2, b2)]),
    ])


def _position_domain(a: Term, b: Term) -> Formula:
    return disj([_eq(a, _MIN), _is_left(a, b), _is_right(a, b)])


def _next_position(a: Term, b: Term) -> list[tuple[Formula, tuple]]:
    """Cases for the next position in the order ^ < cells < $."""
    return [
        (_is_left(a, b), (_MIN, _MIN)),
        (conj([_eq(a, _MIN), neg(_eq(b, _MAX))]), (_MIN, _s(b))),
        (conj([_eq(a, _MIN), _eq(b, _MAX)]), (_MIN1, _MAX)),
    ]


def pi_interpretation(m: Machine) -> Interpretation:
    """Configuration graph of ``m`` with its lexicographic successor, read off a string.

    Correct for inputs of length at least ``max(q, 2)``.
    """
    k = m.k
    dim = 2 * k + 1
    target = string_signature(m.sigma)
    source = with_successor(gamma(2))

    def block(prefix: str) -> tuple[str, ...]:
        return (f"{prefix}0",) + tuple(f"{prefix}{c}{i}" for i in range(1, k + 1) for c in "ab")

    def heads(vs: Sequence[str]) -> list[tuple[Var, Var]]:
        return [(Var(vs[2 * i - 1]), Var(vs[2 * i])) for i in range(1, k + 1)]

    dv = block("d")
    state_dom = disj(_eq(Var(dv[0]), _state_term(j)) for j in range(m.q))
    domain = conj([state_dom] + [_position_domain(a, b) for a, b in heads(dv)])

    uv, vv = block("u"), block("v")
    edge_cases = []
    for t in m.transitions:
        parts = [_eq(Var(uv[0]), _state_term(t.state)), _eq(Var(vv[0]), _state_term(t.target))]
        for (a, b), (a2, b2), r, d in zip(heads(uv), heads(vv), t.reads, t.moves):
            parts.append(_reads(a, b, r))
            parts.append(_move(a, b, a2, b2, r, d))
        edge_cases.append(conj(parts))
    edge = disj(edge_cases)

    left = (_MIN1, _MIN)
    right = (_MIN1, _MAX)

    def const(state: Term, pos: tuple) -> Cases:
        return Cases((), [(TRUE, (state,) + pos * k)])

    # successor: radix increment, last head least significant
    cv = block("c")
    ch = heads(cv)
    cases = []
    for i in range(k - 1, -1, -1):
        lower_right = [_is_right(a, b) for a, b in ch[i + 1:]]
        a, b = ch[i]
        for guard, nxt in _next_position(a, b):
            terms = [Var(cv[0])]
            for j, (aj, bj) in enumerate(ch):
                terms += list(nxt) if j == i else ([aj, bj] if j < i else list(left))
            cases.append((conj(lower_right + [guard]), tuple(terms)))
    all_right = [_is_right(a, b) for a, b in ch]
    last_state = _state_term(m.q - 1)
    cases.append((conj(all_right + [neg(_eq(Var(cv[0]), last_state))]),
                  (_s(Var(cv[0])),) + left * k))
    cases.append((TRUE, tuple(Var(v) for v in cv)))

    return Interpretation(
        f"pi[{m.name}]", source, target, dim, (dv, domain),
        {"E": (uv + vv, edge)},
        {
            "s": const(_MIN, left),
            "t": const(_MIN1, left),
            "min": const(_MIN, left),
            "max": const(last_state, right),
            "S": Cases(cv, cases),
        },
        requires=("successor",), produces=("successor",),
    )


def pi_config_of(m: Machine, n: int, element: Sequence[int]) -> tuple:
    """Decode a domain tuple of the interpretation (on a string of length ``n``
    with identity successor) into a configuration."""
    state = element[0]
    out = [state]
    for i in range(m.k):
        a, b = element[1 + 2 * i], element[2 + 2 * i]
        out.append(b + 1 if a == 0 else (0 if b == 0 else n + 1))
    return tuple(out)


# --------------------------------------------------------------------------
# reference machines over {0, 1, #}

SIGMA = ("0", "1", "#")


def _expand(rules: Iterable[tuple], sigma: Sequence[str], k: int) -> list[Transition]:
    """Expand ``*`` in reads; expansions that would leave the tape are dropped."""
    symbols = (LEFT_END, *sigma, RIGHT_END)
    out = []
    for state, reads, target, moves in rules:
        options = [symbols if r == "*" else (r,) for r in reads]
        for combo in itertools.product(*options):
            if any((r == LEFT_END and d == -1) or (r == RIGHT_END and d == 1)
                   for r, d in zip(combo, moves)):
                if any(o == "*" for o in reads):
                    continue
            out.append(Transition(state, tuple(combo), target, tuple(moves)))
    return out


def parity_machine() -> Machine:
    """One head; accepts strings with an even number of ``1``.  State 2 means odd."""
    rules = [(0, ("^",), 0, (1,)), (0, ("1",), 2, (1,)), (2, ("1",), 0, (1,)),
             (0, ("0",), 0, (1,)), (0, ("#",), 0, (1,)),
             (2, ("0",), 2, (1,)), (2, ("#",), 2, (1,)),
             (0, ("$",), ACCEPT, (0,))]
    return Machine(3, 1, SIGMA, tuple(_expand(rules, SIGMA, 1)), name="parity")


def block_count_machine() -> Machine:
    """Two heads; accepts ``y # w`` with ``y`` all ``1`` and as many ``1`` in ``w`` as in ``y``.

    Head 2 first runs to the first ``#``; then head 1 walks ``y`` while
    head 2 finds a matching ``1`` in ``w`` for each of its symbols.
    """
    rules = [
        (0, ("^", "*"), 0, (0, 1)),          # head 2 looks for the first #
        (0, ("^", "#"), 2, (1, 1)),
        (2, ("1", "1"), 2, (1, 1)),          # match one 1 of y with one of w
        (2, ("1", "0"), 2, (0, 1)),
        (2, ("1", "#"), 2, (0, 1)),
        (2, ("#", "0"), 2, (0, 1)),          # y used up: w must have no more 1
        (2, ("#", "#"), 2, (0, 1)),
        (2, ("#", "$"), ACCEPT, (0, 0)),
    ]
    # the wildcard must not swallow the # handled by the second rule
    delta = [t for t in _expand(rules, SIGMA, 2)
             if not (t.state == 0 and t.reads == ("^", "#") and t.moves == (0, 1))]
    return Machine(3, 2, SIGMA, tuple(delta), name="block_count")


def bounce_machine(toggle: str = "#") -> Machine:
    """One head walking freely in states 0 and 2; reading ``toggle`` switches
    between them, and state 2 on ``^`` accepts.  Accepts iff ``toggle`` occurs.

    Every step outside the accepting state is reversible.
    """
    rules = []
    for state in (0, 2):
        rules.append((state, ("*",), state, (1,)))
        rules.append((state, ("*",), state, (-1,)))
    rules.append((0, (toggle,), 2, (0,)))
    rules.append((2, (toggle,), 0, (0,)))
    rules.append((2, ("^",), ACCEPT, (0,)))
    rules = [r for r in rules if all(c in SIGMA or c in ("*", "^", "$") for c in r[1])]
    return Machine(3, 1, SIGMA, tuple(_expand(rules, SIGMA, 1)), name=f"bounce[{toggle}]")


def empty_machine(k: int = 1) -> Machine:
    """No transitions: accepts nothing."""
    return Machine(2, k, SIGMA, (), name="empty")


def reference_machines() -> dict[str, Machine]:
    return {"parity": parity_machine(), "block_count": block_count_machine(),
            "bounce": bounce_machine()}


# --------------------------------------------------------------------------
# text format
#
#   machine q=3 heads=1 sigma=01#
#   delta: (0, ^) -> (0, +1)
#   delta: (0, *) -> (0, -1)      % * ranges over ^, sigma, $ (off-tape moves dropped)

_HEADER = re.compile(r"^machine\s+q=(\d+)\s+heads=(\d+)\s+sigma=(\S+)(?:\s+name=(\S+))?\s*$")
_DELTA = re.compile(r"^delta:\s*\(([^)]*)\)\s*->\s*\(([^)]*)\)\s*$")


def _parse_move(text: str, line: int) -> int:
    text = text.strip()
    table = {"-1": -1, "0": 0, "1": 1, "+1": 1, "L": -1, "S": 0, "R": 1}
    if text not in table:
        raise MachineError(f"line {line}: invalid move {text!r}")
    return table[text]


def parse_machine(text: str, name: Optional[str] = None) -> Machine:
    # '%' starts a comment ('#' is a common tape symbol)
    lines = [(i + 1, raw.split("%", 1)[0]) for i, raw in enumerate(text.splitlines())]
    header = None
    rules = []
    for no, raw in lines:
        line = raw.strip()
        if not line:
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise MachineError(f"line {no}: expected 'machine q=<int> heads=<int> sigma=<chars>'")
            header = (int(m.group(1)), int(m.group(2)), tuple(m.group(3)), m.group(4))
            continue
        m = _DELTA.match(line)
        if not m:
            raise MachineError(f"line {no}: expected 'delta: (state, reads...) -> (state, moves...)'")
        lhs = [p.strip() for p in m.group(1).split(",")]
        rhs = [p.strip() for p in m.group(2).split(",")]
        try:
            state, target = int(lhs[0]), int(rhs[0])
        except ValueError:
            raise MachineError(f"line {no}: states must be integers") from None
        k = header[1]
        if len(lhs) != k + 1 or len(rhs) != k + 1:
            raise MachineError(f"line {no}: need {k} reads and {k} moves")
        rules.append((state, tuple(lhs[1:]), target, tuple(_parse_move(x, no) for x in rhs[1:])))
    if header is None:
        raise MachineError("empty machine file")
    q, k, sigma, hname = header
    return Machine(q, k, sigma, tuple(_expand(rules, sigma, k)), name=name or hname or "machine")


def machine_to_text(m: Machine) -> str:
    lines = [f"machine q={m.q} heads={m.k} sigma={''.join(m.sigma)} name={m.name}"]
    lines += [f"delta: {t}" for t in m.delta]
    return "\n".join(lines) + "\n"
