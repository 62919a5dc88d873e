"""Generators for the graph and structure families used by the tests and selftest."""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterator, Optional

from .interpretations import Cases, Interpretation, default_vars
from .logic.syntax import (
    TRUE, And, App, Eq, Exists, Forall, Formula, Implies, Not, Or, Rel, Var, conj, disj,
)
from .structures import LinearOrder, Signature, Structure, digraph, graph, successor_expansion
from .traversals import distances

__all__ = [
    "all_graphs", "all_digraphs", "random_graph", "random_digraph", "path_graph", "cycle_graph",
    "complete_graph", "figure_tree", "FIGURE_TREE_EDGES", "pointed_digraphs",
    "random_pointed_digraph", "random_three_pointed", "is_equidistance_instance",
    "random_unary_structure", "random_term", "random_formula", "random_sentence",
    "random_interpretation", "random_structure", "RELATIONAL_SIGNATURES", "encoding_length",
    "short_encoding_structures", "signature_name",
]


def all_graphs(n: int) -> Iterator[Structure]:
    """Every labeled graph on ``0..n-1``, by edge-subset bitmask."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1], name=f"g{n}_{mask}")


def all_digraphs(n: int) -> Iterator[Structure]:
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for mask in range(1 << len(pairs)):
        yield digraph(n, [p for i, p in enumerate(pairs) if mask >> i & 1], name=f"d{n}_{mask}")


def pointed_digraphs(n: int) -> Iterator[Structure]:
    """Every digraph on ``n`` vertices with every choice of ``s`` and ``t``, plus identity successor."""
    for d in all_digraphs(n):
        arcs = d.relation("E").as_frozenset()
        for s, t in itertools.product(range(n), repeat=2):
            g = digraph(n, arcs, {"s": s, "t": t}, name=f"{d.name}_s{s}t{t}")
            yield successor_expansion(g, LinearOrder.identity(n))


def random_graph(n: int, p: float, rng: random.Random, name: Optional[str] = None) -> Structure:
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return graph(n, edges, name=name)


def random_digraph(n: int, p: float, rng: random.Random) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n) for b in range(n) if a != b and rng.random() < p]


def random_pointed_digraph(n: int, p: float, rng: random.Random) -> Structure:
    arcs = random_digraph(n, p, rng)
    s, t = rng.randrange(n), rng.randrange(n)
    g = digraph(n, arcs, {"s": s, "t": t}, name=f"rand{n}")
    return successor_expansion(g, LinearOrder.identity(n))


def path_graph(n: int) -> Structure:
    return graph(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def cycle_graph(n: int) -> Structure:
    return graph(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def complete_graph(n: int) -> Structure:
    return graph(n, itertools.combinations(range(n), 2), name=f"K{n}")


# Complete binary tree on 15 vertices in breadth-first numbering; vertex i is v(i+1).
FIGURE_TREE_EDGES = tuple((i, c) for i in range(7) for c in (2 * i + 1, 2 * i + 2))


def figure_tree() -> Structure:
    return graph(15, FIGURE_TREE_EDGES, name="figure-tree")


def is_equidistance_instance(g: Structure) -> bool:
    """``y`` and ``z`` reachable from ``x`` at distances differing by other than one, or ``z`` unreachable."""
    d = distances(g, g.constant("x"))
    dy, dz = d[g.constant("y")], d[g.constant("z")]
    if dy == math.inf or dz == math.inf:
        return True
    return abs(dy - dz) != 1


def random_three_pointed(n: int, p: float, rng: random.Random, distinct_xy: bool = True) -> Structure:
    """A random 3-pointed graph meeting :func:`is_equidistance_instance` (resampled until it does)."""
    while True:
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
        x, y, z = (rng.randrange(n) for _ in range(3))
        if distinct_xy and n > 1 and x == y:
            continue
        g = graph(n, edges, {"x": x, "y": y, "z": z}, name=f"g3_{n}")
        if is_equidistance_instance(g):
            return g


def random_unary_structure(n: int, rng: random.Random, predicate: str = "P") -> Structure:
    members = [(i,) for i in range(n) if rng.random() < 0.5]
    return Structure(Signature({predicate: 1}), n, {predicate: members}, name=f"unary{n}")


# --------------------------------------------------------------------------
# random formulas and interpretations

_RANDOM_SOURCE = Signature({"E": 2, "P": 1}, {"c": 0})
_RANDOM_TARGET = Signature({"E": 2, "P": 1}, {"f": 1, "c": 0})


def random_term(rng: random.Random, signature: Signature, variables: list, depth: int = 1):
    consts = list(signature.constants)
    unary = [f for f, a in signature.functions.items() if a == 1]
    k = rng.random()
    if depth > 0 and unary and k < 0.25:
        return App(rng.choice(unary), (random_term(rng, signature, variables, depth - 1),))
    if variables and (k < 0.75 or not consts):
        return Var(rng.choice(variables))
    return App(rng.choice(consts))


def random_formula(rng: random.Random, signature: Signature, variables: list, depth: int,
                   quantifiers: int = 3) -> Formula:
    """A random formula with free variables among ``variables`` and at most
    ``quantifiers`` nested quantifiers."""
    rels = list(signature.relations.items())
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.25 or not rels:
            return Eq(random_term(rng, signature, variables), random_term(rng, signature, variables))
        r, a = rng.choice(rels)
        return Rel(r, tuple(random_term(rng, signature, variables) for _ in range(a)))
    k = rng.randrange(6 if quantifiers > 0 else 4)
    sub = lambda vs=variables, q=quantifiers: random_formula(rng, signature, vs, depth - 1, q)  # noqa: E731
    if k == 0:
        return Not(sub())
    if k == 1:
        return And((sub(), sub()))
    if k == 2:
        return Or((sub(), sub()))
    if k == 3:
        return Implies(sub(), sub())
    v = rng.choice("uvw")
    body = random_formula(rng, signature, sorted(set(variables) | {v}), depth - 1, quantifiers - 1)
    return (Exists if k == 4 else Forall)(v, body)


def random_sentence(rng: random.Random, signature: Signature, depth: int = 3) -> Formula:
    """A random sentence of quantifier depth at most ``depth``."""
    f = random_formula(rng, signature, [], depth + 1, depth)
    while f.fv:
        f = random_formula(rng, signature, [], depth + 1, depth)
    return f


def random_interpretation(rng: random.Random, dim: Optional[int] = None,
                          source: Signature = _RANDOM_SOURCE,
                          target: Signature = _RANDOM_TARGET) -> Interpretation:
    """A random interpretation of ``source`` in ``target`` whose constants and
    function values always land in the domain."""
    k = dim or rng.choice((1, 1, 2))

    def qf(vs: list) -> Formula:
        return random_formula(rng, target, vs, 2, quantifiers=rng.choice((0, 0, 1)))

    dvars = default_vars(0, k)
    anchor = conj([Eq(Var(v), App("c")) for v in dvars])
    domain = (dvars, disj([qf(list(dvars)), anchor]))
    probe = Interpretation("probe", Signature(), target, k, domain, {})

    relations = {}
    for r, a in source.relations.items():
        vs = tuple(v for i in range(a) for v in default_vars(i, k))
        relations[r] = (vs, qf(list(vs)))
    functions = {}
    for fn, a in source.functions.items():
        args = tuple(v for i in range(a) for v in default_vars(i, k))
        if a == 0:
            functions[fn] = Cases((), [(TRUE, (App("c"),) * k)])
            continue
        terms = tuple(random_term(rng, target, list(args)) for _ in range(k))
        guard = conj([qf(list(args)), probe.domain_at(terms)])
        identity = tuple(Var(v) for v in args[:k])
        functions[fn] = Cases(args, [(guard, terms), (TRUE, identity)])
    return Interpretation(f"random{k}", source, target, k, domain, relations, functions)


def random_structure(rng: random.Random, signature: Signature, n: int) -> Structure:
    rels = {r: [t for t in itertools.product(range(n), repeat=a) if rng.random() < 0.4]
            for r, a in signature.relations.items()}
    funs = {f: {t: rng.randrange(n) for t in itertools.product(range(n), repeat=a)}
            for f, a in signature.functions.items()}
    return Structure(signature, n, rels, funs, name=f"random{n}")


# --------------------------------------------------------------------------
# relational structures with short encodings

RELATIONAL_SIGNATURES = (
    Signature(),
    Signature({"P": 1}),
    Signature({"P": 1, "Q": 1}),
    Signature({"E": 2}),
    Signature({"E": 2, "P": 1}),
    Signature({"R": 3}),
)


def encoding_length(signature: Signature, n: int) -> int:
    return n + sum(1 + n ** a for a in signature.relations.values())


def short_encoding_structures(min_len: int, max_len: int) -> Iterator[Structure]:
    """Every structure over :data:`RELATIONAL_SIGNATURES` whose encoding has
    length in ``[min_len, max_len]``."""
    for sig in RELATIONAL_SIGNATURES:
        n = 1
        while encoding_length(sig, n) <= max_len:
            if encoding_length(sig, n) >= min_len:
                slots = [(r, t) for r, a in sig.relations.items()
                         for t in itertools.product(range(n), repeat=a)]
                for mask in range(1 << len(slots)):
                    rels: dict = {r: [] for r in sig.relations}
                    for i, (r, t) in enumerate(slots):
                        if mask >> i & 1:
                            rels[r].append(t)
                    yield Structure(sig, n, rels, name=f"{signature_name(sig)}_n{n}_{mask}")
            n += 1


def signature_name(sig: Signature) -> str:
    return "".join(sorted(sig.relations)) or "empty"
