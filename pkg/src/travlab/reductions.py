"""Concrete queries and interpretations built on the search-order sentences.

* graph queries that are invariant under traversal orders: connectivity of
  two constants, connectedness, acyclicity, bipartiteness (through the
  square of the graph) and parity of a linear order;
* ``rho``, turning a directed graph with successor into an undirected
  3-pointed graph in which ``t`` is reachable from ``s`` iff ``y`` and
  ``z`` are equidistant from ``x``;
* ``tau``, doubling a 3-pointed graph, and the sentence ``psi`` which on
  the result decides that equidistance under any breadth-first order.
"""

from __future__ import annotations

from typing import Optional

from .interpretations import Cases, Interpretation, translate_structure
from .invariance import eval_quantified
from .logic import evaluate, parse_formula
from .logic.syntax import TRUE, App, Formula, Var, substitute
from .structures import (
    LinearOrder, Signature, Structure, gamma, order_expansion, with_constants, with_order,
    with_successor,
)
from .traversals import SAME_QUASI_LEVEL, adjacency, canonical_bft, distances

__all__ = [
    "connectivity_sentence", "connectivity_formula", "connectedness_sentence", "acyclicity_sentence",
    "square_interpretation", "is_bipartite_via_square", "parity_interpretation",
    "is_even_via_parity", "linear_order_structure", "rho", "tau", "psi",
    "rho_distances", "directed_reachable_bft", "GRAPH", "LINEAR_ORDER",
]

GRAPH = Signature({"E": 2})
LINEAR_ORDER = Signature({"<": 2})


def _conn(a: str, b: str) -> str:
    # no vertex without an earlier neighbor in the interval (a, b]
    return (f"!exists w (({a} < w & w <= {b} | {b} < w & w <= {a}) "
            f"& !exists q (q < w & E(q, w)))")


def connectivity_sentence(s: str = "s", t: str = "t") -> Formula:
    """Under a traversal order: ``s`` and ``t`` lie in the same component."""
    sig = with_order(Signature({"E": 2}, {s: 0, t: 0}))
    return parse_formula(_conn(s, t), sig)


def connectivity_formula(a: str = "a", b: str = "b") -> Formula:
    """:func:`connectivity_sentence` with free variables in place of the constants."""
    return parse_formula(_conn(a, b), with_order(GRAPH))


def connectedness_sentence() -> Formula:
    """Under a traversal order: at most one vertex lacks an earlier neighbor."""
    text = ("!exists a exists b (a != b & !exists q (q < a & E(q, a)) "
            "& !exists q (q < b & E(q, b)))")
    return parse_formula(text, with_order(GRAPH))


def acyclicity_sentence() -> Formula:
    """Under a traversal order: no vertex has two earlier neighbors."""
    text = "!exists w exists a exists b (a < w & b < w & a != b & E(a, w) & E(b, w))"
    return parse_formula(text, with_order(GRAPH))


def square_interpretation() -> Interpretation:
    """``E^2(x, y)``: a path of length exactly two joins distinct ``x`` and ``y``."""
    f = parse_formula("exists z (E(x, z) & E(z, y) & x != y)", GRAPH)
    return Interpretation("square", GRAPH, GRAPH, 1, (("x",), TRUE), {"E": (("x", "y"), f)},
                          produces=("graph",))


def is_bipartite_via_square(graph: Structure) -> bool:
    """Bipartite iff no edge ``uv`` has ``u`` and ``v`` connected in the square.

    Connectivity in the square is the traversal-invariant query
    :func:`connectivity_sentence`, evaluated under a traversal of the
    square.
    """
    square = translate_structure(square_interpretation(), graph)
    conn = connectivity_sentence()
    for u, nb in enumerate(adjacency(graph)):
        for v in nb:
            if u < v and eval_quantified(with_constants(square, s=u, t=v), conn, "traversal"):
                return False
    return True


def parity_interpretation() -> Interpretation:
    """On a linear order of size ``n``: join ``u`` and ``v`` when ``v = u +- 2 (mod n)``.

    The result is connected iff ``n`` is odd.
    """
    def step(a: str, b: str) -> str:
        # b follows a cyclically: immediate successor, or a last and b first
        return (f"({a} < {b} & !exists m ({a} < m & m < {b}) "
                f"| !exists m {a} < m & !exists m m < {b})")

    text = (f"x != y & (exists c ({step('x', 'c')} & {step('c', 'y')}) "
            f"| exists c ({step('y', 'c')} & {step('c', 'x')}))")
    f = parse_formula(text, LINEAR_ORDER)
    return Interpretation("parity", GRAPH, LINEAR_ORDER, 1, (("x",), TRUE),
                          {"E": (("x", "y"), f)}, produces=("graph",))


def linear_order_structure(n: int) -> Structure:
    return order_expansion(Structure(Signature(), n), LinearOrder.identity(n))


def is_even_via_parity(n: int) -> bool:
    """Parity of ``n`` as disconnectedness of the +-2 graph (``n >= 1``)."""
    if n < 1:
        raise ValueError("parity is defined here for nonempty orders")
    g = translate_structure(parity_interpretation(), linear_order_structure(n))
    return not eval_quantified(g, connectedness_sentence(), "traversal")


# --------------------------------------------------------------------------
# directed reachability


def rho() -> Interpretation:
    """Layered copy of a directed graph with successor.

    Elements are pairs ``(u, a)``: vertex ``u`` at layer ``a``.  An edge
    joins layer ``a`` to layer ``S(a)`` (``a`` not last) when it follows an
    arc of the input or stays at the same vertex.  ``x = (s, min)``,
    ``y = (s, max)``, ``z = (t, max)``.
    """
    target = with_successor(gamma(2))
    e = parse_formula(
        "S(a) = b & a != max & (E(u, v) | u = v) | S(b) = a & b != max & (E(v, u) | u = v)",
        target)

    def const(p: str, q: str) -> Cases:
        return Cases((), [(TRUE, (App(p), App(q)))])

    return Interpretation(
        "rho", gamma(3), target, 2, (("u", "a"), TRUE), {"E": (("u", "a", "v", "b"), e)},
        {"x": const("s", "min"), "y": const("s", "max"), "z": const("t", "max")},
        requires=("successor",), produces=("graph",),
    )


def tau() -> Interpretation:
    """Two copies of a 3-pointed graph joined by one edge between the copies of ``x``.

    Pair ``(u, x)`` is ``u`` in the first copy, ``(u, y)`` in the second.
    """
    source = gamma(6)
    target = gamma(3)
    e = parse_formula("v1 = v2 & E(u1, u2) | u1 = x & u2 = x & v1 != v2", target)
    dom = parse_formula("v = x | v = y", target)

    def const(p: str, q: str) -> Cases:
        return Cases((), [(TRUE, (App(p), App(q)))])

    consts = {f"{c}{i}": const(c, copy) for i, copy in ((1, "x"), (2, "y")) for c in "xyz"}
    return Interpretation("tau", source, target, 2, (("u", "v"), dom),
                          {"E": (("u1", "v1", "u2", "v2"), e)}, consts, produces=("graph",))


def _same_q(v: str, w: str) -> str:
    return f"({substitute(SAME_QUASI_LEVEL, {'v': Var(v), 'w': Var(w)})})"


def psi() -> Formula:
    """Over a doubled graph with a breadth-first order: ``y`` and ``z`` are equidistant from ``x``.

    All six constants share a component, and in the copy whose ``x`` comes
    second, ``y`` and ``z`` share a quasi-level.
    """
    sig = with_order(gamma(6))
    parts = [_conn("x1", c) for c in ("y1", "z1", "x2", "y2", "z2")]
    parts.append("(x1 < x2 -> " + _same_q("y2", "z2") + ")")
    parts.append("(x2 < x1 -> " + _same_q("y1", "z1") + ")")
    return parse_formula(" & ".join(parts), sig)


def rho_distances(digraph: Structure) -> tuple[float, float]:
    """``(d(x, y), d(x, z))`` in the image under :func:`rho`."""
    g = translate_structure(rho(), digraph)
    d = distances(g, g.constant("x"))
    return d[g.constant("y")], d[g.constant("z")]


def directed_reachable_bft(digraph: Structure, order: Optional[LinearOrder] = None) -> bool:
    """Reachability of ``t`` from ``s`` decided by ``psi`` on the doubled layered graph.

    The doubled graph is expanded by its canonical breadth-first order
    (induced by ``order``, default the element numbering).
    """
    g3 = translate_structure(rho(), digraph)
    g6 = translate_structure(tau(), g3)
    bft = canonical_bft(g6, order)
    return evaluate(order_expansion(g6, bft), psi())
