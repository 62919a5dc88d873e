"""Search orders on graphs.

An order of the vertices of a graph is a *traversal* if some run of
generic graph search visits the vertices in that order, a *BFT* if some
run of breadth-first search does, and a *DFT* likewise for depth-first
search.  Each of the three is defined by a first-order sentence over
``E`` and ``<``; :func:`classify_order` evaluates those sentences, and
:func:`search_orders` enumerates the runs of the searches themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from . import kernels
from .limits import check_cap
from .logic import evaluate, parse_formula
from .logic.syntax import Formula
from .structures import LinearOrder, Signature, Structure, StructureError, order_expansion

__all__ = [
    "TRAVERSAL_SENTENCE", "BFT_SENTENCE", "DFT_SENTENCE", "SAME_QUASI_LEVEL",
    "OrderedGraph", "OrderClass", "QuasiLevel",
    "adjacency", "csr", "components", "classify_order", "search_orders",
    "least_prior_neighbor", "quasi_level", "quasi_levels", "is_quasi_level",
    "same_quasi_level", "canonical_bft", "deterministic_traversal", "deterministic_dft", "distance",
    "distances",
]

_SIG = Signature({"E": 2, "<": 2})

_TRAVERSAL = "forall u forall v forall w (u < v & v < w & E(u, w) -> exists x (x < v & E(x, v)))"
_BFT = "forall u forall v forall w (u < v & v < w & E(u, w) -> exists x (x <= u & E(x, v)))"
_DFT = ("forall u forall v forall w (u < v & v < w & E(u, w) -> "
        "exists x (u <= x & x < v & E(x, v)))")

#: every vertex between the endpoints of an edge has an earlier neighbor
TRAVERSAL_SENTENCE: Formula = parse_formula(_TRAVERSAL, _SIG)
#: ... one no later than the edge's first endpoint
BFT_SENTENCE: Formula = parse_formula(_BFT, _SIG)
#: ... one no earlier than the edge's first endpoint
DFT_SENTENCE: Formula = parse_formula(_DFT, _SIG)

# p(w) < v <= w, with p(w) the least neighbor of w when it precedes w
_P_BEFORE = ("exists p (E(p, {w}) & p < {w} & !exists q (E(q, {w}) & q < p) "
             "& p < {v} & {v} <= {w})")
#: free variables v, w
SAME_QUASI_LEVEL: Formula = parse_formula(
    "v = w | " + _P_BEFORE.format(v="v", w="w") + " | " + _P_BEFORE.format(v="w", w="v"), _SIG)


class OrderedGraph(NamedTuple):
    graph: Structure
    order: LinearOrder


@dataclass(frozen=True)
class OrderClass:
    traversal: bool
    bft: bool
    dft: bool

    @property
    def kind(self) -> str:
        return "traversal" if self.traversal else "none"

    def __str__(self) -> str:
        yn = {True: "yes", False: "no"}
        return f"traversal={yn[self.traversal]} bft={yn[self.bft]} dft={yn[self.dft]}"


@dataclass(frozen=True)
class QuasiLevel:
    """The interval ``{w : p(w) < v <= w}`` for ``v = first``."""

    first: int
    last: int
    members: tuple

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


# --------------------------------------------------------------------------
# graph plumbing


def _check_graph(graph: Structure) -> None:
    if graph.signature.relations.get("E") != 2:
        raise StructureError("expected a structure with a binary edge relation E")


def adjacency(graph: Structure) -> tuple:
    """Neighbor tuples (edges read in both directions, loops dropped)."""
    _check_graph(graph)

    def build():
        nbrs: list[set] = [set() for _ in range(graph.size)]
        for u, v in graph.relation("E"):
            if u != v:
                nbrs[u].add(v)
                nbrs[v].add(u)
        return tuple(tuple(sorted(s)) for s in nbrs)

    return graph.cached("adjacency", build)


def csr(graph: Structure) -> tuple[list, list]:
    """``(indptr, indices)`` of :func:`adjacency` for the kernels."""

    def build():
        indptr, indices = [0], []
        for nb in adjacency(graph):
            indices.extend(nb)
            indptr.append(len(indices))
        return indptr, indices

    return graph.cached("csr", build)


def components(graph: Structure) -> list[list[int]]:
    """Connected components, each sorted, listed by least element."""
    nbrs = adjacency(graph)
    seen = [False] * graph.size
    out = []
    for root in range(graph.size):
        if seen[root]:
            continue
        seen[root] = True
        comp, stack = [], [root]
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in nbrs[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _order(graph: Structure, order: Optional[LinearOrder]) -> LinearOrder:
    if order is None:
        return LinearOrder.identity(graph.size)
    if len(order) != graph.size:
        raise StructureError(f"order has {len(order)} elements, graph has {graph.size}")
    return order


# --------------------------------------------------------------------------
# classification


def classify_order(graph: Structure, order: LinearOrder, engine: str = "fo") -> OrderClass:
    """Which of the three search-order sentences ``(graph, order)`` satisfies.

    ``engine="fo"`` evaluates the sentences; ``engine="kernel"`` uses the
    direct combinatorial check in :mod:`travlab.kernels`.
    """
    order = _order(graph, order)
    if engine == "fo":
        _check_graph(graph)
        A = order_expansion(graph, order)
        return OrderClass(
            evaluate(A, TRAVERSAL_SENTENCE),
            evaluate(A, BFT_SENTENCE),
            evaluate(A, DFT_SENTENCE),
        )
    if engine == "kernel":
        indptr, indices = csr(graph)
        flags = kernels.order_flags(indptr, indices, list(order.sequence))
        return OrderClass(bool(flags & kernels.TRAVERSAL), bool(flags & kernels.BFT),
                          bool(flags & kernels.DFT))
    raise ValueError(f"unknown engine {engine!r}")


# --------------------------------------------------------------------------
# enumeration of search runs


def _choices(kind: str, nbrs: tuple, seq: list, pos: list, n: int) -> Iterable[int]:
    unvisited = [v for v in range(n) if pos[v] < 0]
    if kind == "generic":
        boundary = [v for v in unvisited if any(pos[w] >= 0 for w in nbrs[v])]
        return boundary or unvisited
    if kind == "bfs":
        # the queue front: vertices discovered by the earliest visited vertex
        best, out = None, []
        for v in unvisited:
            firsts = [pos[w] for w in nbrs[v] if pos[w] >= 0]
            if not firsts:
                continue
            key = min(firsts)
            if best is None or key < best:
                best, out = key, [v]
            elif key == best:
                out.append(v)
        return out or unvisited
    if kind == "dfs":
        # the stack top: vertices adjacent to the latest visited vertex
        for u in reversed(seq):
            out = [v for v in nbrs[u] if pos[v] < 0]
            if out:
                return out
        return unvisited
    raise ValueError(f"unknown search kind {kind!r}")


def search_orders(graph: Structure, kind: str = "generic", cap: Optional[int] = None) -> frozenset:
    """Every visit order some run of the named search can produce.

    Branches over every choice the search leaves open: which boundary
    vertex to visit (generic), ties among vertices discovered by the same
    vertex (bfs), which unvisited neighbor of the deepest vertex with one
    (dfs), and the restart vertex when a component is exhausted.
    """
    if kind not in ("generic", "bfs", "dfs"):
        raise ValueError(f"unknown search kind {kind!r}")
    check_cap(graph.size, cap, "search enumeration")
    nbrs = adjacency(graph)
    n = graph.size
    seq: list[int] = []
    pos = [-1] * n
    out = set()

    def run() -> None:
        if len(seq) == n:
            out.add(LinearOrder.from_sequence(seq))
            return
        for v in _choices(kind, nbrs, seq, pos, n):
            pos[v] = len(seq)
            seq.append(v)
            run()
            seq.pop()
            pos[v] = -1

    run()
    return frozenset(out)


# --------------------------------------------------------------------------
# quasi-levels


def _require_bft(graph: Structure, order: LinearOrder) -> None:
    if not classify_order(graph, order, engine="kernel").bft:
        raise ValueError("the order is not a breadth-first traversal")


def least_prior_neighbor(graph: Structure, order: LinearOrder, w: int) -> Optional[int]:
    """``p(w)``: the least neighbor of ``w`` if it precedes ``w``, else ``None``."""
    nb = adjacency(graph)[w]
    if not nb:
        return None
    p = min(nb, key=order.ranks.__getitem__)
    return p if order.less(p, w) else None


def quasi_level(graph: Structure, order: LinearOrder, v: int) -> tuple[int, ...]:
    """``I_v = {w : p(w) < v <= w}`` listed in order."""
    r = order.ranks
    out = []
    for w in order.sequence[r[v]:]:
        p = least_prior_neighbor(graph, order, w)
        if p is not None and r[p] < r[v]:
            out.append(w)
    return tuple(out)


def quasi_levels(graph: Structure, order: LinearOrder) -> list[QuasiLevel]:
    """All nonempty sets ``I_v`` (for a BFT these are intervals), by first element."""
    _require_bft(graph, order)
    out, seen = [], set()
    for v in order.sequence:
        members = quasi_level(graph, order, v)
        if members and members not in seen:
            seen.add(members)
            out.append(QuasiLevel(members[0], members[-1], members))
    return out


def is_quasi_level(graph: Structure, order: LinearOrder, members: Iterable[int]) -> bool:
    members = set(members)
    if not members:
        return False
    first = min(members, key=order.ranks.__getitem__)
    return set(quasi_level(graph, order, first)) == members


def same_quasi_level(graph: Structure, order: LinearOrder, v: int, w: int) -> bool:
    """Evaluate the same-quasi-level formula at ``(v, w)``."""
    _require_bft(graph, order)
    A = order_expansion(graph, order)
    return evaluate(A, SAME_QUASI_LEVEL, {"v": v, "w": w})


# --------------------------------------------------------------------------
# canonical orders and distances


def canonical_bft(graph: Structure, order: Optional[LinearOrder] = None) -> LinearOrder:
    """The canonical breadth-first traversal induced by ``order``.

    Components come in the order of their least vertices; inside a
    component, vertices are sorted by their least shortest path from the
    component's least vertex (paths compared by length, then
    lexicographically under ``order``).  This is breadth-first search
    that scans neighbors in ``order``.
    """
    order = _order(graph, order)
    indptr, indices = csr(graph)
    return LinearOrder.from_sequence(kernels.canonical_bft(indptr, indices, list(order.sequence)))


def deterministic_traversal(graph: Structure, order: Optional[LinearOrder] = None) -> LinearOrder:
    """A traversal computed deterministically from ``order``.

    Explores from the least unvisited vertex with a FIFO queue, visiting
    neighbors in ``order``.
    """
    order = _order(graph, order)
    nbrs = adjacency(graph)
    r = order.ranks
    visited = [False] * graph.size
    out: list[int] = []
    for root in order.sequence:
        if visited[root]:
            continue
        visited[root] = True
        frontier = [root]
        while frontier:
            out.extend(frontier)
            nxt = []
            for v in frontier:
                for w in sorted(nbrs[v], key=r.__getitem__):
                    if not visited[w]:
                        visited[w] = True
                        nxt.append(w)
            frontier = nxt
    return LinearOrder.from_sequence(out)


def deterministic_dft(graph: Structure, order: Optional[LinearOrder] = None) -> LinearOrder:
    """Depth-first search from the least unvisited vertex, neighbors in ``order``."""
    order = _order(graph, order)
    nbrs = adjacency(graph)
    r = order.ranks
    visited = [False] * graph.size
    out: list[int] = []
    for root in order.sequence:
        if visited[root]:
            continue
        visited[root] = True
        out.append(root)
        stack = [iter(sorted(nbrs[root], key=r.__getitem__))]
        while stack:
            for w in stack[-1]:
                if not visited[w]:
                    visited[w] = True
                    out.append(w)
                    stack.append(iter(sorted(nbrs[w], key=r.__getitem__)))
                    break
            else:
                stack.pop()
    return LinearOrder.from_sequence(out)


def distances(graph: Structure, source: int) -> list:
    """Distances from ``source`` (``math.inf`` if unreachable)."""
    indptr, indices = csr(graph)
    return [math.inf if d < 0 else d for d in kernels.bfs_distances(indptr, indices, source)]


def distance(graph: Structure, u: int, v: int) -> float:
    """Shortest-path edge count from ``u`` to ``v``; ``math.inf`` if none."""
    for x in (u, v):
        if not 0 <= x < graph.size:
            raise StructureError(f"vertex {x} outside the domain")
    return distances(graph, u)[v]
