"""End-to-end checks of the workbench against independent oracles.

Each suite compares a route through logic (search-order sentences,
interpretations, invariance quantifiers) with a direct computation, and
reports one line.  ``run_selftest`` runs the suites in order.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .families import (
    FIGURE_TREE_EDGES, all_graphs, cycle_graph, figure_tree, pointed_digraphs, random_graph,
    random_interpretation, random_pointed_digraph, random_sentence, random_structure,
    random_three_pointed, short_encoding_structures,
)
from .interpretations import check_fundamental_property, translate_structure
from .invariance import check_invariance, eval_quantified, expansion_orders
from .logic import evaluate
from .machines import (
    bounce_machine, config_graph, pi_config_of, pi_interpretation, reference_machines,
)
from .pipelines import pipeline_L, pipeline_NL
from .reductions import (
    acyclicity_sentence, connectivity_formula, connectivity_sentence, directed_reachable_bft,
    is_bipartite_via_square, is_even_via_parity, psi, rho, rho_distances, tau,
)
from .structures import LinearOrder, order_expansion, string_to_structure, with_constants
from .traversals import (
    canonical_bft, classify_order, deterministic_traversal, is_quasi_level, search_orders,
)

__all__ = ["SuiteResult", "SUITES", "run_selftest"]


@dataclass
class SuiteResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number} {status} {self.name}: {self.detail} ({self.seconds:.1f}s)"


# --------------------------------------------------------------------------
# oracles: plain graph algorithms on edge lists


def _undirected_components(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        parent[find(u)] = find(v)
    return [find(v) for v in range(n)]


def _has_cycle(n: int, edges: list[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            a = parent[a]
        return a

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False


def _two_colorable(n: int, edges: list[tuple[int, int]]) -> bool:
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    color = [-1] * n
    for root in range(n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in nbrs[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def _bfs(n: int, arcs: Iterable[tuple[int, int]], source: int) -> list[float]:
    out: list[list[int]] = [[] for _ in range(n)]
    for u, v in arcs:
        out[u].append(v)
    dist = [math.inf] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in out[u]:
            if dist[v] == math.inf:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def _edges(g) -> list[tuple[int, int]]:
    return sorted((u, v) for u, v in g.relation("E") if u < v)


def _arcs(g) -> list[tuple[int, int]]:
    return sorted(g.relation("E"))


# --------------------------------------------------------------------------
# suites


def suite_search_orders(quick: bool = False) -> tuple[bool, str]:
    """Orders classified by the search-order sentences = orders produced by search."""
    max_n = 4 if quick else 5
    checked = mismatches = 0
    for n in range(1, max_n + 1):
        for g in all_graphs(n):
            found = {k: search_orders(g, k) for k in ("generic", "bfs", "dfs")}
            for order in LinearOrder.all_orders(n):
                c = classify_order(g, order, engine="fo")
                checked += 1
                if (c.traversal, c.bft, c.dft) != tuple(order in found[k] for k in ("generic", "bfs", "dfs")):
                    mismatches += 1
    return mismatches == 0, f"graph-order pairs={checked} (n<={max_n}) mismatches={mismatches}"


def suite_queries(quick: bool = False) -> tuple[bool, str]:
    """Connectivity, acyclicity, bipartiteness and parity through invariant sentences."""
    problems = []
    # the sentence itself on 2-pointed graphs; for n = 5 the same formula
    # with free variables, compiled once per expansion
    conn, conn_free = connectivity_sentence(), connectivity_formula("s", "t")
    max_conn = 4 if quick else 5
    conn_checked = 0
    for n in range(1, max_conn + 1):
        for g in all_graphs(n):
            comp = _undirected_components(n, _edges(g))
            expansions = [order_expansion(g, o) for o in expansion_orders(g, "traversal")]
            for s, t in itertools.product(range(n), repeat=2):
                if n <= 4:
                    values = {evaluate(with_constants(x, s=s, t=t), conn) for x in expansions}
                else:
                    values = {evaluate(x, conn_free, {"s": s, "t": t}) for x in expansions}
                conn_checked += len(expansions)
                if values != {comp[s] == comp[t]}:
                    problems.append(f"connectivity {g.name} s={s} t={t}")

    acyc = acyclicity_sentence()
    max_acyc = 5 if quick else 6
    acyc_checked = 0
    for n in range(1, max_acyc + 1):
        for g in all_graphs(n):
            acyc_checked += 1
            if eval_quantified(g, acyc, "traversal") == _has_cycle(n, _edges(g)):
                problems.append(f"acyclicity {g.name}")
    for n in range(1, 5):  # invariance over every traversal, smaller sizes
        for g in all_graphs(n):
            if not check_invariance(g, acyc, "traversal"):
                problems.append(f"acyclicity not invariant on {g.name}")

    bip_checked = 0
    max_bip = 5 if quick else 6
    for n in range(1, max_bip + 1):
        for g in all_graphs(n):
            bip_checked += 1
            if is_bipartite_via_square(g) != _two_colorable(n, _edges(g)):
                problems.append(f"bipartite {g.name}")

    for n in range(1, 11):
        if is_even_via_parity(n) != (n % 2 == 0):
            problems.append(f"parity n={n}")
    detail = (f"connectivity expansions={conn_checked} (n<={max_conn}), acyclicity graphs={acyc_checked} "
              f"(n<={max_acyc}), bipartite graphs={bip_checked} (n<={max_bip}), parity n=1..10; "
              f"failures={len(problems)}")
    if problems:
        detail += f" first={problems[0]}"
    return not problems, detail


def _simple_path_lengths(g, a: int, b: int) -> set[int]:
    nbrs: list[list[int]] = [[] for _ in range(g.size)]
    for u, v in g.relation("E"):
        nbrs[u].append(v)
    lengths: set[int] = set()
    seen = {a}

    def walk(u: int, d: int) -> None:
        if u == b:
            lengths.add(d)
            return
        for v in nbrs[u]:
            if v not in seen:
                seen.add(v)
                walk(v, d + 1)
                seen.discard(v)

    walk(a, 0)
    return lengths


def suite_layered_reachability(quick: bool = False) -> tuple[bool, str]:
    """Reachability in a digraph = equidistance in its layered graph, and the psi route."""
    failures = []
    exhaustive = 0
    parity_checked = 0
    rho_pi = rho()
    for n in range(1, 4):
        for d in pointed_digraphs(n):
            reach = _bfs(n, _arcs(d), d.constant("s"))[d.constant("t")] < math.inf
            dy, dz = rho_distances(d)
            exhaustive += 1
            if reach != (dy == dz):
                failures.append(f"equidistance {d.name}")
            if not reach and dz < math.inf and abs(dy - dz) < 2:
                failures.append(f"gap {d.name}")
            if directed_reachable_bft(d) != reach:
                failures.append(f"psi route {d.name}")
            if n <= 2 or exhaustive % 7 == 0:
                g = translate_structure(rho_pi, d)
                x, z = g.constant("x"), g.constant("z")
                parity_checked += 1
                if any(length % 2 != (n - 1) % 2 for length in _simple_path_lengths(g, x, z)):
                    failures.append(f"path parity {d.name}")
    rng = random.Random(6)
    randoms = 50 if quick else 200
    for _ in range(randoms):
        d = random_pointed_digraph(rng.randint(1, 5), rng.choice((0.2, 0.35, 0.5)), rng)
        reach = _bfs(d.size, _arcs(d), d.constant("s"))[d.constant("t")] < math.inf
        dy, dz = rho_distances(d)
        if reach != (dy == dz) or (not reach and dz < math.inf and abs(dy - dz) < 2):
            failures.append(f"random {sorted(d.relation('E'))}")
    detail = (f"exhaustive instances={exhaustive} (n<=3), random={randoms} (n<=5), "
              f"path-parity instances={parity_checked}; failures={len(failures)}")
    if failures:
        detail += f" first={failures[0]}"
    return not failures, detail


def suite_psi_invariance(quick: bool = False) -> tuple[bool, str]:
    """psi takes one value under every breadth-first order of a doubled graph, and it is right."""
    rng = random.Random(1)
    sentence, doubling = psi(), tau()
    count = 60 if quick else 200
    failures = orders = 0
    for _ in range(count):
        g = random_three_pointed(rng.randint(2, 4), 0.5, rng)
        dist = _bfs(g.size, _arcs(g), g.constant("x"))
        expected = dist[g.constant("y")] == dist[g.constant("z")] < math.inf
        doubled = translate_structure(doubling, g)
        bfts = expansion_orders(doubled, "bft")
        report = check_invariance(doubled, sentence, "bft", orders=bfts)
        orders += report.checked
        value = evaluate(order_expansion(doubled, bfts[0]), sentence)
        if not report.invariant or value != expected:
            failures += 1
    return failures == 0, f"doubled graphs={count} (n<=8) bft orders={orders} failures={failures}"


def suite_deterministic_orders(quick: bool = False) -> tuple[bool, str]:
    rng = random.Random(5)
    count = 150 if quick else 500
    failures = []
    for i in range(count):
        g = random_graph(rng.randint(1, 8), rng.choice((0.15, 0.3, 0.5)), rng, name=f"r{i}")
        if not classify_order(g, canonical_bft(g), engine="fo").bft:
            failures.append(f"canonical_bft {sorted(_edges(g))}")
        if not classify_order(g, deterministic_traversal(g), engine="fo").traversal:
            failures.append(f"deterministic_traversal {sorted(_edges(g))}")
    c4 = str(canonical_bft(cycle_graph(4)))
    if c4 != "0,1,3,2":
        failures.append(f"C4 gave {c4}")
    detail = f"random graphs={count} (n<=8), C4 -> {c4}; failures={len(failures)}"
    if failures:
        detail += f" first={failures[0]}"
    return not failures, detail


def suite_fundamental_property(quick: bool = False) -> tuple[bool, str]:
    rng = random.Random(3)
    count = 300 if quick else 1000
    failures = 0
    for _ in range(count):
        pi = random_interpretation(rng)
        A = random_structure(rng, pi.target, rng.randint(1, 4))
        if not check_fundamental_property(pi, A, random_sentence(rng, pi.source, 3)).agree:
            failures += 1
    return failures == 0, f"triples={count} (n<=4, quantifier depth<=3) failures={failures}"


def suite_configuration_graphs(quick: bool = False) -> tuple[bool, str]:
    """The interpretation built from a machine reproduces its configuration graph."""
    max_len = 4 if quick else 5
    checked = 0
    failures = []
    for name, m in reference_machines().items():
        pi = pi_interpretation(m)
        for n in range(max(m.q, 2), max_len + 1):
            for chars in itertools.product(m.sigma, repeat=n):
                x = "".join(chars)
                B = translate_structure(pi, string_to_structure(x, alphabet=m.sigma))
                cg = config_graph(m, x)
                checked += 1
                if not _same_configuration_graph(m, n, B, cg):
                    failures.append(f"{name} on {x!r}")
    detail = f"machine-string pairs={checked} (q<=|x|<={max_len}); failures={len(failures)}"
    if failures:
        detail += f" first={failures[0]}"
    return not failures, detail


def _same_configuration_graph(m, n: int, B, cg) -> bool:
    """Isomorphism through the decoding of domain tuples, then checked symbol by symbol."""
    if B.size != cg.graph.size or B.labels is None:
        return False
    iso = [cg.index(pi_config_of(m, n, label)) for label in B.labels]
    if sorted(iso) != list(range(B.size)):
        return False
    if {(iso[a], iso[b]) for a, b in B.relation("E")} != cg.graph.relation("E").as_frozenset():
        return False
    for c in ("s", "t"):
        if iso[B.constant(c)] != cg.graph.constant(c):
            return False
    for c in ("min", "max"):
        if iso[B.constant(c)] != cg.successor.constant(c):
            return False
    return all(iso[B.apply("S", (a,))] == cg.successor.apply("S", (iso[a],)) for a in range(B.size))


def suite_pipelines(quick: bool = False) -> tuple[bool, str]:
    """Machine simulation = logic pipelines, and the verdict ignores the successor chosen."""
    failures = []
    runs = 0
    machines = dict(reference_machines())
    symmetric = {"bounce": machines["bounce"], "bounce0": bounce_machine("0")}
    corpus = {
        "parity": list(short_encoding_structures(3, 7)),
        "block_count": list(short_encoding_structures(3, 5 if quick else 6)),
        "bounce": list(short_encoding_structures(3, 7)),
    }
    per_machine = {}
    for name, m in machines.items():
        structures = corpus[name][: 8 if quick else None]
        per_machine[name] = len(structures)
        for A in structures:
            orders = [LinearOrder.identity(A.size)]
            if A.size > 1:
                orders.append(LinearOrder.from_sequence(list(reversed(range(A.size)))))
            verdicts = set()
            for order in orders:
                nl = pipeline_NL(m, A, order)
                runs += 1
                verdicts.add(nl.verdict)
                if not nl.agrees:
                    failures.append(f"NL {name} {nl.encoding}")
            if len(verdicts) != 1:
                failures.append(f"NL {name} depends on the successor for {A.name}")
    for name, m in symmetric.items():
        structures = corpus["bounce"][: 8 if quick else None]
        per_machine[f"L:{name}"] = len(structures)
        for A in structures:
            orders = [LinearOrder.identity(A.size)]
            if A.size > 1:
                orders.append(LinearOrder.from_sequence(list(reversed(range(A.size)))))
            verdicts = set()
            for order in orders:
                res = pipeline_L(m, A, order)
                runs += 1
                verdicts.add(res.verdict)
                if not res.agrees:
                    failures.append(f"L {name} {res.encoding}")
            if len(verdicts) != 1:
                failures.append(f"L {name} depends on the successor for {A.name}")
    sizes = ", ".join(f"{k}={v}" for k, v in per_machine.items())
    detail = f"structures per machine: {sizes}; pipeline runs={runs}; failures={len(failures)}"
    if failures:
        detail += f" first={failures[0]}"
    return not failures, detail


def suite_figure_tree(quick: bool = False) -> tuple[bool, str]:
    g = figure_tree()
    order = LinearOrder.identity(g.size)
    if not classify_order(g, order).bft:
        return False, "the numbering is not a breadth-first traversal"

    def vs(*labels: int) -> list[int]:
        return [v - 1 for v in labels]

    positives = [vs(2, 3), vs(3, 4, 5), vs(*range(6, 12)), vs(13, 14, 15)]
    negatives = [vs(*range(5, 12)), vs(4, 5, 6)]
    got_pos = [is_quasi_level(g, order, s) for s in positives]
    got_neg = [is_quasi_level(g, order, s) for s in negatives]
    ok = all(got_pos) and not any(got_neg) and len(FIGURE_TREE_EDGES) == 14
    return ok, f"positives {got_pos}, negatives {got_neg}"


SUITES: dict[int, tuple[str, Callable[[bool], tuple[bool, str]]]] = {
    1: ("search-order sentences vs search", suite_search_orders),
    2: ("invariant graph queries", suite_queries),
    3: ("layered reachability", suite_layered_reachability),
    4: ("psi bft-invariance", suite_psi_invariance),
    5: ("deterministic orders", suite_deterministic_orders),
    6: ("fundamental property", suite_fundamental_property),
    7: ("configuration graphs", suite_configuration_graphs),
    8: ("machine pipelines", suite_pipelines),
    9: ("figure quasi-levels", suite_figure_tree),
}


def run_selftest(suites: Optional[Iterable[int]] = None, quick: bool = False,
                 out: Optional[Callable[[str], None]] = print) -> list[SuiteResult]:
    results = []
    for number in (sorted(suites) if suites else sorted(SUITES)):
        name, fn = SUITES[number]
        start = time.perf_counter()
        try:
            passed, detail = fn(quick)
        except Exception as e:  # a crash is a failed suite, reported like one
            passed, detail = False, f"error: {type(e).__name__}: {e}"
        result = SuiteResult(number, name, passed, detail, time.perf_counter() - start)
        results.append(result)
        if out:
            out(result.line())
    return results
