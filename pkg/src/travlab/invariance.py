"""Order-invariance of sentences and the invariance quantifiers.

A sentence over a signature plus an order (or successor) is invariant for
a kind of expansion if its truth value on an expansion of a structure does
not depend on which expansion of that kind was chosen.  For invariant
sentences, :func:`eval_quantified` gives the truth value of the quantified
query ("for some, equivalently every, traversal ...").
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .limits import check_cap
from .logic import EvaluationError, check_formula, evaluate
from .logic.syntax import Formula
from .structures import (
    LinearOrder, Structure, order_expansion, successor_expansion, with_order, with_successor,
)
from .traversals import (
    canonical_bft, classify_order, deterministic_dft, deterministic_traversal, search_orders,
)

__all__ = [
    "KINDS", "InvarianceViolation", "InvarianceReport",
    "expansion_orders", "expand", "enumerate_expansions", "check_invariance", "chosen_order",
    "eval_quantified",
]

KINDS = ("all-orders", "traversal", "bft", "dft", "successor")
_SEARCH = {"traversal": "generic", "bft": "bfs", "dft": "dfs"}


class InvarianceViolation(ValueError):
    pass


@dataclass
class InvarianceReport:
    invariant: bool
    checked: int
    base: Optional[str] = None
    order1: Optional[LinearOrder] = None
    order2: Optional[LinearOrder] = None

    def __bool__(self) -> bool:
        return self.invariant

    def __str__(self) -> str:
        if self.invariant:
            return f"INVARIANT checked={self.checked}"
        return f"VIOLATED base={self.base} order1={self.order1} order2={self.order2}"


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown expansion kind {kind!r}; expected one of {', '.join(KINDS)}")


def expansion_orders(structure: Structure, kind: str, cap: Optional[int] = None,
                     method: str = "search") -> list[LinearOrder]:
    """The orders giving the expansions of ``kind``, sorted.

    For the search kinds, ``method="search"`` enumerates runs of the
    corresponding search and ``method="classify"`` filters all orders by
    the search-order sentences; the two agree.
    """
    _check_kind(kind)
    check_cap(structure.size, cap, "expansion enumeration")
    if kind in _SEARCH:
        if not structure.is_graph:
            raise ValueError(f"{kind} expansions need a structure with graph profile")
        if method == "search":
            return sorted(search_orders(structure, _SEARCH[kind], cap))
        if method != "classify":
            raise ValueError(f"unknown method {method!r}")
        out = []
        for order in LinearOrder.all_orders(structure.size):
            c = classify_order(structure, order, engine="fo")
            if {"traversal": c.traversal, "bft": c.bft, "dft": c.dft}[kind]:
                out.append(order)
        return out
    return list(LinearOrder.all_orders(structure.size))


def expand(structure: Structure, order: LinearOrder, kind: str) -> Structure:
    if kind == "successor":
        return successor_expansion(structure, order)
    return order_expansion(structure, order)


def enumerate_expansions(structure: Structure, kind: str, cap: Optional[int] = None) -> list[Structure]:
    return [expand(structure, o, kind) for o in expansion_orders(structure, kind, cap)]


def _expanded_signature(structure: Structure, kind: str):
    if kind == "successor":
        return with_successor(structure.signature)
    return with_order(structure.signature)


def check_invariance(
    structures: Iterable[Structure] | Structure,
    formula: Formula,
    kind: str,
    cap: Optional[int] = None,
    orders: Optional[Sequence[LinearOrder]] = None,
) -> InvarianceReport:
    """Evaluate ``formula`` on every expansion of each structure.

    Stops at the first structure with two expansions that disagree.
    ``orders`` restricts the expansions to a given list (used when the
    full set is too large to enumerate).
    """
    _check_kind(kind)
    if isinstance(structures, Structure):
        structures = [structures]
    if formula.fv:
        raise EvaluationError(f"expected a sentence, free variables {sorted(formula.fv)}")
    checked = 0
    for i, A in enumerate(structures):
        check_formula(_expanded_signature(A, kind), formula)
        first: Optional[tuple] = None
        for order in (orders if orders is not None else expansion_orders(A, kind, cap)):
            value = evaluate(expand(A, order, kind), formula)
            checked += 1
            if first is None:
                first = (order, value)
            elif value != first[1]:
                base = A.name or str(i)
                return InvarianceReport(False, checked, base, first[0], order)
    return InvarianceReport(True, checked)


def chosen_order(structure: Structure, kind: str) -> LinearOrder:
    """The expansion :func:`eval_quantified` uses for ``kind``."""
    _check_kind(kind)
    if kind == "traversal":
        return deterministic_traversal(structure)
    if kind == "bft":
        return canonical_bft(structure)
    if kind == "dft":
        return deterministic_dft(structure)
    return LinearOrder.identity(structure.size)


def eval_quantified(
    structure: Structure,
    formula: Formula,
    kind: str,
    verify: bool = False,
    cap: Optional[int] = None,
) -> bool:
    """Truth of ``formula`` on one deterministically chosen expansion.

    With ``verify``, first checks that all expansions agree and raises
    :class:`InvarianceViolation` otherwise.
    """
    _check_kind(kind)
    if kind in _SEARCH and not structure.is_graph:
        raise ValueError(f"{kind} expansions need a structure with graph profile")
    if kind == "successor" and structure.size == 0:
        raise ValueError("the empty structure has no successor expansion")
    if verify:
        report = check_invariance([structure], formula, kind, cap)
        if not report.invariant:
            raise InvarianceViolation(str(report))
    check_formula(_expanded_signature(structure, kind), formula)
    return evaluate(expand(structure, chosen_order(structure, kind), kind), formula)
