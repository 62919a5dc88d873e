"""Enumerate all assignments to a tuple of variables that satisfy a formula.

Used when translating a structure through an interpretation, where the
relation ``E^pi`` is the solution set of a formula in ``2k`` variables.
Variables are bound one at a time; each is drawn from the values admitted
by a guard literal when one applies, and every conjunct whose variables
are all bound is checked as soon as possible.  A conjunct that is a
large disjunction is split into branches solved one by one, so that each
case can use its own guards.
"""

from __future__ import annotations

from typing import Iterator, Mapping, Optional, Sequence

from ..structures import Structure
from .evaluate import EvaluationError, _compile, _literal_gen, check_formula
from .syntax import Formula, Or, conjuncts, nnf

__all__ = ["solutions", "count_solutions"]

_BRANCH_BUDGET = 256
_MIN_WIDTH = 4


def _branches(parts: list[Formula], budget: int, min_width: int = 2) -> list[list[Formula]]:
    """Distribute the widest disjunctive conjunct while the budget allows.

    Below the first split only wide disjunctions are distributed: narrow
    ones are served well enough by union guards.
    """
    ors = [i for i, p in enumerate(parts) if isinstance(p, Or)]
    if not ors:
        return [parts]
    i = max(ors, key=lambda j: len(parts[j].items))
    width = len(parts[i].items)
    if width > budget or width < min_width:
        return [parts]
    rest = parts[:i] + parts[i + 1:]
    out = []
    for d in parts[i].items:
        out.extend(_branches(rest + conjuncts(d), budget // width, _MIN_WIDTH))
    return out


def _plan(A: Structure, parts: list[Formula], variables: Sequence[str], given: frozenset):
    bound = set(given)
    remaining = list(variables)
    used = [False] * len(parts)
    steps = []
    # conjuncts already decided by the given variables alone
    pre = [i for i, p in enumerate(parts) if p.fv <= bound]
    for i in pre:
        used[i] = True
    while remaining:
        best = None
        for x in remaining:
            for p in parts:
                if not p.fv <= bound | {x}:
                    continue
                found = _literal_gen(p, x, A)
                if found is None:
                    continue
                key = found[0] if isinstance(found[0], tuple) else (found[0],)
                if best is None or key < best[0]:
                    best = (key, x, found[1])
        if best is None:
            x, gen = remaining[0], None
        else:
            _, x, gen = best
        remaining.remove(x)
        bound.add(x)
        checks = []
        for i, p in enumerate(parts):
            if not used[i] and p.fv <= bound:
                used[i] = True
                checks.append(_compile(p, A))
        steps.append((x, gen, checks))
    return [_compile(parts[i], A) for i in pre], steps


def solutions(
    structure: Structure,
    formula: Formula,
    variables: Sequence[str],
    fixed: Optional[Mapping[str, int]] = None,
) -> Iterator[tuple[int, ...]]:
    """Yield each tuple of values for ``variables`` satisfying ``formula``.

    Free variables outside ``variables`` must be given in ``fixed``.
    Each solution is yielded once, in no particular order.
    """
    fixed = dict(fixed or {})
    variables = tuple(variables)
    if len(set(variables)) != len(variables):
        raise EvaluationError("solution variables must be distinct")
    missing = formula.fv - set(variables) - set(fixed)
    if missing:
        raise EvaluationError(f"unbound free variables: {sorted(missing)}")
    check_formula(structure, formula)
    plans = structure.cached(
        ("plan", formula, variables, frozenset(fixed)),
        lambda: [_plan(structure, b, variables, frozenset(fixed))
                 for b in _branches(conjuncts(nnf(formula)), _BRANCH_BUDGET)],
    )
    domain = range(structure.size)
    seen: set = set()
    env = dict(fixed)
    for pre, steps in plans:
        if all(c(env) for c in pre):
            yield from _run(steps, variables, env, domain, seen)


def _run(steps, variables, env, domain, seen) -> Iterator[tuple[int, ...]]:
    depth = len(steps)

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == depth:
            sol = tuple(env[v] for v in variables)
            if sol not in seen:
                seen.add(sol)
                yield sol
            return
        x, gen, checks = steps[i]
        for value in (domain if gen is None else gen(env)):
            env[x] = value
            if all(c(env) for c in checks):
                yield from rec(i + 1)
        env.pop(x, None)

    yield from rec(0)


def count_solutions(structure: Structure, formula: Formula, variables: Sequence[str]) -> int:
    return sum(1 for _ in solutions(structure, formula, variables))
