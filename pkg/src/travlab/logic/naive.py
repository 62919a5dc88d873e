"""Reference evaluator: direct recursion, every quantifier over the whole domain.

Deliberately shares nothing with ``evaluate.py`` beyond the AST classes,
so the two can be cross-checked on random formulas.
"""

from __future__ import annotations

from typing import Mapping

from ..structures import Structure
from .syntax import And, App, Bottom, Eq, Exists, Forall, Formula, Implies, Not, Or, Rel, Top, Var


def naive_term(A: Structure, t, env: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        return env[t.name]
    assert isinstance(t, App)
    args = tuple(naive_term(A, a, env) for a in t.args)
    return A.function(t.fn)[args]


def naive_evaluate(A: Structure, f: Formula, env: Mapping[str, int] | None = None) -> bool:
    env = dict(env or {})
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Rel):
        return tuple(naive_term(A, a, env) for a in f.args) in A.relation(f.name).as_frozenset()
    if isinstance(f, Eq):
        return naive_term(A, f.left, env) == naive_term(A, f.right, env)
    if isinstance(f, Not):
        return not naive_evaluate(A, f.body, env)
    if isinstance(f, And):
        return all(naive_evaluate(A, g, env) for g in f.items)
    if isinstance(f, Or):
        return any(naive_evaluate(A, g, env) for g in f.items)
    if isinstance(f, Implies):
        return (not naive_evaluate(A, f.left, env)) or naive_evaluate(A, f.right, env)
    if isinstance(f, (Exists, Forall)):
        results = []
        for a in range(A.size):
            inner = dict(env)
            inner[f.var] = a
            results.append(naive_evaluate(A, f.body, inner))
        return any(results) if isinstance(f, Exists) else all(results)
    raise TypeError(f)
