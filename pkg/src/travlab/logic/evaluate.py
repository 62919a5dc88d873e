"""Tarskian evaluation of formulas over finite structures.

Formulas are compiled once per structure into nested closures over a
mutable environment dict.  Quantifiers range over the whole domain, except
that a quantified variable pinned down by a positive literal of its body
(``x = t``, ``f(x) = t``, ``R(.., x, ..)``) is drawn only from the values
that literal admits.  Values outside that set falsify the body (for
``exists``) or satisfy it (for ``forall``, via its negation), so the answer
is that of full expansion.  ``naive.py`` is a plain recursive evaluator kept
as an independent cross-check.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Optional

from ..structures import Structure
from .syntax import (
    And, App, Bottom, Eq, Exists, Forall, Formula, Implies, Not, Or, Rel, Term, Top, Var,
    conjuncts, nnf,
)

__all__ = ["EvaluationError", "check_formula", "compile_formula", "evaluate", "eval_term"]

Env = dict
Test = Callable[[Env], bool]
Gen = Callable[[Env], Iterable[int]]


class EvaluationError(ValueError):
    pass


def _check_term(t: Term, sig, where: str) -> None:
    if isinstance(t, App):
        if not sig.is_function(t.fn):
            raise EvaluationError(f"function symbol {t.fn!r} not in signature{where}")
        if sig.arity(t.fn) != len(t.args):
            raise EvaluationError(
                f"{t.fn!r} has arity {sig.arity(t.fn)}, used with {len(t.args)}{where}")
        for a in t.args:
            _check_term(a, sig, where)


def check_formula(structure_or_sig, formula: Formula) -> None:
    """Raise :class:`EvaluationError` if a symbol is missing or misused."""
    sig = getattr(structure_or_sig, "signature", structure_or_sig)
    stack = [formula]
    while stack:
        f = stack.pop()
        if isinstance(f, Rel):
            if not sig.is_relation(f.name):
                raise EvaluationError(f"relation symbol {f.name!r} not in signature")
            if sig.arity(f.name) != len(f.args):
                raise EvaluationError(
                    f"{f.name!r} has arity {sig.arity(f.name)}, used with {len(f.args)}")
            for a in f.args:
                _check_term(a, sig, "")
        elif isinstance(f, Eq):
            _check_term(f.left, sig, "")
            _check_term(f.right, sig, "")
        elif isinstance(f, (Not, Exists, Forall)):
            stack.append(f.body)
        elif isinstance(f, (And, Or)):
            stack.extend(f.items)
        elif isinstance(f, Implies):
            stack.extend((f.left, f.right))


# --------------------------------------------------------------------------
# terms


def _compile_term(t: Term, A: Structure) -> Callable[[Env], int]:
    if isinstance(t, Var):
        name = t.name
        return lambda env: env[name]
    if not t.args:
        c = A.constant(t.fn)
        return lambda env: c
    table = A.function(t.fn)
    if len(t.args) == 1:
        if isinstance(t.args[0], Var):
            name = t.args[0].name
            return lambda env: table[(env[name],)]
        inner = _compile_term(t.args[0], A)
        return lambda env: table[(inner(env),)]
    parts = [_compile_term(a, A) for a in t.args]
    return lambda env: table[tuple(p(env) for p in parts)]


def eval_term(structure: Structure, term: Term, valuation: Optional[Mapping[str, int]] = None) -> int:
    missing = term.fv - set(valuation or {})
    if missing:
        raise EvaluationError(f"unbound variables: {sorted(missing)}")
    _check_term(term, structure.signature, "")
    return _compile_term(term, structure)(dict(valuation or {}))


# --------------------------------------------------------------------------
# candidate generators for quantified variables


def _is_var(t: Term, x: str) -> bool:
    return isinstance(t, Var) and t.name == x


def _literal_gen(lit: Formula, x: str, A: Structure) -> Optional[tuple[int, Gen]]:
    """A (priority, generator) pair if ``lit`` restricts ``x``; lower is better."""
    if isinstance(lit, Eq):
        for a, b in ((lit.left, lit.right), (lit.right, lit.left)):
            if _is_var(a, x) and x not in b.fv:
                tb = _compile_term(b, A)
                return 0, lambda env: (tb(env),)
        for a, b in ((lit.left, lit.right), (lit.right, lit.left)):
            if (isinstance(a, App) and x not in b.fv and a.args
                    and sum(x in arg.fv for arg in a.args) == 1):
                pos = next(i for i, arg in enumerate(a.args) if x in arg.fv)
                if not _is_var(a.args[pos], x):
                    continue
                others = [None if i == pos else _compile_term(arg, A)
                          for i, arg in enumerate(a.args)]
                tb = _compile_term(b, A)
                fn = a.fn

                def gen(env, fn=fn, pos=pos, others=others, tb=tb):
                    args = tuple(0 if o is None else o(env) for o in others)
                    return A.preimages(fn, pos, args, tb(env))

                return 1, gen
        return None
    if isinstance(lit, Rel):
        slots = []
        hit = None
        for i, arg in enumerate(lit.args):
            if _is_var(arg, x):
                if hit is None:
                    hit = i
                slots.append(None)
            elif x in arg.fv:
                slots.append(None)
            else:
                slots.append(_compile_term(arg, A))
        if hit is None:
            return None
        rel = A.relation(lit.name)
        bound = sum(s is not None for s in slots)
        priority = (2 if lit.name != "<" else 3, -bound)

        def gen(env, rel=rel, slots=slots, hit=hit):
            pattern = [None if s is None else s(env) for s in slots]
            return {tup[hit] for tup in rel.match(pattern)}

        return priority, gen
    if isinstance(lit, Or):
        parts = [_guard(item, x, A) for item in lit.items]
        if any(p is None for p in parts):
            return None
        gens = [p[1] for p in parts]

        def union(env, gens=gens):
            out: set = set()
            for g in gens:
                out.update(g(env))
            return out

        return 4, union
    return None


def _guard(body: Formula, x: str, A: Structure) -> Optional[tuple]:
    best = None
    for lit in conjuncts(nnf(body)):
        found = _literal_gen(lit, x, A)
        if found is not None:
            key = found[0] if isinstance(found[0], tuple) else (found[0],)
            if best is None or key < best[0]:
                best = (key, found[1])
    return best


# --------------------------------------------------------------------------
# formulas


def _compile(f: Formula, A: Structure) -> Test:
    if isinstance(f, Top):
        return lambda env: True
    if isinstance(f, Bottom):
        return lambda env: False
    if isinstance(f, Rel):
        rel = A.relation(f.name)
        if len(f.args) == 2 and all(isinstance(a, Var) for a in f.args):
            a, b = f.args[0].name, f.args[1].name
            return lambda env: (env[a], env[b]) in rel
        if len(f.args) == 1 and isinstance(f.args[0], Var):
            a = f.args[0].name
            return lambda env: (env[a],) in rel
        parts = [_compile_term(t, A) for t in f.args]
        return lambda env: tuple(p(env) for p in parts) in rel
    if isinstance(f, Eq):
        if isinstance(f.left, Var) and isinstance(f.right, Var):
            a, b = f.left.name, f.right.name
            return lambda env: env[a] == env[b]
        left, right = _compile_term(f.left, A), _compile_term(f.right, A)
        return lambda env: left(env) == right(env)
    if isinstance(f, Not):
        inner = _compile(f.body, A)
        return lambda env: not inner(env)
    if isinstance(f, And):
        parts = [_compile(i, A) for i in f.items]
        return lambda env: all(p(env) for p in parts)
    if isinstance(f, Or):
        parts = [_compile(i, A) for i in f.items]
        return lambda env: any(p(env) for p in parts)
    if isinstance(f, Implies):
        left, right = _compile(f.left, A), _compile(f.right, A)
        return lambda env: (not left(env)) or right(env)
    if isinstance(f, Exists):
        return _compile_exists(f.var, f.body, A)
    if isinstance(f, Forall):
        # forall x B  ==  not exists x (not B)
        inner = _compile_exists(f.var, nnf(f.body, True), A)
        return lambda env: not inner(env)
    raise TypeError(f"not a formula: {f!r}")


_MISSING = object()


def _compile_exists(x: str, body: Formula, A: Structure) -> Test:
    test = _compile(body, A)
    guard = _guard(body, x, A)
    domain = range(A.size)
    gen = guard[1] if guard is not None else (lambda env: domain)

    def run(env: Env) -> bool:
        saved = env.get(x, _MISSING)
        try:
            for value in gen(env):
                env[x] = value
                if test(env):
                    return True
            return False
        finally:
            if saved is _MISSING:
                env.pop(x, None)
            else:
                env[x] = saved

    return run


def compile_formula(structure: Structure, formula: Formula) -> Test:
    """Compiled test for ``formula`` on ``structure`` (memoized per structure)."""
    return structure.cached(("compiled", formula), lambda: _compile(formula, structure))


def evaluate(
    structure: Structure,
    formula: Formula,
    valuation: Optional[Mapping[str, int]] = None,
) -> bool:
    valuation = dict(valuation or {})
    missing = formula.fv - set(valuation)
    if missing:
        raise EvaluationError(f"unbound free variables: {sorted(missing)}")
    for var, value in valuation.items():
        if not (isinstance(value, int) and 0 <= value < structure.size):
            raise EvaluationError(f"value of {var!r} outside the domain: {value!r}")
    structure.cached(("checked", formula), lambda: check_formula(structure, formula) or True)
    return bool(compile_formula(structure, formula)(valuation))
