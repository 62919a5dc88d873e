"""First-order terms and formulas.

Nodes are frozen dataclasses.  Hashes and free-variable sets are computed
once at construction, since formulas produced by interpretation
translation get large and are used as dictionary keys by the evaluator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

__all__ = [
    "Var", "App", "Term",
    "Formula", "Top", "Bottom", "TRUE", "FALSE",
    "Rel", "Eq", "Not", "And", "Or", "Implies", "Exists", "Forall",
    "conj", "disj", "neg", "exists", "forall",
    "free_vars", "term_vars", "substitute", "substitute_term",
    "symbols", "quantifier_depth", "is_quantifier_free",
    "fresh_name", "to_text", "nnf", "conjuncts",
]


class _Node:
    __slots__ = ()

    def __hash__(self) -> int:
        return self._h  # type: ignore[attr-defined]


# --------------------------------------------------------------------------
# terms


@dataclass(frozen=True, eq=True)
class Var(_Node):
    name: str
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_h", hash(("var", self.name)))
        object.__setattr__(self, "fv", frozenset((self.name,)))

    __hash__ = _Node.__hash__

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, eq=True)
class App(_Node):
    """Function application; constants are applications with no arguments."""

    fn: str
    args: tuple = ()
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "_h", hash(("app", self.fn, self.args)))
        object.__setattr__(self, "fv", frozenset().union(*(a.fv for a in self.args)))

    __hash__ = _Node.__hash__

    def __str__(self) -> str:
        if not self.args:
            return self.fn
        return f"{self.fn}({', '.join(map(str, self.args))})"


Term = Union[Var, App]


# --------------------------------------------------------------------------
# formulas


class Formula(_Node):
    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return conj([self, other])

    def __or__(self, other: "Formula") -> "Formula":
        return disj([self, other])

    def __invert__(self) -> "Formula":
        return Not(self)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def __str__(self) -> str:
        return to_text(self)


def _init(node, key, fv) -> None:
    object.__setattr__(node, "_h", hash(key))
    object.__setattr__(node, "fv", fv)


@dataclass(frozen=True, eq=True)
class Top(Formula):
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _init(self, ("top",), frozenset())

    __hash__ = _Node.__hash__
    __str__ = Formula.__str__


@dataclass(frozen=True, eq=True)
class Bottom(Formula):
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _init(self, ("bottom",), frozenset())

    __hash__ = _Node.__hash__
    __str__ = Formula.__str__


TRUE = Top()
FALSE = Bottom()


@dataclass(frozen=True, eq=True)
class Rel(Formula):
    name: str
    args: tuple
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))
        _init(self, ("rel", self.name, self.args), frozenset().union(*(a.fv for a in self.args)))

    __hash__ = _Node.__hash__
    __str__ = Formula.__str__


@dataclass(frozen=True, eq=True)
class Eq(Formula):
    left: Term
    right: Term
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _init(self, ("eq", self.left, self.right), self.left.fv | self.right.fv)

    __hash__ = _Node.__hash__
    __str__ = Formula.__str__


@dataclass(frozen=True, eq=True)
class Not(Formula):
    body: Formula
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _init(self, ("not", self.body), self.body.fv)

    __hash__ = _Node.__hash__
    __str__ = Formula.__str__


@dataclass(frozen=True, eq=True)
class And(Formula):
    items: tuple
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        _init(self, ("and", self.items), frozenset().union(*(i.fv for i in self.items)))

    __hash__ = _Node.__hash__
    __str__ = Formula.__str__


@dataclass(frozen=True, eq=True)
class Or(Formula):
    items: tuple
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        _init(self, ("or", self.items), frozenset().union(*(i.fv for i in self.items)))

    __hash__ = _Node.__hash__
    __str__ = Formula.__str__


@dataclass(frozen=True, eq=True)
class Implies(Formula):
    left: Formula
    right: Formula
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _init(self, ("imp", self.left, self.right), self.left.fv | self.right.fv)

    __hash__ = _Node.__hash__
    __str__ = Formula.__str__


@dataclass(frozen=True, eq=True)
class Exists(Formula):
    var: str
    body: Formula
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _init(self, ("ex", self.var, self.body), self.body.fv - {self.var})

    __hash__ = _Node.__hash__
    __str__ = Formula.__str__


@dataclass(frozen=True, eq=True)
class Forall(Formula):
    var: str
    body: Formula
    _h: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _init(self, ("all", self.var, self.body), self.body.fv - {self.var})

    __hash__ = _Node.__hash__
    __str__ = Formula.__str__


# --------------------------------------------------------------------------
# builders


def conj(items: Iterable[Formula]) -> Formula:
    items = [i for i in items if not isinstance(i, Top)]
    if any(isinstance(i, Bottom) for i in items):
        return FALSE
    if not items:
        return TRUE
    return items[0] if len(items) == 1 else And(tuple(items))


def disj(items: Iterable[Formula]) -> Formula:
    items = [i for i in items if not isinstance(i, Bottom)]
    if any(isinstance(i, Top) for i in items):
        return TRUE
    if not items:
        return FALSE
    return items[0] if len(items) == 1 else Or(tuple(items))


def neg(f: Formula) -> Formula:
    if isinstance(f, Top):
        return FALSE
    if isinstance(f, Bottom):
        return TRUE
    if isinstance(f, Not):
        return f.body
    return Not(f)


def exists(variables: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(variables)):
        body = Exists(v, body)
    return body


def forall(variables: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(variables)):
        body = Forall(v, body)
    return body


# --------------------------------------------------------------------------
# analysis


def free_vars(node: Formula | Term) -> frozenset:
    return node.fv


def term_vars(term: Term) -> frozenset:
    return term.fv


def _children(f: Formula) -> tuple:
    if isinstance(f, (Not, Exists, Forall)):
        return (f.body,)
    if isinstance(f, (And, Or)):
        return f.items
    if isinstance(f, Implies):
        return (f.left, f.right)
    return ()


def _term_symbols(t: Term, out: dict) -> None:
    if isinstance(t, App):
        out.setdefault(("fun", t.fn), len(t.args))
        for a in t.args:
            _term_symbols(a, out)


def symbols(f: Formula) -> dict:
    """Map ``("rel"|"fun", name) -> arity`` for every symbol used in ``f``."""
    out: dict = {}
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Rel):
            out.setdefault(("rel", g.name), len(g.args))
            for a in g.args:
                _term_symbols(a, out)
        elif isinstance(g, Eq):
            _term_symbols(g.left, out)
            _term_symbols(g.right, out)
        else:
            stack.extend(_children(g))
    return out


def quantifier_depth(f: Formula) -> int:
    if isinstance(f, (Exists, Forall)):
        return 1 + quantifier_depth(f.body)
    return max((quantifier_depth(c) for c in _children(f)), default=0)


def is_quantifier_free(f: Formula) -> bool:
    return quantifier_depth(f) == 0


def all_var_names(f: Formula | Term) -> set:
    """Free and bound variable names."""
    out = set(f.fv)
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Exists, Forall)):
            out.add(g.var)
        if isinstance(g, Formula):
            stack.extend(_children(g))
    return out


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    if base not in avoid:
        return base
    for i in itertools.count(1):
        cand = f"{base}_{i}"
        if cand not in avoid:
            return cand
    raise AssertionError("unreachable")


def substitute_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if not t.args:
        return t
    return App(t.fn, tuple(substitute_term(a, mapping) for a in t.args))


def substitute(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Capture-avoiding simultaneous substitution of terms for free variables."""
    mapping = {k: v for k, v in mapping.items() if k in f.fv}
    if not mapping:
        return f
    if isinstance(f, Rel):
        return Rel(f.name, tuple(substitute_term(a, mapping) for a in f.args))
    if isinstance(f, Eq):
        return Eq(substitute_term(f.left, mapping), substitute_term(f.right, mapping))
    if isinstance(f, Not):
        return Not(substitute(f.body, mapping))
    if isinstance(f, And):
        return And(tuple(substitute(i, mapping) for i in f.items))
    if isinstance(f, Or):
        return Or(tuple(substitute(i, mapping) for i in f.items))
    if isinstance(f, Implies):
        return Implies(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, (Exists, Forall)):
        incoming = frozenset().union(*(t.fv for t in mapping.values()))
        var, body = f.var, f.body
        if var in incoming:
            new = fresh_name(var, incoming | all_var_names(body) | set(mapping))
            body = substitute(body, {var: Var(new)})
            var = new
        return type(f)(var, substitute(body, mapping))
    return f


def conjuncts(f: Formula) -> list:
    """Flatten nested conjunctions."""
    if isinstance(f, And):
        out = []
        for i in f.items:
            out.extend(conjuncts(i))
        return out
    if isinstance(f, Top):
        return []
    return [f]


def nnf(f: Formula, negate: bool = False) -> Formula:
    """Push negations down to atoms; quantified subformulas are left whole."""
    if isinstance(f, Not):
        return nnf(f.body, not negate)
    if isinstance(f, And):
        parts = [nnf(i, negate) for i in f.items]
        return disj(parts) if negate else conj(parts)
    if isinstance(f, Or):
        parts = [nnf(i, negate) for i in f.items]
        return conj(parts) if negate else disj(parts)
    if isinstance(f, Implies):
        if negate:
            return conj([nnf(f.left), nnf(f.right, True)])
        return disj([nnf(f.left, True), nnf(f.right)])
    if isinstance(f, Top):
        return FALSE if negate else TRUE
    if isinstance(f, Bottom):
        return TRUE if negate else FALSE
    return Not(f) if negate else f


# --------------------------------------------------------------------------
# printing

_IMP, _OR, _AND, _UNARY = 1, 2, 3, 4


def _paren(text: str, need: bool) -> str:
    return f"({text})" if need else text


def _atom_text(f: Formula) -> str:
    if isinstance(f, Rel):
        if f.name == "<" and len(f.args) == 2:
            return f"{f.args[0]} < {f.args[1]}"
        return f"{f.name}({', '.join(map(str, f.args))})"
    if isinstance(f, Eq):
        return f"{f.left} = {f.right}"
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    raise TypeError(f)


def _text(f: Formula, ctx: int) -> str:
    if isinstance(f, (Rel, Eq, Top, Bottom)):
        return _atom_text(f)
    if isinstance(f, Not):
        if isinstance(f.body, Eq):
            return f"{f.body.left} != {f.body.right}"
        if isinstance(f.body, Rel) and f.body.name == "<":
            return f"!({_atom_text(f.body)})"
        return "!" + _text(f.body, _UNARY)
    if isinstance(f, (Exists, Forall)):
        kw = "exists" if isinstance(f, Exists) else "forall"
        return f"{kw} {f.var} {_text(f.body, _UNARY)}"
    if isinstance(f, And):
        return _paren(" & ".join(_text(i, _UNARY) for i in f.items), ctx > _AND)
    if isinstance(f, Or):
        return _paren(" | ".join(_text(i, _AND) for i in f.items), ctx > _OR)
    if isinstance(f, Implies):
        return _paren(f"{_text(f.left, _OR)} -> {_text(f.right, _IMP)}", ctx > _IMP)
    raise TypeError(f"not a formula: {f!r}")


def to_text(f: Formula) -> str:
    """Render in the parser's grammar; ``parse_formula(to_text(f)) == f``."""
    return _text(f, _IMP)
