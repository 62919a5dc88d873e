"""Parser for the textual formula grammar.

Grammar (whitespace-insensitive, ``#`` starts a comment)::

    formula  ::= disj [ "->" formula ]
    disj     ::= conj { "|" conj }
    conj     ::= unary { "&" unary }
    unary    ::= "!" unary
               | ("exists" | "forall") IDENT [ cmp term ] unary
               | atom
    atom     ::= "true" | "false" | "(" formula ")"
               | IDENT "(" term { "," term } ")"          (relation)
               | term cmp term { cmp term }               (chain)
    term     ::= IDENT [ "(" term { "," term } ")" ]
    cmp      ::= "=" | "!=" | "<" | "<=" | ">" | ">="

Quantifiers bind as tightly as negation: ``exists x A & B`` is
``(exists x A) & B``.  Comparisons are sugar for the binary relation
``<`` and equality; chains ``u < v < w`` mean ``u < v & v < w``.
A bounded quantifier ``exists x < v A`` is ``exists x (x < v & A)`` and
``forall x < v A`` is ``forall x (x < v -> A)``.  The bound is read as a
function application only if a signature declares it as a function.
"""

from __future__ import annotations

import re
from typing import Optional

from ..structures import Signature
from .syntax import (
    FALSE, TRUE, And, App, Eq, Exists, Forall, Formula, Implies, Not, Or, Rel, Term, Var,
)

__all__ = ["parse_formula", "parse_term", "FormulaSyntaxError"]

KEYWORDS = {"exists", "forall", "true", "false"}
_CMP = {"=", "!=", "<", "<=", ">", ">="}

_TOKEN = re.compile(
    r"\s*(?:(?P<comment>\#[^\n]*)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>->|<=|>=|!=|[()&|!,<>=]))"
)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = "") -> None:
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start, text)
        if m.group("ident"):
            out.append(("ident", m.group("ident"), m.start("ident")))
        elif m.group("op"):
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, signature: Optional[Signature], constants: frozenset) -> None:
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = signature
        self.constants = constants
        self.bound: list[str] = []

    # -- token helpers ----------------------------------------------------

    def peek(self, k: int = 0) -> tuple[str, str, int]:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at(self, value: str) -> bool:
        kind, val, _ = self.peek()
        return kind != "end" and val == value

    def expect(self, value: str) -> None:
        kind, val, pos = self.take()
        if val != value or kind == "end":
            got = "end of input" if kind == "end" else repr(val)
            raise FormulaSyntaxError(f"expected {value!r}, got {got}", pos, self.text)

    def error(self, message: str, pos: Optional[int] = None) -> FormulaSyntaxError:
        return FormulaSyntaxError(message, self.peek()[2] if pos is None else pos, self.text)

    # -- symbol resolution ------------------------------------------------

    def is_relation(self, name: str) -> bool:
        if self.sig is None:
            return True
        return self.sig.is_relation(name)

    def check_arity(self, kind: str, name: str, n: int, pos: int) -> None:
        if self.sig is None:
            return
        if kind == "rel":
            if not self.sig.is_relation(name):
                raise self.error(f"unknown relation symbol {name!r}", pos)
        elif not self.sig.is_function(name):
            raise self.error(f"unknown function symbol {name!r}", pos)
        expected = self.sig.arity(name)
        if expected != n:
            raise self.error(f"{name!r} expects {expected} argument(s), got {n}", pos)

    def is_constant(self, name: str) -> bool:
        if name in self.bound:
            return False
        if self.sig is not None:
            return self.sig.functions.get(name) == 0
        return name in self.constants

    # -- grammar ----------------------------------------------------------

    def formula(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.take()
            return Implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        items = [self.conj()]
        while self.at("|"):
            self.take()
            items.append(self.conj())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conj(self) -> Formula:
        items = [self.unary()]
        while self.at("&"):
            self.take()
            items.append(self.unary())
        return items[0] if len(items) == 1 else And(tuple(items))

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "op" and val == "!":
            self.take()
            return Not(self.unary())
        if kind == "ident" and val in ("exists", "forall"):
            self.take()
            vkind, var, vpos = self.take()
            if vkind != "ident" or var in KEYWORDS:
                raise self.error("expected a variable after quantifier", vpos)
            if self.sig is not None and var in self.sig:
                raise self.error(f"cannot quantify over symbol {var!r}", vpos)
            bound_rel = None
            if self.peek()[0] == "op" and self.peek()[1] in _CMP - {"=", "!="}:
                op = self.take()[1]
                self.bound.append(var)
                bound_rel = self.comparison(Var(var), op, self.term(bound=True))
                self.bound.pop()
            self.bound.append(var)
            body = self.unary()
            self.bound.pop()
            if val == "exists":
                return Exists(var, body if bound_rel is None else And((bound_rel, body)))
            return Forall(var, body if bound_rel is None else Implies(bound_rel, body))
        return self.atom()

    def atom(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "end":
            raise self.error("unexpected end of input")
        if kind == "op" and val == "(":
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        if kind == "ident" and val == "true":
            self.take()
            return TRUE
        if kind == "ident" and val == "false":
            self.take()
            return FALSE
        if kind == "ident" and self.peek(1)[1] == "(" and self.is_relation(val):
            # without a signature, NAME(...) followed by a comparison is a term
            if self.sig is not None or not self._term_then_cmp():
                self.take()
                args = self.arglist()
                self.check_arity("rel", val, len(args), pos)
                return Rel(val, tuple(args))
        left = self.term()
        if not (self.peek()[0] == "op" and self.peek()[1] in _CMP):
            raise self.error("expected a comparison or relation atom", pos)
        parts = []
        while self.peek()[0] == "op" and self.peek()[1] in _CMP:
            op = self.take()[1]
            right = self.term()
            parts.append(self.comparison(left, op, right))
            left = right
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def _term_then_cmp(self) -> bool:
        depth = 0
        j = self.i + 1
        while j < len(self.toks):
            _, v, _ = self.toks[j]
            if v == "(":
                depth += 1
            elif v == ")":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        nxt = self.toks[min(j + 1, len(self.toks) - 1)]
        return nxt[0] == "op" and nxt[1] in _CMP

    def comparison(self, a: Term, op: str, b: Term) -> Formula:
        if op in ("<", "<=", ">", ">="):
            self.check_arity("rel", "<", 2, self.peek()[2])
        if op == "=":
            return Eq(a, b)
        if op == "!=":
            return Not(Eq(a, b))
        if op == "<":
            return Rel("<", (a, b))
        if op == ">":
            return Rel("<", (b, a))
        if op == "<=":
            return Or((Rel("<", (a, b)), Eq(a, b)))
        return Or((Rel("<", (b, a)), Eq(a, b)))

    def arglist(self) -> list[Term]:
        self.expect("(")
        args = [self.term()]
        while self.at(","):
            self.take()
            args.append(self.term())
        self.expect(")")
        return args

    def term(self, bound: bool = False) -> Term:
        kind, val, pos = self.take()
        if kind != "ident" or val in KEYWORDS:
            got = "end of input" if kind == "end" else repr(val)
            raise FormulaSyntaxError(f"expected a term, got {got}", pos, self.text)
        # in a quantifier bound, NAME ( ... ) is an application only when
        # the signature says NAME is a function; otherwise "(" opens the body
        if bound and self.at("("):
            takes_args = (self.sig is not None and self.sig.is_function(val)
                          and self.sig.arity(val) > 0 and val not in self.bound)
        else:
            takes_args = self.at("(")
        if takes_args:
            args = self.arglist()
            self.check_arity("fun", val, len(args), pos)
            return App(val, tuple(args))
        if self.is_constant(val):
            return App(val, ())
        if self.sig is not None and val in self.sig and val not in self.bound:
            raise FormulaSyntaxError(f"symbol {val!r} used without arguments", pos, self.text)
        return Var(val)


def parse_formula(
    text: str,
    signature: Optional[Signature] = None,
    constants: frozenset | set = frozenset(),
) -> Formula:
    """Parse ``text``; with a signature, symbols and arities are checked."""
    p = _Parser(text, signature, frozenset(constants))
    f = p.formula()
    kind, val, pos = p.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"unexpected {val!r}", pos, text)
    return f


def parse_term(text: str, signature: Optional[Signature] = None,
               constants: frozenset | set = frozenset()) -> Term:
    p = _Parser(text, signature, frozenset(constants))
    t = p.term()
    kind, val, pos = p.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"unexpected {val!r}", pos, text)
    return t
