"""Elementary k-dimensional interpretations as first-class objects.

An interpretation ``pi`` of a signature ``L`` (the *source*) in a signature
``K`` (the *target*) turns every K-structure ``A`` into an L-structure
``A^pi`` whose elements are the k-tuples of ``A`` satisfying the domain
formula.  It also turns every L-formula ``phi`` into a K-formula
``phi^pi`` with ``A |= phi^pi(a) <=> A^pi |= phi(a)`` (the fundamental
property, checked by :func:`check_fundamental_property`).

Function and constant symbols of ``L`` are given by definitions by cases:
an ordered list of ``(guard, k terms)`` whose last guard is ``true``.  The
first case whose guard holds wins.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .logic.evaluate import _compile_term, check_formula, compile_formula, evaluate
from .logic.solve import solutions
from .logic.syntax import (
    TRUE, App, Eq, Exists, Forall, Formula, Implies, Not, And, Or, Rel, Term, Top, Bottom, Var,
    conj, disj, is_quantifier_free, neg, substitute, substitute_term,
)
from .structures import Signature, Structure, StructureError

__all__ = [
    "InterpretationError", "Cases", "Interpretation", "identity_interpretation",
    "default_vars", "translate_formula", "translate_structure", "compose",
    "FundamentalReport", "check_fundamental_property",
]


class InterpretationError(ValueError):
    pass


_POSITION_BASES = "xyzwuv"


def default_vars(position: int, dim: int) -> tuple[str, ...]:
    """Conventional variable block for argument ``position`` (0-based)."""
    base = _POSITION_BASES[position] if position < len(_POSITION_BASES) else f"p{position}_"
    if dim == 1:
        return (base,)
    sep = "" if dim < 10 else "_"
    return tuple(f"{base}{sep}{i}" for i in range(1, dim + 1))


@dataclass(frozen=True)
class Cases:
    """Definition by cases for a function symbol of arity ``len(args) // dim``."""

    args: tuple
    cases: tuple  # of (guard Formula, tuple of Terms)

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "cases", tuple((g, tuple(ts)) for g, ts in self.cases))


@dataclass(frozen=True)
class Interpretation:
    """A k-dimensional interpretation of ``source`` in ``target``.

    ``domain`` is a pair ``(vars, formula)``; ``relations`` maps each
    relation symbol of ``source`` to ``(vars, formula)`` with ``arity * dim``
    variables; ``functions`` maps each function/constant symbol to a
    :class:`Cases`.  ``requires`` lists structure profiles the input must
    have (``"successor"`` for interpretations that use ``S``), ``produces``
    profiles the output is claimed (and validated) to have.
    """

    name: str
    source: Signature
    target: Signature
    dim: int
    domain: tuple
    relations: Mapping[str, tuple]
    functions: Mapping[str, Cases] = field(default_factory=dict)
    requires: tuple = ()
    produces: tuple = ()

    def __post_init__(self) -> None:
        k = self.dim
        if k < 1:
            raise InterpretationError("dimension must be at least 1")
        dvars, dform = self.domain
        object.__setattr__(self, "domain", (tuple(dvars), dform))
        object.__setattr__(self, "relations", {r: (tuple(v), f) for r, (v, f) in self.relations.items()})
        object.__setattr__(self, "functions", dict(self.functions))
        object.__setattr__(self, "requires", tuple(self.requires))
        object.__setattr__(self, "produces", tuple(self.produces))
        self._check_block("domain", self.domain[0], 1, self.domain[1])
        for r, arity in self.source.relations.items():
            if r not in self.relations:
                raise InterpretationError(f"no definition for relation {r!r}")
            vs, f = self.relations[r]
            self._check_block(f"relation {r!r}", vs, arity, f)
        for fn, arity in self.source.functions.items():
            if fn not in self.functions:
                raise InterpretationError(f"no definition for function {fn!r}")
            cases = self.functions[fn]
            self._check_block(f"function {fn!r}", cases.args, arity, None)
            if not cases.cases:
                raise InterpretationError(f"function {fn!r} has no cases")
            if not isinstance(cases.cases[-1][0], Top):
                raise InterpretationError(f"function {fn!r} needs a final default case")
            for guard, terms in cases.cases:
                if len(terms) != k:
                    raise InterpretationError(f"function {fn!r}: case yields {len(terms)} terms, need {k}")
                loose = guard.fv.union(*(t.fv for t in terms)) - set(cases.args)
                if loose:
                    raise InterpretationError(f"function {fn!r}: unbound variables {sorted(loose)}")
                check_formula(self.target, guard)
                for t in terms:
                    check_formula(self.target, Eq(t, t))
        extra = (set(self.relations) - set(self.source.relations)) | (
            set(self.functions) - set(self.source.functions))
        if extra:
            raise InterpretationError(f"definitions for symbols not in source: {sorted(extra)}")

    def _check_block(self, what: str, vs: Sequence[str], arity: int, f: Optional[Formula]) -> None:
        if len(vs) != arity * self.dim or len(set(vs)) != len(vs):
            raise InterpretationError(
                f"{what}: need {arity * self.dim} distinct variables, got {len(vs)}")
        if f is not None:
            loose = f.fv - set(vs)
            if loose:
                raise InterpretationError(f"{what}: unbound variables {sorted(loose)}")
            check_formula(self.target, f)

    @property
    def quantifier_free(self) -> bool:
        forms = [self.domain[1]] + [f for _, f in self.relations.values()]
        forms += [g for c in self.functions.values() for g, _ in c.cases]
        return all(is_quantifier_free(f) for f in forms)

    def domain_at(self, block: Sequence[Term]) -> Formula:
        return substitute(self.domain[1], dict(zip(self.domain[0], block)))

    def relation_at(self, name: str, blocks: Sequence[Sequence[Term]]) -> Formula:
        vs, f = self.relations[name]
        flat = [t for b in blocks for t in b]
        return substitute(f, dict(zip(vs, flat)))

    def __repr__(self) -> str:
        return f"Interpretation({self.name!r}, dim={self.dim})"


def identity_interpretation(sig: Signature, name: str = "id") -> Interpretation:
    rels = {}
    for r, n in sig.relations.items():
        vs = tuple(default_vars(j, 1)[0] for j in range(n))
        rels[r] = (vs, Rel(r, tuple(Var(v) for v in vs)))
    funs = {}
    for fn, n in sig.functions.items():
        vs = tuple(default_vars(j, 1)[0] for j in range(n))
        funs[fn] = Cases(vs, ((TRUE, (App(fn, tuple(Var(v) for v in vs)),)),))
    return Interpretation(name, sig, sig, 1, (("x",), TRUE), rels, funs)


# --------------------------------------------------------------------------
# formula translation


def _block(var: str, k: int) -> tuple[str, ...]:
    if k == 1:
        return (var,)
    sep = "" if k < 10 else "_"
    return tuple(f"{var}{sep}{i}" for i in range(1, k + 1))


def _term_alternatives(pi: Interpretation, t: Term) -> list[tuple[Formula, tuple]]:
    """``[(condition, k target terms)]``; exactly one condition holds on the domain."""
    k = pi.dim
    if isinstance(t, Var):
        return [(TRUE, tuple(Var(v) for v in _block(t.name, k)))]
    if t.fn not in pi.functions:
        raise InterpretationError(f"symbol {t.fn!r} not interpreted by {pi.name}")
    defn = pi.functions[t.fn]
    out = []
    for combo in itertools.product(*(_term_alternatives(pi, a) for a in t.args)):
        cond = conj(c for c, _ in combo)
        flat = [u for _, ts in combo for u in ts]
        mapping = dict(zip(defn.args, flat))
        earlier: list[Formula] = []
        for guard, terms in defn.cases:
            g = substitute(guard, mapping)
            out.append((conj([cond] + [neg(e) for e in earlier] + [g]),
                        tuple(substitute_term(u, mapping) for u in terms)))
            earlier.append(g)
    return out


def translate_formula(pi: Interpretation, formula: Formula) -> Formula:
    """The target formula ``formula^pi``; each variable ``v`` becomes a block ``v1..vk``."""
    k = pi.dim

    def tr(f: Formula) -> Formula:
        if isinstance(f, (Top, Bottom)):
            return f
        if isinstance(f, Rel):
            if f.name not in pi.relations:
                raise InterpretationError(f"symbol {f.name!r} not interpreted by {pi.name}")
            alts = [_term_alternatives(pi, a) for a in f.args]
            return disj(
                conj([c for c, _ in combo] + [pi.relation_at(f.name, [ts for _, ts in combo])])
                for combo in itertools.product(*alts)
            )
        if isinstance(f, Eq):
            out = []
            for (c1, t1), (c2, t2) in itertools.product(
                    _term_alternatives(pi, f.left), _term_alternatives(pi, f.right)):
                out.append(conj([c1, c2] + [Eq(a, b) for a, b in zip(t1, t2)]))
            return disj(out)
        if isinstance(f, Not):
            return Not(tr(f.body))
        if isinstance(f, And):
            return And(tuple(tr(i) for i in f.items))
        if isinstance(f, Or):
            return Or(tuple(tr(i) for i in f.items))
        if isinstance(f, Implies):
            return Implies(tr(f.left), tr(f.right))
        if isinstance(f, (Exists, Forall)):
            block = _block(f.var, k)
            dom = pi.domain_at([Var(v) for v in block])
            body = tr(f.body)
            if isinstance(f, Exists):
                inner = conj([dom, body])
                q = Exists
            else:
                inner = body if isinstance(dom, Top) else Implies(dom, body)
                q = Forall
            for v in reversed(block):
                inner = q(v, inner)
            return inner
        raise TypeError(f"not a formula: {f!r}")

    return tr(formula)


# --------------------------------------------------------------------------
# structure translation


def _check_input(pi: Interpretation, A: Structure) -> None:
    if not pi.target <= A.signature:
        raise InterpretationError(
            f"{pi.name} needs signature {pi.target!r}, structure has {A.signature!r}")
    for profile in pi.requires:
        if not A.has_profile(profile):
            raise InterpretationError(f"{pi.name} needs a structure with {profile} profile")


def translate_structure(pi: Interpretation, A: Structure, name: Optional[str] = None) -> Structure:
    """``A^pi`` with elements the domain tuples, numbered in lexicographic order.

    ``labels`` of the result hold the tuples, so element ``i`` stands for
    ``result.labels[i]``.
    """
    _check_input(pi, A)
    k = pi.dim
    dvars, dform = pi.domain
    tuples = sorted(solutions(A, dform, dvars))
    index = {t: i for i, t in enumerate(tuples)}

    relations = {}
    for r, arity in pi.source.relations.items():
        vs, f = pi.relations[r]
        blocks = [vs[j * k:(j + 1) * k] for j in range(arity)]
        guarded = conj([f] + [pi.domain_at([Var(v) for v in b]) for b in blocks])
        rel = set()
        for sol in solutions(A, guarded, vs):
            rel.add(tuple(index[sol[j * k:(j + 1) * k]] for j in range(arity)))
        relations[r] = rel

    functions = {}
    for fn, arity in pi.source.functions.items():
        defn = pi.functions[fn]
        compiled = [(compile_formula(A, g), [_compile_term(t, A) for t in ts])
                    for g, ts in defn.cases]
        table = {}
        for args in itertools.product(range(len(tuples)), repeat=arity):
            env = dict(zip(defn.args, (c for i in args for c in tuples[i])))
            for guard, terms in compiled:
                if guard(env):
                    value = tuple(t(env) for t in terms)
                    break
            if value not in index:
                what = "constant" if arity == 0 else "function"
                raise InterpretationError(
                    f"{what} {fn!r} of {pi.name} denotes {value}, outside the domain")
            table[args] = index[value]
        functions[fn] = table

    try:
        return Structure(
            pi.source, len(tuples), relations, functions,
            profiles=pi.produces, name=name or f"{A.name}^{pi.name}", labels=tuples,
        )
    except StructureError as e:
        raise InterpretationError(f"{pi.name} produced an invalid structure: {e}") from e


# --------------------------------------------------------------------------
# composition


def compose(outer: Interpretation, inner: Interpretation, name: Optional[str] = None) -> Interpretation:
    """The interpretation ``A |-> (A^inner)^outer`` of ``outer.source`` in ``inner.target``.

    Elements are concatenations of ``outer.dim`` inner tuples, so the
    lexicographic numbering agrees with translating in two steps.
    """
    if outer.target != inner.source:
        raise InterpretationError(
            f"cannot compose {outer.name} after {inner.name}: {outer.target!r} != {inner.source!r}")
    ko, ki = outer.dim, inner.dim

    def flat_vars(vs: Sequence[str]) -> tuple[str, ...]:
        return tuple(u for v in vs for u in _block(v, ki))

    def lift(vs: Sequence[str], f: Formula) -> Formula:
        # free variables of f range over inner elements: relativize them too
        return conj([translate_formula(inner, f)] +
                     [inner.domain_at([Var(u) for u in _block(v, ki)]) for v in vs])

    dvars, dform = outer.domain
    domain = (flat_vars(dvars), lift(dvars, dform))
    relations = {r: (flat_vars(vs), lift(vs, f)) for r, (vs, f) in outer.relations.items()}
    functions = {}
    for fn, defn in outer.functions.items():
        cases = []
        for guard, terms in defn.cases:
            g = translate_formula(inner, guard)
            for combo in itertools.product(*(_term_alternatives(inner, t) for t in terms)):
                cond = conj([g] + [c for c, _ in combo])
                cases.append((cond, tuple(u for _, ts in combo for u in ts)))
        # the alternatives of the default case are exhaustive on the domain
        last_guard, last_terms = cases[-1]
        cases[-1] = (TRUE, last_terms)
        functions[fn] = Cases(flat_vars(defn.args), cases)
    requires = tuple(dict.fromkeys(inner.requires))
    return Interpretation(
        name or f"{outer.name}.{inner.name}", outer.source, inner.target, ko * ki,
        domain, relations, functions, requires=requires, produces=outer.produces,
    )


# --------------------------------------------------------------------------
# fundamental property


@dataclass
class FundamentalReport:
    checked: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.disagreements

    def __str__(self) -> str:
        if self.agree:
            return f"AGREE checked={self.checked}"
        return f"DISAGREE checked={self.checked} first={self.disagreements[0]}"


def check_fundamental_property(
    pi: Interpretation,
    A: Structure,
    formula: Formula,
    trials: Optional[int] = None,
    seed: int = 0,
) -> FundamentalReport:
    """Compare ``A |= formula^pi(a)`` with ``A^pi |= formula(a)``.

    Free variables of ``formula`` range over all tuples of translated
    elements, or over ``trials`` random ones.
    """
    B = translate_structure(pi, A)
    translated = translate_formula(pi, formula)
    free = sorted(formula.fv)
    report = FundamentalReport()
    if B.size == 0 and free:
        return report
    combos: Iterable = itertools.product(range(B.size), repeat=len(free))
    if trials is not None:
        rng = random.Random(seed)
        combos = [tuple(rng.randrange(B.size) for _ in free) for _ in range(trials)]
    for combo in combos:
        left_val = {}
        for v, i in zip(free, combo):
            left_val.update(zip(_block(v, pi.dim), B.labels[i]))
        lhs = evaluate(A, translated, left_val)
        rhs = evaluate(B, formula, dict(zip(free, combo)))
        report.checked += 1
        if lhs != rhs:
            report.disagreements.append((dict(zip(free, combo)), lhs, rhs))
    return report
