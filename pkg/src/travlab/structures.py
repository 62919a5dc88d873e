"""Finite structures over single-sorted signatures.

Elements of a structure of size ``n`` are always the integers ``0..n-1``.
Relations are stored as tuple sets (or, for linear orders, as a rank
array so that an order on a large domain never materializes ``n**2``
pairs).  Functions are total tables; constants are nullary functions.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping, Sequence
from typing import Optional

__all__ = [
    "Signature",
    "Relation",
    "TupleRelation",
    "OrderRelation",
    "Structure",
    "StructureError",
    "LinearOrder",
    "build_structure",
    "reduct",
    "find_isomorphism",
    "is_isomorphic",
    "string_to_structure",
    "successor_expansion",
    "successor_expansions",
    "order_expansion",
    "with_constants",
    "char_predicate",
    "gamma",
    "with_successor",
    "with_order",
    "string_signature",
    "graph",
    "digraph",
    "SUCCESSOR_SYMBOLS",
]

SUCCESSOR_SYMBOLS = ("min", "max", "S")
ORDER_SYMBOL = "<"


class StructureError(ValueError):
    """Raised when structure data violates the signature or a claimed profile."""


class Signature:
    """Relation and function symbols with fixed arities.

    Constants are functions of arity 0.  Signatures are immutable and
    compare by content.
    """

    __slots__ = ("_relations", "_functions", "_hash")

    def __init__(
        self,
        relations: Optional[Mapping[str, int]] = None,
        functions: Optional[Mapping[str, int]] = None,
    ) -> None:
        relations = dict(relations or {})
        functions = dict(functions or {})
        for name, arity in relations.items():
            if arity < 1:
                raise StructureError(f"relation {name!r} must have arity >= 1")
        for name, arity in functions.items():
            if arity < 0:
                raise StructureError(f"function {name!r} has negative arity")
        clash = set(relations) & set(functions)
        if clash:
            raise StructureError(f"symbol names used twice: {sorted(clash)}")
        self._relations = relations
        self._functions = functions
        self._hash = hash(
            (tuple(sorted(relations.items())), tuple(sorted(functions.items())))
        )

    @property
    def relations(self) -> Mapping[str, int]:
        return dict(self._relations)

    @property
    def functions(self) -> Mapping[str, int]:
        return dict(self._functions)

    @property
    def constants(self) -> tuple[str, ...]:
        return tuple(f for f, a in self._functions.items() if a == 0)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(self._relations) + tuple(self._functions)

    def is_relation(self, name: str) -> bool:
        return name in self._relations

    def is_function(self, name: str) -> bool:
        return name in self._functions

    def arity(self, name: str) -> int:
        if name in self._relations:
            return self._relations[name]
        if name in self._functions:
            return self._functions[name]
        raise KeyError(name)

    def __contains__(self, name: object) -> bool:
        return name in self._relations or name in self._functions

    def extend(
        self,
        relations: Optional[Mapping[str, int]] = None,
        functions: Optional[Mapping[str, int]] = None,
    ) -> "Signature":
        rel = dict(self._relations)
        fun = dict(self._functions)
        for name, arity in (relations or {}).items():
            if rel.get(name, arity) != arity or name in fun:
                raise StructureError(f"cannot redeclare {name!r}")
            rel[name] = arity
        for name, arity in (functions or {}).items():
            if fun.get(name, arity) != arity or name in rel:
                raise StructureError(f"cannot redeclare {name!r}")
            fun[name] = arity
        return Signature(rel, fun)

    def restrict(self, names: Iterable[str]) -> "Signature":
        names = set(names)
        missing = names - set(self.symbols)
        if missing:
            raise StructureError(f"symbols not in signature: {sorted(missing)}")
        return Signature(
            {r: a for r, a in self._relations.items() if r in names},
            {f: a for f, a in self._functions.items() if f in names},
        )

    def without(self, names: Iterable[str]) -> "Signature":
        names = set(names)
        return self.restrict(s for s in self.symbols if s not in names)

    def __le__(self, other: "Signature") -> bool:
        return all(
            other._relations.get(r) == a for r, a in self._relations.items()
        ) and all(other._functions.get(f) == a for f, a in self._functions.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return self._relations == other._relations and self._functions == other._functions

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        parts = [f"{r}/{a}" for r, a in self._relations.items()]
        parts += [f"{f}/{a}" if a else f for f, a in self._functions.items()]
        return f"Signature({', '.join(parts)})"


_GAMMA_CONSTANTS = {
    0: (),
    2: ("s", "t"),
    3: ("x", "y", "z"),
    6: ("x1", "y1", "z1", "x2", "y2", "z2"),
}


def gamma(n: int) -> Signature:
    """Signature of n-pointed graphs: binary ``E`` plus n constants."""
    names = _GAMMA_CONSTANTS.get(n) or tuple(f"c{i}" for i in range(1, n + 1))
    return Signature({"E": 2}, {c: 0 for c in names})


def with_successor(sig: Signature) -> Signature:
    return sig.extend(functions={"min": 0, "max": 0, "S": 1})


def with_order(sig: Signature, symbol: str = ORDER_SYMBOL) -> Signature:
    return sig.extend(relations={symbol: 2})


def char_predicate(ch: str) -> str:
    """Name of the unary predicate marking positions that hold ``ch``."""
    if len(ch) != 1:
        raise ValueError(f"not a single character: {ch!r}")
    if ch.isalpha() and ch.isascii():
        return ch
    return f"c{ord(ch)}"


def string_signature(alphabet: Iterable[str]) -> Signature:
    preds = {char_predicate(c): 1 for c in alphabet}
    return with_successor(Signature(preds))


# ---------------------------------------------------------------------------
# relations


class Relation:
    """Abstract finite relation with pattern lookup."""

    arity: int

    def __contains__(self, tup: object) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def __iter__(self) -> Iterator[tuple[int, ...]]:  # pragma: no cover
        raise NotImplementedError

    def __len__(self) -> int:  # pragma: no cover
        raise NotImplementedError

    def match(self, pattern: Sequence[Optional[int]]) -> Iterable[tuple[int, ...]]:
        """Tuples agreeing with ``pattern`` on its non-``None`` positions."""
        raise NotImplementedError  # pragma: no cover

    def as_frozenset(self) -> frozenset:
        return frozenset(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.arity == other.arity and self.as_frozenset() == other.as_frozenset()

    def __hash__(self) -> int:
        return hash(self.as_frozenset())


class TupleRelation(Relation):
    __slots__ = ("arity", "_tuples", "_index")

    def __init__(self, arity: int, tuples: Iterable[Sequence[int]]) -> None:
        self.arity = arity
        self._tuples = frozenset(tuple(t) for t in tuples)
        self._index: dict[tuple[int, ...], dict] = {}

    def __contains__(self, tup: object) -> bool:
        return tup in self._tuples

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self._tuples)

    def __len__(self) -> int:
        return len(self._tuples)

    def as_frozenset(self) -> frozenset:
        return self._tuples

    def match(self, pattern: Sequence[Optional[int]]) -> Iterable[tuple[int, ...]]:
        positions = tuple(i for i, p in enumerate(pattern) if p is not None)
        if not positions:
            return self._tuples
        if len(positions) == self.arity:
            t = tuple(pattern)
            return (t,) if t in self._tuples else ()
        index = self._index.get(positions)
        if index is None:
            index = {}
            for t in self._tuples:
                index.setdefault(tuple(t[i] for i in positions), []).append(t)
            self._index[positions] = index
        return index.get(tuple(pattern[i] for i in positions), ())

    def __repr__(self) -> str:
        return f"TupleRelation({sorted(self._tuples)})"


class OrderRelation(Relation):
    """Strict order ``a < b`` backed by a :class:`LinearOrder`."""

    __slots__ = ("arity", "order")

    def __init__(self, order: "LinearOrder") -> None:
        self.arity = 2
        self.order = order

    def __contains__(self, tup: object) -> bool:
        try:
            a, b = tup  # type: ignore[misc]
            rank = self.order.ranks
            return rank[a] < rank[b]
        except (TypeError, ValueError, IndexError):
            return False

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        seq = self.order.sequence
        for i, a in enumerate(seq):
            for b in seq[i + 1:]:
                yield (a, b)

    def __len__(self) -> int:
        n = len(self.order)
        return n * (n - 1) // 2

    def match(self, pattern: Sequence[Optional[int]]) -> Iterable[tuple[int, ...]]:
        a, b = pattern
        rank, seq = self.order.ranks, self.order.sequence
        if a is None and b is None:
            return iter(self)
        if a is None:
            return [(x, b) for x in seq[: rank[b]]]
        if b is None:
            return [(a, x) for x in seq[rank[a] + 1:]]
        return ((a, b),) if rank[a] < rank[b] else ()

    def __repr__(self) -> str:
        return f"OrderRelation({list(self.order.sequence)})"


class LinearOrder:
    """Total order on ``0..n-1`` stored both as ranks and as a sequence."""

    __slots__ = ("ranks", "sequence")

    def __init__(self, ranks: Sequence[int]) -> None:
        ranks = tuple(int(r) for r in ranks)
        n = len(ranks)
        seq = [-1] * n
        for v, r in enumerate(ranks):
            if not 0 <= r < n or seq[r] != -1:
                raise StructureError(f"ranks {ranks} are not a bijection onto 0..{n - 1}")
            seq[r] = v
        self.ranks = ranks
        self.sequence = tuple(seq)

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "LinearOrder":
        """Order in which ``seq[0]`` is least."""
        n = len(seq)
        ranks = [-1] * n
        for r, v in enumerate(seq):
            if not 0 <= v < n or ranks[v] != -1:
                raise StructureError(f"{list(seq)} is not a permutation of 0..{n - 1}")
            ranks[v] = r
        return cls(ranks)

    @classmethod
    def identity(cls, n: int) -> "LinearOrder":
        return cls(range(n))

    @classmethod
    def all_orders(cls, n: int) -> Iterator["LinearOrder"]:
        for perm in itertools.permutations(range(n)):
            yield cls.from_sequence(perm)

    def __len__(self) -> int:
        return len(self.ranks)

    def less(self, a: int, b: int) -> bool:
        return self.ranks[a] < self.ranks[b]

    @property
    def least(self) -> int:
        return self.sequence[0]

    @property
    def greatest(self) -> int:
        return self.sequence[-1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearOrder) and self.ranks == other.ranks

    def __lt__(self, other: "LinearOrder") -> bool:
        return self.sequence < other.sequence

    def __hash__(self) -> int:
        return hash(self.ranks)

    def __repr__(self) -> str:
        return f"LinearOrder({','.join(map(str, self.sequence))})"

    def __str__(self) -> str:
        return ",".join(map(str, self.sequence))


# ---------------------------------------------------------------------------
# structures

PROFILES = ("graph", "digraph", "successor")


class Structure:
    """An immutable finite structure.

    ``relations`` maps relation names to tuple collections (or ready-made
    :class:`Relation` objects); ``functions`` maps function names to a
    mapping from argument tuples to values.  A constant may be given as a
    bare int.  ``profiles`` lists profiles the caller claims; each one is
    validated.  ``labels`` optionally names each element (used by
    interpretations to remember the tuple behind every element).
    """

    __slots__ = (
        "signature",
        "size",
        "name",
        "labels",
        "_relations",
        "_functions",
        "_claimed",
        "_cache",
    )

    def __init__(
        self,
        signature: Signature,
        size: int,
        relations: Optional[Mapping[str, object]] = None,
        functions: Optional[Mapping[str, object]] = None,
        *,
        profiles: Iterable[str] = (),
        name: Optional[str] = None,
        labels: Optional[Sequence[object]] = None,
    ) -> None:
        if size < 0:
            raise StructureError("domain size must be non-negative")
        relations = dict(relations or {})
        functions = dict(functions or {})
        self.signature = signature
        self.size = size
        self.name = name
        if labels is not None and len(labels) != size:
            raise StructureError("one label per element required")
        self.labels = tuple(labels) if labels is not None else None
        self._cache: dict = {}

        unknown = (set(relations) | set(functions)) - set(signature.symbols)
        if unknown:
            raise StructureError(f"symbols not in signature: {sorted(unknown)}")

        self._relations: dict[str, Relation] = {}
        for rel, arity in signature.relations.items():
            data = relations.get(rel, ())
            if isinstance(data, LinearOrder):
                data = OrderRelation(data)
            if isinstance(data, Relation):
                if data.arity != arity:
                    raise StructureError(f"relation {rel!r} has arity {arity}")
                if isinstance(data, OrderRelation):
                    if len(data.order) != size:
                        raise StructureError(f"order for {rel!r} has wrong size")
                else:
                    self._check_tuples(rel, arity, data)
                self._relations[rel] = data
            else:
                tuples = [tuple(t) for t in data]
                self._check_tuples(rel, arity, tuples)
                self._relations[rel] = TupleRelation(arity, tuples)

        self._functions: dict[str, dict[tuple[int, ...], int]] = {}
        for fun, arity in signature.functions.items():
            if fun not in functions:
                raise StructureError(f"function {fun!r} is not defined")
            table = self._normalize_function(fun, arity, functions[fun])
            self._functions[fun] = table

        claimed = tuple(profiles)
        for p in claimed:
            if p not in PROFILES:
                raise StructureError(f"unknown profile {p!r}")
            problem = self._profile_problem(p)
            if problem:
                raise StructureError(problem)
        self._claimed = frozenset(claimed)

    def _check_tuples(self, rel: str, arity: int, tuples: Iterable[tuple]) -> None:
        n = self.size
        for t in tuples:
            if len(t) != arity:
                raise StructureError(f"tuple {t} in {rel!r} does not have arity {arity}")
            for v in t:
                if not (isinstance(v, int) and 0 <= v < n):
                    raise StructureError(f"tuple {t} in {rel!r} leaves the domain 0..{n - 1}")

    def _normalize_function(self, fun: str, arity: int, data: object) -> dict:
        n = self.size
        if arity == 0:
            if isinstance(data, Mapping):
                data = data.get((), None)
            if not isinstance(data, int) or not 0 <= data < n:
                raise StructureError(f"constant {fun!r} must denote an element, got {data!r}")
            return {(): data}
        if isinstance(data, Mapping):
            table = {}
            for args, val in data.items():
                key = args if isinstance(args, tuple) else (args,)
                table[key] = val
        else:
            # sequence form for unary functions
            if arity != 1:
                raise StructureError(f"function {fun!r} of arity {arity} needs a mapping")
            table = {(i,): v for i, v in enumerate(data)}  # type: ignore[arg-type]
        for args in itertools.product(range(n), repeat=arity):
            if args not in table:
                raise StructureError(f"function {fun!r} is partial: undefined at {args}")
            val = table[args]
            if not (isinstance(val, int) and 0 <= val < n):
                raise StructureError(f"function {fun!r} maps {args} outside the domain")
        if len(table) != n**arity:
            raise StructureError(f"function {fun!r} has arguments outside the domain")
        return table

    # -- profiles ---------------------------------------------------------

    def _profile_problem(self, profile: str) -> Optional[str]:
        if profile in ("graph", "digraph"):
            if self.signature.relations.get("E") != 2:
                return f"{profile} profile needs a binary relation E"
            edges = self._relations["E"]
            for u, v in edges:
                if u == v:
                    return f"{profile} profile forbids the self-loop ({u},{v})"
                if profile == "graph" and (v, u) not in edges:
                    return f"graph profile needs symmetric E, missing ({v},{u})"
            return None
        if profile == "successor":
            sig = self.signature
            if sig.functions.get("S") != 1 or sig.functions.get("min") != 0 or sig.functions.get("max") != 0:
                return "successor profile needs min, max and unary S"
            n = self.size
            if n == 0:
                return "successor profile needs a nonempty domain"
            S = self._functions["S"]
            lo, hi = self._functions["min"][()], self._functions["max"][()]
            seen = {lo}
            v = lo
            for _ in range(n - 1):
                v = S[(v,)]
                if v in seen:
                    return "S is not a successor function: it revisits an element before max"
                seen.add(v)
            if v != hi:
                return "S is not a successor function: iterating from min does not end at max"
            if S[(hi,)] != hi:
                return "S is not a successor function: S(max) must be max"
            return None
        raise StructureError(f"unknown profile {profile!r}")

    def has_profile(self, profile: str) -> bool:
        if profile in self._claimed:
            return True
        key = ("profile", profile)
        if key not in self._cache:
            self._cache[key] = self._profile_problem(profile) is None
        return self._cache[key]

    @property
    def is_graph(self) -> bool:
        return self.has_profile("graph")

    @property
    def is_digraph(self) -> bool:
        return self.has_profile("digraph")

    @property
    def is_successor(self) -> bool:
        return self.has_profile("successor")

    # -- access -----------------------------------------------------------

    @property
    def domain(self) -> range:
        return range(self.size)

    def relation(self, name: str) -> Relation:
        return self._relations[name]

    def function(self, name: str) -> Mapping[tuple[int, ...], int]:
        return self._functions[name]

    def constant(self, name: str) -> int:
        return self._functions[name][()]

    def apply(self, name: str, args: tuple[int, ...]) -> int:
        return self._functions[name][args]

    def preimages(self, name: str, position: int, args: tuple, value: int) -> list[int]:
        """Values ``a`` with ``f(args[:position] + (a,) + args[position+1:]) == value``."""
        key = ("inv", name, position)
        index = self._cache.get(key)
        if index is None:
            index = {}
            for arg_tuple, val in self._functions[name].items():
                rest = arg_tuple[:position] + arg_tuple[position + 1:]
                index.setdefault((rest, val), []).append(arg_tuple[position])
            self._cache[key] = index
        rest = args[:position] + args[position + 1:]
        return index.get((rest, value), [])

    @property
    def relations(self) -> Mapping[str, Relation]:
        return dict(self._relations)

    @property
    def functions(self) -> Mapping[str, Mapping[tuple[int, ...], int]]:
        return {f: dict(t) for f, t in self._functions.items()}

    @property
    def claimed_profiles(self) -> frozenset:
        return self._claimed

    def successor_order(self) -> LinearOrder:
        """The order whose successor function is ``S`` (successor profile only)."""
        if not self.is_successor:
            raise StructureError("structure has no successor profile")
        S = self._functions["S"]
        v = self.constant("min")
        seq = [v]
        for _ in range(self.size - 1):
            v = S[(v,)]
            seq.append(v)
        return LinearOrder.from_sequence(seq)

    def cached(self, key, factory):
        """Memoize derived data (adjacency, CSR arrays) on this immutable value."""
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = factory()
            return value

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Structure):
            return NotImplemented
        return (
            self.signature == other.signature
            and self.size == other.size
            and all(
                self._relations[r].as_frozenset() == other._relations[r].as_frozenset()
                for r in self._relations
            )
            and self._functions == other._functions
        )

    def __hash__(self) -> int:
        return hash((self.signature, self.size, tuple(len(r) for r in self._relations.values())))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Structure{label} n={self.size} {self.signature!r}>"


def build_structure(
    signature: Signature,
    domain_size: int,
    relation_data: Optional[Mapping[str, object]] = None,
    function_data: Optional[Mapping[str, object]] = None,
    profiles: Iterable[str] = (),
    name: Optional[str] = None,
) -> Structure:
    """Validate and build a structure (see :class:`Structure`)."""
    return Structure(
        signature, domain_size, relation_data, function_data, profiles=profiles, name=name
    )


def graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    constants: Optional[Mapping[str, int]] = None,
    name: Optional[str] = None,
) -> Structure:
    """Undirected graph; each edge is stored in both directions."""
    constants = dict(constants or {})
    sig = Signature({"E": 2}, {c: 0 for c in constants})
    sym = set()
    for u, v in edges:
        sym.add((u, v))
        sym.add((v, u))
    return Structure(sig, n, {"E": sym}, constants, profiles=("graph",), name=name)


def digraph(
    n: int,
    arcs: Iterable[tuple[int, int]],
    constants: Optional[Mapping[str, int]] = None,
    name: Optional[str] = None,
    profiles: Iterable[str] = ("digraph",),
) -> Structure:
    constants = dict(constants or {})
    sig = Signature({"E": 2}, {c: 0 for c in constants})
    return Structure(sig, n, {"E": set(arcs)}, constants, profiles=profiles, name=name)


def reduct(structure: Structure, sub_signature: Signature | Iterable[str]) -> Structure:
    """Drop every symbol outside ``sub_signature``."""
    if isinstance(sub_signature, Signature):
        if not sub_signature <= structure.signature:
            raise StructureError(f"{sub_signature!r} is not part of {structure.signature!r}")
        sig = sub_signature
    else:
        sig = structure.signature.restrict(sub_signature)
    rels = {r: structure.relation(r) for r in sig.relations}
    funs = {f: structure.function(f) for f in sig.functions}
    profiles = [p for p in structure.claimed_profiles if _profile_survives(p, sig)]
    return Structure(sig, structure.size, rels, funs, profiles=profiles, name=structure.name,
                     labels=structure.labels)


def _profile_survives(profile: str, sig: Signature) -> bool:
    if profile == "successor":
        return all(s in sig for s in SUCCESSOR_SYMBOLS)
    return "E" in sig


def with_constants(structure: Structure, **constants: int) -> Structure:
    """Expand ``structure`` by new constant symbols."""
    sig = structure.signature.extend(functions={c: 0 for c in constants})
    funs = dict(structure.functions)
    funs.update(constants)
    return Structure(sig, structure.size, structure.relations, funs,
                     profiles=structure.claimed_profiles, name=structure.name,
                     labels=structure.labels)


def order_expansion(structure: Structure, order: LinearOrder, symbol: str = ORDER_SYMBOL) -> Structure:
    """Expand by a binary order relation (stored by rank, not by pairs)."""
    if len(order) != structure.size:
        raise StructureError("order size does not match the structure")
    sig = with_order(structure.signature, symbol)
    rels = dict(structure.relations)
    rels[symbol] = OrderRelation(order)
    return Structure(sig, structure.size, rels, structure.functions,
                     profiles=structure.claimed_profiles, name=structure.name,
                     labels=structure.labels)


def successor_expansion(structure: Structure, order: LinearOrder) -> Structure:
    """Expand by ``min``, ``max`` and the successor of ``order`` (``S(max) = max``)."""
    if len(order) != structure.size or structure.size == 0:
        raise StructureError("successor expansion needs a nonempty order of matching size")
    seq = order.sequence
    succ = {(a,): b for a, b in zip(seq, seq[1:])}
    succ[(seq[-1],)] = seq[-1]
    sig = with_successor(structure.signature)
    funs = dict(structure.functions)
    funs.update({"min": seq[0], "max": seq[-1], "S": succ})
    profiles = set(structure.claimed_profiles) | {"successor"}
    return Structure(sig, structure.size, structure.relations, funs,
                     profiles=sorted(profiles), name=structure.name, labels=structure.labels)


def successor_expansions(structure: Structure) -> Iterator[Structure]:
    for order in LinearOrder.all_orders(structure.size):
        yield successor_expansion(structure, order)


def string_to_structure(string: str, alphabet: Optional[Iterable[str]] = None) -> Structure:
    """Positions ``0..n-1`` with a predicate per character, ``min``, ``max`` and ``S``."""
    if not string:
        raise StructureError("the empty string has no min/max and is not a structure")
    alphabet = tuple(sorted(set(string))) if alphabet is None else tuple(alphabet)
    stray = set(string) - set(alphabet)
    if stray:
        raise StructureError(f"characters {sorted(stray)} are not in the alphabet")
    n = len(string)
    rels = {char_predicate(c): [(i,) for i, ch in enumerate(string) if ch == c] for c in alphabet}
    succ = {(i,): min(i + 1, n - 1) for i in range(n)}
    return Structure(
        string_signature(alphabet), n, rels, {"min": 0, "max": n - 1, "S": succ},
        profiles=("successor",), name=string,
    )


# ---------------------------------------------------------------------------
# isomorphism


def _invariants(a: Structure) -> list[tuple]:
    """Per-element data preserved by isomorphisms, used to prune the search."""
    inv: list[list] = [[] for _ in range(a.size)]
    for r in sorted(a.signature.relations):
        arity = a.signature.relations[r]
        counts = [[0] * arity for _ in range(a.size)]
        for t in a.relation(r):
            for i, v in enumerate(t):
                counts[v][i] += 1
        for v in range(a.size):
            inv[v].append(tuple(counts[v]))
    for c in sorted(a.signature.constants):
        k = a.constant(c)
        for v in range(a.size):
            inv[v].append(v == k)
    return [tuple(x) for x in inv]


def find_isomorphism(a: Structure, b: Structure) -> Optional[dict[int, int]]:
    """Backtracking search for an isomorphism ``a -> b``.

    Constants are mapped first and every assignment is pushed through the
    function tables, so structures carrying a successor function are
    matched without branching.  Without functions this is exponential in
    the worst case; use it at desk scale.
    """
    if a.signature != b.signature:
        raise StructureError("isomorphism test needs a common signature")
    if a.size != b.size:
        return None
    for r in a.signature.relations:
        if len(a.relation(r)) != len(b.relation(r)):
            return None
    inv_a, inv_b = _invariants(a), _invariants(b)
    if sorted(inv_a) != sorted(inv_b):
        return None
    by_inv: dict[tuple, list[int]] = {}
    for v, key in enumerate(inv_b):
        by_inv.setdefault(key, []).append(v)

    sig = a.signature
    rel_names = list(sig.relations)
    fun_names = [f for f, ar in sig.functions.items() if ar > 0]
    # tuples incident to each element, for incremental consistency checks
    incident: list[list[tuple[str, tuple]]] = [[] for _ in range(a.size)]
    for r in rel_names:
        for t in a.relation(r):
            for v in set(t):
                incident[v].append((r, t))

    fwd: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int) -> bool:
        for r, t in incident[v]:
            if all(x in fwd for x in t):
                if tuple(fwd[x] for x in t) not in b.relation(r):
                    return False
        return True

    def assign(pairs: list[tuple[int, int]], trail: list[int]) -> bool:
        while pairs:
            v, w = pairs.pop()
            if v in fwd:
                if fwd[v] != w:
                    return False
                continue
            if w in used or inv_a[v] != inv_b[w]:
                return False
            fwd[v] = w
            used.add(w)
            trail.append(v)
            if not consistent(v):
                return False
            for f in fun_names:
                table_a, table_b = a.function(f), b.function(f)
                arity = sig.functions[f]
                if arity == 1:
                    pairs.append((table_a[(v,)], table_b[(w,)]))
                    continue
                for args in itertools.product(list(fwd), repeat=arity):
                    if v in args:
                        pairs.append((table_a[args], table_b[tuple(fwd[x] for x in args)]))
        return True

    def undo(trail: list[int]) -> None:
        for v in trail:
            used.discard(fwd.pop(v))

    start: list[tuple[int, int]] = [(a.constant(c), b.constant(c)) for c in sig.constants]
    trail0: list[int] = []
    if not assign(start, trail0):
        return None

    def search() -> bool:
        if len(fwd) == a.size:
            return True
        v = next(x for x in range(a.size) if x not in fwd)
        for w in by_inv[inv_a[v]]:
            if w in used:
                continue
            trail: list[int] = []
            if assign([(v, w)], trail) and search():
                return True
            undo(trail)
        return False

    if search():
        return dict(fwd)
    return None


def is_isomorphic(a: Structure, b: Structure) -> bool:
    return find_isomorphism(a, b) is not None
