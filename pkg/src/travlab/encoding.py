"""Canonical string encoding of a structure with a successor.

``mu_encode`` writes, over ``{0, 1, #}``:

* ``1`` repeated ``n`` times;
* for each relation symbol (sorted by name): ``#`` and then one bit per
  tuple, tuples listed lexicographically in the successor's order;
* for each other function or constant symbol (sorted by name): ``#`` and
  then its value on each argument tuple (same order), each value written
  as its successor rank in binary of fixed width ``max(1, (n-1).bit_length())``.

The successor symbols themselves are not written: positions are ranks.
So the string depends only on the isomorphism type of the structure
together with its successor.
"""

from __future__ import annotations

import itertools

from .structures import SUCCESSOR_SYMBOLS, Signature, Structure, StructureError, with_successor

__all__ = ["ALPHABET", "EncodingError", "mu_encode", "mu_decode", "mu_decode_check", "value_width"]

ALPHABET = ("0", "1", "#")


class EncodingError(ValueError):
    pass


def value_width(n: int) -> int:
    return max(1, (n - 1).bit_length())


def _payload(sig: Signature) -> tuple[list[str], list[str]]:
    rels = sorted(sig.relations)
    funs = sorted(f for f in sig.functions if f not in SUCCESSOR_SYMBOLS)
    return rels, funs


def mu_encode(structure: Structure) -> str:
    if not structure.is_successor:
        raise EncodingError("mu_encode needs a structure with successor profile")
    n = structure.size
    seq = structure.successor_order().sequence
    rank = {v: i for i, v in enumerate(seq)}
    width = value_width(n)
    rels, funs = _payload(structure.signature)
    out = ["1" * n]
    for r in rels:
        rel = structure.relation(r)
        bits = ("1" if t in rel else "0"
                for t in itertools.product(seq, repeat=structure.signature.arity(r)))
        out.append("#" + "".join(bits))
    for f in funs:
        table = structure.function(f)
        vals = (format(rank[table[t]], f"0{width}b")
                for t in itertools.product(seq, repeat=structure.signature.arity(f)))
        out.append("#" + "".join(vals))
    return "".join(out)


def mu_decode(string: str, signature: Signature) -> Structure:
    """Inverse of :func:`mu_encode`: elements are the successor ranks ``0..n-1``."""
    sig = signature if set(SUCCESSOR_SYMBOLS) <= set(signature.functions) else with_successor(signature)
    stray = set(string) - set(ALPHABET)
    if stray:
        raise EncodingError(f"characters {sorted(stray)} outside {{0,1,#}}")
    blocks = string.split("#")
    n = len(blocks[0])
    if n == 0 or set(blocks[0]) != {"1"}:
        raise EncodingError("encoding must start with a nonempty block of 1s")
    rels, funs = _payload(sig)
    if len(blocks) != 1 + len(rels) + len(funs):
        raise EncodingError(f"expected {len(rels) + len(funs)} blocks after the size block, "
                            f"found {len(blocks) - 1}")
    width = value_width(n)
    relations = {}
    for r, block in zip(rels, blocks[1:]):
        tuples = list(itertools.product(range(n), repeat=sig.arity(r)))
        if len(block) != len(tuples) or set(block) - {"0", "1"}:
            raise EncodingError(f"block of {r} must have {len(tuples)} bits")
        relations[r] = [t for t, b in zip(tuples, block) if b == "1"]
    functions: dict = {}
    for f, block in zip(funs, blocks[1 + len(rels):]):
        tuples = list(itertools.product(range(n), repeat=sig.arity(f)))
        if len(block) != width * len(tuples) or set(block) - {"0", "1"}:
            raise EncodingError(f"block of {f} must have {len(tuples)} values of {width} bits")
        table = {}
        for i, t in enumerate(tuples):
            v = int(block[i * width:(i + 1) * width], 2)
            if v >= n:
                raise EncodingError(f"value {v} of {f} out of range")
            table[t] = v
        functions[f] = table
    functions.update({"min": 0, "max": n - 1, "S": {(i,): min(i + 1, n - 1) for i in range(n)}})
    try:
        return Structure(sig, n, relations, functions, profiles=("successor",))
    except StructureError as e:
        raise EncodingError(str(e)) from None


def mu_decode_check(structure: Structure, string: str) -> bool:
    """Does ``string`` decode to ``structure`` renamed by its successor ranks?"""
    try:
        decoded = mu_decode(string, structure.signature)
    except EncodingError:
        return False
    seq = structure.successor_order().sequence
    rank = {v: i for i, v in enumerate(seq)}
    sig = structure.signature
    for r in sig.relations:
        mapped = {tuple(rank[a] for a in t) for t in structure.relation(r)}
        if mapped != decoded.relation(r).as_frozenset():
            return False
    for f in sig.functions:
        for args, val in structure.function(f).items():
            if decoded.apply(f, tuple(rank[a] for a in args)) != rank[val]:
                return False
    return True
