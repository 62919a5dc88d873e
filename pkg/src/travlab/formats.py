"""Text formats for signatures, structures, formulas and interpretations.

Comments start with ``%`` and run to the end of the line.

Signatures
    A named signature or a comma-separated list of symbols: ``E/2`` is a
    binary relation, ``S:1`` a unary function, ``s:0`` a constant::

        E/2, P/1, S:1, min:0, max:0, s:0

    Names: ``empty``, ``graph`` (``E/2``), ``gamma2``, ``gamma3``,
    ``gamma6`` (graphs with constants ``s t``, ``x y z`` and
    ``x1 .. z2``), ``string[01#]`` (one predicate per character plus
    successor).  A suffix ``+succ`` adds ``min, max, S`` and ``+order``
    adds ``<``.

Structures
    ::

        structure <name> sig=<signature> n=<int>
        rel E: (0,1) (1,0)
        fun S: 0->1 1->1          % unary; (0,1)->2 for higher arity
        const s=0

    ``sig=`` may also name a file holding a signature (relative to the
    structure file).  Without ``sig=`` the signature is read off the
    symbol lines.  Relations that are not listed are empty.

Interpretations
    ::

        interp <name> dim=<k> from=<signature> to=<signature>
        domain: <formula>
        rel E: <formula>
        fun S: case <guard> => (<term>, ...); default => (<term>, ...)
        const c: (<term>, ...)
        requires: successor
        produces: graph

    Variables default to the blocks ``x1..xk``, ``y1..yk``, ... (``x``,
    ``y`` when ``k = 1``); explicit ones are given as
    ``rel E(u1 u2; v1 v2): ...`` and ``fun S(u1 u2): ...``.
"""

from __future__ import annotations

import os
import re
from typing import Optional

from .interpretations import Cases, Interpretation, InterpretationError, default_vars
from .logic import FormulaSyntaxError, parse_formula, parse_term
from .logic.syntax import TRUE, Formula, to_text
from .structures import (
    Signature, Structure, StructureError, gamma, string_signature, with_order, with_successor,
)

__all__ = [
    "FormatError", "parse_signature", "signature_to_text", "parse_structure", "structure_to_text",
    "load_structure", "save_structure", "load_formula", "parse_interpretation",
    "interpretation_to_text", "load_interpretation", "load_structures",
]


class FormatError(ValueError):
    """Malformed input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None) -> None:
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.source = source


def _strip(line: str) -> str:
    return line.split("%", 1)[0].strip()


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if line:
            yield no, line


# --------------------------------------------------------------------------
# signatures

_NAMED = {
    "empty": Signature(),
    "graph": gamma(0),
    "digraph": gamma(0),
    "gamma2": gamma(2),
    "gamma3": gamma(3),
    "gamma6": gamma(6),
}
_SYMBOL = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*|<)\s*([/:])\s*(\d+)$")


def parse_signature(text: str) -> Signature:
    text = text.strip()
    base, *mods = [p.strip() for p in text.split("+")] if text else ["empty"]
    m = re.fullmatch(r"string\[(.+)\]", base)
    if m:
        sig = string_signature(m.group(1))
    elif base in _NAMED:
        sig = _NAMED[base]
    else:
        rels, funs = {}, {}
        for item in filter(None, (p.strip() for p in re.split(r"[,\s]+", base))):
            sm = _SYMBOL.match(item)
            if not sm:
                raise FormatError(f"bad signature item {item!r}; expected R/k or f:k")
            name, kind, arity = sm.group(1), sm.group(2), int(sm.group(3))
            if name in rels or name in funs:
                raise FormatError(f"symbol {name!r} declared twice")
            (rels if kind == "/" else funs)[name] = arity
        try:
            sig = Signature(rels, funs)
        except StructureError as e:
            raise FormatError(str(e)) from None
    for mod in mods:
        if mod in ("succ", "successor"):
            sig = with_successor(sig)
        elif mod == "order":
            sig = with_order(sig)
        else:
            raise FormatError(f"unknown signature modifier {mod!r}")
    return sig


def signature_to_text(sig: Signature) -> str:
    items = [f"{r}/{a}" for r, a in sig.relations.items()]
    items += [f"{f}:{a}" for f, a in sig.functions.items()]
    return ",".join(items) if items else "empty"


# --------------------------------------------------------------------------
# structures

_HEADER = re.compile(r"^structure(?:\s+(?P<name>[^\s=]+))?(?P<rest>(?:\s+\w+=\S+)*)\s*$")
_ATTR = re.compile(r"(\w+)=(\S+)")
_TUPLE = re.compile(r"\(([^()]*)\)")


def _ints(text: str, no: int, source) -> tuple[int, ...]:
    try:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) > 1 and parts[-1] == "":
            parts.pop()  # (0,) for a 1-tuple
        return tuple(int(p) for p in parts) if text.strip() else ()
    except ValueError:
        raise FormatError(f"expected integers, got {text!r}", no, source) from None


def parse_structure(text: str, source: Optional[str] = None, base_dir: Optional[str] = None) -> Structure:
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty structure file", None, source)
    no, header = lines[0]
    hm = _HEADER.match(header)
    if not hm:
        raise FormatError("expected 'structure <name> sig=<signature> n=<int>'", no, source)
    attrs = dict(_ATTR.findall(hm.group("rest")))
    unknown = set(attrs) - {"sig", "n"}
    if unknown:
        raise FormatError(f"unknown header fields {sorted(unknown)}", no, source)
    if "n" not in attrs:
        raise FormatError("header needs n=<int>", no, source)
    try:
        n = int(attrs["n"])
    except ValueError:
        raise FormatError(f"n must be an integer, got {attrs['n']!r}", no, source) from None
    sig: Optional[Signature] = None
    if "sig" in attrs:
        sig = _resolve_signature(attrs["sig"], no, source, base_dir)

    relations: dict = {}
    functions: dict = {}
    rel_arity: dict = {}
    fun_arity: dict = {}
    where: dict = {}  # symbol -> line, for errors found after parsing
    for no, line in lines[1:]:
        kind, _, rest = line.partition(" ")
        rest = rest.strip()
        if kind == "rel":
            name, colon, body = rest.partition(":")
            name = name.strip()
            if not colon or not name:
                raise FormatError("expected 'rel <name>: (a,b) ...'", no, source)
            tuples = [_ints(t, no, source) for t in _TUPLE.findall(body)]
            if _TUPLE.sub("", body).strip():
                raise FormatError(f"unexpected text in tuples of {name}", no, source)
            arities = {len(t) for t in tuples}
            if len(arities) > 1:
                raise FormatError(f"tuples of {name} have different lengths", no, source)
            if name in relations:
                raise FormatError(f"relation {name} listed twice", no, source)
            relations[name] = tuples
            where[name] = no
            if arities:
                rel_arity[name] = arities.pop()
        elif kind == "fun":
            name, colon, body = rest.partition(":")
            name = name.strip()
            if not colon or not name:
                raise FormatError("expected 'fun <name>: a->b ...'", no, source)
            table = {}
            for item in re.findall(r"(\([^()]*\)|\d+)\s*->\s*(\d+)", body):
                args = _ints(item[0].strip("()"), no, source)
                table[args] = int(item[1])
            if re.sub(r"(\([^()]*\)|\d+)\s*->\s*(\d+)", "", body).strip():
                raise FormatError(f"unexpected text in the table of {name}", no, source)
            if name in functions:
                raise FormatError(f"function {name} listed twice", no, source)
            functions[name] = table
            where[name] = no
            fun_arity[name] = len(next(iter(table))) if table else 1
        elif kind == "const":
            for item in rest.split():
                name, eq, val = item.partition("=")
                if not eq:
                    raise FormatError("expected 'const <name>=<int>'", no, source)
                try:
                    functions[name] = {(): int(val)}
                    where[name] = no
                except ValueError:
                    raise FormatError(f"constant value must be an integer, got {val!r}", no, source) from None
                fun_arity[name] = 0
        else:
            raise FormatError(f"unknown line kind {kind!r} (expected rel, fun or const)", no, source)

    if sig is None:
        sig = Signature({r: rel_arity.get(r, 2) for r in relations}, fun_arity)
    for name, no in where.items():
        if name not in sig:
            raise FormatError(f"symbol {name} is not in the signature", no, source)
        values = [v for t in relations.get(name, ()) for v in t]
        for args, val in functions.get(name, {}).items():
            values += [*args, val]
        bad = [v for v in values if not 0 <= v < n]
        if bad:
            raise FormatError(f"{name}: element {bad[0]} outside the domain 0..{n - 1}", no, source)
    try:
        return Structure(sig, n, relations, functions, name=hm.group("name"))
    except StructureError as e:
        raise FormatError(str(e), None, source) from None


def _resolve_signature(value: str, no: int, source, base_dir) -> Signature:
    try:
        return parse_signature(value)
    except FormatError as first:
        path = value if base_dir is None else os.path.join(base_dir, value)
        if os.path.isfile(path):
            with open(path) as fh:
                body = " ".join(_strip(line) for line in fh)
            try:
                return parse_signature(body)
            except FormatError as e:
                raise FormatError(str(e), None, path) from None
        raise FormatError(str(first), no, source) from None


def _fmt_args(args: tuple) -> str:
    return str(args[0]) if len(args) == 1 else "(" + ",".join(map(str, args)) + ")"


def structure_to_text(A: Structure, name: Optional[str] = None) -> str:
    name = name or A.name or "A"
    name = re.sub(r"\s+", "_", name)
    lines = [f"structure {name} sig={signature_to_text(A.signature)} n={A.size}"]
    for r in A.signature.relations:
        tuples = sorted(A.relation(r))
        lines.append(f"rel {r}: " + " ".join("(" + ",".join(map(str, t)) + ")" for t in tuples))
    consts = []
    for f, arity in A.signature.functions.items():
        if arity == 0:
            consts.append(f"{f}={A.constant(f)}")
        else:
            table = sorted(A.function(f).items())
            lines.append(f"fun {f}: " + " ".join(f"{_fmt_args(a)}->{v}" for a, v in table))
    if consts:
        lines.append("const " + " ".join(consts))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def load_structure(path: str) -> Structure:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise FormatError(f"cannot read structure: {e.strerror}", None, path) from None
    return parse_structure(text, source=path, base_dir=os.path.dirname(path))


def load_structures(path: str) -> list[Structure]:
    """One structure file, or every ``*.struct`` file of a directory (sorted)."""
    if os.path.isdir(path):
        names = sorted(f for f in os.listdir(path) if f.endswith(".struct"))
        if not names:
            raise FormatError("directory holds no .struct files", None, path)
        return [load_structure(os.path.join(path, f)) for f in names]
    return [load_structure(path)]


def save_structure(A: Structure, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(structure_to_text(A))


def load_formula(path: str, signature: Optional[Signature] = None) -> Formula:
    try:
        with open(path) as fh:
            text = " ".join(_strip(line) for line in fh)
    except OSError as e:
        raise FormatError(f"cannot read formula: {e.strerror}", None, path) from None
    try:
        return parse_formula(text, signature)
    except FormulaSyntaxError as e:
        raise FormatError(str(e), None, path) from None


# --------------------------------------------------------------------------
# interpretations

_IHEADER = re.compile(r"^interp\s+(\S+)\s+dim=(\d+)\s+from=(\S+)\s+to=(\S+)\s*$")
_DEF = re.compile(r"^(domain|rel|fun|const|requires|produces)\b\s*([^:(]*?)\s*(?:\(([^)]*)\))?\s*:\s*(.*)$")


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _blocks(text: str) -> list[tuple[str, ...]]:
    return [tuple(b.split()) for b in text.split(";")]


def parse_interpretation(text: str, source: Optional[str] = None) -> Interpretation:
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty interpretation file", None, source)
    no, header = lines[0]
    hm = _IHEADER.match(header)
    if not hm:
        raise FormatError("expected 'interp <name> dim=<k> from=<signature> to=<signature>'", no, source)
    name, k = hm.group(1), int(hm.group(2))
    try:
        src, tgt = parse_signature(hm.group(3)), parse_signature(hm.group(4))
    except FormatError as e:
        raise FormatError(str(e), no, source) from None

    def formula(body: str, line: int) -> Formula:
        try:
            return parse_formula(body, tgt)
        except FormulaSyntaxError as e:
            raise FormatError(str(e), line, source) from None

    def terms(body: str, line: int) -> tuple:
        body = body.strip()
        inner = body[1:-1] if body.startswith("(") and body.endswith(")") else body
        parts = _split_top(inner, ",")
        try:
            return tuple(parse_term(p, tgt) for p in parts)
        except FormulaSyntaxError as e:
            raise FormatError(str(e), line, source) from None

    domain = None
    relations: dict = {}
    functions: dict = {}
    requires: tuple = ()
    produces: tuple = ()
    for no, line in lines[1:]:
        m = _DEF.match(line)
        if not m:
            raise FormatError("expected domain:, rel, fun, const, requires: or produces:", no, source)
        kind, sym, varspec, body = m.group(1), m.group(2).strip(), m.group(3), m.group(4)
        if kind in ("requires", "produces"):
            vals = tuple(body.replace(",", " ").split())
            requires, produces = (vals, produces) if kind == "requires" else (requires, vals)
            continue
        if kind == "domain":
            vs = tuple(varspec.split()) if varspec else default_vars(0, k)
            domain = (vs, formula(body, no))
            continue
        if not sym:
            raise FormatError(f"{kind} needs a symbol name", no, source)
        if kind == "rel":
            arity = src.arity(sym) if sym in src else None
            if arity is None:
                raise FormatError(f"relation {sym!r} not in the source signature", no, source)
            blocks = _blocks(varspec) if varspec else [default_vars(i, k) for i in range(arity)]
            relations[sym] = (tuple(v for b in blocks for v in b), formula(body, no))
            continue
        if sym not in src or not src.is_function(sym):
            raise FormatError(f"function {sym!r} not in the source signature", no, source)
        arity = src.arity(sym)
        if varspec:
            args = tuple(v for b in _blocks(varspec) for v in b)
        else:
            args = tuple(v for i in range(arity) for v in default_vars(i, k))
        cases = []
        for part in _split_top(body, ";"):
            if not part:
                continue
            cm = re.match(r"^(case\s+(.*?)|default)\s*=>\s*(.*)$", part, re.S)
            if cm:
                guard = TRUE if cm.group(1) == "default" else formula(cm.group(2), no)
                cases.append((guard, terms(cm.group(3), no)))
            else:
                cases.append((TRUE, terms(part, no)))
        functions[sym] = Cases(args, cases)
    if domain is None:
        domain = (default_vars(0, k), TRUE)
    try:
        return Interpretation(name, src, tgt, k, domain, relations, functions, requires, produces)
    except (InterpretationError, StructureError) as e:
        raise FormatError(str(e), None, source) from None


def interpretation_to_text(pi: Interpretation) -> str:
    k = pi.dim

    def blocks(vs) -> str:
        return "; ".join(" ".join(vs[i:i + k]) for i in range(0, len(vs), k))

    def tup(ts) -> str:
        return "(" + ", ".join(str(t) for t in ts) + ")"

    lines = [f"interp {pi.name} dim={k} from={signature_to_text(pi.source)} "
             f"to={signature_to_text(pi.target)}"]
    dv, df = pi.domain
    lines.append(f"domain({' '.join(dv)}): {to_text(df)}")
    for r, (vs, f) in pi.relations.items():
        lines.append(f"rel {r}({blocks(vs)}): {to_text(f)}")
    for fn, cases in pi.functions.items():
        parts = []
        for guard, ts in cases.cases:
            parts.append(("default" if guard == TRUE else f"case {to_text(guard)}") + f" => {tup(ts)}")
        kind = "const" if pi.source.arity(fn) == 0 else "fun"
        args = f"({blocks(cases.args)})" if cases.args else ""
        lines.append(f"{kind} {fn}{args}: " + "; ".join(parts))
    if pi.requires:
        lines.append("requires: " + " ".join(pi.requires))
    if pi.produces:
        lines.append("produces: " + " ".join(pi.produces))
    return "\n".join(lines) + "\n"


def load_interpretation(path: str) -> Interpretation:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise FormatError(f"cannot read interpretation: {e.strerror}", None, path) from None
    return parse_interpretation(text, source=path)
