"""Command-line front end.

Exit codes: 0 success (or a positive verdict), 1 negative verdict for the
deciding subcommands (``eval``, ``invariance check``, ``decide reach``,
``machine run``, ``pipeline``, ``selftest``), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

from . import kernels
from .formats import (
    FormatError, load_formula, load_structure, load_structures, save_structure,
    structure_to_text,
)
from .interpretations import InterpretationError, translate_structure
from .invariance import KINDS, check_invariance, chosen_order, eval_quantified
from .limits import CapExceeded, enumeration_cap
from .logic import EvaluationError, FormulaSyntaxError, evaluate, parse_formula
from .logic.syntax import conjuncts
from .machines import MachineError, config_graph, is_symmetric, parse_machine, run_machine
from .encoding import EncodingError
from .pipelines import PipelineError, pipeline_L, pipeline_NL
from .reductions import directed_reachable_bft, psi, rho, tau
from .structures import (
    LinearOrder, Structure, StructureError, order_expansion, successor_expansion, with_order,
    with_successor,
)
from .traversals import canonical_bft, classify_order, distances, quasi_levels, search_orders

__all__ = ["main", "build_parser"]

_INPUT_ERRORS = (FormatError, FormulaSyntaxError, EvaluationError, StructureError, InterpretationError,
                 MachineError, PipelineError, EncodingError, CapExceeded, ValueError, OSError)


class _Usage(Exception):
    pass


def _emit(args, text: str, data: dict) -> None:
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _parse_order(text: Optional[str], n: int) -> Optional[LinearOrder]:
    if text is None:
        return None
    try:
        seq = [int(p) for p in text.replace(" ", "").split(",") if p != ""]
    except ValueError:
        raise _Usage(f"--order must be a comma-separated vertex sequence, got {text!r}") from None
    if sorted(seq) != list(range(n)):
        raise _Usage(f"--order must list each of the {n} elements exactly once")
    return LinearOrder.from_sequence(seq)


def _need_graph(g: Structure, path: str) -> None:
    if not g.is_graph:
        raise _Usage(f"{path}: expected an undirected graph (symmetric, loop-free E)")


def _load_formula_arg(text_or_path: str, signature) -> object:
    if os.path.isfile(text_or_path):
        return load_formula(text_or_path, signature)
    return parse_formula(text_or_path, signature)


# --------------------------------------------------------------------------
# subcommands


def cmd_classify_order(args) -> int:
    g = load_structure(args.structure)
    _need_graph(g, args.structure)
    order = _parse_order(args.order, g.size) or LinearOrder.identity(g.size)
    c = classify_order(g, order, engine=args.engine)
    _emit(args, str(c), {"order": str(order), "traversal": c.traversal, "bft": c.bft, "dft": c.dft})
    return 0


def cmd_search_orders(args) -> int:
    g = load_structure(args.structure)
    _need_graph(g, args.structure)
    orders = sorted(search_orders(g, args.kind, args.cap))
    lines = [str(o) for o in orders] + [f"count={len(orders)}"]
    _emit(args, "\n".join(lines), {"kind": args.kind, "orders": [str(o) for o in orders]})
    return 0


def cmd_canonical_bft(args) -> int:
    g = load_structure(args.structure)
    _need_graph(g, args.structure)
    order = canonical_bft(g, _parse_order(args.order, g.size))
    _emit(args, str(order), {"order": str(order)})
    return 0


def cmd_quasi_levels(args) -> int:
    g = load_structure(args.structure)
    _need_graph(g, args.structure)
    order = _parse_order(args.order, g.size) or LinearOrder.identity(g.size)
    levels = quasi_levels(g, order)
    _emit(args, "\n".join(str(q) for q in levels),
          {"order": str(order), "quasi_levels": [list(q.members) for q in levels]})
    return 0


def cmd_invariance_check(args) -> int:
    structures = load_structures(args.structures)
    sig = structures[0].signature
    expanded = with_successor(sig) if args.kind == "successor" else with_order(sig)
    formula = _load_formula_arg(args.formula, expanded)
    report = check_invariance(structures, formula, args.kind, args.cap)
    data = {"invariant": report.invariant, "checked": report.checked}
    if not report.invariant:
        data.update(base=report.base, order1=str(report.order1), order2=str(report.order2))
    _emit(args, str(report), data)
    return 0 if report.invariant else 1


def cmd_eval(args) -> int:
    A = load_structure(args.structure)
    if args.kind and args.order:
        raise _Usage("give either --kind (quantified evaluation) or --order, not both")
    if args.kind:
        expanded = with_successor(A.signature) if args.kind == "successor" else with_order(A.signature)
        formula = _load_formula_arg(args.formula, expanded)
        value = eval_quantified(A, formula, args.kind, verify=args.verify, cap=args.cap)
        order = chosen_order(A, args.kind)
    elif args.order:
        order = _parse_order(args.order, A.size)
        formula = _load_formula_arg(args.formula, with_order(A.signature))
        value = evaluate(order_expansion(A, order), formula)
    else:
        order = None
        formula = _load_formula_arg(args.formula, A.signature)
        value = evaluate(A, formula)
    data = {"value": value}
    if order is not None:
        data["order"] = str(order)
    _emit(args, "true" if value else "false", data)
    return 0 if value else 1


def _with_successor(A: Structure, order_text: Optional[str]) -> Structure:
    order = _parse_order(order_text, A.size)
    if order is None and A.is_successor:
        return A
    if "S" in A.signature:
        raise _Usage("structure already has a successor; drop --order or the S, min, max symbols")
    return successor_expansion(A, order or LinearOrder.identity(A.size))


def _write_or_print(args, B: Structure) -> None:
    if args.emit:
        save_structure(B, args.emit)
        _emit(args, f"wrote {args.emit} n={B.size}", {"emitted": args.emit, "size": B.size})
    elif args.format == "json":
        print(json.dumps({"structure": structure_to_text(B)}, sort_keys=True))
    else:
        sys.stdout.write(structure_to_text(B))


def cmd_reduce(args) -> int:
    A = load_structure(args.structure)
    if args.which == "rho":
        B = translate_structure(rho(), _with_successor(A, args.order), name="rho")
    else:
        B = translate_structure(tau(), A, name="tau")
    _write_or_print(args, B)
    return 0


def cmd_decide_reach(args) -> int:
    A = _with_successor(load_structure(args.structure), args.order)
    reachable = directed_reachable_bft(A)
    verdict = "REACHABLE" if reachable else "UNREACHABLE"
    data = {"reachable": reachable}
    lines = [verdict]
    if args.trace:
        g3 = translate_structure(rho(), A)
        g6 = translate_structure(tau(), g3)
        bft = canonical_bft(g6)
        expanded = order_expansion(g6, bft)
        d = distances(g3, g3.constant("x"))
        dy, dz = d[g3.constant("y")], d[g3.constant("z")]
        parts = conjuncts(psi())
        values = [evaluate(expanded, p) for p in parts]

        def fmt(v: float):
            return None if v == math.inf else int(v)

        data["trace"] = {"layered_size": g3.size, "doubled_size": g6.size, "bft": str(bft),
                         "d_xy": fmt(dy), "d_xz": fmt(dz), "psi_conjuncts": values}
        lines += [f"layered graph: {g3.size} vertices; doubled: {g6.size}",
                  f"d(x,y)={fmt(dy)} d(x,z)={fmt(dz)}",
                  f"breadth-first order: {bft}",
                  "psi conjuncts: " + " ".join("T" if v else "F" for v in values)]
    _emit(args, "\n".join(lines), data)
    return 0 if reachable else 1


def _read_machine(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise FormatError(f"cannot read machine: {e.strerror}", None, path) from None
    try:
        return parse_machine(text, name=os.path.splitext(os.path.basename(path))[0])
    except MachineError as e:
        raise FormatError(str(e), None, path) from None


def cmd_machine(args) -> int:
    m = _read_machine(args.machine)
    if args.action == "run":
        accepted = run_machine(m, args.string)
        _emit(args, "ACCEPT" if accepted else "REJECT", {"accepted": accepted})
        return 0 if accepted else 1
    cg = config_graph(m, args.string)
    symmetric = is_symmetric(m, args.string)
    B = cg.successor
    if args.emit:
        save_structure(B, args.emit)
    arcs = len(B.relation("E"))
    text = f"configurations={B.size} arcs={arcs} symmetric={'yes' if symmetric else 'no'}"
    if args.emit:
        text += f" wrote {args.emit}"
    _emit(args, text, {"configurations": B.size, "arcs": arcs, "symmetric": symmetric,
                       "emitted": args.emit})
    return 0


def cmd_pipeline(args) -> int:
    m = _read_machine(args.machine)
    A = load_structure(args.structure)
    order = _parse_order(args.order, A.size)
    result = (pipeline_L if args.which == "L" else pipeline_NL)(m, A, order)
    text = (f"{'ACCEPT' if result.verdict else 'REJECT'} encoding={result.encoding} "
            f"simulation={'ACCEPT' if result.expected else 'REJECT'}")
    _emit(args, text, {"verdict": result.verdict, "encoding": result.encoding,
                       "simulation": result.expected})
    return 0 if result.verdict else 1


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    lines = []
    out = None if args.format == "json" else print
    results = run_selftest(args.suite or None, quick=args.quick, out=out)
    for r in results:
        lines.append({"criterion": r.number, "name": r.name, "passed": r.passed, "detail": r.detail})
    if args.format == "json":
        print(json.dumps({"suites": lines}, sort_keys=True))
    else:
        passed = sum(r.passed for r in results)
        print(f"{passed}/{len(results)} suites passed (kernels: {kernels.BACKEND})")
    return 0 if all(r.passed for r in results) else 1


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, default=None,
                        help="largest structure for exhaustive order enumeration (default $TRAVLAB_CAP or 8)")

    p = argparse.ArgumentParser(prog="travlab", description="Traversal-invariant definability workbench.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify-order", parents=[common], help="which search produced an order")
    s.add_argument("structure")
    s.add_argument("--order", help="visit sequence, e.g. 0,2,1 (default: numbering)")
    s.add_argument("--engine", choices=("fo", "kernel"), default="fo")
    s.set_defaults(func=cmd_classify_order)

    s = sub.add_parser("search-orders", parents=[common], help="every order a search can produce")
    s.add_argument("structure")
    s.add_argument("--kind", choices=("generic", "bfs", "dfs"), default="generic")
    s.set_defaults(func=cmd_search_orders)

    s = sub.add_parser("canonical-bft", parents=[common], help="canonical breadth-first order")
    s.add_argument("structure")
    s.add_argument("--order", help="base order breaking ties (default: numbering)")
    s.set_defaults(func=cmd_canonical_bft)

    s = sub.add_parser("quasi-levels", parents=[common], help="quasi-levels of a breadth-first order")
    s.add_argument("structure")
    s.add_argument("--order", help="breadth-first visit sequence (default: numbering)")
    s.set_defaults(func=cmd_quasi_levels)

    s = sub.add_parser("invariance", parents=[common], help="order-invariance of a sentence")
    inv = s.add_subparsers(dest="action", required=True)
    c = inv.add_parser("check", parents=[common])
    c.add_argument("structures", help="structure file or directory of .struct files")
    c.add_argument("formula", help="formula file or formula text")
    c.add_argument("--kind", choices=KINDS, default="traversal")
    c.set_defaults(func=cmd_invariance_check)

    s = sub.add_parser("eval", parents=[common], help="evaluate a sentence")
    s.add_argument("structure")
    s.add_argument("formula", help="formula file or formula text")
    s.add_argument("--order", help="evaluate on this order expansion (symbol <)")
    s.add_argument("--kind", choices=KINDS, help="evaluate the invariance-quantified sentence")
    s.add_argument("--verify", action="store_true", help="with --kind: check invariance first")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("reduce", parents=[common], help="apply a reduction interpretation")
    s.add_argument("which", choices=("rho", "tau"))
    s.add_argument("structure")
    s.add_argument("--order", help="successor order for rho (default: the structure's own or numbering)")
    s.add_argument("--emit", help="write the result to this file")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("decide", parents=[common], help="decide a query through logic")
    dec = s.add_subparsers(dest="query", required=True)
    c = dec.add_parser("reach", parents=[common])
    c.add_argument("structure", help="digraph with constants s and t")
    c.add_argument("--order", help="successor order (default: the structure's own or numbering)")
    c.add_argument("--trace", action="store_true", help="show distances and the value of each conjunct")
    c.set_defaults(func=cmd_decide_reach)

    s = sub.add_parser("machine", parents=[common], help="multihead automata")
    mac = s.add_subparsers(dest="action", required=True)
    c = mac.add_parser("run", parents=[common])
    c.add_argument("machine")
    c.add_argument("string")
    c.set_defaults(func=cmd_machine)
    c = mac.add_parser("graph", parents=[common])
    c.add_argument("machine")
    c.add_argument("string")
    c.add_argument("--emit", help="write the configuration graph (with successor) here")
    c.set_defaults(func=cmd_machine)

    s = sub.add_parser("pipeline", parents=[common], help="decide a machine's language through logic")
    s.add_argument("which", choices=("L", "NL"))
    s.add_argument("machine")
    s.add_argument("structure")
    s.add_argument("--order", help="successor order used for the encoding")
    s.set_defaults(func=cmd_pipeline)

    s = sub.add_parser("selftest", parents=[common], help="run the end-to-end suites")
    s.add_argument("--suite", type=int, action="append", choices=range(1, 10), metavar="N",
                   help="run only suite N (repeatable)")
    s.add_argument("--quick", action="store_true", help="smaller sizes, for a fast smoke run")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        enumeration_cap(args.cap)  # reject a malformed $TRAVLAB_CAP early
        return args.func(args)
    except _Usage as e:
        print(f"travlab: {e}", file=sys.stderr)
        return 2
    except _INPUT_ERRORS as e:
        print(f"travlab: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
