"""Deciding a machine's language on structures through logic alone.

Both pipelines encode a structure (with a chosen successor) as a string
and read the machine's configuration graph off that string with the
interpretation of :func:`~travlab.machines.pi_interpretation`.

* ``pipeline_L`` (symmetric machines): the configuration graph, made
  undirected, is connected between initial and final configuration; this
  is the traversal-invariant connectivity sentence.
* ``pipeline_NL`` (any machine): directed reachability becomes
  equidistance in the layered graph, decided by ``psi`` under a
  breadth-first order.

The result is compared with direct simulation by :func:`run_machine`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .encoding import mu_encode
from .interpretations import Cases, Interpretation, translate_structure
from .invariance import eval_quantified
from .logic import parse_formula
from .logic.syntax import App
from .machines import Machine, MachineError, is_symmetric, pi_interpretation, run_machine
from .reductions import connectivity_sentence, directed_reachable_bft
from .structures import (
    SUCCESSOR_SYMBOLS, LinearOrder, Structure, gamma, reduct, string_to_structure,
    successor_expansion,
)

__all__ = [
    "PipelineError", "PipelineResult", "encode_input", "undirected_interpretation",
    "configuration_structure", "pipeline_L", "pipeline_NL",
]


class PipelineError(ValueError):
    pass


@dataclass
class PipelineResult:
    verdict: bool
    encoding: str
    expected: bool

    def __bool__(self) -> bool:
        return self.verdict

    @property
    def agrees(self) -> bool:
        return self.verdict == self.expected


def encode_input(structure: Structure, order: Optional[LinearOrder] = None) -> str:
    """``mu`` of the structure under ``order`` (default: its own successor if
    it has one, else the element numbering)."""
    if order is None and structure.is_successor:
        return mu_encode(structure)
    if set(SUCCESSOR_SYMBOLS) & set(structure.signature.functions):
        structure = reduct(structure, structure.signature.without(SUCCESSOR_SYMBOLS))
    order = order or LinearOrder.identity(structure.size)
    return mu_encode(successor_expansion(structure, order))


def undirected_interpretation() -> Interpretation:
    """Symmetric closure without loops, keeping ``s`` and ``t``."""
    e = parse_formula("x != y & (E(x, y) | E(y, x))", gamma(2))
    consts = {c: Cases((), [(parse_formula("true"), (App(c),))]) for c in ("s", "t")}
    return Interpretation("undirected", gamma(2), gamma(2), 1, (("x",), parse_formula("true")),
                          {"E": (("x", "y"), e)}, consts, produces=("graph",))


def configuration_structure(machine: Machine, x: str) -> Structure:
    """The configuration graph (2-pointed, with successor) as a translation of ``x``."""
    if len(x) < max(machine.q, 2):
        raise PipelineError(
            f"input too short: |x| = {len(x)} but the construction needs |x| >= {max(machine.q, 2)}")
    for ch in x:
        if ch not in machine.sigma:
            raise PipelineError(f"symbol {ch!r} of the encoding is not in the machine alphabet")
    return translate_structure(pi_interpretation(machine),
                               string_to_structure(x, alphabet=machine.sigma))


def pipeline_L(machine: Machine, structure: Structure,
               order: Optional[LinearOrder] = None) -> PipelineResult:
    x = encode_input(structure, order)
    if not is_symmetric(machine, x):
        raise PipelineError(f"{machine.name} is not symmetric on input {x!r}")
    config = configuration_structure(machine, x)
    g = translate_structure(undirected_interpretation(), reduct(config, gamma(2)))
    verdict = eval_quantified(g, connectivity_sentence(), "traversal")
    return PipelineResult(verdict, x, run_machine(machine, x))


def pipeline_NL(machine: Machine, structure: Structure,
                order: Optional[LinearOrder] = None) -> PipelineResult:
    x = encode_input(structure, order)
    config = configuration_structure(machine, x)
    verdict = directed_reachable_bft(config)
    return PipelineResult(verdict, x, run_machine(machine, x))


__all__ += ["MachineError"]
