"""First-order logic: syntax, parsing and evaluation."""

from .evaluate import EvaluationError, check_formula, compile_formula, eval_term, evaluate
from .naive import naive_evaluate
from .parser import FormulaSyntaxError, parse_formula, parse_term
from .syntax import *  # noqa: F401,F403
from .syntax import __all__ as _syntax_all

__all__ = [
    "EvaluationError", "check_formula", "compile_formula", "eval_term", "evaluate",
    "naive_evaluate", "FormulaSyntaxError", "parse_formula", "parse_term",
] + list(_syntax_all)
