"""Semi-invariants of gl(n) in bracket form and 6j-symbols via A-GKZ variables."""

from .grammar import ParseError, parse_expr
from .seminv import BracketSpec, expand, validate
from .sixj import build_problem, selection_set, sixj_oracle, sixj_value

__all__ = [
    "BracketSpec", "ParseError", "build_problem", "expand", "parse_expr",
    "selection_set", "sixj_oracle", "sixj_value", "validate",
]
__version__ = "0.1.0"
