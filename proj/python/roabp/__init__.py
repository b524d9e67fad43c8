"""Identity tests for read-once oblivious algebraic branching programs."""

from ._core import (
    BudgetExceeded,
    ParseError,
    Program,
    RecursionBudgetExceeded,
    concentration_level,
    hitting_set,
    sum_is_zero,
    sum_parameters,
)

__all__ = [
    "BudgetExceeded",
    "ParseError",
    "Program",
    "RecursionBudgetExceeded",
    "concentration_level",
    "hitting_set",
    "sum_is_zero",
    "sum_parameters",
]
