"""troprank: tropical max-algebra ratings from pairwise comparisons.

A library for the max-times (tropical) semifield in the log domain,
residuation-based inequality solvers, the exact Pareto front of the
box-constrained two-criteria rating problem, brute-force verification
oracles, and a decision-facing rating layer.  See the module docstrings
for the mathematical conventions.
"""

from .bicriteria import (
    EmptyRangeError,
    FrontFunctions,
    FrontScalars,
    FrontTerm,
    ParetoFront,
    ProblemInstance,
    compute_front,
    front_functions,
    front_scalars,
    objectives,
    solutions_at,
    word_sum,
)
from .inequalities import (
    EmptyBoxError,
    ParametricBox,
    contains,
    residual,
    solve_double,
    solve_recursive,
    solve_upper,
)
from .oracle import GridSpec, ResourceLimitError, enum_word_sum, grid_pareto
from .ratings import (
    AlphaRangeError,
    ComparisonMatrix,
    RatingResult,
    ReciprocityError,
    Representative,
    consistency_index,
    log_cheb_error,
    max_relative_error,
    rate,
    validate_reciprocal,
)
from .semiring import (
    DEFAULT_TOL,
    ONE,
    TOP,
    ZERO,
    DomainError,
    StarConditionError,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaRangeError",
    "ComparisonMatrix",
    "DEFAULT_TOL",
    "DomainError",
    "EmptyBoxError",
    "EmptyRangeError",
    "FrontFunctions",
    "FrontScalars",
    "FrontTerm",
    "GridSpec",
    "ONE",
    "ParametricBox",
    "ParetoFront",
    "ProblemInstance",
    "RatingResult",
    "ReciprocityError",
    "Representative",
    "ResourceLimitError",
    "StarConditionError",
    "TOP",
    "ZERO",
    "compute_front",
    "consistency_index",
    "contains",
    "enum_word_sum",
    "front_functions",
    "front_scalars",
    "grid_pareto",
    "log_cheb_error",
    "max_relative_error",
    "objectives",
    "rate",
    "residual",
    "solutions_at",
    "solve_double",
    "solve_recursive",
    "solve_upper",
    "validate_reciprocal",
    "word_sum",
]
