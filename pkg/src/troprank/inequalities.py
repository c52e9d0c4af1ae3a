"""Solvers for tropical vector inequalities.

Three problems are covered, all over the log-domain max-times algebra
from :mod:`troprank.semiring`:

* ``A x <= d``            -- greatest solution by residuation,
* ``A x + c <= x``        -- parametric family x = S u, u >= c, where S
                             is the Kleene star of A,
* ``A x + c <= x <= d``   -- the same family with the parameter vector
                             boxed, c <= u <= (d- S)-.

Solution families are returned as :class:`ParametricBox` values.  The
two infeasibility modes are reported as distinct exception types
because downstream front construction treats them differently:
:class:`~troprank.semiring.StarConditionError` when the closure
condition Tr(A) <= 1 fails, and :class:`EmptyBoxError` when the bounds
squeeze the parameter box empty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .semiring import (
    DEFAULT_TOL,
    TOP,
    ZERO,
    ONE,
    DomainError,
    conjugate,
    eq,
    is_column_regular,
    is_regular,
    kleene_star,
    leq,
    mat_mul,
)


class EmptyBoxError(ValueError):
    """The combined lower and upper bounds admit no solution."""

    def __init__(self, gate_value: float):
        self.gate_value = gate_value
        super().__init__(
            f"bound compatibility value exceeds one (log excess {gate_value:.6g}); "
            "the double inequality has no regular solution"
        )


@dataclass(frozen=True)
class ParametricBox:
    """Solution family {x = star @ u : lower <= u <= upper}.

    ``upper`` entries may be the TOP sentinel, meaning the parameter is
    unbounded above in that coordinate.
    """

    star: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        if self.star.ndim != 2 or self.star.shape[0] != self.star.shape[1]:
            raise ValueError(f"generator must be square, got shape {self.star.shape}")
        n = self.star.shape[0]
        if self.lower.shape != (n,) or self.upper.shape != (n,):
            raise ValueError("bound vectors must match the generator size")
        if not leq(self.lower, self.upper, DEFAULT_TOL):
            with np.errstate(invalid="ignore"):
                excess = self.lower - self.upper
            excess = np.where(np.isnan(excess), ZERO, excess)
            raise EmptyBoxError(float(np.max(excess)))

    @property
    def dim(self) -> int:
        return self.star.shape[0]

    @property
    def is_bounded(self) -> bool:
        return bool(np.all(self.upper < TOP))

    def member(self, u, tol: float = DEFAULT_TOL) -> np.ndarray:
        """Family member generated by a parameter vector inside the box."""
        u = np.asarray(u, dtype=float)
        if not (leq(self.lower, u, tol) and leq(u, self.upper, tol)):
            raise DomainError("parameter vector lies outside the box bounds")
        return mat_mul(self.star, u)


def residual(a, d) -> np.ndarray:
    """Greatest x with A x <= d, in the completed algebra.

    Componentwise x_j = min_i d_i / a_ij, where zero entries of A and
    TOP entries of d impose no constraint (giving TOP) and zero entries
    of d force x_j to zero wherever column j can reach row i.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    if a.ndim != 2 or d.ndim != 1 or a.shape[0] != d.shape[0]:
        raise ValueError(f"incompatible shapes: matrix {a.shape}, bound {d.shape}")
    with np.errstate(invalid="ignore"):
        quot = d[:, None] - a
    quot = np.where(np.isnan(quot) | (a == ZERO), TOP, quot)
    return quot.min(axis=0)


def solve_upper(a, d, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Maximal solution of A x <= d for column-regular A and regular d.

    Every solution y satisfies y <= result, and the result itself
    satisfies the inequality.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    if not is_column_regular(a):
        raise DomainError("coefficient matrix has a zero column")
    if not is_regular(d):
        raise DomainError("bound vector must be regular (no zero components)")
    return residual(a, d)


def solve_recursive(a, c, tol: float = DEFAULT_TOL) -> ParametricBox:
    """All regular solutions of A x + c <= x, as an unbounded box.

    Requires Tr(A) <= 1 (StarConditionError otherwise); the family is
    x = star @ u for u >= c.
    """
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    if c.shape != (a.shape[0],):
        raise ValueError(f"incompatible shapes: matrix {a.shape}, vector {c.shape}")
    star = kleene_star(a, tol)
    return ParametricBox(star=star, lower=c, upper=np.full(c.shape, TOP))


def solve_double(a, c, d, tol: float = DEFAULT_TOL) -> ParametricBox:
    """All regular solutions of A x + c <= x <= d.

    Requires Tr(A) <= 1 and a regular d.  Raises EmptyBoxError when the
    compatibility condition d- star c <= 1 fails (Tr failures raise
    StarConditionError instead).
    """
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    d = np.asarray(d, dtype=float)
    if c.shape != (a.shape[0],) or d.shape != (a.shape[0],):
        raise ValueError("bound vectors must match the matrix size")
    if not is_regular(d):
        raise DomainError("upper bound vector must be regular")
    star = kleene_star(a, tol)
    gate = mat_mul(conjugate(d), mat_mul(star, c))
    if gate > ONE + tol:
        raise EmptyBoxError(gate)
    upper = residual(star, d)
    # the gate test guarantees c <= upper up to rounding; clamp the slack
    upper = np.maximum(upper, c)
    return ParametricBox(star=star, lower=c, upper=upper)


def contains(box: ParametricBox, x, tol: float = DEFAULT_TOL) -> bool:
    """Membership test for the family described by a ParametricBox.

    Uses residuation: the greatest preimage of x under the generator is
    clipped into the parameter box, and x is a member exactly when the
    clipped parameter reproduces it.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (box.dim,):
        raise ValueError(f"vector of size {x.shape} does not match box of size {box.dim}")
    u = residual(box.star, x)
    u = np.maximum(np.minimum(u, box.upper), box.lower)
    return eq(mat_mul(box.star, u), x, tol)
