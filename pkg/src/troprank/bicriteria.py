"""Exact Pareto front for the box-constrained two-matrix rating problem.

The problem: given square max-times matrices A and B and bound vectors
g <= h (h regular), minimize the pair of conjugate quadratic forms

    ( x- A x ,  x- B x )    subject to  g <= x <= h,  x regular,

simultaneously in the Pareto sense.  Writing alpha and beta for the two
objective values, the feasible region in the (alpha, beta) plane is
bounded left by alpha >= alpha_min, below by beta >= beta_min, and below
by a strictly decreasing curve beta = C(alpha) whose monomial terms come
from tropical sums of matrix words mixing A and B.  The front is either
the single corner point (alpha_min, beta_min) or the piece of the curve
between alpha_min and the alpha where the curve crosses beta_min.

At any front point all optimal vectors form the family

    x = (alpha^-1 A + beta^-1 B)* u,   g <= u <= (h- star)-,

computed here by :func:`troprank.inequalities.solve_double`.

Everything operates on log-domain arrays (see :mod:`troprank.semiring`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import semiring as sr
from .inequalities import ParametricBox, solve_double
from .semiring import DEFAULT_TOL, ONE, TOP, ZERO, DomainError


class EmptyRangeError(ValueError):
    """The stated box bounds are contradictory (some g_j > h_j)."""


@dataclass(frozen=True)
class ProblemInstance:
    """Log-domain problem data: matrices a, b and box bounds g <= h.

    ``g`` may contain zero components; ``h`` must be regular (TOP
    entries mean unbounded above).
    """

    a: np.ndarray
    b: np.ndarray
    g: np.ndarray
    h: np.ndarray

    def __post_init__(self):
        a, b, g, h = self.a, self.b, self.g, self.h
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"first matrix must be square, got shape {a.shape}")
        if b.shape != a.shape:
            raise ValueError(f"matrices must share a shape: {a.shape} vs {b.shape}")
        n = a.shape[0]
        if g.shape != (n,) or h.shape != (n,):
            raise ValueError("bound vectors must match the matrix size")
        if not np.any(a > ZERO) or not np.any(b > ZERO):
            raise ValueError("comparison matrices must be nonzero")
        if np.any(a == TOP) or np.any(b == TOP):
            raise ValueError("comparison matrices must be finite")
        if not sr.is_regular(h):
            raise DomainError("upper bound vector must be regular")
        if not sr.leq(g, h):
            raise EmptyRangeError("lower bounds exceed upper bounds")

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @classmethod
    def from_values(cls, a, b, g=None, h=None) -> "ProblemInstance":
        """Build an instance from ordinary-scale data.

        Missing g defaults to all zeros (no lower bounds), missing h to
        unbounded.
        """
        a_log = sr.from_values(a)
        b_log = sr.from_values(b)
        n = a_log.shape[0] if a_log.ndim == 2 else 0
        g_log = sr.zeros(n) if g is None else sr.from_values(g)
        h_log = np.full(n, TOP) if h is None else sr.from_values(h)
        return cls(a=a_log, b=b_log, g=g_log, h=h_log)


@dataclass(frozen=True)
class FrontScalars:
    """Lower limits of the two objectives.

    ``spectral_*`` are the spectral radii of the matrices (the best
    unconstrained objective values); ``boundary_*`` are the extra floors
    induced by the box bounds.
    """

    spectral_a: float
    spectral_b: float
    boundary_a: float
    boundary_b: float

    @property
    def alpha_min(self) -> float:
        return max(self.spectral_a, self.boundary_a)

    @property
    def beta_min(self) -> float:
        return max(self.spectral_b, self.boundary_b)


@dataclass(frozen=True)
class FrontTerm:
    """One monomial coeff * s**exponent of a front curve (log-domain coeff)."""

    coeff: float
    exponent: Fraction


def eval_terms(terms, s: float) -> float:
    """Evaluate a tropical monomial sum at a positive point s.

    An empty term list evaluates to zero.
    """
    if s == ZERO:
        raise DomainError("front curves are defined for positive arguments only")
    best = ZERO
    for t in terms:
        best = max(best, t.coeff + float(t.exponent) * s)
    return best


@dataclass(frozen=True)
class FrontFunctions:
    """The front curve and its inverse as tropical monomial sums.

    ``beta_terms`` give the least achievable second objective for a
    given first objective; ``alpha_terms`` give the inverse map.  On the
    range where both are positive the two functions are mutually
    inverse, strictly decreasing bijections.
    """

    beta_terms: tuple
    alpha_terms: tuple

    def beta_at(self, alpha: float) -> float:
        return eval_terms(self.beta_terms, alpha)

    def alpha_at(self, beta: float) -> float:
        return eval_terms(self.alpha_terms, beta)


@dataclass(frozen=True)
class ParetoFront:
    """The exact front: a single point or a curve segment.

    For a point front, ``alpha_lo == alpha_hi`` and ``beta`` holds the
    second coordinate.  For a segment, beta varies as
    ``functions.beta_at(alpha)`` over ``[alpha_lo, alpha_hi]`` and the
    ``beta`` field is None.
    """

    kind: str  # "point" or "segment"
    alpha_lo: float
    alpha_hi: float
    beta: float | None
    functions: FrontFunctions

    @property
    def is_point(self) -> bool:
        return self.kind == "point"

    def beta_at(self, alpha: float) -> float:
        """Second objective on the front at the given first objective."""
        if self.is_point:
            return float(self.beta)
        return self.functions.beta_at(alpha)

    def covers_alpha(self, alpha: float, tol: float = DEFAULT_TOL) -> bool:
        """True when alpha falls on the front (within tolerance)."""
        return self.alpha_lo - tol <= alpha <= self.alpha_hi + tol

    def sample(self, count: int) -> list:
        """(alpha, beta) pairs along the front, log-uniform in alpha.

        A point front yields its single pair regardless of count.
        """
        if count < 1:
            raise ValueError(f"sample count must be positive, got {count}")
        if self.is_point:
            return [(self.alpha_lo, float(self.beta))]
        alphas = np.linspace(self.alpha_lo, self.alpha_hi, count)
        return [(float(a), self.functions.beta_at(float(a))) for a in alphas]


def word_sum(a, b, k: int, m: int) -> np.ndarray:
    """Tropical sum of all products with exactly k factors of b and m of a.

    Computed by the two-way recurrence
        W(k, m) = a W(k, m-1) + b W(k-1, m),
    anchored at W(0, m) = a^m and W(k, 0) = b^k, so the cost is one
    matrix product per table cell instead of one per word.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("operands must be square matrices of equal size")
    if k < 0 or m < 0:
        raise ValueError("factor counts must be nonnegative")
    return _word_table(a, b, k, m)[(k, m)]


def _word_table(a, b, kmax: int, mmax: int) -> dict:
    table = {(0, 0): sr.identity(a.shape[0])}
    for j in range(1, mmax + 1):
        table[(0, j)] = sr.mat_mul(table[(0, j - 1)], a)
    for i in range(1, kmax + 1):
        table[(i, 0)] = sr.mat_mul(b, table[(i - 1, 0)])
        for j in range(1, mmax + 1):
            table[(i, j)] = sr.mat_add(
                sr.mat_mul(a, table[(i, j - 1)]),
                sr.mat_mul(b, table[(i - 1, j)]),
            )
    return table


def front_scalars(inst: ProblemInstance) -> FrontScalars:
    """Spectral and boundary floors of the two objectives."""
    return FrontScalars(
        spectral_a=sr.spectral_radius(inst.a),
        spectral_b=sr.spectral_radius(inst.b),
        boundary_a=_boundary_floor(inst.a, inst.g, inst.h),
        boundary_b=_boundary_floor(inst.b, inst.g, inst.h),
    )


def _boundary_floor(mat, g, h) -> float:
    # max over k = 1..n-1 of (h- mat^k g)^(1/k)
    n = mat.shape[0]
    hc = sr.conjugate(h)
    best = ZERO
    p = sr.identity(n)
    for k in range(1, n):
        p = sr.mat_mul(p, mat)
        val = sr.mat_mul(hc, sr.mat_mul(p, g))
        if val > ZERO:
            best = max(best, val / k)
    return best


def front_functions(inst: ProblemInstance) -> FrontFunctions:
    """Monomial terms of the front curve and of its inverse.

    Trace terms run over word sums with k = 1..n-1 factors of b and
    m = 1..n-k factors of a; boundary terms (from the box bounds) over
    k = 1..n-2 and m = 1..n-k-1.  Terms whose coefficient is zero are
    dropped.
    """
    return _build_front_functions(inst.a, inst.b, inst.g, inst.h)


def _build_front_functions(a, b, g, h) -> FrontFunctions:
    n = a.shape[0]
    beta_terms = []
    alpha_terms = []
    if n >= 2:
        table = _word_table(a, b, n - 1, n - 1)
        hc = sr.conjugate(h)

        def emit(base: float, k: int, m: int) -> None:
            if base > ZERO:
                beta_terms.append(FrontTerm(base / k, Fraction(-m, k)))
                alpha_terms.append(FrontTerm(base / m, Fraction(-k, m)))

        for k in range(1, n):
            for m in range(1, n - k + 1):
                emit(sr.trace(table[(k, m)]), k, m)
        for k in range(1, n - 1):
            for m in range(1, n - k):
                emit(sr.mat_mul(hc, sr.mat_mul(table[(k, m)], g)), k, m)
    return FrontFunctions(beta_terms=tuple(beta_terms), alpha_terms=tuple(alpha_terms))


def compute_front(inst: ProblemInstance, tol: float = DEFAULT_TOL) -> ParetoFront:
    """Classify and return the exact Pareto front of the instance.

    The front is the point (alpha_min, beta_min) when the inverse curve
    at beta_min does not exceed alpha_min (boundary cases within
    tolerance count as a point); otherwise it is the curve segment from
    alpha_min to that crossing.
    """
    scalars = front_scalars(inst)
    functions = front_functions(inst)
    a_min = scalars.alpha_min
    b_min = scalars.beta_min
    crossing = (
        functions.alpha_at(b_min) if functions.alpha_terms else ZERO
    )
    if crossing <= a_min + tol:
        return ParetoFront(
            kind="point", alpha_lo=a_min, alpha_hi=a_min, beta=b_min, functions=functions
        )
    return ParetoFront(
        kind="segment", alpha_lo=a_min, alpha_hi=crossing, beta=None, functions=functions
    )


def solutions_at(
    inst: ProblemInstance, alpha: float, beta: float, tol: float = DEFAULT_TOL
) -> ParametricBox:
    """All optimal vectors at a front point (alpha, beta).

    Valid whenever (alpha, beta) lies on or above the front; infeasible
    pairs raise the solver's typed errors.
    """
    pencil = sr.mat_add(
        sr.scalar_mul(sr.inv(alpha), inst.a),
        sr.scalar_mul(sr.inv(beta), inst.b),
    )
    return solve_double(pencil, inst.g, inst.h, tol)


def objectives(inst: ProblemInstance, x) -> tuple:
    """Objective pair (x- A x, x- B x) at a regular vector x."""
    x = np.asarray(x, dtype=float)
    if not sr.is_regular(x):
        raise DomainError("objective values require a regular vector")
    xc = sr.conjugate(x)
    return (
        float(sr.mat_mul(xc, sr.mat_mul(inst.a, x))),
        float(sr.mat_mul(xc, sr.mat_mul(inst.b, x))),
    )
