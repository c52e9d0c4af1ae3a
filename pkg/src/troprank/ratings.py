"""Decision-facing layer: validate comparison matrices and report ratings.

Inputs and outputs here live on the ordinary (max-times) scale; the
tropical core is driven internally in the log domain.  A pairwise
comparison matrix must be positive and symmetrically reciprocal
(a_ij * a_ji = 1); ratings are reported max-normalized (largest
component equal to 1), since the underlying solutions are defined up to
a positive factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import semiring as sr
from .bicriteria import (
    ParetoFront,
    ProblemInstance,
    compute_front,
    solutions_at,
)
from .inequalities import ParametricBox, contains, residual
from .semiring import DEFAULT_TOL, TOP, ZERO, DomainError


class ReciprocityError(ValueError):
    """A would-be comparison matrix violates symmetric reciprocity."""

    def __init__(self, violations):
        self.violations = list(violations)
        pairs = ", ".join(
            f"({i + 1},{j + 1}) product {p:.6g}" for i, j, p in self.violations[:8]
        )
        more = "" if len(self.violations) <= 8 else f" and {len(self.violations) - 8} more"
        super().__init__(f"reciprocity fails at {pairs}{more}")


class AlphaRangeError(ValueError):
    """A requested first-objective value lies off the Pareto front."""


@dataclass(frozen=True)
class ComparisonMatrix:
    """Validated positive reciprocal matrix, ordinary scale."""

    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def validate_reciprocal(matrix, tol: float = 1e-6) -> ComparisonMatrix:
    """Check squareness, positivity and a_ij * a_ji = 1 within tol.

    Violations are collected and reported together, never repaired.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"comparison matrix must be square, got shape {m.shape}")
    if not np.all(m > 0):
        raise DomainError("comparison matrix entries must be positive")
    violations = []
    n = m.shape[0]
    for i in range(n):
        for j in range(i, n):
            prod = m[i, j] * m[j, i]
            if abs(prod - 1.0) > tol:
                violations.append((i, j, float(prod)))
    if violations:
        raise ReciprocityError(violations)
    return ComparisonMatrix(entries=m.copy())


def consistency_index(cm: ComparisonMatrix) -> float:
    """Tropical spectral radius on the ordinary scale.

    Equals 1 exactly when the matrix is consistent (transitive), and
    grows with the worst cyclic discrepancy otherwise.
    """
    return sr.to_value(sr.spectral_radius(sr.from_values(cm.entries)))


def log_cheb_error(cm: ComparisonMatrix, x, base: float | None = None) -> float:
    """Chebyshev distance in log scale between the matrix and ratings x.

    max over i, j of |log a_ij - log(x_i / x_j)|, natural log unless a
    base is given.
    """
    m = cm.entries
    x = np.asarray(x, dtype=float)
    if not np.all(x > 0):
        raise DomainError("ratings must be positive")
    ratios = x[:, None] / x[None, :]
    err = float(np.max(np.abs(np.log(m) - np.log(ratios))))
    if base is not None:
        err /= math.log(base)
    return err


def max_relative_error(cm: ComparisonMatrix, x) -> float:
    """Largest relative entry discrepancy max |a_ij - x_i/x_j| / a_ij."""
    m = cm.entries
    x = np.asarray(x, dtype=float)
    if not np.all(x > 0):
        raise DomainError("ratings must be positive")
    ratios = x[:, None] / x[None, :]
    return float(np.max(np.abs(m - ratios) / m))


@dataclass(frozen=True)
class Representative:
    """One optimal rating vector at a front point, with error diagnostics.

    ``x`` is the family member itself (it satisfies the box bounds);
    ``normalized`` is the same vector scaled so its largest component is
    1.  ``source`` records how the member was picked: the least or the
    greatest member of the family, or a generator column direction.
    """

    alpha: float
    beta: float
    x: np.ndarray
    normalized: np.ndarray
    source: str
    log_cheb: tuple
    max_rel: tuple


@dataclass(frozen=True)
class RatingResult:
    """Front plus solution families and representative ratings.

    ``families`` holds (alpha, beta, box) per reported front point, with
    alpha and beta on the ordinary scale and the box in the log-domain
    core representation.
    """

    front: ParetoFront
    families: tuple
    representatives: tuple


def rate(
    cm_a: ComparisonMatrix,
    cm_b: ComparisonMatrix,
    g=None,
    h=None,
    *,
    at_alpha: float | None = None,
    front_samples: int = 5,
    tol: float = DEFAULT_TOL,
    log_base: float | None = None,
) -> RatingResult:
    """Solve the two-criteria rating problem for validated matrices.

    Args:
        cm_a, cm_b: validated comparison matrices for the two criteria.
        g, h: optional ordinary-scale bound vectors (defaults: no lower
            bounds, no upper bounds).
        at_alpha: restrict the report to the front point with this first
            objective value (ordinary scale); raises AlphaRangeError
            when it falls off the front.
        front_samples: number of front points reported for a segment
            front (endpoints always included).
        log_base: base for the log-Chebyshev diagnostics.

    Returns:
        RatingResult with the front, one solution family per reported
        front point, and deduplicated representative ratings.
    """
    if cm_a.n != cm_b.n:
        raise ValueError("comparison matrices must have matching sizes")
    inst = ProblemInstance.from_values(cm_a.entries, cm_b.entries, g, h)
    front = compute_front(inst, tol)

    if at_alpha is not None:
        alpha_log = sr.from_value(at_alpha)
        if not front.covers_alpha(alpha_log, tol):
            raise AlphaRangeError(
                f"alpha = {at_alpha:.6g} is outside the front range "
                f"[{sr.to_value(front.alpha_lo):.6g}, {sr.to_value(front.alpha_hi):.6g}]"
            )
        alpha_log = min(max(alpha_log, front.alpha_lo), front.alpha_hi)
        points = [(alpha_log, front.beta_at(alpha_log))]
    else:
        points = front.sample(front_samples if not front.is_point else 1)

    families = []
    representatives = []
    for alpha_log, beta_log in points:
        box = solutions_at(inst, alpha_log, beta_log, tol)
        alpha = sr.to_value(alpha_log)
        beta = sr.to_value(beta_log)
        families.append((alpha, beta, box))
        for x_log, source in _family_members(box, tol):
            representatives.append(
                _make_representative(cm_a, cm_b, alpha, beta, x_log, source, log_base)
            )
    return RatingResult(
        front=front, families=tuple(families), representatives=tuple(representatives)
    )


def _family_members(box: ParametricBox, tol: float) -> list:
    """Representative members of a family, deduplicated by direction.

    Emits the least member (u at the lower bound), the greatest member
    (u at the upper bound, when bounded), and every generator column
    whose direction is realizable inside the family; collinear picks
    are reported once.
    """
    members = []
    least = sr.mat_mul(box.star, box.lower)
    if sr.is_regular(least) and not np.any(least == TOP):
        members.append((least, "least member"))
    if box.is_bounded:
        greatest = sr.mat_mul(box.star, box.upper)
        if sr.is_regular(greatest):
            members.append((greatest, "greatest member"))
    for j in range(box.dim):
        column = box.star[:, j]
        if not sr.is_regular(column):
            continue
        realized = _realize_direction(box, column, least, tol)
        if realized is not None:
            members.append((realized, f"generator column {j + 1}"))

    kept = []
    seen = []
    for x_log, source in members:
        direction = x_log - np.max(x_log)
        if any(sr.eq(direction, d, 1e-7) for d in seen):
            continue
        seen.append(direction)
        kept.append((x_log, source))
    return kept


def _realize_direction(box: ParametricBox, v: np.ndarray, least: np.ndarray, tol: float):
    """Scale a direction onto the family, or return None if it cannot lie there."""
    preimage = residual(box.star, v)
    if not sr.eq(sr.mat_mul(box.star, preimage), v, tol):
        return None  # not in the image of the generator
    candidates = []
    if box.is_bounded:
        greatest = sr.mat_mul(box.star, box.upper)
        candidates.append(float(np.min(greatest - v)))
    with np.errstate(invalid="ignore"):
        lift = least - v
    lift = np.where(np.isnan(lift), ZERO, lift)
    low_scale = float(np.max(lift))
    candidates.append(low_scale if low_scale > ZERO else sr.ONE)
    for c in candidates:
        x = sr.scalar_mul(c, v)
        if contains(box, x, tol):
            return x
    return None


def _make_representative(
    cm_a: ComparisonMatrix,
    cm_b: ComparisonMatrix,
    alpha: float,
    beta: float,
    x_log: np.ndarray,
    source: str,
    log_base: float | None,
) -> Representative:
    x = sr.to_values(x_log)
    normalized = sr.to_values(x_log - np.max(x_log))
    return Representative(
        alpha=alpha,
        beta=beta,
        x=x,
        normalized=normalized,
        source=source,
        log_cheb=(
            log_cheb_error(cm_a, x, log_base),
            log_cheb_error(cm_b, x, log_base),
        ),
        max_rel=(
            max_relative_error(cm_a, x),
            max_relative_error(cm_b, x),
        ),
    )
