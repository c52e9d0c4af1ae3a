"""Brute-force cross-checks for the analytic solver, at desk scale.

Two independent verifiers:

* :func:`grid_pareto` sweeps a log-uniform grid of candidate vectors,
  evaluates both objectives directly and keeps the non-dominated pairs,
  giving an empirical lower envelope to compare against the analytic
  front.
* :func:`enum_word_sum` rebuilds mixed matrix word sums by explicit
  enumeration over factor orderings, checking the dynamic-programming
  construction.

Both raise :class:`ResourceLimitError` instead of attempting runs that
would not finish at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import semiring as sr
from .bicriteria import ProblemInstance
from .semiring import TOP, ZERO


class ResourceLimitError(ValueError):
    """The requested enumeration exceeds the configured size cap."""


@dataclass(frozen=True)
class GridSpec:
    """Log-domain search window: per-component range plus points per axis."""

    log_lo: np.ndarray
    log_hi: np.ndarray
    resolution: int
    max_points: int = 2_000_000

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError(f"resolution must be at least 2, got {self.resolution}")
        if self.log_lo.shape != self.log_hi.shape or self.log_lo.ndim != 1:
            raise ValueError("range endpoints must be vectors of equal length")
        if not (np.all(np.isfinite(self.log_lo)) and np.all(np.isfinite(self.log_hi))):
            raise ValueError("grid ranges must be finite; cap unbounded limits first")
        if np.any(self.log_lo > self.log_hi):
            raise ValueError("grid range is empty")

    @classmethod
    def from_instance(
        cls,
        inst: ProblemInstance,
        resolution: int,
        span: float = 16.0,
        center=None,
        max_points: int = 2_000_000,
    ) -> "GridSpec":
        """Window covering the instance box, with unbounded limits capped.

        A zero lower bound is replaced by the (finite) upper bound
        divided by ``span``; an unbounded upper bound is replaced by
        span times the matching ``center`` component, which must then be
        supplied (ordinarily a known representative vector, log domain).
        """
        lo = inst.g.copy()
        hi = inst.h.copy()
        log_span = np.log(span)
        unbounded = hi == TOP
        if np.any(unbounded):
            if center is None:
                raise ValueError("instance has unbounded limits; provide a center")
            hi = np.where(unbounded, np.asarray(center, dtype=float) + log_span, hi)
        lo = np.where(lo == ZERO, hi - log_span, lo)
        return cls(log_lo=lo, log_hi=hi, resolution=resolution, max_points=max_points)

    def axes(self) -> list:
        return [
            np.linspace(self.log_lo[j], self.log_hi[j], self.resolution)
            if self.log_hi[j] > self.log_lo[j]
            else np.array([self.log_lo[j]])
            for j in range(self.log_lo.shape[0])
        ]


def _grid_matrix(spec: GridSpec) -> np.ndarray:
    axes = spec.axes()
    total = int(np.prod([len(ax) for ax in axes]))
    if total > spec.max_points:
        raise ResourceLimitError(
            f"grid of {total} points exceeds the cap of {spec.max_points}"
        )
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _objective_values(mat: np.ndarray, points: np.ndarray) -> np.ndarray:
    # max over i, j of mat[i, j] * x[j] / x[i], vectorized over the rows of points
    inner = (mat[None, :, :] - points[:, :, None]).max(axis=1)
    return (inner + points).max(axis=1)


def non_dominated(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Boolean mask of pairs not dominated by any other pair (minimization)."""
    order = np.lexsort((beta, alpha))
    keep = np.zeros(alpha.shape[0], dtype=bool)
    best_beta = np.inf
    for idx in order:
        if beta[idx] < best_beta - 1e-15:
            keep[idx] = True
            best_beta = beta[idx]
    return keep


def grid_pareto(inst: ProblemInstance, spec: GridSpec) -> list:
    """Non-dominated (alpha, beta, x) triples over the grid, sorted by alpha.

    Grid points falling outside the instance box are discarded before
    the objectives are evaluated.
    """
    points = _grid_matrix(spec)
    inside = np.all(points >= inst.g[None, :] - 1e-12, axis=1) & np.all(
        points <= inst.h[None, :] + 1e-12, axis=1
    )
    points = points[inside]
    if points.shape[0] == 0:
        return []
    alpha = _objective_values(inst.a, points)
    beta = _objective_values(inst.b, points)
    keep = non_dominated(alpha, beta)
    chosen = sorted(np.flatnonzero(keep), key=lambda i: (alpha[i], beta[i]))
    return [(float(alpha[i]), float(beta[i]), points[i].copy()) for i in chosen]


def enum_word_sum(a, b, k: int, m: int, max_len: int = 8) -> np.ndarray:
    """Word-by-word rebuild of the mixed product sum with k b's and m a's.

    Enumerates every arrangement of the k + m factors explicitly; the
    result must match :func:`troprank.bicriteria.word_sum`.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("operands must be square matrices of equal size")
    if k + m > max_len:
        raise ResourceLimitError(
            f"word length {k + m} exceeds the enumeration cap of {max_len}"
        )
    n = a.shape[0]
    total = sr.zeros((n, n))
    for positions in itertools.combinations(range(k + m), k):
        word = sr.identity(n)
        for spot in range(k + m):
            word = sr.mat_mul(word, b if spot in positions else a)
        total = sr.mat_add(total, word)
    return total


def front_agreement(
    inst: ProblemInstance,
    front,
    spec: GridSpec,
    front_samples: int = 20,
    rel_tol: float | None = None,
) -> dict:
    """Compare the grid envelope with an analytic front.

    Returns a report with the worst multiplicative gap between sampled
    analytic points and their best grid cover, and the worst margin by
    which any grid point undercuts the analytic envelope.  ``rel_tol``
    (ordinary-scale relative, e.g. 0.02 for two percent) defaults to
    twice the largest grid step.
    """
    grid_front = grid_pareto(inst, spec)
    if not grid_front:
        raise ValueError("grid produced no feasible points; widen the window")
    if rel_tol is None:
        steps = [
            (spec.log_hi[j] - spec.log_lo[j]) / (spec.resolution - 1)
            for j in range(spec.log_lo.shape[0])
            if spec.log_hi[j] > spec.log_lo[j]
        ]
        rel_tol = float(np.expm1(2 * max(steps))) if steps else 1e-9
    log_tol = np.log1p(rel_tol)

    galpha = np.array([p[0] for p in grid_front])
    gbeta = np.array([p[1] for p in grid_front])
    samples = front.sample(front_samples)

    # coverage: each analytic point is approached from above by some grid pair
    cover_gap = ZERO
    for fa, fb in samples:
        gaps = np.maximum(galpha - fa, gbeta - fb)
        gaps = np.maximum(gaps, 0.0)
        cover_gap = max(cover_gap, float(gaps.min()))

    # soundness: no grid pair beats the analytic envelope
    beta_floor = front.beta_at(front.alpha_hi)
    undercut = 0.0
    for ga, gb in zip(galpha, gbeta):
        undercut = max(undercut, front.alpha_lo - ga)
        envelope = front.beta_at(max(ga, front.alpha_lo)) if not front.is_point else front.beta
        envelope = max(envelope, beta_floor)
        undercut = max(undercut, envelope - gb)

    return {
        "grid_points": len(grid_front),
        "rel_tol": rel_tol,
        "cover_gap": cover_gap,
        "undercut": undercut,
        "agrees": bool(cover_gap <= log_tol and undercut <= log_tol),
    }
