"""Shared fixtures: canonical data sets, random generators, direct oracles.

The oracles here work on the ordinary (max-times) scale with plain
Python loops, independent of the log-domain library code they check.
"""

import numpy as np

from troprank import semiring as sr

# Four-alternative data set: two reciprocal comparison matrices with a
# pinned first rating and a tight ceiling on the second one.
FOUR_A = [
    [1, 3, 4, 2],
    ["1/3", 1, "1/2", "1/3"],
    ["1/4", 2, 1, 4],
    ["1/2", 3, "1/4", 1],
]
FOUR_B = [
    [1, 2, 4, 2],
    ["1/2", 1, "1/3", "1/2"],
    ["1/4", 3, 1, 4],
    ["1/2", 2, "1/4", 1],
]
FOUR_G = [1, 0, 0, 0]
FOUR_H = [1, "1/6", 1, 1]

# Two-alternative data set with a narrow box around both ratings.
TWO_A = [[1, 2], ["1/2", 1]]
TWO_B = [[1, "1/3"], [3, 1]]
TWO_G = ["1/3", "1/3"]
TWO_H = ["1/2", "1/2"]


def parse_matrix(rows):
    return np.array([[sr.parse_number(v) for v in row] for row in rows])


def parse_vector(vals):
    return np.array([sr.parse_number(v) for v in vals])


def ordinary_matrix(rows):
    return sr.to_values(parse_matrix(rows))


def four_instance():
    from troprank import ProblemInstance

    return ProblemInstance(
        a=parse_matrix(FOUR_A),
        b=parse_matrix(FOUR_B),
        g=parse_vector(FOUR_G),
        h=parse_vector(FOUR_H),
    )


def two_instance():
    from troprank import ProblemInstance

    return ProblemInstance(
        a=parse_matrix(TWO_A),
        b=parse_matrix(TWO_B),
        g=parse_vector(TWO_G),
        h=parse_vector(TWO_H),
    )


# ---------------------------------------------------------------------------
# random generators (log domain, entries log-uniform on the ordinary scale)

def random_matrix(rng, n, lo=1 / 8, hi=8.0):
    return rng.uniform(np.log(lo), np.log(hi), size=(n, n))


def random_regular_vector(rng, n, lo=1 / 8, hi=8.0):
    return rng.uniform(np.log(lo), np.log(hi), size=n)


def random_sparse_matrix(rng, n, zero_prob=0.3, lo=1 / 8, hi=8.0):
    """Random matrix with some zero entries but no zero column."""
    while True:
        m = random_matrix(rng, n, lo, hi)
        mask = rng.random((n, n)) < zero_prob
        m = np.where(mask, sr.ZERO, m)
        if np.all(m.max(axis=0) > sr.ZERO):
            return m


def random_bounds(rng, n, allow_zero_lower=True):
    """Random log-domain bounds g <= h with h regular."""
    h = rng.uniform(np.log(1 / 4), np.log(4.0), size=n)
    g = h - rng.uniform(0.1, 3.0, size=n)
    if allow_zero_lower:
        g = np.where(rng.random(n) < 0.3, sr.ZERO, g)
    return g, h


def random_instance(rng, n, allow_zero_lower=True):
    from troprank import ProblemInstance

    g, h = random_bounds(rng, n, allow_zero_lower)
    return ProblemInstance(
        a=random_matrix(rng, n), b=random_matrix(rng, n), g=g, h=h
    )


# ---------------------------------------------------------------------------
# direct ordinary-scale oracles (plain loops, no library code)

def direct_mat_mul(a, b):
    """Max-times matrix product on the ordinary scale."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    out = np.zeros((a.shape[0], b.shape[1]))
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            out[i, j] = max(a[i, k] * b[k, j] for k in range(a.shape[1]))
    return out


def direct_objective(m, x):
    """max over i, j of m[i, j] * x[j] / x[i] on the ordinary scale."""
    m = np.asarray(m, float)
    x = np.asarray(x, float)
    n = m.shape[0]
    return max(m[i, j] * x[j] / x[i] for i in range(n) for j in range(n))


def direct_ineq_holds(a, c, d, x, rel=1e-9):
    """Direct check of a x + c <= x <= d on the ordinary scale."""
    a = np.asarray(a, float)
    n = a.shape[0]
    for i in range(n):
        lhs = max(max(a[i, j] * x[j] for j in range(n)), c[i])
        if lhs > x[i] * (1 + rel):
            return False
        if x[i] > d[i] * (1 + rel):
            return False
    return True
