"""Max-times tropical arithmetic stored in the log domain.

The scalar system is the max-times semifield: nonnegative reals where
"addition" is max, "multiplication" is the ordinary product, zero is 0
and one is 1.  Every value is kept as its natural logarithm, so the
semifield product becomes float addition, a rational power q becomes the
exact scalar multiple q * log(x), and the semifield zero becomes -inf.
Matrices and vectors are plain float64 numpy arrays of log-domain
entries; +inf is reserved as an "unbounded" sentinel for upper limits
and never appears inside matrices.

All comparisons are made with an absolute tolerance in the log domain
(default 1e-9), which corresponds to a relative tolerance on the
underlying max-times values.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

ZERO = float("-inf")  # semifield zero (log domain)
ONE = 0.0             # semifield one
TOP = float("inf")    # unbounded upper-limit sentinel, not a semifield element
DEFAULT_TOL = 1e-9


class DomainError(ValueError):
    """An operation was applied outside its domain, e.g. inverting zero."""


class StarConditionError(ValueError):
    """The closure condition Tr(A) <= 1 fails, so no Kleene star exists."""

    def __init__(self, trace_value: float):
        self.trace_value = trace_value
        super().__init__(
            f"trace function value exceeds one (log excess {trace_value:.6g}); "
            "the recursive inequality has no regular solution"
        )


# ---------------------------------------------------------------------------
# conversions between ordinary (max-times) scale and the log domain

def from_value(v: float) -> float:
    """Log-domain image of an ordinary nonnegative value (0 maps to -inf)."""
    if v < 0:
        raise DomainError(f"max-times values must be nonnegative, got {v}")
    if v == 0:
        return ZERO
    return math.log(v)


def to_value(x: float) -> float:
    """Ordinary-scale value of a log-domain scalar (-inf maps to 0)."""
    if x == ZERO:
        return 0.0
    if x == TOP:
        return TOP
    return math.exp(x)


def from_values(values) -> np.ndarray:
    """Elementwise log of an ordinary-scale array; zeros become -inf."""
    arr = np.asarray(values, dtype=float)
    if np.any(arr < 0):
        raise DomainError("max-times arrays must be nonnegative")
    with np.errstate(divide="ignore"):
        return np.log(arr)


def to_values(x) -> np.ndarray:
    """Elementwise exp of a log-domain array; -inf becomes 0."""
    arr = np.asarray(x, dtype=float)
    with np.errstate(over="ignore"):
        out = np.exp(arr)
    return np.where(arr == ZERO, 0.0, out)


def parse_number(token) -> float:
    """Parse a decimal or "p/q" fraction into the log domain.

    Fractions are converted as log(p) - log(q) so that rational inputs
    never pass through an inexact division first.
    """
    if isinstance(token, (int, float)):
        return from_value(float(token))
    if isinstance(token, str):
        text = token.strip()
        if "/" in text:
            num_text, den_text = text.split("/", 1)
            num = Fraction(num_text.strip())
            den = Fraction(den_text.strip())
            if den == 0:
                raise DomainError(f"fraction with zero denominator: {token!r}")
            frac = num / den
            if frac < 0:
                raise DomainError(f"negative value not allowed: {token!r}")
            if frac == 0:
                return ZERO
            return (math.log(frac.numerator) - math.log(frac.denominator))
        if text.lower() in ("inf", "+inf", "infinity"):
            return TOP
        return from_value(float(text))
    raise DomainError(f"cannot parse numeric token of type {type(token).__name__}")


# ---------------------------------------------------------------------------
# scalar operations

def add(a: float, b: float) -> float:
    """Semifield addition: max of the two values."""
    return max(a, b)


def mul(a: float, b: float) -> float:
    """Semifield multiplication; zero absorbs everything, even TOP."""
    if a == ZERO or b == ZERO:
        return ZERO
    return a + b


def inv(a: float) -> float:
    """Multiplicative inverse; zero has none."""
    if a == ZERO:
        raise DomainError("the semifield zero has no multiplicative inverse")
    return -a


def power(a: float, q) -> float:
    """Rational power a**q, exact in the log domain.

    Zero may only be raised to positive exponents.
    """
    qf = float(q)
    if a == ZERO:
        if qf > 0:
            return ZERO
        raise DomainError(f"zero cannot be raised to exponent {q}")
    if qf == 0:
        return ONE
    return qf * a


def leq(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Order test a <= b within tolerance; arrays compare componentwise."""
    return bool(np.all(np.asarray(a) <= np.asarray(b) + tol))


def eq(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Equality within absolute log-domain tolerance; matching infinities agree."""
    return bool(np.all(np.isclose(np.asarray(a, dtype=float),
                                  np.asarray(b, dtype=float),
                                  rtol=0.0, atol=tol, equal_nan=False)))


# ---------------------------------------------------------------------------
# matrices and vectors

def zeros(shape) -> np.ndarray:
    """Zero matrix or vector (all entries the semifield zero)."""
    return np.full(shape, ZERO)


def identity(n: int) -> np.ndarray:
    """Identity matrix: one on the diagonal, zero elsewhere."""
    out = np.full((n, n), ZERO)
    np.fill_diagonal(out, ONE)
    return out


def is_regular(x) -> bool:
    """True when the vector has no zero components."""
    return bool(np.all(np.asarray(x) > ZERO))


def is_column_regular(a) -> bool:
    """True when no column of the matrix is entirely zero."""
    return bool(np.all(np.max(np.asarray(a), axis=0) > ZERO))


def _require_square(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")


def mat_add(a, b) -> np.ndarray:
    """Entrywise semifield sum of two equally shaped arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch for entrywise sum: {a.shape} vs {b.shape}")
    return np.maximum(a, b)


def scalar_mul(c: float, a) -> np.ndarray:
    """Scale every entry by the scalar c; zero entries stay zero."""
    a = np.asarray(a, dtype=float)
    if c == ZERO:
        return np.full_like(a, ZERO)
    with np.errstate(invalid="ignore"):
        out = c + a
    # -inf entries meeting +inf would yield nan; zero absorbs
    return np.where(np.isnan(out), ZERO, out)


def mat_mul(a, b):
    """Tropical product with numpy-dot shape semantics.

    Accepts 2-D x 2-D, 2-D x 1-D, 1-D x 2-D and 1-D x 1-D operands and
    returns a matrix, column result, row result or scalar accordingly.
    Zero absorbs: a zero factor kills a term even against the TOP
    sentinel.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a2 = a[None, :] if a.ndim == 1 else a
    b2 = b[:, None] if b.ndim == 1 else b
    if a2.ndim != 2 or b2.ndim != 2:
        raise ValueError("operands must be 1-D or 2-D")
    if a2.shape[1] != b2.shape[0]:
        raise ValueError(f"incompatible shapes for product: {a.shape} and {b.shape}")
    with np.errstate(invalid="ignore"):
        terms = a2[:, :, None] + b2[None, :, :]
    terms = np.where(np.isnan(terms), ZERO, terms)
    out = terms.max(axis=1)
    if b.ndim == 1:
        out = out[:, 0]
    if a.ndim == 1:
        out = out[0]
    return float(out) if np.ndim(out) == 0 else out


def mat_pow(a, p: int) -> np.ndarray:
    """p-th tropical power of a square matrix, p >= 0 (0 gives identity)."""
    a = np.asarray(a, dtype=float)
    _require_square(a)
    if p < 0:
        raise ValueError(f"matrix powers require a nonnegative exponent, got {p}")
    out = identity(a.shape[0])
    for _ in range(p):
        out = mat_mul(out, a)
    return out


def trace(a) -> float:
    """Semifield sum of the diagonal entries."""
    a = np.asarray(a, dtype=float)
    _require_square(a)
    return float(np.max(np.diagonal(a)))


def trace_fn(a) -> float:
    """Sum of the traces of the first n tropical powers of the matrix."""
    a = np.asarray(a, dtype=float)
    _require_square(a)
    best = ZERO
    p = a
    for _ in range(a.shape[0]):
        best = max(best, trace(p))
        p = mat_mul(p, a)
    return best


def spectral_radius(a) -> float:
    """Largest mean cycle weight: max over k of trace(A^k)^(1/k)."""
    a = np.asarray(a, dtype=float)
    _require_square(a)
    best = ZERO
    p = a
    for k in range(1, a.shape[0] + 1):
        t = trace(p)
        if t > ZERO:
            best = max(best, t / k)
        p = mat_mul(p, a)
    return best


def kleene_star(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Closure I + A + ... + A^(n-1), defined when the trace function is <= one.

    Raises StarConditionError otherwise; the result S satisfies
    S = I + A S and S S = S.
    """
    a = np.asarray(a, dtype=float)
    _require_square(a)
    t = trace_fn(a)
    if t > ONE + tol:
        raise StarConditionError(t)
    out = identity(a.shape[0])
    p = out
    for _ in range(a.shape[0] - 1):
        p = mat_mul(p, a)
        out = mat_add(out, p)
    return out


def conjugate(x) -> np.ndarray:
    """Componentwise multiplicative inverse of a nonzero vector.

    Zero components map to zero (and TOP components likewise drop to
    zero, so unbounded limits impose no constraint when conjugated).
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"expected a vector, got shape {x.shape}")
    if not np.any(x > ZERO):
        raise DomainError("the zero vector has no conjugate")
    with np.errstate(invalid="ignore"):
        out = -x
    return np.where((x == ZERO) | (x == TOP), ZERO, out)
