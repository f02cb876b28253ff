"""One-dimensional Bernstein and Jacobi polynomials.

Bernstein values are computed with the de Casteljau-style triangular
recurrence (no explicit binomials, stable for large orders), pairwise
integrals in exact rational arithmetic, and Jacobi polynomials with the
standard three-term recurrence normalized so that P_0 = 1 and
P_1(x) = ((alpha+beta+2)x + (alpha-beta))/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gamma

import numpy as np

from .errors import DomainError

__all__ = [
    "BernsteinBasis1D",
    "JacobiParams",
    "bernstein_all",
    "bernstein_eval",
    "bernstein_eval_all",
    "bernstein_deriv",
    "bernstein_deriv_all",
    "bernstein_pair_integral",
    "bernstein_pair_integral_weighted",
    "pair_integral_fraction",
    "jacobi_eval",
    "jacobi_recurrence",
]


def _check_index(n: int, k: int) -> None:
    if n < 0:
        raise DomainError(f"order must be nonnegative, got {n}")
    if not 0 <= k <= n:
        raise DomainError(f"index {k} out of range for order {n}")


def bernstein_all(n: int, x) -> np.ndarray:
    """Evaluate all n+1 Bernstein polynomials of order n at x.

    x may be a scalar or an array; the basis index is the last axis of
    the result.  Values are nonnegative for x in [0, 1] and sum to 1.
    """
    if n < 0:
        raise DomainError(f"order must be nonnegative, got {n}")
    x = np.asarray(x, dtype=float)
    b = np.zeros(x.shape + (n + 1,))
    b[..., 0] = 1.0
    xm = x[..., None]
    for m in range(1, n + 1):
        # old b[..., m] is zero, so one vectorized update raises the order
        b[..., 1 : m + 1] = xm * b[..., 0:m] + (1.0 - xm) * b[..., 1 : m + 1]
        b[..., 0] = (1.0 - x) * b[..., 0]
    return b


def bernstein_eval(n: int, k: int, x):
    """Value of the k-th Bernstein polynomial of order n at x."""
    _check_index(n, k)
    out = bernstein_all(n, x)[..., k]
    return float(out) if out.ndim == 0 else out


def bernstein_eval_all(n: int, x):
    """Alias of bernstein_all with the same (order, point) signature."""
    return bernstein_all(n, x)


def bernstein_deriv_all(n: int, x) -> np.ndarray:
    """First derivatives of all order-n Bernstein polynomials at x.

    Uses d/dx B^n_k = n (B^{n-1}_{k-1} - B^{n-1}_k) with out-of-range
    lower-order terms treated as zero.
    """
    if n < 0:
        raise DomainError(f"order must be nonnegative, got {n}")
    x = np.asarray(x, dtype=float)
    if n == 0:
        return np.zeros(x.shape + (1,))
    lower = bernstein_all(n - 1, x)
    d = np.zeros(x.shape + (n + 1,))
    d[..., :-1] -= n * lower
    d[..., 1:] += n * lower
    return d


def bernstein_deriv(n: int, k: int, x):
    """Derivative of the k-th Bernstein polynomial of order n at x."""
    _check_index(n, k)
    out = bernstein_deriv_all(n, x)[..., k]
    return float(out) if out.ndim == 0 else out


def pair_integral_fraction(n: int, i: int, m: int, j: int, w: int = 0) -> Fraction:
    """Exact rational value of the integral over [0,1] of B^n_i B^m_j (1-x)^w.

    The product is binom(n,i) binom(m,j) x^{i+j} (1-x)^{n+m-i-j+w}; the
    Beta integral of x^a (1-x)^b is a! b! / (a+b+1)!.  All arithmetic is
    arbitrary-precision integers, so the value is usable as an oracle.
    """
    _check_index(n, i)
    _check_index(m, j)
    if w < 0:
        raise DomainError(f"weight power must be nonnegative, got {w}")
    a = i + j
    b = n + m - i - j + w
    num = comb(n, i) * comb(m, j) * factorial(a) * factorial(b)
    return Fraction(num, factorial(a + b + 1))


def bernstein_pair_integral(n: int, i: int, m: int, j: int) -> float:
    """Integral over [0,1] of B^n_i(x) B^m_j(x), correctly rounded.

    Equals binom(n,i) binom(m,j) / ((n+m+1) binom(n+m, i+j)).
    """
    return float(pair_integral_fraction(n, i, m, j))


def bernstein_pair_integral_weighted(n: int, i: int, m: int, j: int, w: int) -> float:
    """Integral over [0,1] of B^n_i(x) B^m_j(x) (1-x)^w, correctly rounded."""
    return float(pair_integral_fraction(n, i, m, j, w))


@dataclass(frozen=True)
class JacobiParams:
    """Parameters (alpha, beta, degree) of a Jacobi polynomial."""

    alpha: float
    beta: float
    degree: int

    def __post_init__(self):
        if self.alpha <= -1.0 or self.beta <= -1.0:
            raise DomainError("Jacobi parameters require alpha > -1 and beta > -1")
        if self.degree < 0:
            raise DomainError(f"degree must be nonnegative, got {self.degree}")


def jacobi_eval(params: JacobiParams, x):
    """Jacobi polynomial P^(alpha,beta)_degree at x via three-term recurrence."""
    a, b, n = params.alpha, params.beta, params.degree
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return float(p_prev) if p_prev.ndim == 0 else p_prev
    p = 0.5 * ((a + b + 2.0) * x + (a - b))
    for m in range(2, n + 1):
        c1 = 2.0 * m * (m + a + b) * (2.0 * m + a + b - 2.0)
        c2 = (2.0 * m + a + b - 1.0) * (a * a - b * b)
        c3 = (2.0 * m + a + b - 2.0) * (2.0 * m + a + b - 1.0) * (2.0 * m + a + b)
        c4 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * (2.0 * m + a + b)
        p, p_prev = ((c2 + c3 * x) * p - c4 * p_prev) / c1, p
    return float(p) if p.ndim == 0 else p


def jacobi_recurrence(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Monic Jacobi recurrence coefficients on [-1, 1].

    Returns (a, b) with p_{k+1} = (x - a_k) p_k - b_k p_{k-1}; b[0] holds
    the total weight integral of (1-x)^alpha (1+x)^beta.
    """
    if n < 1:
        raise DomainError(f"need at least one coefficient, got n={n}")
    a = np.zeros(n)
    b = np.zeros(n)
    apb = alpha + beta
    a[0] = (beta - alpha) / (apb + 2.0)
    b[0] = 2.0 ** (apb + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(apb + 2.0)
    for k in range(1, n):
        s = 2.0 * k + apb
        a[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0))
        b[k] = 4.0 * k * (k + alpha) * (k + beta) * (k + apb) / (s * s * (s + 1.0) * (s - 1.0))
    return a, b


@dataclass(frozen=True)
class BernsteinBasis1D:
    """The order-N Bernstein basis on [0, 1] (N+1 members)."""

    order: int

    def __post_init__(self):
        if self.order < 0:
            raise DomainError(f"order must be nonnegative, got {self.order}")

    def __len__(self) -> int:
        return self.order + 1

    def eval_all(self, x) -> np.ndarray:
        return bernstein_all(self.order, x)

    def deriv_all(self, x) -> np.ndarray:
        return bernstein_deriv_all(self.order, x)
