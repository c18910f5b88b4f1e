"""Truncated univariate power series at 0."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError

__all__ = ["TaylorSeries", "mul", "exp_series", "log_series", "compose"]


@dataclass(frozen=True)
class TaylorSeries:
    """Coefficients ``coeffs[k]`` of z^k, truncated after ``order = len(coeffs) - 1``."""

    coeffs: np.ndarray

    __hash__ = None

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1 or len(c) == 0:
            raise InputError("a series needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def truncate(self, m: int) -> "TaylorSeries":
        if m > self.order:
            raise InputError(f"cannot truncate order {self.order} series at {m}")
        return TaylorSeries(self.coeffs[: m + 1])

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, TaylorSeries):
            return TaylorSeries(self.coeffs * other)
        return mul(self, other)

    __rmul__ = __mul__

    def __add__(self, other):
        m = min(self.order, other.order)
        return TaylorSeries(self.coeffs[: m + 1] + other.coeffs[: m + 1])


def _coeffs(s):
    return s.coeffs if isinstance(s, TaylorSeries) else np.asarray(s, dtype=complex)


def _padded(c, m):
    if m is None or m + 1 == len(c):
        return c
    out = np.zeros(m + 1, dtype=complex)
    out[: min(len(c), m + 1)] = c[: m + 1]
    return out


def mul(a, b, order=None) -> TaylorSeries:
    """Product truncated at ``order`` (default: the smaller of the two orders)."""
    a, b = _coeffs(a), _coeffs(b)
    m = min(len(a), len(b)) - 1 if order is None else order
    return TaylorSeries(np.convolve(a[: m + 1], b[: m + 1])[: m + 1])


def exp_series(s, m=None) -> TaylorSeries:
    """exp of a series, via k e_k = sum_{j=1}^k j s_j e_{k-j}."""
    s = _padded(_coeffs(s), m)
    m = len(s) - 1
    e = np.zeros(m + 1, dtype=complex)
    e[0] = np.exp(s[0])
    j = np.arange(1, m + 1)
    for k in range(1, m + 1):
        e[k] = np.dot(j[:k] * s[1 : k + 1], e[k - 1 :: -1][:k]) / k
    return TaylorSeries(e)


def log_series(s, m=None) -> TaylorSeries:
    """Principal-branch logarithm of a series with nonzero constant term.

    Uses the Newton recurrence k l_k b_0 = k b_k - sum_{j=1}^{k-1} j l_j b_{k-j}.
    Input shorter than ``m + 1`` is read as a polynomial (missing terms are 0).
    """
    b = _padded(_coeffs(s), m)
    m = len(b) - 1
    if b[0] == 0:
        raise InputError("logarithm of a series with zero constant term")
    lam = np.zeros(m + 1, dtype=complex)
    lam[0] = np.log(complex(b[0]))
    for k in range(1, m + 1):
        j = np.arange(1, k)
        acc = np.dot(j * lam[1:k], b[k - 1 : 0 : -1]) if k > 1 else 0.0
        lam[k] = (k * b[k] - acc) / (k * b[0])
    return TaylorSeries(lam)


def compose(p, phi, m) -> TaylorSeries:
    """p(phi(z)) truncated at order m; requires phi(0) = 0.

    With phi(0) = 0 the first m + 1 coefficients of the composition depend only on
    p_0..p_m, so the result is exact to order m.
    """
    p, phi = _coeffs(p), _coeffs(phi)
    if phi[0] != 0:
        raise InputError("inner series must vanish at 0")
    if len(p) < m + 1:
        raise InputError(f"composition to order {m} needs {m + 1} outer coefficients")
    inner = np.zeros(m + 1, dtype=complex)
    inner[: min(len(phi), m + 1)] = phi[: m + 1]
    out = np.zeros(m + 1, dtype=complex)
    out[0] = p[m]
    for k in range(m - 1, -1, -1):
        out = np.convolve(out, inner)[: m + 1]
        out[0] += p[k]
    return TaylorSeries(out)
