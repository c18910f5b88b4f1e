"""Brute-force oracles over the Boolean cube.

Everything here enumerates spin configurations explicitly, in blocks of rows
with a fixed block size so that results do not depend on anything but the
instance.  Block sums use numpy's pairwise summation and are combined with
``math.fsum`` after a common max-shift, which also keeps sums of huge terms
representable in log form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import BudgetExceeded, InputError
from .model import CubePolynomial, evaluate_many
from .taylor import DerivativeTable, EdgeWeights, weights_from_instance

__all__ = [
    "BRUTE_FORCE_CAP",
    "Face",
    "spin_block",
    "log_partition_sum",
    "partition_sum",
    "abs_partition_sum",
    "face_sum",
    "p_exact",
    "log_p_exact",
    "p_taylor_oracle",
    "p_deriv_oracle",
]

BRUTE_FORCE_CAP = 24
_BLOCK_ELEMENTS = 1 << 22


def _check_cap(n, cap):
    cap = BRUTE_FORCE_CAP if cap is None else cap
    if n > cap:
        raise BudgetExceeded(
            f"brute force over 2^{n} configurations refused: n={n} exceeds cap {cap} "
            "(raise the cap explicitly to override)", estimate=2.0**n)


def spin_block(n: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the configuration list: bit t of the row index set means x_t = -1."""
    r = np.arange(start, stop, dtype=np.int64)
    return 1 - 2 * ((r[:, None] >> np.arange(n)) & 1).astype(np.int8)


def _blocks(n, width=1):
    total = 1 << n
    size = max(1, min(total, _BLOCK_ELEMENTS // max(1, n + width)))
    for start in range(0, total, size):
        yield spin_block(n, start, min(total, start + size))


class _LogSum:
    """Accumulates sum exp(u) over batches of complex exponents u."""

    def __init__(self, shape=()):
        self.parts = []
        self.shape = shape

    def add(self, u, axis=0):
        m = np.max(u.real, axis=axis)
        m = np.where(np.isfinite(m), m, 0.0)
        s = np.exp(u - np.expand_dims(m, axis)).sum(axis=axis)
        self.parts.append((m, s))

    def log(self):
        if not self.parts:
            return np.full(self.shape, -np.inf + 0j)
        ms = np.array([p[0] for p in self.parts])
        ss = np.array([p[1] for p in self.parts])
        top = ms.max(axis=0)
        scaled = ss * np.exp(ms - top)
        flat_re = np.atleast_2d(scaled.real.reshape(len(self.parts), -1))
        flat_im = np.atleast_2d(scaled.imag.reshape(len(self.parts), -1))
        re = np.array([math.fsum(col) for col in flat_re.T])
        im = np.array([math.fsum(col) for col in flat_im.T])
        total = (re + 1j * im).reshape(np.shape(top))
        with np.errstate(divide="ignore"):
            return top + np.log(total)


def _finish(logval):
    with np.errstate(over="ignore", invalid="ignore"):
        value = np.exp(logval)
    if not np.all(np.isfinite(value)):
        raise OverflowError("partition sum overflows double precision; use the log_ variant")
    return value


def log_partition_sum(f: CubePolynomial, *, cap=None) -> complex:
    """Principal log of S(e^f) = sum_x exp(f(x)), computed without overflow."""
    _check_cap(f.n, cap)
    acc = _LogSum()
    for X in _blocks(f.n, len(f.c)):
        acc.add(evaluate_many(f, X))
    return complex(acc.log())


def partition_sum(f: CubePolynomial, *, cap=None) -> complex:
    """S(e^f) by enumeration of all 2^n spin vectors."""
    return complex(_finish(log_partition_sum(f, cap=cap)))


def abs_partition_sum(f: CubePolynomial, *, cap=None, log=False) -> float:
    """sum_x |exp(f(x))|, the scale against which cancellation in S is measured."""
    _check_cap(f.n, cap)
    acc = _LogSum()
    for X in _blocks(f.n, len(f.c)):
        acc.add(evaluate_many(f, X).real + 0j)
    val = complex(acc.log()).real
    return val if log else math.exp(val)


@dataclass(frozen=True)
class Face:
    """Sub-cube of {-1, 1}^n fixing x_i = sign for i in ``fixed``."""

    n: int
    fixed: Mapping[int, int] = field(default_factory=dict)

    __hash__ = None

    def __post_init__(self):
        clean = {}
        for i, s in dict(self.fixed).items():
            i = int(i)
            if not 0 <= i < self.n:
                raise InputError(f"fixed index {i} out of range for n={self.n}")
            if s not in (1, -1):
                raise InputError(f"fixed sign for index {i} must be +1 or -1, got {s!r}")
            clean[i] = int(s)
        object.__setattr__(self, "fixed", dict(sorted(clean.items())))

    @property
    def free(self) -> list:
        return [i for i in range(self.n) if i not in self.fixed]

    @property
    def dim(self) -> int:
        return self.n - len(self.fixed)

    def split(self, i: int) -> tuple:
        """The faces F+ and F- fixing free index ``i`` to +1 and -1."""
        if i in self.fixed or not 0 <= i < self.n:
            raise InputError(f"index {i} is not a free index of this face")
        return (Face(self.n, {**self.fixed, i: 1}), Face(self.n, {**self.fixed, i: -1}))

    def points(self) -> np.ndarray:
        free = self.free
        X = np.empty((1 << len(free), self.n), dtype=np.int8)
        X[:, free] = spin_block(len(free), 0, 1 << len(free))
        for i, s in self.fixed.items():
            X[:, i] = s
        return X


def face_sum(f: CubePolynomial, F: Face, *, cap=None) -> complex:
    """Partial sum of exp(f) over the points of the face ``F``."""
    if F.n != f.n:
        raise InputError(f"face lives in dimension {F.n}, instance has n={f.n}")
    _check_cap(F.dim, cap)
    acc = _LogSum()
    acc.add(evaluate_many(f, F.points()))
    return complex(_finish(acc.log()))


# ------------------------------------------------- the univariate polynomial p


def _consistency(X, edges):
    """Boolean matrix: row x is consistent on hyperedge u (product of spins is +1)."""
    out = np.ones((len(X), len(edges)), dtype=bool)
    for t, u in enumerate(edges):
        out[:, t] = np.prod(X[:, list(u)], axis=1) == 1
    return out


def log_p_exact(f: CubePolynomial, z, *, weights: EdgeWeights | None = None, cap=None):
    """log p(z) with p(z) = sum_x prod_{u consistent} (1 + z w_u)^{E_u} prod_i e^{b_i x_i}.

    ``z`` may be an array; the result has its shape.
    """
    _check_cap(f.n, cap)
    w = weights_from_instance(f) if weights is None else weights
    z = np.asarray(z, dtype=complex)
    zs = z.ravel()
    edges = w.edges
    with np.errstate(divide="ignore"):
        logs = w.exponents[:, None] * np.log1p(w.values[:, None] * zs[None, :])
    acc = _LogSum(zs.shape)
    size = max(1, _BLOCK_ELEMENTS // max(1, len(zs) + len(edges)))
    total = 1 << f.n
    for start in range(0, total, size):
        X = spin_block(f.n, start, min(total, start + size))
        cons = _consistency(X, edges).astype(float)
        u = cons @ logs + (X @ f.b)[:, None]
        acc.add(u, axis=0)
    return acc.log().reshape(z.shape)


def p_exact(f: CubePolynomial, z, **kw):
    """p(z) by enumeration; exponents are exactly 0 or E_u = 2 n^|u|."""
    out = _finish(log_p_exact(f, z, **kw))
    return complex(out) if np.ndim(out) == 0 else out


def _binomial_series(E, w, m):
    B = np.zeros(m + 1, dtype=complex)
    B[0] = 1.0
    for t in range(1, m + 1):
        B[t] = B[t - 1] * (E - t + 1) / t * w
    return B


def p_taylor_oracle(f: CubePolynomial, m: int, *, cap=None) -> DerivativeTable:
    """Derivatives of p at 0 up to order m by multiplying truncated binomial series.

    Per configuration, the order-m truncations of (1 + z w_u)^{E_u} over the
    consistent hyperedges are multiplied out, weighted by prod e^{b_i x_i} and
    summed; p^(k)(0) is k! times the k-th coefficient.
    """
    _check_cap(f.n, cap)
    if m < 0:
        raise InputError("order must be nonnegative")
    w = weights_from_instance(f)
    edges = w.edges
    series = [_binomial_series(int(E), val, m) for E, val in zip(w.exponents, w.values)]
    log_w_max = float(np.sum(np.abs(f.b.real)))
    total_series = np.zeros(m + 1, dtype=complex)
    for X in _blocks(f.n, len(edges) + (m + 1)):
        cons = _consistency(X, edges)
        R = np.zeros((len(X), m + 1), dtype=complex)
        R[:, 0] = 1.0
        for t, B in enumerate(series):
            rows = cons[:, t]
            if not rows.any():
                continue
            cur = R[rows]
            new = cur.copy()
            for j in range(1, m + 1):
                new[:, j:] += cur[:, : m + 1 - j] * B[j]
            R[rows] = new
        weight = np.exp(X @ f.b - log_w_max)
        total_series += weight @ R
    fact = np.array([float(math.factorial(k)) for k in range(m + 1)])
    values = total_series * fact
    if log_w_max < 600:
        values, scale = values * math.exp(log_w_max), 0.0
    else:
        scale = log_w_max
    return DerivativeTable(values, n=f.n, degree=w.degree_bound, log_scale=scale)


def p_deriv_oracle(f: CubePolynomial, k: int, *, cap=None) -> complex:
    """p^(k)(0) from the series-product oracle."""
    table = p_taylor_oracle(f, k, cap=cap)
    return complex(table.values[k] * math.exp(table.log_scale))
