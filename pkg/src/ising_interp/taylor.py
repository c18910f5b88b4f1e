"""Derivatives p^(k)(0) of the interpolation polynomial by subset enumeration.

For an instance with coefficients a_ij (and c_ijk in the cubic case) the
substitution w_u = exp(coef_u / n^|u|) - 1 turns the partition function into

    p(z) = sum_sigma prod_i e^{b_i sigma_i} prod_{u consistent with sigma} (1 + z w_u)^{E_u},

with E_u = 2 n^|u|, and p(1) = exp(sum of all coefficients) * S(e^f).  The k-th
derivative at 0 expands over ordered compositions (k_1..k_s) of k, lexicographically
sorted s-sets of hyperedges and the sign maps consistent on them:

    p^(k)(0) = sum_comp multinomial(k; k_1..k_s) prod (E)_{k_t}
               sum_{u_1<..<u_s} prod w_{u_t}^{k_t} Z(u_1..u_s),

where Z sums prod_{i in W} e^{b_i sigma_0(i)} over the consistent maps sigma_0 on
the covered vertices W and multiplies by prod_{i not in W} 2 cosh b_i.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .errors import BudgetExceeded, InputError

__all__ = [
    "EdgeWeights",
    "DerivativeTable",
    "c_from_a",
    "weights_from_instance",
    "enumerate_compositions",
    "falling_factorial",
    "multinomial",
    "consistent_maps",
    "estimate_work",
    "derivative_k",
    "derivative_table",
    "log2cosh",
]

DEFAULT_WORK_LIMIT = 5e7
ORDER_CAP = 64
# measured cost of one hyperedge subset (GF(2) solve in Python) against one
# vectorized pair subset
HYPEREDGE_COST = 12
_CHUNK = 1 << 15


@dataclass(frozen=True)
class EdgeWeights:
    """Transformed weights w_u on hyperedges u (pairs, and triples for cubic instances)."""

    n: int
    c: Mapping[tuple, complex]

    __hash__ = None

    def __post_init__(self):
        clean = {}
        for key, v in self.c.items():
            u = tuple(sorted(int(i) for i in key))
            if len(u) not in (2, 3) or len(set(u)) != len(u) or u[0] < 0 or u[-1] >= self.n:
                raise InputError(f"invalid hyperedge {key!r} for n={self.n}")
            if complex(v) != 0:
                clean[u] = complex(v)
        object.__setattr__(self, "c", dict(sorted(clean.items())))

    @property
    def edges(self) -> list:
        return list(self.c)

    @property
    def values(self) -> np.ndarray:
        return np.array(list(self.c.values()), dtype=complex)

    def exponent(self, u) -> int:
        return 2 * self.n ** len(u)

    @property
    def exponents(self) -> np.ndarray:
        return np.array([self.exponent(u) for u in self.c], dtype=np.int64)

    @property
    def degree_bound(self) -> int:
        """Upper bound on deg p: every factor (1 + z w_u)^{E_u} present at once."""
        return int(sum(self.exponent(u) for u in self.c))

    @property
    def pairs_only(self) -> bool:
        return all(len(u) == 2 for u in self.c)


def c_from_a(a, n: int) -> EdgeWeights:
    """c_ij = exp(a_ij / n^2) - 1 for a mapping of quadratic coefficients."""
    if n < 2:
        raise InputError("need n >= 2")
    a = dict(a)
    if any(abs(v) > 1 for v in a.values()):
        warnings.warn("|a_ij| > 1: the bounds |c - a/n^2| <= 1/n^4 and |c| <= 2/n^2 may fail",
                      stacklevel=2)
    return EdgeWeights(n, {u: _expm1(v / n**2) for u, v in a.items()})


def _expm1(v):
    v = complex(v)
    if v.imag == 0:
        return complex(math.expm1(v.real))
    return complex(np.expm1(v))


def weights_from_instance(f) -> EdgeWeights:
    """Pairs map through exp(a/n^2) - 1, triples through exp(c/n^3) - 1."""
    w = {u: _expm1(v / f.n**2) for u, v in f.quadratic.items()}
    w.update({u: _expm1(v / f.n**3) for u, v in f.cubic.items()})
    return EdgeWeights(f.n, w)


# ------------------------------------------------------------ combinatorics


def enumerate_compositions(k: int, parts: int | None = None) -> Iterator[tuple]:
    """Ordered tuples of positive integers summing to ``k`` (optionally with ``parts`` entries)."""
    if not 1 <= k <= ORDER_CAP:
        raise InputError(f"composition size must be in [1, {ORDER_CAP}], got {k}")
    sizes = range(1, k + 1) if parts is None else [parts]
    for s in sizes:
        for cuts in itertools.combinations(range(1, k), s - 1):
            bounds = (0,) + cuts + (k,)
            yield tuple(bounds[t + 1] - bounds[t] for t in range(s))


def falling_factorial(m: int, k: int) -> int:
    """m (m-1) ... (m-k+1); equals 1 for k = 0."""
    if k < 0:
        raise InputError("k must be nonnegative")
    if isinstance(m, (int, np.integer)) and m >= 0:
        return math.perm(int(m), int(k))
    return math.prod(m - t for t in range(k))


def multinomial(k: int, parts) -> int:
    out = math.factorial(k)
    for p in parts:
        out //= math.factorial(p)
    return out


def log2cosh(x):
    """log(e^x + e^-x) without overflow; complex input keeps its phase mod 2 pi."""
    x = np.asarray(x)
    s = np.where(x.real >= 0, 1.0, -1.0)
    return s * x + np.log1p(np.exp(-2 * s * x))


# ------------------------------------------------------------ consistent maps


def consistent_maps(hyperedges) -> tuple:
    """All sign maps on the covered vertices with prod_{i in u} sigma_i = 1 for each u.

    Returns ``(W, maps)`` with W the sorted covered vertices and ``maps`` an
    array of shape (count, |W|) with entries +-1.  Solved as a linear system over
    GF(2); for pairs this gives one free sign per connected component.
    """
    W = sorted({i for u in hyperedges for i in u})
    pos = {v: t for t, v in enumerate(W)}
    pivots = {}  # pivot bit -> reduced row
    for u in hyperedges:
        row = 0
        for i in u:
            row ^= 1 << pos[i]
        for bit, prow in pivots.items():
            if row >> bit & 1:
                row ^= prow
        if row:
            bit = row.bit_length() - 1
            for b2 in list(pivots):
                if pivots[b2] >> bit & 1:
                    pivots[b2] ^= row
            pivots[bit] = row
    free = [t for t in range(len(W)) if t not in pivots]
    basis = []
    for fbit in free:
        vec = 1 << fbit
        for bit, prow in pivots.items():
            if prow >> fbit & 1:
                vec |= 1 << bit
        basis.append(vec)
    maps = np.ones((1 << len(basis), len(W)), dtype=np.int8)
    for idx in range(1 << len(basis)):
        x = 0
        for t, vec in enumerate(basis):
            if idx >> t & 1:
                x ^= vec
        for t in range(len(W)):
            if x >> t & 1:
                maps[idx, t] = -1
    return W, maps


def _pair_z_relative(I, J, b, lc):
    """Z(S) / prod_i 2cosh(b_i) for a batch of pair sets given as index arrays (N, s)."""
    N, s = I.shape
    n = len(b)
    labels = np.tile(np.arange(n), (N, 1))
    rows = np.arange(N)
    for t in range(s):
        li = labels[rows, I[:, t]]
        lj = labels[rows, J[:, t]]
        lo = np.minimum(li, lj)
        hi = np.maximum(li, lj)
        labels = np.where(labels == hi[:, None], lo[:, None], labels)
    flat = (rows[:, None] * n + labels).ravel()
    bt = np.tile(b, N)
    comp_b = np.bincount(flat, bt.real, minlength=N * n) + 1j * np.bincount(flat, bt.imag, minlength=N * n)
    present = np.bincount(flat, minlength=N * n) > 0
    terms = np.where(present, log2cosh(comp_b), 0).reshape(N, n)
    return np.exp(terms.sum(axis=1) - lc.sum())


def _generic_z_relative(subsets, edges, b, lc):
    out = np.empty(len(subsets), dtype=complex)
    for r, sub in enumerate(subsets):
        W, maps = consistent_maps([edges[t] for t in sub])
        W = np.asarray(W)
        out[r] = np.exp(maps @ b[W] - lc[W].sum()).sum()
    return out


# ---------------------------------------------------------------- derivatives


def estimate_work(num_edges: int, kmax: int, orders=None, *, pairs_only=True) -> float:
    """Subset-times-composition count of the enumeration up to order ``kmax``.

    With ``pairs_only=False`` each subset is charged HYPEREDGE_COST units.
    """
    orders = range(kmax + 1) if orders is None else orders
    per_subset = 1 if pairs_only else HYPEREDGE_COST
    total = 0.0
    for s in range(1, min(kmax, num_edges) + 1):
        comps = sum(math.comb(k - 1, s - 1) for k in orders if k >= s)
        if comps:
            total += math.comb(num_edges, s) * (per_subset + comps)
    return total


def _combination_chunks(count, s, size):
    it = itertools.combinations(range(count), s)
    while True:
        block = np.fromiter(itertools.chain.from_iterable(itertools.islice(it, size)),
                            dtype=np.int64)
        if block.size == 0:
            return
        yield block.reshape(-1, s)


@dataclass(frozen=True)
class DerivativeTable:
    """Derivatives p^(k)(0), k = 0..m, stored as ``values[k] * exp(log_scale)``.

    ``degree`` is an upper bound on deg p; the tail estimate of the
    interpolation step needs it.  ``n`` is the instance size when known.
    """

    values: np.ndarray
    n: int | None = None
    degree: int | None = None
    log_scale: float = 0.0

    __hash__ = None

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values, dtype=complex)).copy()
        if v.ndim != 1 or len(v) == 0:
            raise InputError("a derivative table needs at least p(0)")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def m(self) -> int:
        return len(self.values) - 1

    @property
    def coeffs(self) -> np.ndarray:
        """Scaled Taylor coefficients values[k] / k!."""
        k = np.arange(len(self.values))
        lg = np.array([math.lgamma(t + 1) for t in k])
        return self.values * np.exp(-lg)

    def truncate(self, m: int) -> "DerivativeTable":
        if m > self.m:
            raise InputError(f"table has order {self.m} < {m}")
        return DerivativeTable(self.values[: m + 1], self.n, self.degree, self.log_scale)

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key in ("n", "degree", "log_scale"):
            val = getattr(self, key)
            if val is not None:
                buf.write(f"# {key}={val!r}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "Re", "Im"])
        for k, v in enumerate(self.values):
            w.writerow([k, repr(float(v.real)), repr(float(v.imag))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "DerivativeTable":
        meta, rows = {}, []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                meta[key.strip()] = val.strip()
            elif not line.startswith("k"):
                rows.append([float(x) for x in line.split(",")])
        if not rows:
            raise InputError("derivative CSV has no rows")
        rows.sort(key=lambda r: r[0])
        if [int(r[0]) for r in rows] != list(range(len(rows))):
            raise InputError("derivative CSV must list k = 0, 1, ..., m")
        return cls(
            np.array([complex(r[1], r[2]) for r in rows]),
            n=int(meta["n"]) if "n" in meta else None,
            degree=int(meta["degree"]) if "degree" in meta else None,
            log_scale=float(meta.get("log_scale", 0.0)),
        )


def _as_weights(c, n=None):
    if isinstance(c, EdgeWeights):
        return c
    if n is None:
        raise InputError("n is required when weights are given as a plain mapping")
    return EdgeWeights(n, c)


def _relative_derivatives(w: EdgeWeights, b, orders, work_limit):
    b = np.asarray(b, dtype=complex)
    if b.shape != (w.n,):
        raise InputError(f"linear coefficients must have length {w.n}")
    orders = sorted(set(int(k) for k in orders))
    if orders and (orders[0] < 0 or orders[-1] > ORDER_CAP):
        raise InputError(f"orders must lie in [0, {ORDER_CAP}]")
    kmax = orders[-1] if orders else 0
    edges = w.edges
    U = len(edges)
    cost = estimate_work(U, kmax, orders, pairs_only=w.pairs_only)
    if cost > work_limit:
        raise BudgetExceeded(
            f"p^(k)(0) up to k={kmax} over {U} hyperedges needs ~{cost:.3g} work units "
            f"(limit {work_limit:.3g})", estimate=cost)
    lc = log2cosh(b)
    out = {k: 0j for k in orders}
    if 0 in out:
        out[0] = 1.0 + 0j
    if U == 0 or kmax == 0:
        return out
    vals = w.values
    E = w.exponents
    # T[u, j] = (E_u)_j w_u^j
    T = np.ones((U, kmax + 1), dtype=complex)
    for u in range(U):
        for j in range(1, kmax + 1):
            T[u, j] = float(falling_factorial(int(E[u]), j)) * vals[u] ** j
    if w.pairs_only:
        P = np.array(edges, dtype=np.int64)
    for s in range(1, min(kmax, U) + 1):
        comps = {k: [(multinomial(k, c), c) for c in enumerate_compositions(k, s)]
                 for k in orders if k >= s}
        for sub in _combination_chunks(U, s, _CHUNK):
            if w.pairs_only:
                z = _pair_z_relative(P[sub, 0], P[sub, 1], b, lc)
            else:
                z = _generic_z_relative(sub, edges, b, lc)
            for k, terms in comps.items():
                acc = np.zeros(len(sub), dtype=complex)
                for coef, comp in terms:
                    prod = np.full(len(sub), float(coef), dtype=complex)
                    for t, kt in enumerate(comp):
                        prod *= T[sub[:, t], kt]
                    acc += prod
                out[k] += complex(np.dot(acc, z))
    return out


def _scaled(rel, b):
    log_p0 = complex(np.sum(log2cosh(np.asarray(b, dtype=complex))))
    if abs(log_p0.real) < 600:
        return np.asarray(rel) * np.exp(log_p0), 0.0
    return np.asarray(rel) * np.exp(1j * log_p0.imag), log_p0.real


def derivative_k(c, b, k: int, *, n=None, work_limit=DEFAULT_WORK_LIMIT) -> complex:
    """p^(k)(0) for weights ``c`` (EdgeWeights or mapping) and linear coefficients ``b``."""
    w = _as_weights(c, n)
    rel = _relative_derivatives(w, b, [k], work_limit)[k]
    vals, log_scale = _scaled([rel], b)
    return complex(vals[0] * math.exp(log_scale))


def derivative_table(c, b, m: int, *, n=None, work_limit=DEFAULT_WORK_LIMIT) -> DerivativeTable:
    """All derivatives p^(0)(0) .. p^(m)(0) from one enumeration pass."""
    w = _as_weights(c, n)
    rel = _relative_derivatives(w, b, range(m + 1), work_limit)
    vals, log_scale = _scaled([rel[k] for k in range(m + 1)], b)
    return DerivativeTable(vals, n=w.n, degree=w.degree_bound, log_scale=log_scale)
