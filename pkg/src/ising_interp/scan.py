"""Exact zero scans: Lee-Yang roots, zero-free sweeps, argument-principle counts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .errors import HypothesisRefusal, InputError, MapCertificationError
from .exact import (_LogSum, _blocks, _check_cap, _consistency, abs_partition_sum, log_p_exact,
                    log_partition_sum)
from .interpolate import ZeroFreeDisk
from .model import (CubePolynomial, check_complex_cubic, check_complex_quadratic,
                    evaluate_many)
from .taylor import weights_from_instance

__all__ = [
    "ZeroScanResult",
    "magnetization_polynomial",
    "scan_leeyang",
    "scan_field",
    "scan_z",
    "normalized_modulus",
    "scan_zero_free",
    "count_zeros_in_disk",
    "verified_region",
    "ROOT_TOL",
]

ROOT_TOL = 1e-8


@dataclass(frozen=True)
class ZeroScanResult:
    """Values of S over a grid of one complex parameter, with roots when the scan is univariate.

    ``root_residuals[r]`` is |S(root)| / sum |terms| at that root.
    """

    parameter_name: str
    grid: np.ndarray
    values: np.ndarray
    roots: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    min_normalized_modulus: float = math.nan
    root_residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))

    __hash__ = None

    def __post_init__(self):
        if np.shape(self.grid) != np.shape(self.values):
            raise InputError("grid and values must be aligned")

    @property
    def max_unit_deviation(self) -> float:
        """max | |u| - 1 | over the roots u."""
        return float(np.max(np.abs(np.abs(self.roots) - 1))) if len(self.roots) else 0.0

    def as_dict(self) -> dict:
        pair = lambda v: [[float(x.real), float(x.imag)] for x in np.ravel(v)]
        return {
            "parameter_name": self.parameter_name,
            "grid": pair(self.grid),
            "values": pair(self.values),
            "roots": pair(self.roots),
            "root_residuals": [float(r) for r in self.root_residuals],
            "min_normalized_modulus": self.min_normalized_modulus,
        }


def _interaction_only(f):
    return CubePolynomial(f.n, {}, f.quadratic, f.cubic)


def magnetization_polynomial(f: CubePolynomial, *, cap=None):
    """Coefficients of Q(u) = sum_k u^k sum_{x: k spins +1} e^{g(x)}, g = f without its linear part.

    With a uniform field b, S = e^{-n b} Q(e^{2b}).  Returns ``(Q, A, shift)``
    where ``Q * e^shift`` are the coefficients and ``A * e^shift`` the sums of
    |e^{g(x)}| per k.
    """
    _check_cap(f.n, cap)
    g = _interaction_only(f)
    shift = -math.inf
    for X in _blocks(f.n, len(f.c)):
        shift = max(shift, float(evaluate_many(g, X).real.max()))
    re = np.zeros(f.n + 1)
    im = np.zeros(f.n + 1)
    mod = np.zeros(f.n + 1)
    for X in _blocks(f.n, len(f.c)):
        t = np.exp(evaluate_many(g, X) - shift)
        k = (X == 1).sum(axis=1)
        re += np.bincount(k, weights=t.real, minlength=f.n + 1)
        im += np.bincount(k, weights=t.imag, minlength=f.n + 1)
        mod += np.bincount(k, weights=np.abs(t), minlength=f.n + 1)
    return re + 1j * im, mod, shift


def _polish(Q, roots):
    P = np.polynomial.Polynomial(Q)
    dP = P.deriv()
    d = dP(roots)
    ok = d != 0
    out = roots.copy()
    out[ok] = roots[ok] - P(roots[ok]) / d[ok]
    return out


def _components(f):
    G = nx.Graph()
    G.add_nodes_from(range(f.n))
    for e, v in (*f.quadratic.items(), *f.cubic.items()):
        if v != 0:
            nx.add_path(G, e)
    return [sorted(comp) for comp in nx.connected_components(G)]


def _field_roots(f, cap=None):
    # Q factors over connected components; an isolated spin contributes (1 + u)
    # exactly, and splitting keeps repeated factors out of the root finder
    out = []
    for comp in _components(f):
        if len(comp) == 1:
            out.append(np.array([-1.0 + 0j]))
            continue
        idx = {v: k for k, v in enumerate(comp)}
        sub = CubePolynomial(
            len(comp), {},
            {tuple(idx[i] for i in e): v for e, v in f.quadratic.items() if e[0] in idx},
            {tuple(idx[i] for i in e): v for e, v in f.cubic.items() if e[0] in idx})
        Q, _, _ = magnetization_polynomial(sub, cap=cap)
        out.append(_polish(Q, np.roots(Q[::-1])))
    return np.concatenate(out) if out else np.zeros(0, dtype=complex)


def _residuals(Q, A, u):
    num = np.abs(np.polynomial.polynomial.polyval(u, Q))
    den = np.polynomial.polynomial.polyval(np.abs(u), A)
    return num / den


def _field_values(Q, A, shift, n, b):
    b = np.asarray(b, dtype=complex)
    u = np.exp(2 * b)
    vals = np.polynomial.polynomial.polyval(u, Q) * np.exp(shift - n * b)
    mods = np.polynomial.polynomial.polyval(np.abs(u), A) * np.exp(shift - n * b.real)
    return vals, mods


def scan_leeyang(graph_edges, a, b_grid=None, *, n=None, cap=None) -> ZeroScanResult:
    """Roots of S in u = e^{2b} for a ferromagnetic pair interaction and uniform field b.

    Parameters
    ----------
    graph_edges : sequence of (i, j)
    a : float or array
        Nonnegative coupling per edge.
    b_grid : array, optional
        Field values at which S is also evaluated.
    n : int, optional
        Number of vertices (default: one more than the largest edge endpoint).

    Raises
    ------
    HypothesisRefusal
        Some coupling is negative.
    """
    E = np.asarray(list(graph_edges), dtype=np.int64).reshape(-1, 2)
    a = np.broadcast_to(np.asarray(a, dtype=float), (len(E),))
    if np.any(a < 0):
        bad = int(np.flatnonzero(a < 0)[0])
        raise HypothesisRefusal(f"edge {tuple(E[bad])} has negative coupling {a[bad]}; "
                                "the Lee-Yang property needs a >= 0", index=bad)
    n = int(E.max()) + 1 if n is None else n
    f = CubePolynomial.from_arrays(n, None, E, a)
    Q, A, shift = magnetization_polynomial(f, cap=cap)
    roots = _field_roots(f, cap)
    res = _residuals(Q, A, roots)
    grid = np.zeros(0, dtype=complex) if b_grid is None else np.asarray(b_grid, dtype=complex)
    vals, mods = _field_values(Q, A, shift, n, grid)
    mn = float(np.min(np.abs(vals) / mods)) if len(grid) else math.nan
    return ZeroScanResult("b", grid, vals, roots, mn, res)


def scan_field(f: CubePolynomial, b_grid, *, cap=None) -> ZeroScanResult:
    """S with every b_i replaced by one field value b, over ``b_grid``; roots in u = e^{2b}."""
    Q, A, shift = magnetization_polynomial(f, cap=cap)
    roots = _field_roots(f, cap)
    grid = np.asarray(b_grid, dtype=complex)
    vals, mods = _field_values(Q, A, shift, f.n, grid)
    return ZeroScanResult("b", grid, vals, roots, float(np.min(np.abs(vals) / mods)),
                          _residuals(Q, A, roots))


def scan_z(f: CubePolynomial, z_grid, *, cap=None) -> ZeroScanResult:
    """The interpolation polynomial p over ``z_grid``; normalized by sum of |terms| of p."""
    grid = np.asarray(z_grid, dtype=complex)
    w = weights_from_instance(f)
    logp = log_p_exact(f, grid, weights=w, cap=cap)
    # sum |terms| of p equals p evaluated with |1 + z w_u| and |e^{b_i}|
    g = CubePolynomial(f.n, {i: v.real for i, v in f.linear.items()})
    mods = np.empty(grid.shape)
    for idx, z in np.ndenumerate(grid):
        mods[idx] = _abs_p(g, w, z, cap)
    return ZeroScanResult("z", grid, np.exp(logp), min_normalized_modulus=float(
        np.min(np.exp(logp.real - mods))))


def _abs_p(g, w, z, cap):
    logs = w.exponents * np.log(np.abs(1 + z * w.values))
    acc = _LogSum()
    for X in _blocks(g.n, len(w.edges)):
        cons = _consistency(X, w.edges).astype(float)
        acc.add(cons @ logs + X @ g.b.real + 0j)
    return float(complex(acc.log()).real)


def normalized_modulus(f: CubePolynomial, *, cap=None) -> float:
    """|S(e^f)| / sum_x |e^{f(x)}|."""
    return math.exp(log_partition_sum(f, cap=cap).real - abs_partition_sum(f, cap=cap, log=True))


def scan_zero_free(sampler, delta: float, trials: int, *, cubic=False, seed=0, check=True,
                   floor=1e-12, cap=None, return_all=False):
    """Minimum of |S| / sum |e^f| over ``trials`` sampled instances.

    ``sampler(rng)`` returns an instance; trial t uses the generator seeded by
    ``(seed, t)``.  With ``check`` each instance must pass the complex
    hypothesis check (otherwise HypothesisRefusal), and a minimum at or below
    ``floor`` raises AssertionError.  ``check=False`` runs a control sweep.
    """
    checker = check_complex_cubic if cubic else check_complex_quadratic
    ratios = np.empty(trials)
    for t in range(trials):
        f = sampler(np.random.default_rng([seed, t]))
        if check:
            rep = checker(f, delta)
            if not rep.satisfied:
                raise HypothesisRefusal(
                    f"trial {t}: sampled instance violates the hypothesis at index "
                    f"{rep.worst_index}", report=rep, index=rep.worst_index)
        ratios[t] = normalized_modulus(f, cap=cap)
    low = float(ratios.min()) if trials else math.inf
    if check and not low > floor:
        raise AssertionError(f"normalized modulus {low:.3g} <= {floor:g} under the hypothesis")
    return (low, ratios) if return_all else low


# ------------------------------------------------------- argument principle


def _wrapped(d):
    return (d + np.pi) % (2 * np.pi) - np.pi


def count_zeros_in_disk(f: CubePolynomial, radius: float, *, weights=None, initial=256,
                        max_points=1 << 16, max_step=0.5, cap=None):
    """Number of zeros of p inside |z| < radius by the argument principle.

    The boundary circle is refined until consecutive samples of arg p differ by
    at most ``max_step``.  Returns ``(count, min_log_modulus, points)``; the
    count is None when refinement hits ``max_points``.
    """
    t = np.linspace(0, 2 * np.pi, initial, endpoint=False)
    lp = log_p_exact(f, radius * np.exp(1j * t), weights=weights, cap=cap)
    while True:
        tt = np.append(t, 2 * np.pi)
        ll = np.append(lp, lp[0])
        d = _wrapped(np.diff(ll.imag))
        bad = np.flatnonzero(np.abs(d) > max_step)
        if len(bad) == 0 or len(t) + len(bad) > max_points:
            break
        mids = 0.5 * (tt[bad] + tt[bad + 1])
        lm = log_p_exact(f, radius * np.exp(1j * mids), weights=weights, cap=cap)
        order = np.argsort(np.concatenate([t, mids]))
        t = np.concatenate([t, mids])[order]
        lp = np.concatenate([lp, lm])[order]
    if not np.all(np.isfinite(lp)):
        return None, -math.inf, len(t)
    count = None if len(bad) else int(round(d.sum() / (2 * np.pi)))
    return count, float(lp.real.min()), len(t)


def verified_region(f: CubePolynomial, *, radii=(8.0, 6.0, 5.0, 4.0, 3.0, 2.5, 2.0, 1.5, 1.25, 1.1),
                    cap=None) -> ZeroFreeDisk:
    """Largest disk among ``radii`` on which p has no zeros, by exact argument-principle counts.

    Raises
    ------
    MapCertificationError
        Every candidate disk contains a zero (or could not be resolved).
    """
    w = weights_from_instance(f)
    seen = []
    for r in sorted(radii, reverse=True):
        if r <= 1:
            continue
        count, low, pts = count_zeros_in_disk(f, r, weights=w, cap=cap)
        seen.append((r, count))
        if count == 0:
            return ZeroFreeDisk(r, f"argument principle on |z| = {r}: 0 zeros, {pts} samples")
    raise MapCertificationError(f"no zero-free disk verified among radii {radii}: {seen}",
                                diagnostics={"counts": seen})
