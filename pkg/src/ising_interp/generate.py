"""Random and structured instance generators.

Random kinds rescale coefficients so the worst row meets the row-sum budget
with equality.  All randomness flows through ``numpy.random.default_rng(seed)``.
"""

from __future__ import annotations

import itertools
import math

import networkx as nx
import numpy as np

from .errors import InputError
from .model import CubePolynomial

__all__ = ["KINDS", "gen_instance", "regular_coupling", "random_pairs", "random_triples"]

KINDS = ("random-quadratic", "random-cubic", "regular-graph", "complex-boundary")


def regular_coupling(degree: int) -> float:
    """(1/2) ln(Delta / (Delta - 2)), the coupling at which a Delta-regular row sum is (Delta/2) ln(Delta/(Delta-2))."""
    if degree < 3:
        raise InputError("degree must be at least 3")
    return 0.5 * math.log(degree / (degree - 2))


def random_pairs(n, density, rng):
    """Each pair {i, j} kept independently with probability ``density``; never empty for n >= 2."""
    allp = np.array(list(itertools.combinations(range(n), 2)), dtype=np.int64).reshape(-1, 2)
    keep = rng.random(len(allp)) < density
    if len(allp) and not keep.any():
        keep[rng.integers(len(allp))] = True
    return allp[keep]


def random_triples(n, density, rng):
    allt = np.array(list(itertools.combinations(range(n), 3)), dtype=np.int64).reshape(-1, 3)
    keep = rng.random(len(allt)) < density
    if len(allt) and not keep.any():
        keep[rng.integers(len(allt))] = True
    return allt[keep]


def _rows(n, keys, vals):
    r = np.zeros(n)
    for col in keys.T:
        r += np.bincount(col, weights=np.abs(vals), minlength=n)
    return r


def _scale_to(rows, target):
    worst = rows.max() if len(rows) else 0.0
    return target / worst if worst > 0 else 0.0


def _check_common(n, delta, upper=1.0):
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError("n must be a positive integer")
    if not 0 < delta < upper:
        raise InputError(f"delta must lie in (0, {upper})")


def _random_quadratic(rng, n, delta=0.25, density=1.0, b_scale=1.0):
    _check_common(n, delta)
    P = random_pairs(n, density, rng)
    a = rng.uniform(-1, 1, len(P))
    a *= _scale_to(_rows(n, P, a), 1 - delta)
    b = rng.uniform(-b_scale, b_scale, n)
    return CubePolynomial.from_arrays(n, b, P, a)


def _random_cubic(rng, n, delta=0.3, density=1.0, triple_density=0.2, cubic_share=0.5,
                  b_scale=1.0):
    _check_common(n, delta, 0.5)
    if n < 3:
        raise InputError("random-cubic needs n >= 3")
    if not 0 < cubic_share <= 1:
        raise InputError("cubic_share must lie in (0, 1]")
    P = random_pairs(n, density, rng) if cubic_share < 1 else np.zeros((0, 2), dtype=np.int64)
    T = random_triples(n, triple_density, rng)
    a = rng.uniform(-1, 1, len(P))
    c = rng.uniform(-1, 1, len(T))
    c *= _scale_to(_rows(n, T, c), cubic_share)
    a *= _scale_to(_rows(n, P, a), 1 - cubic_share)
    total = _rows(n, P, a) + _rows(n, T, c)
    s = _scale_to(total, 1 - delta)
    b = rng.uniform(-b_scale, b_scale, n)
    return CubePolynomial.from_arrays(n, b, P, a * s, T, c * s)


def _regular_graph(rng, n, degree=3, ferromagnetic=True, b=0.0):
    if degree == 0:
        return CubePolynomial(n, {i: b for i in range(n)} if b else {})
    if n * degree % 2 or degree >= n:
        raise InputError(f"no {degree}-regular graph on {n} vertices")
    G = nx.random_regular_graph(degree, n, seed=int(rng.integers(2**31)))
    coupling = regular_coupling(degree) * (1 if ferromagnetic else -1)
    P = np.array(sorted(tuple(sorted(e)) for e in G.edges()), dtype=np.int64)
    return CubePolynomial.from_arrays(n, np.full(n, b), P, np.full(len(P), coupling))


def _complex_boundary(rng, n, delta=0.3, density=1.0, cubic=False, triple_density=0.2,
                      b_scale=1.0):
    """Real rows at 1 - delta and imaginary rows at delta^2 / 10 on the worst index, |Im b_i| = delta^2 / 10."""
    _check_common(n, delta, 0.5 if cubic else 1.0)
    P = random_pairs(n, density, rng)
    T = random_triples(n, triple_density, rng) if cubic and n >= 3 else np.zeros((0, 3), dtype=np.int64)
    im_cap = delta**2 / 10
    re_a, im_a = rng.uniform(-1, 1, len(P)), rng.uniform(-1, 1, len(P))
    re_c, im_c = rng.uniform(-1, 1, len(T)), rng.uniform(-1, 1, len(T))
    s_re = _scale_to(_rows(n, P, re_a) + _rows(n, T, re_c), 1 - delta)
    s_im = _scale_to(_rows(n, P, im_a) + _rows(n, T, im_c), im_cap)
    a = s_re * re_a + 1j * s_im * im_a
    c = s_re * re_c + 1j * s_im * im_c
    b = rng.uniform(-b_scale, b_scale, n) + 1j * im_cap * rng.choice([-1.0, 1.0], n)
    return CubePolynomial.from_arrays(n, b, P, a, T, c)


_BUILDERS = {
    "random-quadratic": _random_quadratic,
    "random-cubic": _random_cubic,
    "regular-graph": _regular_graph,
    "complex-boundary": _complex_boundary,
}


def gen_instance(kind: str, *, seed=None, rng=None, **params) -> CubePolynomial:
    """Build an instance of the given kind.

    Parameters
    ----------
    kind : {"random-quadratic", "random-cubic", "regular-graph", "complex-boundary"}
    seed : int, optional
        Seed for ``numpy.random.default_rng``; ignored when ``rng`` is given.
    **params
        ``n`` always; ``delta``, ``density``, ``b_scale`` for the random kinds;
        ``triple_density`` and ``cubic_share`` for cubic ones; ``degree``,
        ``ferromagnetic`` and ``b`` for regular graphs.

    Examples
    --------
    >>> f = gen_instance("regular-graph", n=8, degree=3, seed=1)
    >>> round(float(f.row_sums().max()), 5)
    1.64792
    """
    if kind not in _BUILDERS:
        raise InputError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    rng = np.random.default_rng(seed) if rng is None else rng
    try:
        return _BUILDERS[kind](rng, **params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {kind}: {exc}") from exc
