"""Angle inequalities for sums of complex numbers.

The checks accept scalars or equally shaped arrays; with arrays every ratio is
returned elementwise and ``passed`` is a boolean array.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError

__all__ = [
    "angle_between",
    "lemma22_check",
    "lemma31_check",
    "degree4_counterexample",
    "SLACK",
]

SLACK = 1e-9
_ANGLE_TOL = 1e-12


def _unwrap(x):
    return x.item() if isinstance(x, np.ndarray) and x.ndim == 0 else x


def _nonzero(*vs):
    arrs = [np.asarray(v, dtype=complex) for v in vs]
    if any(np.any(a == 0) for a in arrs):
        raise InputError("vectors must be nonzero")
    return arrs


def angle_between(w1, w2):
    """Unsigned angle in [0, pi] between nonzero complex numbers."""
    w1, w2 = _nonzero(w1, w2)
    return _unwrap(np.abs(np.angle(w1 / w2)))


def lemma22_check(w_plus, w_minus, theta):
    """Two-vector bounds for w = w+ + w- when the angle between w+ and w- is at most theta < pi.

    Returns ``(ratio1, ratio2, passed)`` with ratio1 = (|w+| + |w-|)/|w| checked
    against 1/cos(theta/2) and ratio2 = |Im((w+ - w-)/w)| against tan(theta/2).
    """
    wp, wm = _nonzero(w_plus, w_minus)
    theta = _unwrap(np.asarray(theta, dtype=float))
    if not np.all((0 <= theta) & (theta < np.pi)):
        raise InputError("theta must lie in [0, pi)")
    if np.any(np.abs(np.angle(wp / wm)) > theta + _ANGLE_TOL):
        raise InputError("angle between w_plus and w_minus exceeds theta")
    w = wp + wm
    if np.any(w == 0):
        raise InputError("w_plus + w_minus vanished")
    r1 = (np.abs(wp) + np.abs(wm)) / np.abs(w)
    r2 = np.abs(((wp - wm) / w).imag)
    ok = (r1 <= 1 / np.cos(theta / 2) + SLACK) & (r2 <= np.tan(theta / 2) + SLACK)
    return _unwrap(r1), _unwrap(r2), _unwrap(ok)


def lemma31_check(v_pp, v_pm, v_mp, v_mm, theta):
    """Four-vector bounds; pp-pm, pp-mp, mm-pm and mm-mp angles must be at most theta < pi/2.

    ratio1 = (sum |v|)/|v| is checked against 1/cos(theta) and
    ratio2 = |Im((v++ - v+- - v-+ + v--)/v)| against tan(theta/2), v the total.
    """
    pp, pm, mp, mm = _nonzero(v_pp, v_pm, v_mp, v_mm)
    theta = _unwrap(np.asarray(theta, dtype=float))
    if not np.all((0 <= theta) & (theta < np.pi / 2)):
        raise InputError("theta must lie in [0, pi/2)")
    for x, y in ((pp, pm), (pp, mp), (mm, pm), (mm, mp)):
        if np.any(np.abs(np.angle(x / y)) > theta + _ANGLE_TOL):
            raise InputError("an adjacent pair of vectors is more than theta apart")
    v = pp + pm + mp + mm
    if np.any(v == 0):
        raise InputError("the four vectors sum to zero")
    r1 = (np.abs(pp) + np.abs(pm) + np.abs(mp) + np.abs(mm)) / np.abs(v)
    r2 = np.abs(((pp - pm - mp + mm) / v).imag)
    ok = (r1 <= 1 / np.cos(theta) + SLACK) & (r2 <= np.tan(theta / 2) + SLACK)
    return _unwrap(r1), _unwrap(r2), _unwrap(ok)


def degree4_counterexample(theta: float, eps_len: float):
    """Eight vectors for which the degree-4 analogue of the imaginary-part bound fails.

    v+++ and v--- have length 1 and are 3 theta apart; the other six have length
    ``eps_len`` and sit at angle theta * (number of minus signs), so vectors whose
    sign patterns differ in one place are exactly theta apart.

    Returns
    -------
    vectors : dict
        Sign pattern tuple -> complex number.
    ratio : float
        |Im(alternating sum / total sum)|, about tan(3 theta / 2).
    """
    if not 0 < theta < 0.4:
        raise InputError("theta must lie in (0, 0.4)")
    if not 0 < eps_len < 0.01:
        raise InputError("eps_len must lie in (0, 0.01)")
    vectors = {}
    for pattern in np.ndindex(2, 2, 2):
        signs = tuple(1 - 2 * p for p in pattern)
        minus = sum(pattern)
        length = 1.0 if minus in (0, 3) else eps_len
        vectors[signs] = length * np.exp(1j * theta * minus)
    total = sum(vectors.values())
    alternating = sum(np.prod(s) * v for s, v in vectors.items())
    return vectors, float(abs((alternating / total).imag))
