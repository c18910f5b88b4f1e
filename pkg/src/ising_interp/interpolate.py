"""ln p(1) from the Taylor coefficients of p at 0 and a zero-free region.

If p has no zeros on a region U containing 0 and 1, and phi is a polynomial with
phi(0) = 0, phi(1) = 1 mapping the closed disk |z| <= rho into U, then
g = ln p(phi(z)) is analytic on that disk and g(1) = ln p(1).  Writing
p(phi(z)) = q(0) prod_j (1 - z / zeta_j) over its D roots, all with
|zeta_j| > rho, every Taylor coefficient of g obeys |g_k| <= D / (k rho^k), so

    |ln p(1) - sum_{k<=m} g_k| <= D rho^-(m+1) / ((m+1)(1 - 1/rho)).

D is at most deg p times deg phi.  The series of g to order m only needs
p_0..p_m because phi(0) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, InputError, MapCertificationError
from .series import TaylorSeries, compose, log_series
from .taylor import DerivativeTable

__all__ = [
    "ZeroFreeStrip",
    "ZeroFreeDisk",
    "DiskMap",
    "ApproxReport",
    "truncated_log_map",
    "certify_radius",
    "build_disk_map",
    "tail_bound",
    "required_order",
    "approx_log_p1",
]

MIN_SAMPLES = 4096


@dataclass(frozen=True)
class ZeroFreeStrip:
    """The rectangle |Re z| <= re_half_extent, |Im z| <= im_half_width."""

    re_half_extent: float
    im_half_width: float
    delta: float | None = None

    def __post_init__(self):
        if not self.re_half_extent > 1:
            raise InputError("re_half_extent must exceed 1 so the region contains 1")
        if not self.im_half_width > 0:
            raise InputError("im_half_width must be positive")

    @classmethod
    def from_delta(cls, delta: float) -> "ZeroFreeStrip":
        """|Re z| <= 1 + delta^2, |Im z| <= delta^2 / 80."""
        if not 0 < delta < 1:
            raise InputError("delta must lie in (0, 1)")
        return cls(1 + delta**2, delta**2 / 80, delta)

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z)
        return (np.abs(z.real) <= self.re_half_extent) & (np.abs(z.imag) <= self.im_half_width)

    def slack(self, z) -> np.ndarray:
        """Signed distance to the boundary along the axes; negative means outside."""
        z = np.asarray(z)
        return np.minimum(self.re_half_extent - np.abs(z.real),
                          self.im_half_width - np.abs(z.imag))


@dataclass(frozen=True)
class ZeroFreeDisk:
    """The closed disk |z| <= radius, for zero-free regions verified numerically."""

    radius: float
    note: str = ""

    def __post_init__(self):
        if not self.radius > 1:
            raise InputError("radius must exceed 1 so the disk contains 1")

    def contains(self, z) -> np.ndarray:
        return np.abs(np.asarray(z)) <= self.radius

    def slack(self, z) -> np.ndarray:
        return self.radius - np.abs(np.asarray(z))


@dataclass(frozen=True)
class DiskMap:
    """A polynomial phi with phi(0) = 0, phi(1) = 1 and phi(|z| <= radius) inside a region."""

    series: TaylorSeries
    radius: float
    alpha: float | None = None
    margin: float = 0.0

    __hash__ = None

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.series.coeffs)
        return int(nz[-1]) if len(nz) else 0

    @property
    def is_identity(self) -> bool:
        c = self.series.coeffs
        return self.degree == 1 and c[1] == 1


@dataclass(frozen=True)
class ApproxReport:
    """Outcome of approximating ln p(1); ``tail_bound <= epsilon`` on success."""

    log_p1: complex
    order_m: int
    epsilon: float
    map_degree: int
    tail_bound: float
    diagnostics: str = ""
    radius: float = math.inf
    series_terms: np.ndarray = field(default=None, repr=False)

    __hash__ = None

    def as_dict(self) -> dict:
        return {
            "log_p1": [self.log_p1.real, self.log_p1.imag],
            "order_m": self.order_m,
            "epsilon": self.epsilon,
            "map_degree": self.map_degree,
            "radius": self.radius,
            "tail_bound": self.tail_bound,
            "diagnostics": self.diagnostics,
        }


# ------------------------------------------------------------------ disk maps


def truncated_log_map(N: int, alpha: float) -> TaylorSeries:
    """(sum_{k<=N} (alpha z)^k / k) / (sum_{k<=N} alpha^k / k)."""
    if N < 1 or not 0 < alpha < 1:
        raise InputError("need N >= 1 and 0 < alpha < 1")
    k = np.arange(1, N + 1)
    raw = alpha**k / k
    c = np.zeros(N + 1)
    c[1:] = raw / raw.sum()
    return TaylorSeries(c)


def _boundary(coeffs, r, samples):
    # phi(r e^{i t}) at t = 2 pi j / samples via one FFT
    c = np.asarray(coeffs, dtype=complex)
    scaled = np.zeros(max(samples, len(c)), dtype=complex)
    scaled[: len(c)] = c * r ** np.arange(len(c))
    vals = np.fft.ifft(scaled) * len(scaled)
    return vals[:: len(scaled) // samples] if len(scaled) > samples else vals


def certify_radius(phi: TaylorSeries, region, *, samples=MIN_SAMPLES, r_max=64.0, iters=48):
    """Largest r (found by bisection) with phi(|z| = r) inside ``region`` at every sample.

    Both region types are convex, so containment of the sampled boundary circle
    stands in for containment of the whole disk.  Returns ``(r, margin)`` with
    ``r = 0`` when even tiny circles leave the region.
    """
    samples = max(samples, 8 * len(phi.coeffs))

    def ok(r):
        with np.errstate(over="ignore", invalid="ignore"):
            slack = region.slack(_boundary(phi.coeffs, r, samples))
        return bool(np.all(np.isfinite(slack))) and float(np.min(slack)) >= 0

    lo, hi = 0.0, 2.0
    while ok(hi) and hi < r_max:
        lo, hi = hi, 2 * hi
    if ok(hi):
        lo = hi
    else:
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            lo, hi = (mid, hi) if ok(mid) else (lo, mid)
    if lo == 0:
        return 0.0, -math.inf
    margin = float(np.min(region.slack(_boundary(phi.coeffs, lo, samples))))
    return lo, margin


def build_disk_map(region, *, max_degree=1024, samples=MIN_SAMPLES,
                   alphas=None) -> DiskMap:
    """Search the identity and a truncated-logarithm family for the largest certified radius.

    For a disk region the identity is optimal and returned directly.  For a
    strip the candidates are z and the normalized truncated logarithms of
    degree N = 2, 4, ..., ``max_degree``.

    Raises
    ------
    MapCertificationError
        No candidate certifies a radius above 1.
    """
    if isinstance(region, ZeroFreeDisk):
        return DiskMap(TaylorSeries([0.0, 1.0]), region.radius, None, 0.0)
    identity = TaylorSeries([0.0, 1.0])
    r, margin = certify_radius(identity, region, samples=samples)
    best = DiskMap(identity, r, None, margin)
    alphas = np.concatenate([np.linspace(0.5, 0.95, 10), 1 - np.geomspace(0.04, 1e-4, 12)]) \
        if alphas is None else np.asarray(alphas)
    N = 2
    while N <= max_degree:
        for alpha in alphas:
            phi = truncated_log_map(N, float(alpha))
            r, margin = certify_radius(phi, region, samples=samples)
            if r > best.radius:
                best = DiskMap(phi, r, float(alpha), margin)
        N *= 2
    if not best.radius > 1:
        raise MapCertificationError(
            f"no polynomial map of degree <= {max_degree} certifies a disk of radius > 1 "
            f"inside {region}; best radius {best.radius:.6g}. A wider region "
            "(larger delta) or a numerically verified zero-free disk is needed.",
            diagnostics={"best_radius": best.radius, "best_degree": best.degree,
                         "best_alpha": best.alpha})
    return best


# ------------------------------------------------------------------ truncation


def tail_bound(D: float, rho: float, m: int) -> float:
    """Bound on |sum_{k>m} g_k| when p(phi(z)) has at most D roots, all outside |z| <= rho."""
    if rho <= 1:
        return math.inf
    return D * rho ** -(m + 1) / ((m + 1) * (1 - 1 / rho))


def required_order(D: float, rho: float, epsilon: float, *, limit=100000) -> int:
    """Smallest m with tail_bound(D, rho, m) <= epsilon."""
    if rho <= 1:
        raise InputError("radius must exceed 1")
    # start from the log estimate and walk down / up to the exact minimum
    m = max(0, int(math.log(max(D, 1) / (epsilon * (1 - 1 / rho))) / math.log(rho)))
    while m > 0 and tail_bound(D, rho, m - 1) <= epsilon:
        m -= 1
    while tail_bound(D, rho, m) > epsilon:
        m += 1
        if m > limit:
            raise InputError("truncation order exceeds limit")
    return m


def approx_log_p1(derivs: DerivativeTable, region, epsilon: float, *,
                  disk_map: DiskMap | None = None, degree: int | None = None) -> ApproxReport:
    """Estimate ln p(1) within ``epsilon`` from p^(k)(0), k <= derivs.m.

    Parameters
    ----------
    derivs : DerivativeTable
        Derivatives of p at 0; ``derivs.degree`` (or ``degree``) must bound deg p.
    region : ZeroFreeStrip or ZeroFreeDisk
        A region on which p is known to have no zeros.
    epsilon : float
        Target absolute error on ln p(1).
    disk_map : DiskMap, optional
        Skip the map search.

    Raises
    ------
    BudgetExceeded
        The table is shorter than the order the tail bound requires; the
        required order is attached as ``estimate``.
    MapCertificationError
        No map into ``region`` could be certified.
    """
    if not epsilon > 0:
        raise InputError("epsilon must be positive")
    D = derivs.degree if degree is None else degree
    coeffs = derivs.coeffs
    if coeffs[0] == 0:
        raise InputError("p(0) = 0: the base point is not zero-free")
    lam0 = derivs.log_scale + np.log(complex(derivs.values[0]))
    nz = np.flatnonzero(coeffs[1:])
    if D is None and len(nz) == 0:
        D = 0
    if D is None:
        raise InputError("an upper bound on deg p is needed for the tail estimate")
    if D == 0:
        return ApproxReport(complex(lam0), 0, epsilon, 0, 0.0, "constant polynomial",
                            math.inf, np.array([lam0]))
    phi = build_disk_map(region) if disk_map is None else disk_map
    Dq = D * phi.degree
    m = required_order(Dq, phi.radius, epsilon)
    diag = (f"map degree {phi.degree}, alpha {phi.alpha}, radius {phi.radius:.6g}, "
            f"root bound {Dq}, required order {m}")
    if derivs.m >= D:
        # the table holds every coefficient of p; the rest are zero
        coeffs = np.concatenate([coeffs, np.zeros(max(0, m - derivs.m), dtype=complex)])
    elif m > derivs.m:
        raise BudgetExceeded(
            f"tail bound needs order {m} but only {derivs.m} derivatives are available ({diag})",
            estimate=m, diagnostics={"required_order": m, "available": derivs.m,
                                     "radius": phi.radius, "map_degree": phi.degree})
    q = coeffs[: m + 1] / coeffs[0]
    g = log_series(compose(q, phi.series.coeffs, m), m).coeffs.copy()
    g[0] = lam0
    total = complex(math.fsum(g.real) + 1j * math.fsum(g.imag))
    tb = tail_bound(Dq, phi.radius, m)
    last = abs(g[m]) if m > 0 else 0.0
    return ApproxReport(total, m, epsilon, phi.degree, tb,
                        diag + f", |g_m| = {last:.3g}", phi.radius, g)
