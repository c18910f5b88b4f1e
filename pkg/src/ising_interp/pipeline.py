"""End-to-end estimation of ln S(e^f) for real quadratic and cubic instances.

Small instances are summed exactly.  Larger ones go through p: the table of
p^(k)(0) feeds the interpolation step over a zero-free region, and
ln S = ln p(1) - (sum of all pair and triple coefficients).

The region is either the zero-free strip built from ``delta``
(``region="strip"``), a disk verified by the argument principle on the
exact p (``region="verified"``, needs brute force), or any region object
supplied by the caller.  For the strip no polynomial disk map can be certified at practical degree when delta
is small, so that route normally ends in a budget refusal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, HypothesisRefusal, InputError
from .exact import BRUTE_FORCE_CAP, log_partition_sum, p_taylor_oracle
from .interpolate import (ApproxReport, ZeroFreeDisk, ZeroFreeStrip, approx_log_p1,
                          build_disk_map, required_order)
from .model import (CubePolynomial, HypothesisReport, _report, check_real_cubic,
                    check_real_quadratic)
from .scan import verified_region
from .taylor import (DEFAULT_WORK_LIMIT, DerivativeTable, derivative_table, estimate_work,
                     weights_from_instance)

__all__ = [
    "SMALL_N_FLOOR",
    "PipelineResult",
    "exact_threshold",
    "choose_derivative_source",
    "approximate_partition",
    "approximate_partition_cubic",
    "transformed_coefficients",
    "verify_transformed_instance",
]

SMALL_N_FLOOR = 10


@dataclass(frozen=True)
class PipelineResult:
    """Estimate of ln S with the pieces that produced it."""

    log_s: complex
    method: str
    hypothesis: HypothesisReport
    report: ApproxReport | None = None
    region: object | None = None
    prefactor: float = 0.0
    derivatives: DerivativeTable | None = None
    derivative_source: str | None = None

    __hash__ = None

    def as_dict(self) -> dict:
        out = {
            "log_s": [self.log_s.real, self.log_s.imag],
            "method": self.method,
            "hypothesis": self.hypothesis.as_dict(),
            "prefactor": self.prefactor,
        }
        if self.report is not None:
            out["interpolation"] = self.report.as_dict()
        if self.region is not None:
            out["region"] = repr(self.region)
            out["derivative_source"] = self.derivative_source
        return out


def exact_threshold(cap=None) -> int:
    """Instances with n below this are summed exactly under ``method="auto"``."""
    return max(SMALL_N_FLOOR, BRUTE_FORCE_CAP if cap is None else cap)


def _refuse(rep: HypothesisReport, what: str):
    raise HypothesisRefusal(
        f"{what} fails at index {rep.worst_index}: row sums {rep.row_sums[rep.worst_index].tolist()} "
        f"exceed bounds {list(rep.bounds)}", report=rep, index=rep.worst_index)


def _resolve_region(region, f, delta, cap):
    if isinstance(region, (ZeroFreeStrip, ZeroFreeDisk)):
        return region
    if region == "strip":
        return ZeroFreeStrip.from_delta(delta)
    if region == "verified":
        return verified_region(f, cap=cap)
    raise InputError(f"unknown region {region!r}; use 'strip', 'verified' or a region object")


def _enumeration_work(n, num_edges, m) -> float:
    # one pass over 2^n spins costs about a fifth of a formula unit per edge and order
    return 2.0**n * (num_edges + m + 1) / 5


def choose_derivative_source(f: CubePolynomial, m: int, *, cap=None,
                             work_limit=DEFAULT_WORK_LIMIT) -> str:
    """"formula" or "enumeration", whichever has the smaller work estimate for orders <= m.

    The formula is the only option once n exceeds the brute-force cap.
    """
    w = weights_from_instance(f)
    formula = estimate_work(len(w.edges), m, pairs_only=w.pairs_only)
    if f.n > (cap or BRUTE_FORCE_CAP):
        return "formula"
    if formula <= work_limit and formula <= _enumeration_work(f.n, len(w.edges), m):
        return "formula"
    return "enumeration"


def _pipeline(f, delta, epsilon, rep, *, method, region, derivatives, cap, work_limit,
              max_map_degree, full_output):
    if not 0 < epsilon < 1:
        raise InputError("epsilon must lie in (0, 1)")
    if method not in ("auto", "exact", "interpolate"):
        raise InputError(f"unknown method {method!r}")
    if method == "exact" or (method == "auto" and f.n < exact_threshold(cap)):
        val = log_partition_sum(f, cap=cap)
        res = PipelineResult(complex(val.real, 0.0), "exact", rep)
        return res if full_output else res.log_s
    zone = _resolve_region(region, f, delta, cap)
    phi = build_disk_map(zone, max_degree=max_map_degree)
    w = weights_from_instance(f)
    m = required_order(w.degree_bound * phi.degree, phi.radius, epsilon)
    if derivatives == "auto":
        derivatives = choose_derivative_source(f, m, cap=cap, work_limit=work_limit)
    if derivatives == "formula":
        try:
            table = derivative_table(w, f.b, m, work_limit=work_limit)
        except BudgetExceeded as exc:
            raise BudgetExceeded(
                f"{exc} while computing the order-{m} table the tail bound requires "
                f"(map degree {phi.degree}, radius {phi.radius:.4g})",
                estimate=exc.estimate,
                diagnostics={"required_order": m, "radius": phi.radius,
                             "map_degree": phi.degree}) from exc
    elif derivatives == "enumeration":
        table = p_taylor_oracle(f, m, cap=cap)
    else:
        raise InputError(f"unknown derivative source {derivatives!r}")
    report = approx_log_p1(table, zone, epsilon, disk_map=phi)
    shift = float(np.sum(f.a.real) + np.sum(f.c.real))
    val = report.log_p1 - shift
    # p(1) > 0 for real instances; a nonzero phase is truncation noise
    res = PipelineResult(complex(val.real, val.imag), "interpolate", rep, report, zone, shift, table,
                         derivatives)
    return res if full_output else res.log_s


def approximate_partition(f: CubePolynomial, delta: float, epsilon: float, *, method="auto",
                          region="strip", derivatives="auto", cap=None,
                          work_limit=DEFAULT_WORK_LIMIT, max_map_degree=1024,
                          full_output=False):
    """Estimate ln S(e^f) for a real quadratic ``f`` with row sums at most 1 - delta.

    Parameters
    ----------
    method : {"auto", "exact", "interpolate"}
        ``auto`` sums exactly when n < ``exact_threshold(cap)``.
    region : {"strip", "verified"} or region object
        Zero-free region handed to the interpolation step.
    derivatives : {"auto", "formula", "enumeration"}
        Subset-enumeration formula, or per-configuration series products (n <= cap);
        ``auto`` takes whichever has the smaller work estimate, and the formula
        whenever n > cap.
    full_output : bool
        Return a PipelineResult instead of the bare estimate.

    Raises
    ------
    HypothesisRefusal
        The row-sum condition fails; ``index`` names the worst row.
    BudgetExceeded
        The derivative work limit or the map certification stops the run.
    """
    if not f.is_quadratic:
        raise InputError("instance has cubic terms; use approximate_partition_cubic")
    rep = check_real_quadratic(f, delta)
    if not rep.satisfied:
        _refuse(rep, "row-sum condition")
    return _pipeline(f, delta, epsilon, rep, method=method, region=region,
                     derivatives=derivatives, cap=cap, work_limit=work_limit,
                     max_map_degree=max_map_degree, full_output=full_output)


def approximate_partition_cubic(f: CubePolynomial, delta: float, epsilon: float, *,
                                method="auto", region="strip", derivatives="auto",
                                cap=None, work_limit=DEFAULT_WORK_LIMIT, max_map_degree=1024,
                                full_output=False):
    """Cubic analogue of :func:`approximate_partition`; needs 0 < delta < 1/2.

    Triples enter p through d_ijk = e^{c_ijk / n^3} - 1 with exponent 2 n^3 and
    are consistent when the product of their three spins is +1.  The strip
    behind ``region="strip"`` is the same as in the quadratic case.
    """
    rep = check_real_cubic(f, delta)
    if not rep.satisfied:
        _refuse(rep, "cubic row-sum condition")
    return _pipeline(f, delta, epsilon, rep, method=method, region=region,
                     derivatives=derivatives, cap=cap, work_limit=work_limit,
                     max_map_degree=max_map_degree, full_output=full_output)


def transformed_coefficients(f: CubePolynomial, z) -> tuple:
    """(pair values, triple values) of the instance whose partition sum is e^{-sum a_hat} p(z).

    a_hat_u = n^|u| Log(1 + z w_u), principal branch.
    """
    z = complex(z)
    n = float(f.n)
    a_hat = n**2 * np.log1p(z * np.expm1(f.a / n**2))
    c_hat = n**3 * np.log1p(z * np.expm1(f.c / n**3))
    return a_hat, c_hat


def verify_transformed_instance(f: CubePolynomial, z, delta: float) -> HypothesisReport:
    """Row sums of a_hat(z): real parts at most 1 - delta/2, imaginary parts at most delta^2/40.

    ``z`` must lie in |Re z| <= 1 + delta^2, |Im z| <= delta^2/80, and n >= 10.
    """
    if not 0 < delta < 1:
        raise InputError("delta must lie in (0, 1)")
    if f.n < SMALL_N_FLOOR:
        raise InputError(f"transformed-instance bounds need n >= {SMALL_N_FLOOR}")
    z = complex(z)
    if not ZeroFreeStrip.from_delta(delta).contains(z):
        raise InputError(f"z = {z} lies outside |Re z| <= 1 + delta^2, |Im z| <= delta^2/80")
    a_hat, c_hat = transformed_coefficients(f, z)
    re_rows = np.zeros(f.n)
    im_rows = np.zeros(f.n)
    for keys, vals in ((f.pairs, a_hat), (f.triples, c_hat)):
        for col in keys.T:
            re_rows += np.bincount(col, weights=np.abs(vals.real), minlength=f.n)
            im_rows += np.bincount(col, weights=np.abs(vals.imag), minlength=f.n)
    rows = np.column_stack([re_rows, im_rows, np.zeros(f.n)])
    return _report(rows, (1 - delta / 2, delta**2 / 40, math.inf), delta)
