"""Timing runs of the interpolation pipeline against the exact sum."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass

from .errors import InputError
from .exact import BRUTE_FORCE_CAP, log_partition_sum
from .generate import gen_instance
from .pipeline import approximate_partition

__all__ = ["BenchRecord", "SUITES", "bench"]

# (n, edge density) per run; sparse graphs keep the subset formula affordable
SUITES = {
    "small": [(10, 0.3), (11, 0.3), (12, 0.3), (13, 0.25), (14, 0.2)],
    "medium": [(16, 0.15), (18, 0.12), (20, 0.1)],
}


@dataclass(frozen=True)
class BenchRecord:
    n: int
    k_max: int
    epsilon: float
    wall_time: float
    relative_error_vs_oracle: float | None
    method: str = "interpolate"

    def as_dict(self) -> dict:
        return asdict(self)


def bench(suite="small", *, delta=0.25, epsilon=0.05, seed=0, derivatives="formula",
          cap=None) -> list:
    """Run the interpolation route on each instance of ``suite`` and time it.

    The error against the exact sum is the absolute difference of logarithms,
    recorded only when n is within the brute-force cap.
    """
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    cap = BRUTE_FORCE_CAP if cap is None else cap
    out = []
    for t, (n, density) in enumerate(SUITES[suite]):
        f = gen_instance("random-quadratic", n=n, delta=delta, density=density, seed=[seed, t])
        t0 = time.perf_counter()
        res = approximate_partition(f, delta, epsilon, method="interpolate", region="verified",
                                    derivatives=derivatives, cap=cap, full_output=True)
        wall = time.perf_counter() - t0
        err = abs(res.log_s.real - log_partition_sum(f, cap=cap).real) if n <= cap else None
        out.append(BenchRecord(n, res.report.order_m, epsilon, wall, err))
    return out
