"""Partition sums of exp(f) over the Boolean cube by polynomial interpolation."""

from __future__ import annotations

from .errors import BudgetExceeded, HypothesisRefusal, InputError, MapCertificationError
from .exact import (face_sum, log_partition_sum, p_deriv_oracle, p_exact, p_taylor_oracle,
                    partition_sum)
from .generate import gen_instance
from .geometry import degree4_counterexample, lemma22_check, lemma31_check
from .interpolate import ApproxReport, ZeroFreeDisk, ZeroFreeStrip, approx_log_p1, build_disk_map
from .model import (CubePolynomial, HypothesisReport, check_complex_cubic,
                    check_complex_quadratic, check_real_cubic, check_real_quadratic,
                    load_instance, save_instance)
from .pipeline import (approximate_partition, approximate_partition_cubic,
                       transformed_coefficients, verify_transformed_instance)
from .scan import (ZeroScanResult, count_zeros_in_disk, scan_field, scan_leeyang, scan_z,
                   scan_zero_free, verified_region)
from .taylor import DerivativeTable, derivative_k, derivative_table

__all__ = [
    "ApproxReport", "BudgetExceeded", "CubePolynomial", "DerivativeTable", "HypothesisRefusal",
    "HypothesisReport", "InputError", "MapCertificationError", "ZeroFreeDisk", "ZeroFreeStrip",
    "ZeroScanResult", "approx_log_p1", "approximate_partition", "approximate_partition_cubic",
    "build_disk_map", "check_complex_cubic", "check_complex_quadratic", "check_real_cubic",
    "check_real_quadratic", "count_zeros_in_disk", "degree4_counterexample", "derivative_k",
    "derivative_table", "face_sum", "gen_instance", "lemma22_check", "lemma31_check",
    "load_instance", "log_partition_sum", "p_deriv_oracle", "p_exact", "p_taylor_oracle",
    "partition_sum", "save_instance", "scan_field", "scan_leeyang", "scan_z", "scan_zero_free",
    "transformed_coefficients", "verified_region", "verify_transformed_instance",
]
