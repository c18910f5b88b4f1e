from __future__ import annotations

import math

import numpy as np
import pytest

from ising_interp.errors import BudgetExceeded, HypothesisRefusal, InputError
from ising_interp.exact import log_p_exact, log_partition_sum
from ising_interp.generate import gen_instance
from ising_interp.interpolate import ZeroFreeDisk
from ising_interp.model import CubePolynomial
from ising_interp.pipeline import (approximate_partition, approximate_partition_cubic,
                                   exact_threshold, transformed_coefficients,
                                   verify_transformed_instance)


def test_zero_polynomial():
    assert approximate_partition(CubePolynomial(7), 0.4, 0.1) == pytest.approx(7 * math.log(2))


def test_linear_only():
    b = np.array([0.3, -1.2, 2.0, 0.0])
    f = CubePolynomial.from_arrays(4, b)
    assert approximate_partition(f, 0.5, 0.1).real == pytest.approx(
        np.sum(np.log(2 * np.cosh(b))), rel=1e-14)


def test_small_n_is_the_oracle():
    f = gen_instance("random-quadratic", n=12, seed=4)
    res = approximate_partition(f, 0.25, 0.05, full_output=True)
    assert res.method == "exact"
    assert res.log_s.real == log_partition_sum(f).real
    assert exact_threshold() == 24


def test_refusal_names_index():
    f = CubePolynomial(4, quadratic={(0, 1): 0.5, (1, 2): 0.4})
    with pytest.raises(HypothesisRefusal) as info:
        approximate_partition(f, 0.25, 0.05)
    assert info.value.index == 1


def test_bad_epsilon():
    with pytest.raises(InputError):
        approximate_partition(CubePolynomial(3), 0.25, 1.5)


@pytest.mark.parametrize("derivatives", ["formula", "enumeration"])
def test_interpolation_route_on_verified_disk(derivatives):
    f = gen_instance("random-quadratic", n=12, delta=0.25, density=0.3, seed=1)
    res = approximate_partition(f, 0.25, 0.05, method="interpolate", region="verified",
                                derivatives=derivatives, full_output=True)
    assert res.method == "interpolate" and res.report.tail_bound <= 0.05
    assert abs(res.log_s - log_partition_sum(f).real) <= 0.05


def test_thin_strip_refuses_with_budget_error():
    f = gen_instance("random-quadratic", n=12, delta=0.25, density=0.3, seed=1)
    with pytest.raises(BudgetExceeded):
        approximate_partition(f, 0.25, 0.05, method="interpolate", max_map_degree=64)


def test_derivative_budget_refusal_carries_order():
    f = gen_instance("random-quadratic", n=12, delta=0.25, density=1.0, seed=1)
    with pytest.raises(BudgetExceeded) as info:
        approximate_partition(f, 0.25, 1e-3, method="interpolate", region=ZeroFreeDisk(2.0),
                              derivatives="formula", work_limit=1e5)
    assert info.value.diagnostics["required_order"] > 0
    res = approximate_partition(f, 0.25, 1e-3, method="interpolate", region=ZeroFreeDisk(2.0),
                                work_limit=1e5, full_output=True)
    assert res.derivative_source == "enumeration"
    assert abs(res.log_s - log_partition_sum(f).real) <= 1e-3


def test_cubic_reduces_to_quadratic():
    f = gen_instance("random-quadratic", n=10, delta=0.3, density=0.3, seed=2)
    kw = dict(method="interpolate", region="verified")
    assert approximate_partition_cubic(f, 0.3, 0.1, **kw) == approximate_partition(
        f, 0.3, 0.1, **kw)


def test_cubic_single_triple():
    f = CubePolynomial(9, cubic={(0, 1, 2): 0.3})
    est = approximate_partition_cubic(f, 0.3, 0.1, method="interpolate", region="verified")
    assert abs(est - log_partition_sum(f).real) <= 0.1
    assert approximate_partition_cubic(f, 0.3, 0.1) == pytest.approx(log_partition_sum(f).real)


def test_cubic_delta_range():
    with pytest.raises(InputError):
        approximate_partition_cubic(CubePolynomial(4), 0.6, 0.1)


def test_transformed_instance_at_zero_and_one():
    f = gen_instance("random-quadratic", n=40, delta=0.25, density=0.2, seed=3)
    rep0 = verify_transformed_instance(f, 0, 0.25)
    assert rep0.satisfied and np.all(rep0.row_sums == 0)
    a_hat, _ = transformed_coefficients(f, 1.0)
    assert np.allclose(a_hat, f.a, atol=1e-15 * 40**2)
    assert verify_transformed_instance(f, 1.0, 0.25).satisfied


def test_transformed_instance_identity():
    # ln p(z) - sum a_hat(z) = ln S(e^{f_hat}) with f_hat carrying a_hat(z) and the same b
    f = gen_instance("random-quadratic", n=6, delta=0.25, seed=8)
    for z in (0.7 + 0.0005j, -1.05 - 0.0007j, 0.3):
        a_hat, _ = transformed_coefficients(f, z)
        g = CubePolynomial.from_arrays(6, f.b, f.pairs, a_hat)
        lhs = log_p_exact(f, z) - a_hat.sum()
        rhs = log_partition_sum(g)
        assert abs(np.exp(lhs - rhs) - 1) <= 1e-9


def test_transformed_instance_preconditions():
    f = gen_instance("random-quadratic", n=12, seed=0)
    with pytest.raises(InputError):
        verify_transformed_instance(f, 0.5 + 0.1j, 0.25)
    with pytest.raises(InputError):
        verify_transformed_instance(gen_instance("random-quadratic", n=8, seed=0), 0.5, 0.25)
