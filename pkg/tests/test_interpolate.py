from __future__ import annotations

import math

import numpy as np
import pytest

from ising_interp.errors import BudgetExceeded, InputError, MapCertificationError
from ising_interp.exact import log_p_exact, p_taylor_oracle
from ising_interp.generate import gen_instance
from ising_interp.interpolate import (ZeroFreeDisk, ZeroFreeStrip, approx_log_p1,
                                      build_disk_map, certify_radius, required_order,
                                      tail_bound, truncated_log_map)
from ising_interp.scan import verified_region
from ising_interp.taylor import DerivativeTable


def _table(coeffs, degree=None):
    c = np.asarray(coeffs, dtype=float)
    return DerivativeTable(c * [math.factorial(k) for k in range(len(c))], degree=degree)


def test_strip_from_delta():
    s = ZeroFreeStrip.from_delta(0.25)
    assert (s.re_half_extent, s.im_half_width) == (1.0625, 0.25**2 / 80)
    with pytest.raises(InputError):
        ZeroFreeStrip(1.0, 0.1)
    with pytest.raises(InputError):
        ZeroFreeStrip(1.5, 0.0)


def test_quartic_with_distant_zero():
    # (1 + z/2)^4, zeros at -2
    t = _table([1, 2, 1.5, 0.5, 0.0625], degree=4)
    rep = approx_log_p1(t, ZeroFreeDisk(1.9), 1e-3)
    assert abs(rep.log_p1 - 4 * math.log(1.5)) <= 1e-3
    assert rep.tail_bound <= 1e-3


def test_constant_polynomial():
    rep = approx_log_p1(DerivativeTable([5.0]), ZeroFreeStrip.from_delta(0.3), 1e-6)
    assert rep.order_m == 0 and rep.log_p1 == pytest.approx(math.log(5))


def test_wide_strip_gives_identity():
    d = 0.3
    phi = build_disk_map(ZeroFreeStrip(1 + d**2, 2.0))
    assert phi.is_identity
    assert phi.radius == pytest.approx(1 + d**2, rel=1e-9)
    assert phi.margin >= 0


def test_thin_strip_cannot_be_certified():
    with pytest.raises(MapCertificationError, match="radius"):
        build_disk_map(ZeroFreeStrip.from_delta(0.25), max_degree=256)


def test_moderate_strip_map_properties():
    strip = ZeroFreeStrip(1.0625, 0.5)
    phi = build_disk_map(strip, max_degree=64)
    assert phi.radius > 1 and phi.degree > 1
    c = phi.series.coeffs
    assert c[0] == 0 and abs(phi.series(1.0) - 1) <= 1e-12
    assert np.all(c.imag == 0)
    x = np.linspace(0, 1, 200)
    assert np.all(np.diff(phi.series(x).real) > 0)
    r, margin = certify_radius(phi.series, strip)
    assert margin >= 0
    t = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    assert np.all(strip.contains(phi.series(phi.radius * np.exp(1j * t))))


def test_truncated_log_map_normalized():
    phi = truncated_log_map(16, 0.8)
    assert phi(1.0) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(InputError):
        truncated_log_map(4, 1.0)


def test_tail_bound_monotone_and_order_minimal():
    D, rho, eps = 5000.0, 3.0, 1e-3
    bounds = [tail_bound(D, rho, m) for m in range(30)]
    assert all(b1 > b2 for b1, b2 in zip(bounds, bounds[1:]))
    m = required_order(D, rho, eps)
    assert tail_bound(D, rho, m) <= eps < tail_bound(D, rho, m - 1)


def test_short_table_is_refused_with_required_order():
    t = _table([1.0, 0.5, 0.1, 0.01], degree=1000)
    with pytest.raises(BudgetExceeded) as info:
        approx_log_p1(t, ZeroFreeDisk(2.0), 1e-3)
    assert info.value.estimate > 3


def test_missing_degree_is_input_error():
    with pytest.raises(InputError):
        approx_log_p1(DerivativeTable([1.0, 1.0]), ZeroFreeDisk(2.0), 0.1)


def test_n12_instance_against_oracle():
    f = gen_instance("random-quadratic", n=12, delta=0.25, density=0.3, seed=11)
    disk = verified_region(f)
    table = p_taylor_oracle(f, 20)
    exact = log_p_exact(f, 1.0)
    for eps in (0.1, 1e-3):
        rep = approx_log_p1(table, disk, eps)
        assert abs(rep.log_p1 - exact) <= eps
    # more terms never loosen the bound
    m = rep.order_m
    assert tail_bound(table.degree, disk.radius, m + 1) <= rep.tail_bound
