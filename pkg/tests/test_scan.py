from __future__ import annotations

import math

import numpy as np
import pytest

from ising_interp.errors import HypothesisRefusal, InputError
from ising_interp.exact import partition_sum
from ising_interp.generate import gen_instance
from ising_interp.model import CubePolynomial, check_complex_quadratic
from ising_interp.scan import (count_zeros_in_disk, magnetization_polynomial, scan_field,
                               scan_leeyang, scan_z, scan_zero_free, verified_region)


def test_single_vertex():
    res = scan_leeyang([], [], n=1)
    assert np.allclose(res.roots, [-1])


def test_single_edge_roots():
    res = scan_leeyang([(0, 1)], 1.0)
    Q, _, shift = magnetization_polynomial(CubePolynomial(2, quadratic={(0, 1): 1.0}))
    assert np.allclose(Q * math.exp(shift), [math.e, 2 / math.e, math.e])
    assert np.allclose(np.abs(res.roots), 1, atol=1e-12)
    assert np.prod(res.roots) == pytest.approx(1)
    assert np.all(res.root_residuals <= 1e-8)


def test_negative_coupling_refused():
    with pytest.raises(HypothesisRefusal):
        scan_leeyang([(0, 1), (1, 2)], [0.5, -0.1])


def test_field_values_match_enumeration():
    rng = np.random.default_rng(1)
    E = [(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)]
    a = rng.uniform(0, 1, len(E))
    grid = np.array([0.3 + 0.2j, -0.1 + 1.0j])
    res = scan_leeyang(E, a, grid)
    for b, v in zip(grid, res.values):
        f = CubePolynomial.from_arrays(4, np.full(4, b), E, a)
        assert v == pytest.approx(partition_sum(f), rel=1e-12)
    assert res.max_unit_deviation <= 1e-8


def test_scan_field_generic_instance():
    f = gen_instance("random-quadratic", n=6, seed=3)
    res = scan_field(f, [0.0, 0.5j])
    g = f.with_linear(np.zeros(6))
    assert res.values[0] == pytest.approx(partition_sum(g), rel=1e-12)
    assert len(res.roots) == 6 and np.all(res.root_residuals <= 1e-8)


def test_scan_z_at_one():
    f = gen_instance("random-quadratic", n=5, seed=2)
    res = scan_z(f, [1.0])
    assert res.values[0] == pytest.approx(math.exp(f.a.sum().real) * partition_sum(f).real, rel=1e-12)
    assert 0 < res.min_normalized_modulus <= 1


def test_misaligned_result_rejected():
    from ising_interp.scan import ZeroScanResult
    with pytest.raises(InputError):
        ZeroScanResult("b", np.zeros(2), np.zeros(3))


def test_zero_free_real_instances():
    low = scan_zero_free(lambda rng: gen_instance("random-quadratic", n=6, rng=rng), 0.25, 10,
                         check=False)
    assert low > 0


def test_zero_free_boundary_sweep():
    sampler = lambda rng: gen_instance("complex-boundary", n=8, delta=0.3, rng=rng)
    low, ratios = scan_zero_free(sampler, 0.3, 50, return_all=True)
    assert low > 1e-12 and ratios.shape == (50,)


def test_zero_free_refuses_bad_sampler():
    sampler = lambda rng: CubePolynomial(2, quadratic={(0, 1): 0.99})
    with pytest.raises(HypothesisRefusal):
        scan_zero_free(sampler, 0.3, 1)


def test_control_sweep_finds_near_zeros():
    # imaginary fields on the pi/2 scale: each factor 2 cos(Im b_i) can vanish
    def sampler(rng):
        n = 6
        P = np.array([(i, j) for i in range(n) for j in range(i + 1, n)])
        a = rng.uniform(-0.1, 0.1, len(P)) + 1j * rng.uniform(-0.3, 0.3, len(P))
        return CubePolynomial.from_arrays(n, 1j * rng.uniform(0, math.pi, n), P, a)
    low = scan_zero_free(sampler, 0.3, 300, check=False)
    admissible = scan_zero_free(
        lambda rng: gen_instance("complex-boundary", n=6, delta=0.3, rng=rng), 0.3, 300)
    assert low < 1e-2 < 0.9 < admissible
    assert not check_complex_quadratic(sampler(np.random.default_rng(0)), 0.3).satisfied


def test_argument_principle_counts():
    f = gen_instance("random-quadratic", n=10, delta=0.25, density=0.3, seed=5)
    assert count_zeros_in_disk(f, 1.5)[0] == 0
    disk = verified_region(f)
    assert disk.radius > 1
    # a single vertex with b = 0 and one edge: p(z) = 2(1 + c z)^8 + 2 has 8 zeros
    g = CubePolynomial(2, quadratic={(0, 1): 1.0})
    c = math.expm1(0.25)
    far = np.abs((-1 + np.exp(1j * np.pi * (2 * np.arange(8) + 1) / 8)) / c)
    r = float(far.max()) + 1
    assert count_zeros_in_disk(g, r)[0] == 8
    assert count_zeros_in_disk(g, float(far.min()) - 0.5)[0] == 0


def test_isolated_spins_give_exact_roots():
    # (1 + u)^5 from five free spins would defeat a double-precision root finder
    res = scan_leeyang([(0, 1)], 0.9, n=7)
    assert np.sum(res.roots == -1) == 5
    assert res.max_unit_deviation <= 1e-12


def test_components_factor_the_field_polynomial():
    f = CubePolynomial(6, quadratic={(0, 1): 0.4, (3, 4): 0.7}, cubic={(3, 4, 5): 0.2})
    res = scan_field(f, [0.1 + 0.3j])
    assert len(res.roots) == 6
    assert np.all(res.root_residuals <= 1e-12)
