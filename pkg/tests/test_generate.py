from __future__ import annotations

import math

import numpy as np
import pytest

from ising_interp.errors import InputError
from ising_interp.generate import gen_instance, regular_coupling
from ising_interp.model import (check_complex_cubic, check_complex_quadratic, check_real_cubic,
                                check_real_quadratic)


@pytest.mark.parametrize("degree", [3, 4, 5])
def test_regular_rows(degree):
    f = gen_instance("regular-graph", n=12, degree=degree, seed=1)
    expect = degree / 2 * math.log(degree / (degree - 2))
    assert np.allclose(f.row_sums(), expect, rtol=0, atol=1e-12)
    anti = gen_instance("regular-graph", n=12, degree=degree, ferromagnetic=False, seed=1)
    assert np.all(anti.a.real < 0)


def test_regular_coupling_value():
    assert regular_coupling(3) == pytest.approx(0.5 * math.log(3))
    with pytest.raises(InputError):
        regular_coupling(2)


def test_regular_infeasible():
    with pytest.raises(InputError):
        gen_instance("regular-graph", n=5, degree=3)


def test_empty_graph():
    f = gen_instance("regular-graph", n=6, degree=0)
    assert not f.quadratic and not f.linear and not f.cubic


def test_random_quadratic_deterministic_and_tight():
    f = gen_instance("random-quadratic", n=10, delta=0.25, seed=42)
    assert f == gen_instance("random-quadratic", n=10, delta=0.25, seed=42)
    assert f.row_sums().max() == pytest.approx(0.75, abs=1e-14)
    assert check_real_quadratic(f, 0.25).satisfied


def test_random_cubic_tight():
    f = gen_instance("random-cubic", n=9, delta=0.3, seed=5)
    assert len(f.c) > 0
    assert f.row_sums().max() == pytest.approx(0.7, abs=1e-14)
    assert check_real_cubic(f, 0.3).satisfied


@pytest.mark.parametrize("cubic", [False, True])
def test_complex_boundary(cubic):
    f = gen_instance("complex-boundary", n=8, delta=0.3, cubic=cubic, seed=3)
    rep = (check_complex_cubic if cubic else check_complex_quadratic)(f, 0.3)
    assert rep.satisfied
    top = rep.row_sums.max(axis=0)
    assert np.allclose(top, [0.7, 0.009, 0.009])


def test_unknown_kind_and_params():
    with pytest.raises(InputError):
        gen_instance("lattice", n=4)
    with pytest.raises(InputError):
        gen_instance("random-quadratic", n=4, colour="red")
