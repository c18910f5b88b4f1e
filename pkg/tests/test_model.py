from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ising_interp.errors import InputError
from ising_interp.generate import gen_instance
from ising_interp.model import (CubePolynomial, check_complex_cubic, check_complex_quadratic,
                                check_real_cubic, check_real_quadratic, evaluate, evaluate_many,
                                from_json, load_instance, save_instance, to_json)


def test_evaluate_zero_polynomial():
    assert evaluate(CubePolynomial(4), [1, -1, 1, 1]) == 0


def test_evaluate_single_pair():
    f = CubePolynomial(2, quadratic={(0, 1): 1.0})
    assert evaluate(f, [1, -1]) == -1


def test_evaluate_three_monomials():
    f = CubePolynomial(3, {2: -1.0}, {(0, 1): 0.25}, {(0, 1, 2): 0.5})
    assert evaluate(f, [1, 1, -1]) == pytest.approx(0.75, abs=1e-15)


def test_evaluate_dimension_mismatch():
    with pytest.raises(InputError):
        evaluate(CubePolynomial(3), [1, 1])


def test_evaluate_rejects_non_spins():
    with pytest.raises(InputError):
        evaluate(CubePolynomial(2), [1, 0])


def test_dense_and_sparse_evaluation_agree():
    f = gen_instance("random-quadratic", n=7, density=1.0, seed=4)
    g = gen_instance("random-quadratic", n=7, density=0.1, seed=4)
    X = np.array([[1 - 2 * ((r >> t) & 1) for t in range(7)] for r in range(128)])
    for h in (f, g):
        direct = [sum(v * x[i] * x[j] for (i, j), v in h.quadratic.items()) + x @ h.b for x in X]
        assert np.allclose(evaluate_many(h, X), direct, atol=1e-13)


@pytest.mark.parametrize("bad", [
    {(0, 0): 1.0},
    {(0, 5): 1.0},
    {(-1, 2): 1.0},
])
def test_invalid_pair_keys(bad):
    with pytest.raises(InputError):
        CubePolynomial(3, quadratic=bad)


def test_duplicate_unordered_keys_rejected():
    with pytest.raises(InputError):
        CubePolynomial(3, quadratic={(0, 1): 1.0, (1, 0): 2.0})


def test_real_quadratic_examples():
    assert check_real_quadratic(CubePolynomial(3), 0.5).satisfied
    path = CubePolynomial(3, quadratic={(0, 1): 0.45, (1, 2): 0.45})
    rep = check_real_quadratic(path, 0.1)
    assert rep.satisfied and rep.worst_index == 1


@pytest.mark.parametrize("delta", [0.01, 0.5, 0.99])
def test_regular_graph_never_satisfies(delta):
    f = gen_instance("regular-graph", n=8, degree=3, seed=0)
    assert np.allclose(f.row_sums(), 1.5 * math.log(3))
    assert not check_real_quadratic(f, delta).satisfied


def test_real_check_errors():
    with pytest.raises(InputError):
        check_real_quadratic(CubePolynomial(2, quadratic={(0, 1): 1j}), 0.3)
    with pytest.raises(InputError):
        check_real_quadratic(CubePolynomial(2), 1.0)
    with pytest.raises(InputError):
        check_real_cubic(CubePolynomial(3), 0.5)


def test_complex_quadratic_examples():
    d = 0.4
    f = CubePolynomial(2, quadratic={(0, 1): (1 - d) + 1j * d**2 / 10})
    assert check_complex_quadratic(f, d).satisfied
    g = CubePolynomial(2, quadratic={(0, 1): 1j * (d**2 / 10 + 0.01)})
    rep = check_complex_quadratic(g, d)
    assert not rep.satisfied and rep.violated() == [0, 1]


def test_complex_cubic_examples():
    ok = CubePolynomial(3, quadratic={(0, 1): 0.2}, cubic={(0, 1, 2): 0.5})
    rep = check_complex_cubic(ok, 0.25)
    assert rep.satisfied and rep.row_sums[0, 0] == pytest.approx(0.7)
    bad = CubePolynomial(3, cubic={(0, 1, 2): 0.9})
    assert not check_complex_cubic(bad, 0.25).satisfied
    with pytest.raises(InputError):
        check_complex_cubic(ok, 0.5)


def test_cubic_check_reduces_to_quadratic():
    f = gen_instance("complex-boundary", n=6, delta=0.3, seed=2)
    a, b = check_complex_quadratic(f, 0.3), check_complex_cubic(f, 0.3)
    assert a.satisfied == b.satisfied
    assert np.array_equal(a.row_sums, b.row_sums)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31), delta=st.floats(0.05, 0.45))
def test_checks_invariant_under_permutation_and_sign(seed, delta):
    rng = np.random.default_rng(seed)
    f = gen_instance("random-cubic", n=6, delta=0.3, rng=rng)
    f = CubePolynomial(f.n, f.linear, {k: 1.3 * v for k, v in f.quadratic.items()}, f.cubic)
    perm = rng.permutation(6)
    key = next(iter(f.quadratic))
    flipped = CubePolynomial(f.n, f.linear, {**f.quadratic, key: -f.quadratic[key]}, f.cubic)
    base = check_real_cubic(f, delta).satisfied
    assert check_real_cubic(f.permuted(perm), delta).satisfied == base
    assert check_real_cubic(flipped, delta).satisfied == base
    # a real instance that passes the real check passes the complex one
    if base:
        assert check_complex_cubic(f, delta).satisfied


def test_json_round_trip(tmp_path):
    f = CubePolynomial(4, {0: 0.5 - 0.1j}, {(0, 3): 0.25}, {(1, 2, 3): -0.125j})
    path = tmp_path / "inst.json"
    save_instance(f, path)
    g = load_instance(path)
    assert g == f
    assert from_json(json.loads(json.dumps(to_json(f)))) == f


def test_json_duplicate_keys_rejected():
    doc = {"n": 3, "quadratic": [[0, 1, 1.0, 0.0], [1, 0, 2.0, 0.0]]}
    with pytest.raises(InputError):
        from_json(doc)
