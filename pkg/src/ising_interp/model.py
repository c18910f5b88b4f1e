"""Polynomials on the Boolean cube {-1, 1}^n and the zero-free hypothesis checks.

A :class:`CubePolynomial` holds the sparse coefficients of

    f(x) = sum c_ijk x_i x_j x_k + sum a_ij x_i x_j + sum b_i x_i

with 0-based indices and unordered pairs/triples stored as sorted tuples.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import InputError

__all__ = [
    "CubePolynomial",
    "HypothesisReport",
    "spin_vector",
    "evaluate",
    "evaluate_many",
    "check_real_quadratic",
    "check_real_cubic",
    "check_complex_quadratic",
    "check_complex_cubic",
    "to_json",
    "from_json",
    "load_instance",
    "save_instance",
]

# Imaginary parts below this are treated as zero by the real-instance checks.
REAL_TOL = 1e-15
# Relative slack so that row sums equal to a bound up to rounding count as equal.
_BOUND_SLACK = 1e-12


def _normalize(n, mapping, arity, name):
    out = {}
    for key, value in dict(mapping).items():
        if arity == 1:
            idx = (int(key[0]) if isinstance(key, tuple) else int(key),)
        else:
            idx = tuple(sorted(int(i) for i in key))
            if len(idx) != arity:
                raise InputError(f"{name} key {key!r} must have {arity} indices")
        if len(set(idx)) != arity:
            raise InputError(f"{name} key {key!r} has repeated indices")
        if idx[0] < 0 or idx[-1] >= n:
            raise InputError(f"{name} key {key!r} out of range for n={n}")
        if idx in out:
            raise InputError(f"{name} key {idx!r} appears more than once")
        value = complex(value)
        if not (np.isfinite(value.real) and np.isfinite(value.imag)):
            raise InputError(f"{name} coefficient at {idx!r} is not finite")
        out[idx] = value
    # Absent keys mean 0; dropping explicit zeros keeps equality semantic.
    clean = {k: v for k, v in sorted(out.items()) if v != 0}
    if arity == 1:
        return {k[0]: v for k, v in clean.items()}
    return clean


@dataclass(frozen=True)
class CubePolynomial:
    """A polynomial of degree at most 3 on {-1, 1}^n.

    Parameters
    ----------
    n : int
        Number of variables.
    linear : mapping int -> complex
        Coefficients b_i.
    quadratic : mapping (i, j) -> complex
        Coefficients a_ij; keys are normalized to ``i < j``.
    cubic : mapping (i, j, k) -> complex
        Coefficients c_ijk; keys are normalized to ``i < j < k``.
    """

    n: int
    linear: Mapping[int, complex] = field(default_factory=dict)
    quadratic: Mapping[tuple, complex] = field(default_factory=dict)
    cubic: Mapping[tuple, complex] = field(default_factory=dict)

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise InputError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "linear", _normalize(n, self.linear, 1, "linear"))
        object.__setattr__(self, "quadratic", _normalize(n, self.quadratic, 2, "quadratic"))
        object.__setattr__(self, "cubic", _normalize(n, self.cubic, 3, "cubic"))

    __hash__ = None

    @classmethod
    def from_arrays(cls, n, b=None, pairs=None, a=None, triples=None, c=None):
        """Build an instance from index arrays, as produced by the generators."""
        linear = {} if b is None else {i: v for i, v in enumerate(np.asarray(b))}
        quadratic = {} if pairs is None else {tuple(map(int, p)): v for p, v in zip(pairs, a)}
        cubic = {} if triples is None else {tuple(map(int, t)): v for t, v in zip(triples, c)}
        return cls(n, linear, quadratic, cubic)

    # dense / array views -------------------------------------------------

    @cached_property
    def b(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=complex)
        for i, v in self.linear.items():
            out[i] = v
        return out

    @cached_property
    def pairs(self) -> np.ndarray:
        return np.array(list(self.quadratic), dtype=np.int64).reshape(-1, 2)

    @cached_property
    def a(self) -> np.ndarray:
        return np.array(list(self.quadratic.values()), dtype=complex)

    @cached_property
    def triples(self) -> np.ndarray:
        return np.array(list(self.cubic), dtype=np.int64).reshape(-1, 3)

    @cached_property
    def c(self) -> np.ndarray:
        return np.array(list(self.cubic.values()), dtype=complex)

    @cached_property
    def coupling_matrix(self) -> np.ndarray:
        """Symmetric n x n matrix with a_ij off the diagonal."""
        A = np.zeros((self.n, self.n), dtype=complex)
        if len(self.a):
            i, j = self.pairs.T
            A[i, j] = self.a
            A[j, i] = self.a
        return A

    @property
    def is_quadratic(self) -> bool:
        return not self.cubic

    @cached_property
    def is_real(self) -> bool:
        return all(abs(v.imag) < REAL_TOL for part in (self.linear, self.quadratic, self.cubic)
                   for v in part.values())

    def row_sums(self, part=np.abs) -> np.ndarray:
        """Per-index totals ``sum_j part(a_ij) + sum_jk part(c_ijk)``."""
        out = np.zeros(self.n)
        if len(self.a):
            w = part(self.a)
            out += np.bincount(self.pairs.ravel(), np.repeat(w, 2), minlength=self.n)
        if len(self.c):
            w = part(self.c)
            out += np.bincount(self.triples.ravel(), np.repeat(w, 3), minlength=self.n)
        return out

    def with_linear(self, b) -> "CubePolynomial":
        """Copy with the linear part replaced by ``b`` (scalar means uniform field)."""
        b = np.broadcast_to(np.asarray(b, dtype=complex), (self.n,))
        return CubePolynomial(self.n, dict(enumerate(b)), self.quadratic, self.cubic)

    def permuted(self, perm) -> "CubePolynomial":
        """Relabel variable ``i`` as ``perm[i]``."""
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(self.n)):
            raise InputError("perm must be a permutation of range(n)")
        return CubePolynomial(
            self.n,
            {perm[i]: v for i, v in self.linear.items()},
            {tuple(perm[i] for i in k): v for k, v in self.quadratic.items()},
            {tuple(perm[i] for i in k): v for k, v in self.cubic.items()},
        )


def spin_vector(x, n=None) -> np.ndarray:
    """Validate ``x`` as a vector of +-1 entries and return it as an int8 array."""
    arr = np.asarray(x)
    if arr.ndim != 1 or not np.all((arr == 1) | (arr == -1)):
        raise InputError("spin vector entries must all be +1 or -1")
    if n is not None and arr.shape[0] != n:
        raise InputError(f"spin vector has length {arr.shape[0]}, expected {n}")
    return arr.astype(np.int8)


def evaluate_many(f: CubePolynomial, X: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on every row of the +-1 matrix ``X``; returns complex values."""
    X = np.asarray(X, dtype=np.float64)
    out = X @ f.b
    if len(f.a) > 2 * f.n:
        out = out + 0.5 * np.einsum("ri,ri->r", X @ f.coupling_matrix, X)
    elif len(f.a):
        i, j = f.pairs.T
        out = out + (X[:, i] * X[:, j]) @ f.a
    if len(f.c):
        i, j, k = f.triples.T
        out = out + (X[:, i] * X[:, j] * X[:, k]) @ f.c
    return out


def evaluate(f: CubePolynomial, x) -> complex:
    """f(x) for a single spin vector."""
    x = spin_vector(x, f.n)
    return complex(evaluate_many(f, x[None, :])[0])


# ---------------------------------------------------------------- hypotheses


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of a row-sum check.

    ``row_sums[i]`` is (real-part sum, imaginary-part sum, |Im b_i|) for index i,
    and ``bounds`` are the corresponding limits.
    """

    satisfied: bool
    delta: float
    worst_index: int
    row_sums: np.ndarray
    bounds: tuple

    __hash__ = None

    def violated(self):
        """Indices whose row sums break at least one bound."""
        return [int(i) for i in np.flatnonzero(~_row_ok(self.row_sums, self.bounds))]

    def as_dict(self):
        return {
            "satisfied": bool(self.satisfied),
            "delta": self.delta,
            "worst_index": self.worst_index,
            "bounds": [b if math.isfinite(b) else None for b in self.bounds],
            "max_row_sums": [float(v) for v in self.row_sums.max(axis=0)],
            "violated": self.violated(),
        }


def _row_ok(rows, bounds):
    lim = np.asarray(bounds, dtype=float)
    return np.all(rows <= lim * (1 + _BOUND_SLACK) + REAL_TOL, axis=1)


def _report(rows, bounds, delta):
    rows = np.asarray(rows, dtype=float)
    lim = np.asarray(bounds, dtype=float)
    ok = _row_ok(rows, bounds)
    finite = np.isfinite(lim)
    excess = (rows[:, finite] - lim[finite]) / lim[finite]
    worst = int(np.argmax(excess.max(axis=1)))
    return HypothesisReport(bool(ok.all()), float(delta), worst, rows, tuple(float(v) for v in bounds))


def _check_delta(delta, upper):
    if not 0 < delta < upper:
        raise InputError(f"delta must lie in (0, {upper}), got {delta!r}")


def _require_real(f):
    if not f.is_real:
        raise InputError("real-coefficient check applied to an instance with nonreal coefficients")


def check_real_quadratic(f: CubePolynomial, delta: float) -> HypothesisReport:
    """Lipschitz condition sum_{j != i} |a_ij| <= 1 - delta for a real quadratic f."""
    _check_delta(delta, 1.0)
    if not f.is_quadratic:
        raise InputError("instance has cubic terms; use check_real_cubic")
    _require_real(f)
    rows = np.column_stack([f.row_sums(np.abs), np.zeros(f.n), np.zeros(f.n)])
    return _report(rows, (1 - delta, np.inf, np.inf), delta)


def check_real_cubic(f: CubePolynomial, delta: float) -> HypothesisReport:
    """Real cubic condition sum |c_ijk| + sum |a_ij| <= 1 - delta, 0 < delta < 1/2."""
    _check_delta(delta, 0.5)
    _require_real(f)
    rows = np.column_stack([f.row_sums(np.abs), np.zeros(f.n), np.zeros(f.n)])
    return _report(rows, (1 - delta, np.inf, np.inf), delta)


def _complex_rows(f):
    return np.column_stack([
        f.row_sums(lambda v: np.abs(v.real)),
        f.row_sums(lambda v: np.abs(v.imag)),
        np.abs(f.b.imag),
    ])


def check_complex_quadratic(f: CubePolynomial, delta: float) -> HypothesisReport:
    """Complex quadratic zero-free condition.

    Requires, for every i, sum |Re a_ij| <= 1 - delta, sum |Im a_ij| <= delta^2/10
    and |Im b_i| <= delta^2/10.
    """
    _check_delta(delta, 1.0)
    if not f.is_quadratic:
        raise InputError("instance has cubic terms; use check_complex_cubic")
    return _report(_complex_rows(f), (1 - delta, delta**2 / 10, delta**2 / 10), delta)


def check_complex_cubic(f: CubePolynomial, delta: float) -> HypothesisReport:
    """Complex cubic zero-free condition (0 < delta < 1/2); cubic and quadratic parts share the row budget."""
    _check_delta(delta, 0.5)
    return _report(_complex_rows(f), (1 - delta, delta**2 / 10, delta**2 / 10), delta)


# ----------------------------------------------------------------------- I/O


def to_json(f: CubePolynomial) -> dict:
    return {
        "n": f.n,
        "linear": [[i, v.real, v.imag] for i, v in f.linear.items()],
        "quadratic": [[i, j, v.real, v.imag] for (i, j), v in f.quadratic.items()],
        "cubic": [[i, j, k, v.real, v.imag] for (i, j, k), v in f.cubic.items()],
    }


def from_json(doc: dict) -> CubePolynomial:
    try:
        n = doc["n"]
        lin = {int(e[0]): complex(e[1], e[2]) for e in doc.get("linear", [])}
        quad = {}
        for e in doc.get("quadratic", []):
            key = tuple(sorted((int(e[0]), int(e[1]))))
            if key in quad:
                raise InputError(f"quadratic key {key} appears more than once")
            quad[key] = complex(e[2], e[3])
        cub = {}
        for e in doc.get("cubic", []):
            key = tuple(sorted((int(e[0]), int(e[1]), int(e[2]))))
            if key in cub:
                raise InputError(f"cubic key {key} appears more than once")
            cub[key] = complex(e[3], e[4])
    except (KeyError, IndexError, TypeError) as exc:
        raise InputError(f"malformed instance document: {exc}") from exc
    return CubePolynomial(n, lin, quad, cub)


def save_instance(f: CubePolynomial, path) -> None:
    Path(path).write_text(json.dumps(to_json(f), indent=1) + "\n")


def load_instance(path) -> CubePolynomial:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    return from_json(doc)
