"""
Which regions can be certified
==============================

The interpolation error is controlled by how far a zero-free disk around the
origin reaches once the region is mapped onto it.  A thin strip gives almost
nothing; the zeros of an actual instance usually sit much further out.
"""

from __future__ import annotations

from ising_interp import (MapCertificationError, ZeroFreeStrip, build_disk_map,
                          count_zeros_in_disk, gen_instance)

# a strip of half-width w around [-1 - d^2, 1 + d^2]
for w in (0.5, 0.3):
    m = build_disk_map(ZeroFreeStrip(1.0625, w))
    print(f"half-width {w}: rho = {m.radius:.4f} with a degree-{m.degree} map")

try:
    build_disk_map(ZeroFreeStrip.from_delta(0.25))
except MapCertificationError as exc:
    print("thin strip:", exc.diagnostics)

# argument-principle zero counts for one instance
f = gen_instance("random-quadratic", n=12, delta=0.25, seed=5)
for r in (2, 4, 6, 8):
    print(f"zeros of p inside |z| = {r}: {count_zeros_in_disk(f, r)[0]}")
