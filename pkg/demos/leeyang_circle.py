"""
Lee-Yang zeros on the unit circle
=================================

For ferromagnetic couplings every zero of S in u = exp(2b) has |u| = 1.
Flipping the couplings to antiferromagnetic pushes zeros off the circle.
"""

from __future__ import annotations

import numpy as np

from ising_interp import gen_instance, scan_field, scan_leeyang

f = gen_instance("regular-graph", n=10, degree=3, seed=0)
res = scan_leeyang(f.pairs, f.a.real)
print("ferromagnetic |u|:", np.round(np.sort(np.abs(res.roots)), 12))
print("phases / pi:", np.round(np.sort(np.angle(res.roots)) / np.pi, 4))

# S vanishes at b = i*angle/2; the normalized modulus there is round-off
b0 = 0.5j * np.angle(res.roots[0])
print("|S| / sum |e^f| at a root:", scan_leeyang(f.pairs, f.a.real, [b0]).min_normalized_modulus)

anti = gen_instance("regular-graph", n=10, degree=3, ferromagnetic=False, seed=0)
off = scan_field(anti, [0.0])
print("antiferromagnetic max ||u| - 1|:", off.max_unit_deviation)
