"""
Why the four-vector bound does not extend to eight
==================================================

Eight vectors indexed by {-1, 1}^3, neighbours at most theta apart, with the
signed imaginary ratio tracking tan(3 theta / 2) instead of tan(theta / 2).
"""

from __future__ import annotations

import math

from ising_interp import degree4_counterexample

for theta in (0.05, 0.1, 0.2, 0.3):
    _, r = degree4_counterexample(theta, 1e-6)
    print(f"theta={theta}: ratio {r:.5f}, tan(3t/2) = {math.tan(1.5 * theta):.5f}, "
          f"tan(t/2) = {math.tan(theta / 2):.5f}")
