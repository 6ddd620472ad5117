"""
How much key does a single witness value certify?
=================================================

A privacy witness is one observable, ``(|00><11| + |11><00|) x U``, measured on
the four subsystems A, B, A', B'.  Its expectation lower-bounds the coherence
``p1 - p2`` of the privacy-squeezed state, and from that alone we can bound the
distillable key.  This script walks through the three single-witness formulas
and locates the threshold where key is first certified.
"""

import numpy as np

from keywitness import (find_constants, kd_single_approx, kd_single_central,
                        kd_single_weak1, kd_single_weak2)

# %%
# The central bound minimizes a one-parameter function over ``p+ in [w, 1]``.
# Two independent routes are used internally (a cubic root and a refined grid
# scan) and the report carries their disagreement as ``residual``.

rep = kd_single_central(0.95)
print(f"central(0.95) = {rep.value:.6f} at p+ = {rep.location:.6f}"
      f"  (routes agree to {rep.residual:.1e})")

# %%
# The two weaker bounds need no optimization.  For witness values above 1/2
# they sit below the central curve, which is what makes them "weaker".

print("\n    w   central     weak1     weak2")
for w in (0.5, 0.7, 0.9, 0.95, 0.99, 1.0):
    print(f"{w:5.2f} {kd_single_central(w).value:9.4f} {kd_single_weak1(w).value:9.4f}"
          f" {kd_single_weak2(w).value:9.4f}")

# %%
# Below w = 1/2 the replacement h(p1 + p2) -> h(w) behind both weak formulas no
# longer holds, and they can exceed the central value.  Neither certifies key
# there, so nothing is lost in practice.

w = 0.1
print(f"\nw = {w}: central {kd_single_central(w).value:.3f},"
      f" weak2 {kd_single_weak2(w).value:.3f} (both uncertified)")

# %%
# The threshold: bisection on the central bound.

c = find_constants()
print(f"\nkey is certified once w > {c.w_star:.5f}")

# %%
# Near w = 1 a closed-form guess for the minimizer is almost exact.

for w in np.linspace(0.8, 1.0, 5):
    diff = kd_single_approx(w).value - kd_single_central(w).value
    print(f"w = {w:.2f}: approx - central = {diff:.2e}")
