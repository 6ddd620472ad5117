"""
Adding a second observable
==========================

Measuring ``Z x Z`` on the key qubits fixes how much weight sits in the
correlated sector, ``p+ = (1 + wz)/2``.  Combined with ``X x X x U`` this gives a
much better bound than the single witness, and it only needs a handful of
local settings.
"""

from keywitness import (find_constants, kd_single_central, kd_two_full, kd_two_weak,
                        kd_w_wz)
from keywitness.errors import DomainError

wx, wz = 0.95, 0.95
full = kd_two_full(wx, wz)
weak = kd_two_weak(wx, wz)
print(f"wx = wz = 0.95: full {full.value:.4f}, closed form {weak.value:.4f}")
print(f"single witness at the same coherence: {kd_single_central(0.95).value:.4f}")

# %%
# When wx + wz <= 1 the feasible region reaches xi+ = 1/2 and no key survives.

rep = kd_two_full(0.6, 0.3)
print(f"\nwx = 0.6, wz = 0.3: {rep.value:.4f} ({rep.note})")

# %%
# Correlations alone are never enough: the key needs wz above 2p* - 1, where
# h(p*) = 1/2.

c = find_constants()
print(f"\np* = {c.p_star:.5f}, so wz must exceed {c.wz_min:.5f}")
print(f"wx = 1, wz = 0.7: {kd_two_full(1.0, 0.7).value:.4f}")
print(f"wx = 1, wz = 0.8: {kd_two_full(1.0, 0.8).value:.4f}")

# %%
# A negative <ZZ> swaps the roles of the sectors; the value is unchanged and
# the report says which branch was used.

rep = kd_two_full(0.95, -0.95)
print(f"\nwz = -0.95: {rep.value:.4f} on the {rep.branch} branch")

# %%
# The corner witness can also be paired with wz.  The pair must be physical:
# the correlated weight cannot be smaller than the coherence.

print(f"\nw = 0.95, wz = 0.95: {kd_w_wz(0.95, 0.95).value:.4f}")
try:
    kd_w_wz(0.6, 0.0)
except DomainError as exc:
    print(f"w = 0.6, wz = 0: {exc}")
