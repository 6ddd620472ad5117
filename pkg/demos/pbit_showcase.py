"""
A private bit with a swap witness
=================================

The two-qubit-shield private bit has blocks ``A00,00 = A11,11 = 1/8`` and
``A00,11 = A11,00 = V/8`` where ``V`` is the swap.  It carries one full bit of
key even though very little entanglement can be distilled from it.  This
script checks that claim three ways: from the witness, from the full squeezed
state and from the Devetak-Winter rate.
"""

import numpy as np

from keywitness import (WitnessSpec, dw_rate, kd_single_central, log_negativity,
                        pbit_state, privacy_squeeze, squeezed_bound, swap_operator)
from keywitness.witness import w as witness_value

pbit = pbit_state(2)
rho = pbit.assemble()
print(f"state on {rho.labels} with dims {rho.dims}")

# %%
# The swap witness reads off p1 - p2 exactly for this state.

wv = witness_value(WitnessSpec(swap_operator(2)), pbit)
print(f"<W> = {wv:.6f}, key >= {kd_single_central(min(wv, 1)).value:.6f}")

# %%
# An identity shield operator only sees half of the coherence.

print(f"with U = 1: <W> = {witness_value(WitnessSpec(np.eye(4)), pbit):.3f}")

# %%
# The privacy-squeezed state is the Bell state, and the one-way rate is 1.

q = privacy_squeeze(pbit)
print(f"squeezed probabilities {np.round(q.probabilities, 12)}")
print(f"squeezed bound {squeezed_bound(pbit).value:.6f}, DW rate {dw_rate(rho):.6f}")

# %%
# Log-negativity across AA' : BB' caps the distillable entanglement.

ln = log_negativity(rho, ["A", "A'"])
print(f"log-negativity {ln:.6f} (log2 1.5 = {np.log2(1.5):.6f})")

# %%
# Larger shields behave the same way.

for d in (3, 4):
    b = pbit_state(d)
    print(f"d = {d}: <W> = {witness_value(WitnessSpec(swap_operator(d)), b):.6f},"
          f" DW rate {dw_rate(b.assemble()):.6f}")
