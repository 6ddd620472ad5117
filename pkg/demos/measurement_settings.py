"""
How many local settings does a witness need?
============================================

A setting assigns X, Y or Z to every qubit.  One setting's data estimates every
Pauli string whose non-identity factors agree with it, so the cost of a
witness is the smallest set of settings covering its Pauli expansion.
"""

from keywitness import (WitnessSpec, count_settings, pauli_decompose, swap_operator,
                        tomography_decomposition, witness_operator)

op = witness_operator(WitnessSpec(swap_operator(2)))
dec = pauli_decompose(op)
for c, s in dec.terms:
    print(f"{c:+.2f} {s}")

# %%
# The key part contributes XX and YY, the swap contributes XX, YY and ZZ, so
# 2 x 3 settings cover everything.  Full tomography of four qubits needs 3^4.

print(f"\nwitness: {count_settings(dec)} settings")
print(f"tomography: {count_settings(tomography_decomposition(4))} settings")

# %%
# The ZZ observable needs one setting, and the XX x U witness with a swap
# shield needs three.

for pattern in ("zz", "xx"):
    d = pauli_decompose(witness_operator(WitnessSpec(swap_operator(2), pattern)))
    print(f"{pattern} pattern: {count_settings(d)} settings")
