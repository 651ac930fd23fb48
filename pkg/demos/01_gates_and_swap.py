"""
Gates and the controlled swap
=============================

A tour of the dense state-vector layer the switch is built on.
Qubit 0 is the leftmost symbol in a ket.
"""
import numpy as np

from qswitch.statevector import (
    apply_cnot,
    apply_hadamard,
    controlled_swap,
    from_bits,
    partial_trace,
)

# A Hadamard and a CNOT turn |00> into the Bell pair (|00> + |11>)/sqrt(2).
bell = apply_cnot(apply_hadamard(from_bits("00"), 0), 0, 1)
print("Bell pair amplitudes:", np.round(bell.amplitudes, 4))

# Either half of the pair on its own is maximally mixed.
print("reduced state of qubit 1:\n", np.round(partial_trace(bell, [1]).entries.real, 4))

# The controlled swap (three Toffolis) exchanges qubits 1 and 2 only when qubit 0 is set.
for bits in ("010", "110"):
    out = controlled_swap(from_bits(bits), 0, 1, 2)
    print(f"cswap |{bits}> -> |{int(np.argmax(np.abs(out.amplitudes))):03b}>")
