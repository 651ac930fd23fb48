"""
The superdense code table
=========================

Each n-bit word maps to one of 2^n orthonormal states on n qubits.
The first half of the word sets relative phases and the second half flips bits.
"""
import numpy as np

from qswitch import codec
from qswitch.codec import CodeParams, CodeWord

# Two qubits give the four Bell states.
print(codec.code_table_pretty(CodeParams(2)))

# Four qubits give sixteen states with amplitudes of +-1/2.
print(codec.code_table_pretty(CodeParams(4)))

# The states form an orthonormal basis, so decoding is exact.
gram = codec.gram_matrix(CodeParams(4))
print("max |G - I| =", np.abs(gram - np.eye(16)).max())

# Encoding needs only the retained half: Z and X gates applied to a shared ancilla.
p = CodeParams(4)
anc = codec.make_ancilla(p)
word = CodeWord.from_bits("0110")
local = codec.encode_local(anc, word)
print("locally encoded 0110 decodes to", codec.decode(local).bits())
