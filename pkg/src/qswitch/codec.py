"""Generalized superdense code used by the delayed-commutation switch.

An ``n``-qubit code word is split into a phase half ``i`` and a flip half
``j`` of ``d = n/2`` bits each.  The code state for ``(i, j)`` is::

    2**(-d/2) * sum_k (-1)**(i.k) |k>|j xor k>

where ``i.k`` is the bitwise dot product mod 2.  The first ``d`` qubits are
the half that leaves the switch early, the last ``d`` stay behind until the
route is known.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .statevector import (
    StateVector,
    apply_cnot,
    apply_hadamard,
    apply_x,
    apply_z,
    fidelity,
    inner_product,
)

SUPPORTED_WIDTHS = (2, 4, 6, 8)
CODE_TOL = 1e-10


class CodeError(ValueError):
    pass


class DecodeError(CodeError):
    """Raised when a state is not (close to) any code state."""

    def __init__(self, nearest: CodeWord, infidelity: float):
        self.nearest = nearest
        self.infidelity = infidelity
        super().__init__(f"not a code state: nearest word {nearest.bits()} "
                         f"with infidelity {infidelity:.3e}")


@dataclass(frozen=True)
class CodeParams:
    n: int

    def __post_init__(self):
        if self.n not in SUPPORTED_WIDTHS:
            raise CodeError(f"code width must be one of {SUPPORTED_WIDTHS}, got {self.n}")

    @property
    def d(self) -> int:
        return self.n // 2

    @classmethod
    def for_delay(cls, d: int) -> CodeParams:
        return cls(2 * d)


@dataclass(frozen=True)
class CodeWord:
    i_bits: int
    j_bits: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise CodeError("word width must be positive")
        for name in ("i_bits", "j_bits"):
            v = getattr(self, name)
            if not 0 <= v < 2**self.d:
                raise CodeError(f"{name}={v} does not fit in {self.d} bits")

    @classmethod
    def from_bits(cls, bits) -> CodeWord:
        """``bits`` is the 2d-bit packet string/sequence, phase half first."""
        bits = "".join(str(int(b)) for b in bits)
        if len(bits) % 2 or not bits:
            raise CodeError(f"code word needs an even, nonzero number of bits: {bits!r}")
        d = len(bits) // 2
        return cls(int(bits[:d], 2), int(bits[d:], 2), d)

    @classmethod
    def from_int(cls, value: int, d: int) -> CodeWord:
        return cls(value >> d, value & (2**d - 1), d)

    def to_int(self) -> int:
        return (self.i_bits << self.d) | self.j_bits

    def bits(self) -> str:
        return format(self.to_int(), f"0{2 * self.d}b")


@dataclass(frozen=True)
class EncodedPair:
    """``n``-qubit state; qubits ``0..d-1`` transmitted, ``d..n-1`` retained."""

    state: StateVector
    params: CodeParams

    @property
    def transmitted(self) -> list[int]:
        return list(range(self.params.d))

    @property
    def retained(self) -> list[int]:
        return list(range(self.params.d, self.params.n))


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def code_amplitudes(params: CodeParams, word: CodeWord) -> np.ndarray:
    """Unnormalized +-1 amplitude vector (multiply by 2**(-d/2))."""
    d = params.d
    if word.d != d:
        raise CodeError(f"word has {word.d}-bit halves, code needs {d}")
    amps = np.zeros(2**params.n)
    for k in range(2**d):
        amps[(k << d) | (word.j_bits ^ k)] = -1 if _parity(word.i_bits & k) else 1
    return amps


def make_ancilla(params: CodeParams) -> EncodedPair:
    """Maximally entangled ancilla register, sum_i |i>|i> normalized."""
    d = params.d
    amps = np.zeros(2**params.n, dtype=complex)
    for i in range(2**d):
        amps[(i << d) | i] = 1
    return EncodedPair(StateVector(amps / np.sqrt(2**d)), params)


def encode_analytic(params: CodeParams, word: CodeWord) -> EncodedPair:
    amps = code_amplitudes(params, word) / np.sqrt(2**params.d)
    return EncodedPair(StateVector(amps), params)


def encode_local(ancilla: EncodedPair, word: CodeWord) -> EncodedPair:
    """Encode ``word`` by touching only the retained half of ``ancilla``.

    Retained qubit ``m`` gets Z if phase bit ``m`` is set, then X if flip bit
    ``m`` is set.  The result equals :func:`encode_analytic` exactly.
    """
    params = ancilla.params
    d = params.d
    if word.d != d:
        raise CodeError(f"word has {word.d}-bit halves, code needs {d}")
    f = fidelity(ancilla.state, make_ancilla(params).state)
    if f < 1 - CODE_TOL:
        raise CodeError(f"ancilla is not in the shared entangled state (fidelity {f:.3e})")
    state = ancilla.state
    for m in range(d):
        bit = d - 1 - m
        if (word.i_bits >> bit) & 1:
            state = apply_z(state, d + m)
        if (word.j_bits >> bit) & 1:
            state = apply_x(state, d + m)
    return EncodedPair(state, params)


def decoder_gates(params: CodeParams, offset: int = 0):
    """Gate list (name, wires) of the destination decoder, wires shifted by ``offset``."""
    d = params.d
    gates = [("CNOT", (offset + m, offset + d + m)) for m in range(d)]
    gates += [("H", (offset + m,)) for m in range(d)]
    return gates


def apply_decoder(state: StateVector, params: CodeParams, offset: int = 0) -> StateVector:
    for name, wires in decoder_gates(params, offset):
        state = apply_cnot(state, *wires) if name == "CNOT" else apply_hadamard(state, *wires)
    return state


def nearest_word(pair: EncodedPair) -> tuple[CodeWord, float]:
    """Code word with maximal overlap (lowest value wins ties) and its infidelity."""
    params = pair.params
    best, best_f = None, -1.0
    for v in range(2**params.n):
        w = CodeWord.from_int(v, params.d)
        f = fidelity(encode_analytic(params, w).state, pair.state)
        if f > best_f + 1e-12:
            best, best_f = w, f
    return best, 1 - best_f


def decode(pair: EncodedPair) -> CodeWord:
    """Bell-basis readout: transversal CNOTs, Hadamards, then computational basis."""
    params = pair.params
    out = apply_decoder(pair.state, params)
    probs = out.probabilities()
    idx = int(np.argmax(probs))
    if probs[idx] < 1 - CODE_TOL:
        raise DecodeError(*nearest_word(pair))
    # decoder output is |i>|j>
    return CodeWord.from_int(idx, params.d)


def all_words(params: CodeParams):
    return [CodeWord.from_int(v, params.d) for v in range(2**params.n)]


def gram_matrix(params: CodeParams) -> np.ndarray:
    states = [encode_analytic(params, w).state for w in all_words(params)]
    return np.array([[inner_product(a, b) for b in states] for a in states])


def magnitude_label(d: int) -> str:
    """Amplitude magnitude 2**(-d/2) as text: 1/sqrt(2), 1/2, 1/sqrt(8), 1/4."""
    size = 2**d
    root = int(round(np.sqrt(size)))
    return f"1/{root}" if root * root == size else f"1/sqrt({size})"


def code_table(params: CodeParams) -> list[tuple[CodeWord, list[tuple[int, int]]]]:
    """All code states as ``(word, [(basis_index, sign), ...])`` in ascending order."""
    rows = []
    for w in all_words(params):
        amps = code_amplitudes(params, w)
        terms = [(int(b), int(amps[b])) for b in np.flatnonzero(amps)]
        rows.append((w, terms))
    return rows


def code_table_csv(params: CodeParams) -> str:
    """CSV with one row per nonzero amplitude: word, basis, sign, magnitude."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["word", "basis", "sign", "magnitude"])
    mag = magnitude_label(params.d)
    for w, terms in code_table(params):
        for basis, sign in terms:
            writer.writerow([w.bits(), format(basis, f"0{params.n}b"), "+" if sign > 0 else "-", mag])
    return buf.getvalue()


def code_table_pretty(params: CodeParams) -> str:
    """Ket-notation rendering, one code state per line."""
    lines = []
    denom = magnitude_label(params.d).split("/", 1)[1]
    for w, terms in code_table(params):
        body = ""
        for pos, (basis, sign) in enumerate(terms):
            ket = f"|{basis:0{params.n}b}>"
            if pos == 0:
                body += ket if sign > 0 else f"-{ket}"
            else:
                body += f" {'+' if sign > 0 else '-'} {ket}"
        lines.append(f"{w.bits()}: ({body})/{denom}")
    return "\n".join(lines) + "\n"
