"""Dense state-vector simulation for small qubit registers.

Qubit 0 is the leftmost symbol of a ket and the most significant bit of the
basis index, so ``|0101>`` is basis index 5 on four qubits.

Gate functions never mutate their input; each returns a new :class:`StateVector`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 24
NORM_TOL = 1e-10

_SQRT2_INV = 1 / np.sqrt(2)
_H = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV


class StateVector:
    """Normalized amplitude array over ``num_qubits`` qubits."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, amplitudes, num_qubits: int | None = None, normalize: bool = False):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log2(amps.size))) if num_qubits is None else num_qubits
        if not 1 <= n <= MAX_QUBITS:
            raise ValueError(f"num_qubits must be in 1..{MAX_QUBITS}, got {n}")
        if amps.size != 2**n:
            raise ValueError(f"expected {2**n} amplitudes for {n} qubits, got {amps.size}")
        norm = np.linalg.norm(amps)
        if normalize:
            if norm == 0:
                raise ValueError("cannot normalize the zero vector")
            amps = amps / norm
        elif abs(norm - 1) > NORM_TOL:
            raise ValueError(f"state not normalized (norm={norm!r})")
        self.num_qubits = n
        self.amplitudes = amps

    @classmethod
    def _wrap(cls, amps: np.ndarray, n: int) -> StateVector:
        # internal constructor for gate outputs; unitaries preserve the norm
        obj = cls.__new__(cls)
        obj.num_qubits = n
        obj.amplitudes = amps
        return obj

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def kron(self, other: StateVector) -> StateVector:
        """Product state with ``self``'s qubits first."""
        return StateVector._wrap(np.kron(self.amplitudes, other.amplitudes),
                                 self.num_qubits + other.num_qubits)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __len__(self) -> int:
        return self.amplitudes.size

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits})"


@dataclass(frozen=True)
class DensityMatrix:
    num_qubits: int
    entries: np.ndarray

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def is_valid(self, tol: float = 1e-10) -> bool:
        m = self.entries
        return (np.allclose(m, m.conj().T, atol=tol)
                and abs(np.trace(m) - 1) < tol
                and self.eigenvalues().min() >= -tol)


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """Half the trace norm of ``a - b``."""
    if a.num_qubits != b.num_qubits:
        raise ValueError("density matrices act on different numbers of qubits")
    return 0.5 * float(np.abs(np.linalg.eigvalsh(a.entries - b.entries)).sum())


def basis_state(num_qubits: int, index: int) -> StateVector:
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise ValueError(f"num_qubits must be in 1..{MAX_QUBITS}, got {num_qubits}")
    if not 0 <= index < 2**num_qubits:
        raise ValueError(f"basis index {index} out of range for {num_qubits} qubits")
    amps = np.zeros(2**num_qubits, dtype=complex)
    amps[index] = 1
    return StateVector._wrap(amps, num_qubits)


def from_bits(bits) -> StateVector:
    """Basis state for a bit sequence, leftmost bit on qubit 0."""
    bits = [int(b) for b in bits]
    return basis_state(len(bits), int("".join(map(str, bits)), 2))


def _check_qubits(state: StateVector, *qubits: int) -> None:
    for q in qubits:
        if not 0 <= q < state.num_qubits:
            raise IndexError(f"qubit {q} out of range for {state.num_qubits}-qubit state")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"qubit indices must be distinct, got {qubits}")


def _sel(n: int, fixed: dict[int, int]) -> tuple:
    idx = [slice(None)] * n
    for q, v in fixed.items():
        idx[q] = v
    # trailing Ellipsis keeps a 0-d view when every axis is fixed
    return (*idx, ...)


# In-place kernels on a (2,)*n tensor.  Public gate functions call these on a
# copy; callers that own their buffer may use them directly.

def _single_(t: np.ndarray, matrix: np.ndarray, q: int) -> None:
    n = t.ndim
    lo, hi = t[_sel(n, {q: 0})], t[_sel(n, {q: 1})]
    new_lo = matrix[0, 0] * lo + matrix[0, 1] * hi
    hi *= matrix[1, 1]
    hi += matrix[1, 0] * lo
    lo[...] = new_lo


def _x_(t: np.ndarray, q: int) -> None:
    n = t.ndim
    lo, hi = t[_sel(n, {q: 0})], t[_sel(n, {q: 1})]
    tmp = lo.copy()
    lo[...] = hi
    hi[...] = tmp


def _z_(t: np.ndarray, q: int) -> None:
    t[_sel(t.ndim, {q: 1})] *= -1


def _cflip_(t: np.ndarray, controls: tuple[int, ...], target: int) -> None:
    on = {c: 1 for c in controls}
    a, b = t[_sel(t.ndim, {**on, target: 0})], t[_sel(t.ndim, {**on, target: 1})]
    tmp = a.copy()
    a[...] = b
    b[...] = tmp


def _collapse_(t: np.ndarray, q: int, rng: np.random.Generator) -> int:
    n = t.ndim
    p1 = float(np.sum(np.abs(t[_sel(n, {q: 1})]) ** 2))
    outcome = int(rng.random() < p1)
    p = p1 if outcome else 1 - p1
    assert p > 0, "collapsed onto a zero-probability branch"
    t[_sel(n, {q: 1 - outcome})] = 0
    t /= np.sqrt(p)
    return outcome


def _run(kernel, state: StateVector, *args) -> StateVector:
    t = state.tensor().copy()
    kernel(t, *args)
    return StateVector._wrap(t.reshape(-1), state.num_qubits)


def apply_single(state: StateVector, matrix: np.ndarray, q: int) -> StateVector:
    """Apply an arbitrary 2x2 matrix on qubit ``q``."""
    _check_qubits(state, q)
    return _run(_single_, state, np.asarray(matrix, dtype=complex), q)


def apply_hadamard(state: StateVector, q: int) -> StateVector:
    return apply_single(state, _H, q)


def apply_x(state: StateVector, q: int) -> StateVector:
    _check_qubits(state, q)
    return _run(_x_, state, q)


def apply_z(state: StateVector, q: int) -> StateVector:
    _check_qubits(state, q)
    return _run(_z_, state, q)


def _controlled_flip(state: StateVector, controls: tuple[int, ...], target: int) -> StateVector:
    _check_qubits(state, *controls, target)
    return _run(_cflip_, state, controls, target)


def apply_cnot(state: StateVector, control: int, target: int) -> StateVector:
    """Flip ``target`` on every basis term where ``control`` is 1."""
    return _controlled_flip(state, (control,), target)


def apply_toffoli(state: StateVector, c1: int, c2: int, target: int) -> StateVector:
    return _controlled_flip(state, (c1, c2), target)


def controlled_swap(state: StateVector, control: int, a: int, b: int) -> StateVector:
    """Exchange wires ``a`` and ``b`` where ``control`` is 1.

    Built from three Toffoli gates (a->b, b->a, a->b), the controlled
    version of the three-CNOT swap.
    """
    _check_qubits(state, control, a, b)
    state = apply_toffoli(state, control, a, b)
    state = apply_toffoli(state, control, b, a)
    return apply_toffoli(state, control, a, b)


def measure_qubit(state: StateVector, q: int, rng: np.random.Generator) -> tuple[int, StateVector]:
    """Projective computational-basis measurement of one qubit (Born rule)."""
    _check_qubits(state, q)
    t = state.tensor().copy()
    outcome = _collapse_(t, q, rng)
    return outcome, StateVector._wrap(t.reshape(-1), state.num_qubits)


def marginal_probabilities(state: StateVector, qubits) -> np.ndarray:
    """Outcome distribution of measuring ``qubits`` (in the given order)."""
    qubits = list(qubits)
    _check_qubits(state, *qubits)
    others = tuple(q for q in range(state.num_qubits) if q not in qubits)
    p = np.abs(state.tensor()) ** 2
    p = p.sum(axis=others) if others else p
    # remaining axes are in ascending qubit order; reorder to the request
    order = np.argsort(np.argsort(qubits))
    return np.transpose(p, order).reshape(-1)


def partial_trace(state: StateVector, keep) -> DensityMatrix:
    """Reduced density matrix on ``keep`` (ordered as given)."""
    keep = list(keep)
    if not keep:
        raise ValueError("keep set must be nonempty")
    _check_qubits(state, *keep)
    n = state.num_qubits
    traced = [q for q in range(n) if q not in keep]
    psi = np.transpose(state.tensor(), keep + traced).reshape(2 ** len(keep), -1)
    return DensityMatrix(len(keep), psi @ psi.conj().T)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(f"dimension mismatch: {a.num_qubits} vs {b.num_qubits} qubits")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    """Phase-insensitive overlap |<a|b>|^2."""
    return abs(inner_product(a, b)) ** 2
