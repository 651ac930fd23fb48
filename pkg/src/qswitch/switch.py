"""Delayed-commutation packet switch.

Each input line owns an ``n = 2d`` qubit ancilla register in the shared
entangled state.  During slots ``1..d`` the routing decision is still being
computed: the switch holds the arriving data qubits and emits the first half
of every ancilla register towards its default destination.  From slot ``d+1``
the permutation is known.  Data qubits are exchanged between lines with
controlled swaps, then written into the retained ancilla half of their new
line (phase bits with a Hadamard-sandwiched CNOT, flip bits with a CNOT), and
each retained qubit leaves as soon as its flip bit has been written.  The
destination undoes the code with transversal CNOTs and Hadamards.

Time is counted in integer qubit slots; gates take zero time.  Packets longer
than ``n`` are handled as consecutive ``n``-qubit blocks, each with a fresh
ancilla register and the same routing.

Lines, ports and destinations are 0-based in the API; transcript labels
(``L1.tx0``, ``D2``) count lines from 1.

Qubit layout inside one block simulation, for line ``p`` and ``base = 4*d*p``:
``base + m`` transmitted ancilla qubit ``m``, ``base + d + m`` retained ancilla
qubit ``m``, ``base + 2*d + q`` data qubit ``q``.  The last qubit holds the
commutation control.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import statevector as sv
from .benes import benes_network, check_permutation
from .codec import CodeParams, decoder_gates

Payload = Union[int, tuple]  # classical bit, or (alpha, beta) amplitudes


class SwitchError(ValueError):
    pass


class ContentionError(SwitchError):
    """Two sources requested the same destination."""


class ProbeError(SwitchError):
    pass


@dataclass
class PortStream:
    """Time-ordered payload of one port.

    ``qubits`` holds classical bits (0/1) or ``(alpha, beta)`` single-qubit
    amplitudes.  ``destination`` is the optional header of a source stream.
    """

    port: int
    qubits: list
    destination: int | None = None

    @property
    def mode(self) -> str:
        return "classical" if all(isinstance(q, (int, np.integer)) for q in self.qubits) else "quantum"

    def bits(self) -> str:
        return "".join(str(int(q)) for q in self.qubits)


@dataclass(frozen=True)
class TranscriptEntry:
    block: int
    slot: int
    site: str
    gate: str
    wires: tuple[str, ...]
    control_dependent: bool


@dataclass
class SwitchResult:
    outputs: list[PortStream]
    transcript: list[TranscriptEntry]
    final_states: list[sv.StateVector] = field(default_factory=list, repr=False)


def _qubit_state(payload: Payload) -> np.ndarray:
    if isinstance(payload, (int, np.integer)):
        if payload not in (0, 1):
            raise SwitchError(f"classical payload must be 0 or 1, got {payload}")
        return np.array([1, 0] if payload == 0 else [0, 1], dtype=complex)
    amp = np.asarray(payload, dtype=complex)
    if amp.shape != (2,) or abs(np.linalg.norm(amp) - 1) > sv.NORM_TOL:
        raise SwitchError(f"quantum payload must be a normalized (alpha, beta) pair, got {payload!r}")
    return amp


class _Block:
    """Gate-level run of one ``n``-qubit block through the switch."""

    def __init__(self, inst: SwitchInstance, payloads: list[list[Payload]], index: int):
        self.inst = inst
        self.d = inst.params.d
        self.index = index
        self.slot0 = index * inst.params.n
        self.num_lines = inst.num_ports
        self.control = 4 * self.d * self.num_lines
        self.emitted: dict[int, int] = {}
        self.transcript: list[TranscriptEntry] = []
        self.loaded = False

        amps = np.array([1], dtype=complex)
        for line in range(self.num_lines):
            amps = np.kron(amps, np.eye(1, 2 ** (2 * self.d), 0).ravel())
            for q in payloads[line]:
                amps = np.kron(amps, _qubit_state(q))
        amps = np.kron(amps, [1, 0])
        self.state = sv.StateVector(amps)
        # the block owns this buffer and updates it in place
        self.t = self.state.tensor()

    def tx(self, line, m):
        return 4 * self.d * line + m

    def rx(self, line, m):
        return 4 * self.d * line + self.d + m

    def data(self, line, q):
        return 4 * self.d * line + 2 * self.d + q

    def label(self, q: int) -> str:
        if q == self.control:
            return "C"
        line, off = divmod(q, 4 * self.d)
        if off < self.d:
            return f"L{line + 1}.tx{off}"
        if off < 2 * self.d:
            return f"L{line + 1}.rx{off - self.d}"
        return f"L{line + 1}.data{off - 2 * self.d}"

    def log(self, slot, gate, wires, dep=False, site="switch"):
        self.transcript.append(TranscriptEntry(self.index, self.slot0 + slot, site, gate,
                                               tuple(self.label(w) for w in wires), dep))

    def gate(self, slot, name, *wires, dep=False, site="switch"):
        if site == "switch":
            touched = [w for w in wires if w in self.emitted]
            if touched:
                raise AssertionError(f"switch gate {name} touches emitted qubit {self.label(touched[0])}")
        if name == "H":
            sv._single_(self.t, sv._H, *wires)
        elif name == "X":
            sv._x_(self.t, *wires)
        elif name in ("CNOT", "TOFFOLI"):
            sv._cflip_(self.t, tuple(wires[:-1]), wires[-1])
        else:
            raise ValueError(f"unknown gate {name}")
        self.log(slot, name, wires, dep, site)

    def emit(self, slot, q, dest):
        self.emitted[q] = dest
        self.log(slot, f"EMIT->D{dest + 1}", (q,))

    def load_control(self, slot, setting: bool):
        # the control qubit holds the element setting; X flips it in or out
        if setting != self.loaded:
            self.gate(slot, "X", self.control, dep=True)
            self.loaded = setting

    def route(self, slot, q):
        """Send data qubit ``q`` of every line through the Beneš network."""
        for stage in self.inst.network:
            for a, b, s in stage:
                self.load_control(slot, s)
                ca, cb = self.data(a, q), self.data(b, q)
                # controlled swap as three Toffolis
                self.gate(slot, "TOFFOLI", self.control, ca, cb, dep=True)
                self.gate(slot, "TOFFOLI", self.control, cb, ca, dep=True)
                self.gate(slot, "TOFFOLI", self.control, ca, cb, dep=True)
        self.load_control(slot, False)

    def run_switch(self, until: int | None = None) -> None:
        d, lines = self.d, range(self.num_lines)
        for p in lines:
            for m in range(d):
                self.gate(0, "H", self.tx(p, m))
                self.gate(0, "CNOT", self.tx(p, m), self.rx(p, m))
        for s in range(1, d + 1):
            if until is not None and s > until:
                return
            for p in lines:
                self.log(s, "ARRIVE", (self.data(p, s - 1),))
                self.emit(s, self.tx(p, s - 1), p)
        if until is not None:
            return
        # routing decision available from slot d+1
        for q in range(d):
            self.route(d + 1, q)
        for m in range(d):
            s = d + 1 + m
            for p in lines:
                self.log(s, "ARRIVE", (self.data(p, d + m),))
            self.route(s, d + m)
            for p in lines:
                r = self.rx(p, m)
                self.gate(s, "H", r)
                self.gate(s, "CNOT", self.data(p, m), r)
                self.gate(s, "H", r)
                self.gate(s, "CNOT", self.data(p, d + m), r)
                self.emit(s, r, p)

    def measure_held(self, rng) -> None:
        for p in range(self.num_lines):
            for q in range(2 * self.d):
                w = self.data(p, q)
                sv._collapse_(self.t, w, rng)
                self.log(2 * self.d, "MEASURE", (w,))

    def received(self, dest: int) -> list[int]:
        return [self.tx(dest, m) for m in range(self.d)] + [self.rx(dest, m) for m in range(self.d)]

    def run_decoders(self) -> None:
        slot = 2 * self.d + 1
        for dest in range(self.num_lines):
            wires = self.received(dest)
            for name, local in decoder_gates(self.inst.params):
                self.gate(slot, name, *(wires[i] for i in local), site=f"D{dest + 1}")

    def measure_destinations(self, rng) -> list[list[int]]:
        out = []
        for dest in range(self.num_lines):
            bits = []
            for w in self.received(dest):
                b = sv._collapse_(self.t, w, rng)
                self.log(2 * self.d + 1, "MEASURE", (w,), site=f"D{dest + 1}")
                bits.append(b)
            out.append(bits)
        return out


class SwitchInstance:
    """A switch with ``num_ports`` lines, delay ``params.d`` and a fixed permutation.

    ``control[src]`` is the output line the data of source ``src`` leave on.
    """

    def __init__(self, num_ports: int, params: CodeParams, control: Sequence[int],
                 inputs: Sequence[PortStream]):
        self.num_ports = num_ports
        self.params = params
        self.control = check_permutation(control, num_ports)
        self.network = benes_network(self.control)
        self.inputs = list(inputs)
        self._validate()

    def _validate(self) -> None:
        n = self.params.n
        if len(self.inputs) != self.num_ports:
            raise SwitchError(f"expected {self.num_ports} input streams, got {len(self.inputs)}")
        if 4 * self.params.d * self.num_ports + 1 > sv.MAX_QUBITS:
            raise SwitchError(f"{self.num_ports} ports with delay {self.params.d} exceed the "
                              f"{sv.MAX_QUBITS}-qubit simulation limit")
        lengths = {len(s.qubits) for s in self.inputs}
        if len(lengths) != 1:
            raise SwitchError(f"input streams have different lengths: {sorted(lengths)}")
        length = lengths.pop()
        if length < n or length % n:
            raise SwitchError(f"stream length {length} must be a positive multiple of the code width {n}")
        heads = [s.destination for s in self.inputs]
        known = [h for h in heads if h is not None]
        if len(known) != len(set(known)):
            raise ContentionError(f"sources request the same destination: {heads}")
        for src, h in enumerate(heads):
            if h is not None and h != self.control[src]:
                raise SwitchError(f"source {src} header asks for destination {h} "
                                  f"but the control routes it to {self.control[src]}")

    @property
    def num_blocks(self) -> int:
        return len(self.inputs[0].qubits) // self.params.n

    def _payloads(self, b: int) -> list[list[Payload]]:
        n = self.params.n
        return [s.qubits[b * n:(b + 1) * n] for s in self.inputs]

    def block(self, b: int = 0, until: int | None = None) -> _Block:
        blk = _Block(self, self._payloads(b), b)
        blk.run_switch(until)
        return blk

    def run(self, rng: np.random.Generator, measure_in_switch: bool | None = None) -> SwitchResult:
        """Full run with destination decoding and measurement.

        Held data qubits are measured in the switch for classical payloads and
        kept unmeasured for quantum payloads unless ``measure_in_switch`` says
        otherwise.
        """
        if measure_in_switch is None:
            measure_in_switch = all(s.mode == "classical" for s in self.inputs)
        bits = [[] for _ in range(self.num_ports)]
        transcript, finals = [], []
        for b in range(self.num_blocks):
            blk = self.block(b)
            if measure_in_switch:
                blk.measure_held(rng)
            blk.run_decoders()
            finals.append(sv.StateVector(blk.state.amplitudes.copy()))
            for dest, out in enumerate(blk.measure_destinations(rng)):
                bits[dest].extend(out)
            transcript.extend(blk.transcript)
        outputs = [PortStream(dest, bits[dest]) for dest in range(self.num_ports)]
        return SwitchResult(outputs, transcript, finals)

    def destination_distribution(self, b: int = 0) -> np.ndarray:
        """Joint outcome distribution of all destination readouts for block ``b``.

        Axes are ordered destination-major; index ``dest * n + m`` is received
        qubit ``m`` of destination ``dest``.
        """
        blk = self.block(b)
        blk.run_decoders()
        wires = [w for dest in range(self.num_ports) for w in blk.received(dest)]
        return sv.marginal_probabilities(blk.state, wires)

    def sample_outputs(self, shots: int, rng: np.random.Generator, b: int = 0) -> np.ndarray:
        """``shots`` joint destination readouts, shape ``(shots, num_ports, n)``."""
        probs = self.destination_distribution(b)
        width = self.num_ports * self.params.n
        draws = rng.choice(probs.size, size=shots, p=probs / probs.sum())
        bits = (draws[:, None] >> np.arange(width - 1, -1, -1)) & 1
        return bits.reshape(shots, self.num_ports, self.params.n)


def run_switch_general(inputs: Sequence[PortStream], control: Sequence[int], params: CodeParams,
                       rng: np.random.Generator) -> SwitchResult:
    inst = SwitchInstance(len(inputs), params, control, inputs)
    return inst.run(rng)


def run_switch_2x2(inputs: Sequence[PortStream], control: int, rng: np.random.Generator,
                   d: int = 1) -> SwitchResult:
    """Two-port switch; ``control=1`` crosses the lines."""
    if control not in (0, 1):
        raise SwitchError(f"2x2 control must be 0 or 1, got {control}")
    if len(inputs) != 2:
        raise SwitchError(f"2x2 switch needs two input streams, got {len(inputs)}")
    return run_switch_general(inputs, (1, 0) if control else (0, 1), CodeParams.for_delay(d), rng)


def no_signaling_probe(instance: SwitchInstance, t: int, joint: bool = False):
    """Reduced states of the qubits emitted up to slot ``t`` (``t <= d``).

    Computed from the joint state after the switch has finished routing and
    encoding, so any influence of the control on early qubits would show up.
    Returns ``{destination: DensityMatrix}``; with ``joint=True`` a single
    density matrix over every emitted qubit.
    """
    d = instance.params.d
    if not 1 <= t <= d:
        raise ProbeError(f"probe slot must be in 1..{d} (before the control acts), got {t}")
    blk = instance.block(0)
    emitted = {dest: [blk.tx(dest, m) for m in range(t)] for dest in range(instance.num_ports)}
    if joint:
        return sv.partial_trace(blk.state, [w for ws in emitted.values() for w in ws])
    return {dest: sv.partial_trace(blk.state, ws) for dest, ws in emitted.items()}


def control_violations(transcript: Sequence[TranscriptEntry], d: int) -> list[TranscriptEntry]:
    """Control-dependent switch gates touching a qubit emitted in the first ``d`` slots of its block."""
    early = set()
    for e in transcript:
        if e.gate.startswith("EMIT") and e.slot - e.block * 2 * d <= d:
            early.add((e.block, e.wires[0]))
    return [e for e in transcript
            if e.site == "switch" and e.control_dependent
            and any((e.block, w) in early for w in e.wires)]


def transcript_csv(transcript: Sequence[TranscriptEntry]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["block", "slot", "site", "gate", "wires", "control_dependent"])
    for e in transcript:
        w.writerow([e.block, e.slot, e.site, e.gate, " ".join(e.wires), int(e.control_dependent)])
    return buf.getvalue()


def read_transcript_csv(text: str) -> list[TranscriptEntry]:
    rows = csv.DictReader(io.StringIO(text))
    return [TranscriptEntry(int(r["block"]), int(r["slot"]), r["site"], r["gate"], tuple(r["wires"].split()),
                            r["control_dependent"] == "1") for r in rows]
