"""End-to-end latency and bit-rate model for multi-hop packet routes.

A packet crosses ``N`` switching nodes over links of total length ``D``.  A
qubit needs ``t_q`` seconds per unit of distance and each node spends ``t_p``
seconds deciding the route.  Without delayed commutation every node adds
its processing time; with it the routing decision overlaps transmission and
only propagation remains.
"""
from __future__ import annotations

import configparser
import heapq
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

REGULAR = "regular"
SUPERDENSE = "superdense"


class ParityMode(str, Enum):
    GRANTED = "granted-parity"
    PARITY_QUBIT = "parity-qubit"
    DECODER = "per-switch-decoder"


class RouteError(ValueError):
    pass


@dataclass(frozen=True)
class DelayModel:
    D: float
    t_q: float
    N: int
    t_p: float
    Q_p: int = 1

    def __post_init__(self):
        for name in ("D", "t_q", "t_p"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")
        if self.N < 0 or int(self.N) != self.N:
            raise ValueError(f"N must be a non-negative integer, got {self.N!r}")
        if self.Q_p < 1 or int(self.Q_p) != self.Q_p:
            raise ValueError(f"Q_p must be an integer >= 1, got {self.Q_p!r}")


def classical_delay(m: DelayModel) -> float:
    return m.D * m.t_q + m.N * m.t_p


def delayed_delay(m: DelayModel) -> float:
    return m.D * m.t_q


def bitrate(m: DelayModel, delayed_commutation: bool) -> float:
    return 1 / (delayed_delay(m) if delayed_commutation else classical_delay(m))


def improvement(m: DelayModel) -> float:
    """Bit-rate gain of delayed commutation, ``1 + N t_p / (D t_q)``."""
    return 1 + m.N * m.t_p / (m.D * m.t_q)


def improvement_with_parity(m: DelayModel) -> float:
    """Gain when every packet of ``Q_p`` qubits carries one extra parity qubit."""
    return m.Q_p / (m.Q_p + 1) * improvement(m)


@dataclass(frozen=True)
class Route:
    """Links ``distances[0..N]`` joined by ``N = len(distances) - 1`` switches."""

    distances: tuple[float, ...]
    parity_mode: ParityMode = ParityMode.GRANTED
    processing: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "distances", tuple(float(x) for x in self.distances))
        object.__setattr__(self, "parity_mode", ParityMode(self.parity_mode))
        if not self.distances:
            raise RouteError("a route needs at least one link")
        if any(not (x > 0) for x in self.distances):
            raise RouteError(f"link distances must be positive: {self.distances}")
        if self.processing is not None:
            object.__setattr__(self, "processing", tuple(float(x) for x in self.processing))
            if len(self.processing) != self.hops:
                raise RouteError(f"{len(self.processing)} per-node processing times for {self.hops} nodes")
            if any(not (x > 0) for x in self.processing):
                raise RouteError("per-node processing times must be positive")

    @property
    def hops(self) -> int:
        return len(self.distances) - 1

    @property
    def total_distance(self) -> float:
        return math.fsum(self.distances)

    @classmethod
    def even(cls, m: DelayModel, parity_mode=ParityMode.GRANTED) -> Route:
        return cls((m.D / (m.N + 1),) * (m.N + 1), parity_mode)


@dataclass(frozen=True)
class Event:
    time: float
    kind: str
    node: int
    encoding: str


@dataclass
class RouteResult:
    arrival_time: float
    events: list[Event]
    final_encoding: str
    packet_qubits: int
    bitrate: float
    parity_bit: int | None = None
    decode_events: int = field(default=0)


def _flip(encoding: str) -> str:
    return SUPERDENSE if encoding == REGULAR else REGULAR


def simulate_route(route: Route, m: DelayModel, mode: str = "delayed",
                   initial_encoding: str = REGULAR) -> RouteResult:
    """Event-driven walk of one packet's head along ``route``.

    ``mode`` is ``"classical"`` (each node holds the packet for its processing
    time) or ``"delayed"`` (forwarding starts before the decision is made).
    In delayed mode each traversed switch toggles the code between regular
    and superdense; with ``per-switch-decoder`` a decoder at every switch
    input and at the destination restores the regular code first.
    """
    if mode not in ("classical", "delayed"):
        raise RouteError(f"mode must be 'classical' or 'delayed', got {mode!r}")
    if route.hops != m.N:
        raise RouteError(f"route has {route.hops} switching nodes, model says N={m.N}")
    if not math.isclose(route.total_distance, m.D, rel_tol=1e-12, abs_tol=0):
        raise RouteError(f"route length {route.total_distance} differs from model D={m.D}")
    processing = route.processing or (m.t_p,) * route.hops
    decoding = route.parity_mode is ParityMode.DECODER

    log: list[Event] = []
    queue = [(0.0, 0, "depart", 0, initial_encoding)]
    seq = 1
    while queue:
        t, _, kind, node, enc = heapq.heappop(queue)
        if kind == "arrive" and decoding and enc == SUPERDENSE:
            enc = REGULAR
            log.append(Event(t, "decode", node, enc))
        log.append(Event(t, kind, node, enc))
        if kind == "depart" and node <= route.hops:
            heapq.heappush(queue, (t + route.distances[node] * m.t_q, seq, "arrive", node + 1, enc))
        elif kind == "arrive" and node <= route.hops:
            # node is a switch; classical forwarding waits for the decision
            wait = processing[node - 1] if mode == "classical" else 0.0
            out = _flip(enc) if mode == "delayed" else enc
            heapq.heappush(queue, (t + wait, seq, "depart", node, out))
        seq += 1

    arrival = log[-1].time
    final = log[-1].encoding
    qubits = m.Q_p
    parity = None
    if route.parity_mode is ParityMode.PARITY_QUBIT:
        qubits += 1
        parity = route.hops % 2
    rate = m.Q_p / qubits / arrival
    return RouteResult(arrival, log, final, qubits, rate, parity,
                       sum(e.kind == "decode" for e in log))


def closed_form_arrival(route: Route, m: DelayModel, mode: str) -> float:
    if mode == "delayed":
        return delayed_delay(m)
    if route.processing is not None:
        return m.D * m.t_q + math.fsum(route.processing)
    return classical_delay(m)


def expected_encoding(hops: int, initial: str = REGULAR) -> str:
    return initial if hops % 2 == 0 else _flip(initial)


def random_split(total: float, parts: int, rng) -> tuple[float, ...]:
    """Positive link lengths summing to ``total`` (up to rounding)."""
    w = rng.random(parts) + 0.05
    return tuple(total * w / w.sum())


SCENARIO_COLUMNS = ("scenario", "classical_delay", "delayed_delay", "bitrate_classical",
                    "bitrate_delayed", "improvement", "improvement_parity", "final_encoding")
_REQUIRED = ("distance", "t_q", "nodes", "t_p")


class ScenarioError(ValueError):
    def __init__(self, scenario: str, key: str, reason: str):
        self.key = key
        super().__init__(f"scenario {scenario!r}: key {key!r}: {reason}")


@dataclass(frozen=True)
class Scenario:
    name: str
    model: DelayModel
    mode: str = "delayed"
    parity_mode: ParityMode = ParityMode.GRANTED
    seed: int = 0
    processing: tuple[float, ...] | None = None

    def route(self) -> Route:
        """Per-hop distances drawn from ``seed``; the result only depends on their sum."""
        m = self.model
        split = random_split(m.D, m.N + 1, np.random.default_rng(self.seed))
        # absorb rounding in the last link so the sum matches D
        split = split[:-1] + (m.D - math.fsum(split[:-1]),)
        return Route(split, self.parity_mode, self.processing)


def parse_scenario(name: str, section) -> Scenario:
    """Build a :class:`Scenario` from a mapping of string values."""
    for key in _REQUIRED:
        if key not in section:
            raise ScenarioError(name, key, "missing")

    def num(key, cast, default=None):
        if key not in section:
            return default
        try:
            return cast(section[key])
        except ValueError:
            raise ScenarioError(name, key, f"cannot parse {section[key]!r}") from None

    processing = None
    if "t_p_per_node" in section:
        try:
            processing = tuple(float(x) for x in section["t_p_per_node"].split(","))
        except ValueError:
            raise ScenarioError(name, "t_p_per_node", "expected comma-separated numbers") from None
    mode = section.get("mode", "delayed")
    if mode not in ("classical", "delayed"):
        raise ScenarioError(name, "mode", f"expected classical or delayed, got {mode!r}")
    try:
        parity = ParityMode(section.get("parity_mode", ParityMode.GRANTED.value))
    except ValueError:
        raise ScenarioError(name, "parity_mode", f"unknown mode {section['parity_mode']!r}") from None
    fields = {"D": ("distance", float), "t_q": ("t_q", float), "N": ("nodes", int),
              "t_p": ("t_p", float), "Q_p": ("packet_qubits", int)}
    values = {attr: num(key, cast) for attr, (key, cast) in fields.items()}
    if values["Q_p"] is None:
        values["Q_p"] = 1
    try:
        model = DelayModel(**values)
    except ValueError as exc:
        key = next(k for attr, (k, _) in fields.items() if str(exc).startswith(attr + " "))
        raise ScenarioError(name, key, str(exc)) from None
    if processing is not None and len(processing) != model.N:
        raise ScenarioError(name, "t_p_per_node", f"{len(processing)} values for {model.N} nodes")
    return Scenario(name, model, mode, parity, num("seed", int, 0), processing)


def load_scenarios(path) -> list[Scenario]:
    """Read an INI file; each section is one scenario."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    with open(path, encoding="utf-8") as fh:
        cp.read_file(fh)
    if not cp.sections():
        raise ScenarioError(str(path), "distance", "no scenario sections found")
    return [parse_scenario(name, cp[name]) for name in cp.sections()]


def run_scenario(sc: Scenario) -> dict:
    """Simulate both forwarding modes over the scenario's route."""
    m, route = sc.model, sc.route()
    classical = simulate_route(route, m, "classical").arrival_time
    delayed = simulate_route(route, m, "delayed").arrival_time
    extra = math.fsum(sc.processing) if sc.processing is not None else m.N * m.t_p
    gain = 1 + extra / (m.D * m.t_q)
    return {
        "scenario": sc.name,
        "classical_delay": classical,
        "delayed_delay": delayed,
        "bitrate_classical": 1 / classical,
        "bitrate_delayed": 1 / delayed,
        "improvement": gain,
        "improvement_parity": m.Q_p / (m.Q_p + 1) * gain,
        "final_encoding": simulate_route(route, m, sc.mode).final_encoding,
    }
