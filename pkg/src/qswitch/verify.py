"""Named verification suites, runnable from the command line."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import codec, netsim
from .codec import CodeParams
from .statevector import inner_product, trace_distance
from .switch import PortStream, SwitchInstance, control_violations, no_signaling_probe


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def golden(name: str) -> str:
    return resources.files("qswitch").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def check_table1() -> list[Check]:
    out = []
    for n, fname in ((4, "table1_n4.csv"), (2, "bell_n2.csv")):
        ok = codec.code_table_csv(CodeParams(n)) == golden(fname)
        out.append(Check(f"code table n={n} matches {fname}", ok))
    bad = 0
    for n in (2, 4, 6):
        p = CodeParams(n)
        for w in codec.all_words(p):
            bad += codec.decode(codec.encode_analytic(p, w)) != w
    out.append(Check("decode(encode) round trip n=2,4,6", bad == 0, f"{bad} mismatches"))
    worst = 0.0
    for n in (2, 4, 6):
        p = CodeParams(n)
        anc = codec.make_ancilla(p)
        for w in codec.all_words(p):
            a = codec.encode_local(anc, w).state
            b = codec.encode_analytic(p, w).state
            worst = max(worst, abs(abs(inner_product(a, b)) - 1))
    out.append(Check("local encoding equals analytic code", worst < 1e-12, f"max deviation {worst:.1e}"))
    return out


def check_orthonormal() -> list[Check]:
    out = []
    for n in (2, 4, 6):
        err = float(np.abs(codec.gram_matrix(CodeParams(n)) - np.eye(2**n)).max())
        out.append(Check(f"code states orthonormal n={n}", err < 1e-10, f"max deviation {err:.1e}"))
    return out


def _streams(bits_per_port):
    return [PortStream(p, list(b)) for p, b in enumerate(bits_per_port)]


def check_nosignal() -> list[Check]:
    out = []
    rng = np.random.default_rng(7)
    for d in (1, 2):
        p = CodeParams.for_delay(d)
        worst, violations = 0.0, 0
        for _ in range(4):
            data = _streams(rng.integers(0, 2, size=(2, p.n)).tolist())
            insts = [SwitchInstance(2, p, ctrl, data) for ctrl in ((0, 1), (1, 0))]
            for t in range(1, d + 1):
                r0, r1 = (no_signaling_probe(i, t) for i in insts)
                worst = max(worst, *(trace_distance(r0[k], r1[k]) for k in r0))
            for inst in insts:
                violations += len(control_violations(inst.run(rng).transcript, d))
        out.append(Check(f"no-signaling d={d}", worst < 1e-10, f"max trace distance {worst:.1e}"))
        out.append(Check(f"delayed-action transcript d={d}", violations == 0, f"{violations} violations"))
    return out


def check_formulas() -> list[Check]:
    m = netsim.DelayModel(D=100, t_q=5e-6, N=4, t_p=1e-3, Q_p=9)
    out = [
        Check("improvement worked example = 9", abs(netsim.improvement(m) - 9) < 1e-12),
        Check("improvement with parity = 8.1", abs(netsim.improvement_with_parity(m) - 8.1) < 1e-12),
    ]
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(1000):
        mm = netsim.DelayModel(D=rng.uniform(1, 1e4), t_q=10 ** rng.uniform(-9, -4),
                               N=int(rng.integers(0, 30)), t_p=10 ** rng.uniform(-7, -2))
        route = netsim.Route(netsim.random_split(mm.D, mm.N + 1, rng))
        route = netsim.Route(route.distances[:-1] + (mm.D - sum(route.distances[:-1]),))
        for mode in ("classical", "delayed"):
            sim = netsim.simulate_route(route, mm, mode).arrival_time
            ref = netsim.closed_form_arrival(route, mm, mode)
            worst = max(worst, abs(sim - ref) / ref)
    out.append(Check("simulated arrival matches closed form", worst < 1e-9, f"max rel error {worst:.1e}"))
    return out


def check_routing() -> list[Check]:
    rng = np.random.default_rng(11)
    out = []
    for d in (1, 2):
        p = CodeParams.for_delay(d)
        words = list(itertools.product((0, 1), repeat=p.n))
        bad = 0
        for ctrl in ((0, 1), (1, 0)):
            for s1, s2 in itertools.product(words, repeat=2):
                res = SwitchInstance(2, p, ctrl, _streams([s1, s2])).run(rng)
                got = [tuple(o.qubits) for o in res.outputs]
                exp = [None, None]
                exp[ctrl[0]], exp[ctrl[1]] = s1, s2
                bad += got != exp
        out.append(Check(f"2x2 routing exhaustive d={d}", bad == 0, f"{bad} failures"))
    return out


SUITES = {
    "table1": check_table1,
    "orthonormal": check_orthonormal,
    "nosignal": check_nosignal,
    "formulas": check_formulas,
    "routing": check_routing,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
