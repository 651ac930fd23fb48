"""Acceptance checks, one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the report lines.
"""
import itertools
import time

import numpy as np
import pytest

from qswitch import codec, netsim
from qswitch.cli import main
from qswitch.codec import CodeParams, CodeWord
from qswitch.statevector import inner_product, marginal_probabilities, trace_distance
from qswitch.switch import (
    PortStream,
    SwitchInstance,
    control_violations,
    no_signaling_probe,
    read_transcript_csv,
    transcript_csv,
)
from qswitch.verify import golden


def report(num, name, ok, detail=""):
    print(f"{'PASS' if ok else 'FAIL'} criterion {num} {name}" + (f" ({detail})" if detail else ""))
    assert ok, detail


def streams(words):
    return [PortStream(p, list(w)) for p, w in enumerate(words)]


def test_01_table(tmp_path, capsys):
    out = tmp_path / "table.csv"
    t0 = time.perf_counter()
    code = main(["codetable", "--n", "4", "--out", str(out)])
    dt = time.perf_counter() - t0
    capsys.readouterr()
    text = out.read_text()
    rows = text.splitlines()[1:]
    signs_ok = all(r.split(",")[3] == "1/2" and r.split(",")[2] in "+-" for r in rows)
    ok = code == 0 and text == golden("table1_n4.csv") and len(rows) == 64 and signs_ok and dt < 1
    with capsys.disabled():
        report(1, "four-qubit code table", ok, f"{dt:.3f} s")


def test_02_bell(capsys):
    code = main(["codetable", "--n", "2"])
    out = capsys.readouterr().out
    with capsys.disabled():
        report(2, "two-qubit Bell table", code == 0 and out == golden("bell_n2.csv"))


def test_03_round_trip(capsys):
    t0 = time.perf_counter()
    cases, bad, worst = 0, 0, 1.0
    for n in (2, 4, 6):
        p = CodeParams(n)
        for v in range(2**n):
            w = CodeWord.from_int(v, p.d)
            pair = codec.encode_analytic(p, w)
            # probability of the intended readout after the decoder circuit
            probs = marginal_probabilities(codec.apply_decoder(pair.state, p), range(n))
            worst = min(worst, float(probs[w.to_int()]))
            bad += codec.decode(pair) != w
            cases += 1
    dt = time.perf_counter() - t0
    with capsys.disabled():
        report(3, "decode/encode round trip", cases == 4 + 16 + 64 and bad == 0 and worst >= 1 - 1e-10 and dt < 5,
               f"{cases} cases, min fidelity {worst:.12f}, {dt:.2f} s")


def test_04_local_encoding(capsys):
    worst = 0.0
    for n in (2, 4, 6):
        p = CodeParams(n)
        anc = codec.make_ancilla(p)
        for w in codec.all_words(p):
            ov = inner_product(codec.encode_local(anc, w).state, codec.encode_analytic(p, w).state)
            worst = max(worst, abs(abs(ov) - 1))
    with capsys.disabled():
        report(4, "local encoding equals analytic code", worst < 1e-12, f"max deviation {worst:.1e}")


def test_05_orthonormal(capsys):
    worst = max(float(np.abs(codec.gram_matrix(CodeParams(n)) - np.eye(2**n)).max()) for n in (2, 4, 6))
    with capsys.disabled():
        report(5, "code states orthonormal", worst < 1e-10, f"max deviation {worst:.1e}")


def test_06_no_signaling(capsys):
    worst, probes = 0.0, 0
    rng = np.random.default_rng(61)
    for d in (1, 2):
        p = CodeParams.for_delay(d)
        if d == 1:
            data = list(itertools.product(itertools.product((0, 1), repeat=2), repeat=2))
        else:
            data = [tuple(map(tuple, rng.integers(0, 2, (2, 4)))) for _ in range(12)]
        for words in data:
            insts = [SwitchInstance(2, p, ctrl, streams(words)) for ctrl in ((0, 1), (1, 0))]
            for t in range(1, d + 1):
                a, b = (no_signaling_probe(i, t) for i in insts)
                worst = max(worst, *(trace_distance(a[k], b[k]) for k in a))
                probes += 1
    with capsys.disabled():
        report(6, "no signaling before the control arrives", worst < 1e-10,
               f"{probes} probes, max trace distance {worst:.1e}")


def test_07_transcript(capsys):
    rng = np.random.default_rng(71)
    total, runs = 0, 0
    for d in (1, 2):
        p = CodeParams.for_delay(d)
        for c in (0, 1):
            for _ in range(3):
                words = rng.integers(0, 2, (2, p.n)).tolist()
                ctrl = (1, 0) if c else (0, 1)
                res = SwitchInstance(2, p, ctrl, streams(words)).run(rng)
                exported = read_transcript_csv(transcript_csv(res.transcript))
                total += len(control_violations(exported, d))
                runs += 1
    with capsys.disabled():
        report(7, "no control-dependent gates on early-emitted qubits", total == 0,
               f"{runs} transcripts, {total} violations")


def test_08_routing(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(81)
    cases, bad = 0, 0
    for d in (1, 2):
        p = CodeParams.for_delay(d)
        words = list(itertools.product((0, 1), repeat=p.n))
        for ctrl in ((0, 1), (1, 0)):
            for s in itertools.product(words, repeat=2):
                res = SwitchInstance(2, p, ctrl, streams(s)).run(rng)
                exp = [None, None]
                exp[ctrl[0]], exp[ctrl[1]] = s
                bad += [tuple(o.qubits) for o in res.outputs] != exp
                cases += 1

    # quantum payload: compare sampled destinations with direct measurement of permuted sources
    q = [[(np.cos(0.3), np.sin(0.3)), (np.cos(1.1), np.exp(0.4j) * np.sin(1.1))],
         [(np.cos(0.8), np.exp(2j) * np.sin(0.8)), (np.cos(0.2), np.sin(0.2))]]
    inst = SwitchInstance(2, CodeParams(2), (1, 0), streams(q))
    shots = inst.sample_outputs(10_000, np.random.default_rng(82))
    idx = shots.reshape(len(shots), -1) @ (1 << np.arange(3, -1, -1))
    freq = np.bincount(idx, minlength=16) / len(shots)
    direct = np.array([1.0])
    for src in (q[1], q[0]):
        for a in src:
            direct = np.kron(direct, np.abs(np.array(a)) ** 2)
    tvd = 0.5 * float(np.abs(freq - direct).sum())
    dt = time.perf_counter() - t0
    ok = bad == 0 and cases == 2 * 16 + 2 * 256 and tvd <= 0.02 and dt < 60
    with capsys.disabled():
        report(8, "end-to-end routing", ok, f"{cases} classical cases, {bad} failures, TVD {tvd:.4f}, {dt:.1f} s")


def test_09_formulas(capsys):
    # hand arithmetic: D t_q = 100 * 5e-6 = 5e-4, N t_p = 4 * 1e-3 = 4e-3
    # improvement = (5e-4 + 4e-3) / 5e-4 = 9; with Q_p = 9, 9 * 9/10 = 8.1
    m = netsim.DelayModel(D=100, t_q=5e-6, N=4, t_p=1e-3, Q_p=9)
    exact = (netsim.improvement(m) == pytest.approx(9, rel=1e-12)
             and netsim.improvement_with_parity(m) == pytest.approx(8.1, rel=1e-12))
    rng = np.random.default_rng(91)
    worst = 0.0
    for _ in range(1000):
        mm = netsim.DelayModel(D=rng.uniform(0.5, 5e4), t_q=10 ** rng.uniform(-9, -3),
                               N=int(rng.integers(0, 40)), t_p=10 ** rng.uniform(-8, -1))
        parts = netsim.random_split(mm.D, mm.N + 1, rng)
        route = netsim.Route(tuple(parts[:-1]) + (mm.D - sum(parts[:-1]),))
        for mode, ref in (("classical", netsim.classical_delay(mm)), ("delayed", netsim.delayed_delay(mm))):
            worst = max(worst, abs(netsim.simulate_route(route, mm, mode).arrival_time - ref) / ref)
    with capsys.disabled():
        report(9, "latency formulas", exact and worst < 1e-9, f"max rel error {worst:.1e}")


def test_10_four_ports(capsys):
    rng = np.random.default_rng(101)
    words = list(itertools.product((0, 1), repeat=2))
    bad, cases = 0, 0
    for perm in ((1, 0, 3, 2), (3, 2, 1, 0), (2, 0, 3, 1)):
        for s in itertools.product(words, repeat=4):
            res = SwitchInstance(4, CodeParams(2), perm, streams(s)).run(rng)
            out = [tuple(o.qubits) for o in res.outputs]
            bad += any(out[perm[k]] != s[k] for k in range(4))
            cases += 1
    with capsys.disabled():
        report(10, "four-port switch", bad == 0 and cases == 3 * 256, f"{cases} cases, {bad} failures")
