"""Command-line driver: ``qswitch <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 contention, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from . import codec, netsim, verify
from .codec import CodeError, CodeParams, CodeWord
from .statevector import StateVector, trace_distance
from .switch import (
    ContentionError,
    PortStream,
    SwitchInstance,
    no_signaling_probe,
    transcript_csv,
)

EXIT_OK, EXIT_USAGE, EXIT_CONTENTION, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def _bits(text: str) -> list[int]:
    if not text or set(text) - {"0", "1"}:
        raise UsageError(f"expected a bit string, got {text!r}")
    return [int(c) for c in text]


def _params(n: int) -> CodeParams:
    try:
        return CodeParams(n)
    except CodeError as exc:
        raise UsageError(str(exc)) from None


def cmd_codetable(args) -> int:
    p = _params(args.n)
    text = codec.code_table_pretty(p) if args.pretty else codec.code_table_csv(p)
    _write(text, args.out)
    return EXIT_OK


def cmd_encode(args) -> int:
    bits = _bits(args.word)
    p = _params(len(bits))
    word = CodeWord.from_bits(bits)
    pair = (codec.encode_local(codec.make_ancilla(p), word) if args.local
            else codec.encode_analytic(p, word))
    lines = ["basis,real,imag"]
    for b in np.flatnonzero(np.abs(pair.state.amplitudes) > 1e-12):
        a = pair.state.amplitudes[b]
        lines.append(f"{b:0{p.n}b},{float(a.real)!r},{float(a.imag)!r}")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    """Read ``basis,real[,imag]`` rows (as written by ``encode``) and decode."""
    with open(args.state, encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise UsageError(f"{args.state}: no amplitudes")
    n = len(rows[0]["basis"])
    amps = np.zeros(2**n, dtype=complex)
    for r in rows:
        amps[int(r["basis"], 2)] = complex(float(r["real"]), float(r.get("imag") or 0))
    try:
        pair = codec.EncodedPair(StateVector(amps), _params(n))
        print(codec.decode(pair).bits())
    except (CodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _switch_inputs(args) -> tuple[list[PortStream], tuple[int, ...]]:
    streams = [_bits(s) for s in args.s]
    if args.perm is not None:
        try:
            perm = tuple(int(x) - 1 for x in args.perm.split(","))
        except ValueError:
            raise UsageError(f"--perm must be comma-separated 1-based ports, got {args.perm!r}") from None
    elif args.c is not None:
        if args.c not in (0, 1):
            raise UsageError("--c must be 0 or 1")
        perm = (1, 0) if args.c else (0, 1)
    else:
        raise UsageError("give --c for two ports or --perm for N ports")
    heads = [None] * len(streams)
    if args.headers:
        heads = [int(h) - 1 for h in args.headers.split(",")]
        if len(heads) != len(streams):
            raise UsageError("--headers needs one destination per source")
    return [PortStream(i, s, heads[i]) for i, s in enumerate(streams)], perm


def _delay(args, streams) -> int:
    if args.d is not None:
        return args.d
    return len(streams[0].qubits) // 2


def cmd_switch(args) -> int:
    args.s = [x for x in (args.s1, args.s2) if x is not None] + (args.s or [])
    inputs, perm = _switch_inputs(args)
    try:
        p = _params(2 * _delay(args, inputs))
        inst = SwitchInstance(len(inputs), p, perm, inputs)
    except ContentionError as exc:
        print(f"contention: {exc}", file=sys.stderr)
        return EXIT_CONTENTION
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = inst.run(np.random.default_rng(args.seed))
    for out in res.outputs:
        print(f"D{out.port + 1}: {out.bits()}")
    if args.transcript:
        _write(transcript_csv(res.transcript), args.transcript)
    return EXIT_OK


def cmd_nosignal(args) -> int:
    """Trace distance between destination states for every control setting, per slot."""
    args.s = [x for x in (args.s1, args.s2) if x is not None] + (args.s or [])
    streams = [_bits(s) for s in args.s]
    if len(streams) != 2:
        raise UsageError("nosignal compares both settings of a 2x2 switch; give --s1 and --s2")
    inputs = [PortStream(i, s) for i, s in enumerate(streams)]
    try:
        p = _params(2 * _delay(args, inputs))
        insts = [SwitchInstance(2, p, ctrl, inputs) for ctrl in ((0, 1), (1, 0))]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print("slot,destination,trace_distance")
    worst = 0.0
    for t in range(1, p.d + 1):
        r0, r1 = (no_signaling_probe(i, t) for i in insts)
        for dest in r0:
            dist = trace_distance(r0[dest], r1[dest])
            worst = max(worst, dist)
            print(f"{t},D{dest + 1},{dist:.3e}")
    return EXIT_OK if worst < 1e-10 else EXIT_VERIFY


def cmd_netsim(args) -> int:
    try:
        scenarios = netsim.load_scenarios(args.scenario)
    except netsim.ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        raise UsageError(f"cannot read scenario file: {exc}") from None
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(netsim.SCENARIO_COLUMNS)
    for sc in scenarios:
        row = netsim.run_scenario(sc)
        w.writerow([v if isinstance(v, str) else repr(float(v)) for v in row.values()])
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in verify.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from "
                         f"{', '.join([*verify.SUITES, 'all'])}")
    checks = verify.run_suite(args.suite)
    for c in checks:
        print(c.line())
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qswitch", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("codetable", help="dump every code state as CSV")
    p.add_argument("--n", type=int, required=True, help="code width (2, 4, 6 or 8)")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--pretty", action="store_true", help="ket notation instead of CSV")
    p.set_defaults(func=cmd_codetable)

    p = sub.add_parser("encode", help="print the code state of a word")
    p.add_argument("--word", required=True, help="bit string, phase half first")
    p.add_argument("--local", action="store_true", help="encode by acting on the retained half only")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a state written by 'encode'")
    p.add_argument("--state", required=True, help="CSV with basis,real,imag columns")
    p.set_defaults(func=cmd_decode)

    for name, func in (("switch", cmd_switch), ("nosignal", cmd_nosignal)):
        p = sub.add_parser(name, help="run the delayed-commutation switch" if name == "switch"
                           else "check destination states do not depend on the control")
        p.add_argument("--s1", help="bit stream of source 1")
        p.add_argument("--s2", help="bit stream of source 2")
        p.add_argument("--s", action="append", help="further source streams, in port order")
        p.add_argument("--d", type=int, help="processing delay in qubits (default: half the stream)")
        if name == "switch":
            p.add_argument("--c", type=int, help="2x2 control bit: 1 crosses the lines")
            p.add_argument("--perm", help="1-based destination of each source, e.g. 2,1,4,3")
            p.add_argument("--headers", help="1-based destination requested by each source")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--transcript", help="write the gate transcript CSV here")
        p.set_defaults(func=func)

    p = sub.add_parser("netsim", help="evaluate latency scenarios")
    p.add_argument("scenario", help="INI file, one section per scenario")
    p.add_argument("--out")
    p.set_defaults(func=cmd_netsim)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help=f"one of {', '.join([*verify.SUITES, 'all'])}")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
