"""Command-line interface: construct, schedule, decode, ber."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import core, fast, hw, sim
from .quant import QuantSpec


@dataclass
class RunConfig:
    """Resolved invocation: the code plus decoder and quantization choices."""

    code: core.PolarCode
    decoder: str = "fast_ssc"
    quant: QuantSpec | None = None
    seed: int = 0
    precompute: bool = True


def _add_code_args(p):
    p.add_argument("--n", type=int, help="block length (power of 2)")
    p.add_argument("--k", type=int, help="information bits")
    p.add_argument("--design-snr", type=float, default=2.0, help="design Eb/N0 in dB (default 2.0)")
    p.add_argument("--method", choices=["ga", "bhattacharyya"], default="ga",
                   help="construction method (default ga)")
    p.add_argument("--frozen-file", help="frozen-set file overriding --n/--k construction")


def _resolve_code(args):
    if args.frozen_file:
        return core.read_frozen_file(args.frozen_file)
    if args.n is None or args.k is None:
        raise ValueError("provide --frozen-file or both --n and --k")
    return core.construct_code(args.n, args.k, args.design_snr, method=args.method)


def _parse_ebn0(text):
    pts = []
    for token in text.split(","):
        token = token.strip()
        if ":" in token:
            lo, hi, step = (float(t) for t in token.split(":"))
            v = lo
            while v <= hi + 1e-9:
                pts.append(round(v, 6))
                v += step
        elif token:
            pts.append(float(token))
    if not pts:
        raise ValueError("no Eb/N0 points given")
    return pts


def cmd_construct(args):
    code = _resolve_code(args)
    text = core.frozen_file_text(code)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}: N={code.N} K={code.K} "
              f"method={code.construction.method} design_snr_db={code.construction.design_snr_db}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_schedule(args):
    code = _resolve_code(args)
    report = fast.latency_model(fast.classified(code), precompute=not args.no_precompute)
    for e in report.entries:
        print(f"node={e.node:5d} kind={e.kind:7s} stage={e.stage:2d} offset={e.offset:5d} cycles={e.cycles}")
    total = report.total_cycles
    conv = 2 * code.N - 2
    pre = code.N - 1
    base = 0.75 * code.N - 1
    print(f"total_cycles={total}")
    print(f"reduction_vs_conventional_{conv}={1 - total / conv:.4f}")
    print(f"reduction_vs_precomputed_{pre}={1 - total / pre:.4f}")
    print(f"reduction_vs_two_bit_{base:g}={1 - total / base:.4f}")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json())
        print(f"wrote {args.json}")
    return 0


def _load_frames(path, N):
    frames = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            vals = [float(t) for t in line.replace(",", " ").split()]
            if len(vals) != N:
                raise ValueError(f"frame length {len(vals)} does not match N={N}")
            frames.append(vals)
    if not frames:
        raise ValueError(f"no frames in {path}")
    return np.array(frames)


def _bits_str(bits):
    return "".join(str(int(b)) for b in np.atleast_1d(bits))


def cmd_decode(args):
    code = _resolve_code(args)
    quant = QuantSpec.from_string(args.quant) if args.quant else None
    if args.decoder == "hw" and quant is None:
        quant = QuantSpec(4, 5, 0)
    if args.frame_file:
        llr = _load_frames(args.frame_file, code.N)
        tx_msgs = None
    else:
        cfg = sim.ChannelConfig(args.ebn0, code.rate, args.seed)
        tx_msgs, noise = sim.draw_messages_and_noise(cfg, code.K, code.N, 0, args.frames)
        llr = sim.awgn_llr(core.encode(code, tx_msgs), cfg, noise=noise)
    if args.decoder == "hw":
        tree = hw.PuTree(code.N, quant)
        result = hw.hw_decode_frame(tree, code, llr, trace=bool(args.trace))
        if args.trace:
            hw.write_trace_jsonl(args.trace, result)
        print(f"cycles={result.cycle_trace.total_cycles}")
    elif args.decoder == "sc":
        if args.trace:
            raise ValueError("--trace is only available with --decoder hw")
        from .reference import sc_decode
        result = sc_decode(code, llr, quant)
    else:
        if args.trace:
            raise ValueError("--trace is only available with --decoder hw")
        result = fast.fast_ssc_decode(code, llr, quant, tie_mode=args.tie_mode)
    u = np.atleast_2d(result.u_hat)
    for i, row in enumerate(u):
        info = row[code.info_indices]
        print(f"frame={i} u_hat={_bits_str(row)}")
        print(f"frame={i} info={_bits_str(info)}")
        if tx_msgs is not None:
            ok = bool((info == tx_msgs[i]).all())
            print(f"frame={i} match={ok}")
    return 0


def cmd_ber(args):
    code = _resolve_code(args)
    quant = QuantSpec.from_string(args.quant) if args.quant else None
    stop = sim.StopRule(args.min_frame_errors, args.max_frames)
    rows = sim.run_ber_sweep(
        code, _parse_ebn0(args.ebn0), decoder=args.decoder.replace("-", "_"),
        quant=quant, tie_mode=args.tie_mode, stop=stop, seed=args.seed,
        batch=args.batch, workers=args.workers,
    )
    for ebn0, st in rows:
        print(f"ebn0_db={ebn0} frames={st.frames} ber={st.ber:.3e} fer={st.fer:.3e}")
    if args.out:
        sim.write_stats_csv(args.out, rows)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(sim.stats_csv_text(rows))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fastssc",
        description="Polar code construction, pruned-tree SC decoding, and a cycle-level datapath model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and emit its frozen-set file")
    _add_code_args(p)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("schedule", help="print the pruned decode schedule and cycle totals")
    _add_code_args(p)
    p.add_argument("--no-precompute", action="store_true",
                   help="charge separate check/variable cycles per branch")
    p.add_argument("--json", help="also write the schedule as a JSON array")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("decode", help="decode frames from a file or a seeded random channel")
    _add_code_args(p)
    p.add_argument("--decoder", choices=["sc", "fast-ssc", "hw"], default="fast-ssc")
    p.add_argument("--quant", help="fixed-point spec 'C,L,F', e.g. 4,5,0")
    p.add_argument("--tie-mode", choices=["exact", "hardware"], default="exact")
    p.add_argument("--frame-file", help="text file, one whitespace-separated LLR frame per line")
    p.add_argument("--ebn0", type=float, default=2.0, help="channel Eb/N0 for random frames")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--frames", type=int, default=1, help="number of random frames")
    p.add_argument("--trace", help="write per-cycle JSON lines (hw decoder only)")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("ber", help="Monte-Carlo BER/FER sweep")
    _add_code_args(p)
    p.add_argument("--decoder", choices=["sc", "fast-ssc", "hw"], default="fast-ssc")
    p.add_argument("--quant", help="fixed-point spec 'C,L,F'")
    p.add_argument("--tie-mode", choices=["exact", "hardware"], default="exact")
    p.add_argument("--ebn0", required=True, help="comma list and/or lo:hi:step ranges, in dB")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-frame-errors", type=int, default=200)
    p.add_argument("--max-frames", type=int, default=10_000_000)
    p.add_argument("--batch", type=int, default=2048)
    p.add_argument("--workers", type=int, default=None,
                   help="parallel workers (default: FASTSSC_THREADS or 1)")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_ber)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
