#!/usr/bin/env python3
"""Decode-latency sweep across code rates, plus headline design points.

Writes one CSV row per rate with the cycle total and its reduction against
the 0.75N-1 two-bit-precomputed baseline, then prints cycle and throughput
summaries for the two reference code sizes.
"""

import argparse
import csv
import sys

import numpy as np

from fastssc import classified, construct_code, latency_model, latency_reduction_sweep, throughput_gbps, two_bit_precomputed_cycles


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1024)
    ap.add_argument("--design-snr", type=float, default=2.0)
    ap.add_argument("--rate-step", type=float, default=0.05)
    ap.add_argument("--k-list", default="870,512", help="comma list of K values to summarize")
    ap.add_argument("--freq", type=float, default=1.04, help="clock in GHz for throughput")
    ap.add_argument("--out", default="latency_sweep.csv")
    args = ap.parse_args(argv)

    rates = [round(r, 4) for r in np.arange(args.rate_step, 1.0 - 1e-9, args.rate_step)]
    rows = latency_reduction_sweep(args.n, rates, args.design_snr)
    with open(args.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=["rate", "K", "cycles", "reduction"])
        w.writeheader()
        w.writerows(rows)
    worst = max(r["cycles"] for r in rows)
    base = two_bit_precomputed_cycles(args.n)
    print(f"wrote {args.out}: {len(rows)} rates, worst {worst} cycles "
          f"(floor baseline {base:g}, min reduction {1 - worst / base:.1%})")

    for K in (int(k) for k in args.k_list.split(",") if k):
        code = construct_code(args.n, K, args.design_snr)
        cycles = latency_model(classified(code)).total_cycles
        print(f"({args.n},{K}) @ {args.design_snr} dB: {cycles} cycles, "
              f"{throughput_gbps(K, cycles, args.freq):.2f} Gbps at {args.freq} GHz")
    return 0


if __name__ == "__main__":
    sys.exit(main())
