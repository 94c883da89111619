"""Monte-Carlo harness: BPSK over AWGN, BER/FER sweeps, throughput arithmetic.

Reproducibility contract: frame ``i`` of a run draws its message bits and its
noise from a counter-based Philox generator keyed ``(seed, i)``.  Results are
therefore identical no matter how frames are batched or spread across
workers.  The worker count defaults to the ``FASTSSC_THREADS`` environment
variable (serial when unset).
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import encode
from .fast import fast_ssc_decode
from .hw import PuTree, hw_decode_frame
from .quant import QuantSpec
from .reference import sc_decode

CSV_HEADER = ["ebn0_db", "frames", "bit_errors", "frame_errors", "ber", "fer"]


@dataclass(frozen=True)
class ChannelConfig:
    """BPSK-AWGN operating point: Eb/N0 in dB, code rate, RNG seed."""

    ebn0_db: float
    rate: float
    seed: int = 0

    @property
    def noise_var(self):
        return 1.0 / (2.0 * self.rate * 10.0 ** (self.ebn0_db / 10.0))


@dataclass(frozen=True)
class StopRule:
    """Stop a point after enough frame errors or a frame budget."""

    min_frame_errors: int = 200
    max_frames: int = 10_000_000


@dataclass
class TrialStats:
    """Error counters for one simulated operating point."""

    frames: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    info_bits_per_frame: int = 1

    @property
    def ber(self):
        if self.frames == 0:
            return 0.0
        return self.bit_errors / (self.frames * self.info_bits_per_frame)

    @property
    def fer(self):
        if self.frames == 0:
            return 0.0
        return self.frame_errors / self.frames

    def merge(self, other):
        """Combine counters from two disjoint frame ranges (associative)."""
        if other.frames and self.frames and other.info_bits_per_frame != self.info_bits_per_frame:
            raise ValueError("cannot merge stats with different frame sizes")
        k = self.info_bits_per_frame if self.frames else other.info_bits_per_frame
        return TrialStats(
            self.frames + other.frames,
            self.bit_errors + other.bit_errors,
            self.frame_errors + other.frame_errors,
            k,
        )


def _frame_rng(seed, index):
    return np.random.Generator(np.random.Philox(key=[seed & 0xFFFFFFFFFFFFFFFF, index]))


def draw_messages_and_noise(cfg, K, N, first_frame, count):
    """Messages and unit-variance noise for frames [first, first+count)."""
    msgs = np.empty((count, K), dtype=np.uint8)
    noise = np.empty((count, N), dtype=np.float64)
    for i in range(count):
        rng = _frame_rng(cfg.seed, first_frame + i)
        msgs[i] = rng.integers(0, 2, size=K, dtype=np.uint8)
        noise[i] = rng.standard_normal(N)
    return msgs, noise


def awgn_llr(codeword, cfg, noise=None, frame_index=0):
    """Channel LLRs of BPSK codeword bits over AWGN.

    Bit 0 maps to +1, bit 1 to -1; the LLR of received sample y is
    ``2 y / noise_var``, positive favouring bit 0.  When ``noise`` is not
    supplied it is drawn from the Philox stream of ``(cfg.seed, frame_index)``.
    """
    bits = np.asarray(codeword, dtype=np.uint8)
    symbols = 1.0 - 2.0 * bits.astype(np.float64)
    var = cfg.noise_var
    if noise is None:
        arr = bits if bits.ndim == 2 else bits[None, :]
        count, N = arr.shape
        noise = np.stack([
            _frame_rng(cfg.seed, frame_index + i).standard_normal(N) for i in range(count)
        ])
        noise = noise if bits.ndim == 2 else noise[0]
    received = symbols + np.sqrt(var) * np.asarray(noise)
    return 2.0 * received / var


def make_decoder(code, decoder="fast_ssc", quant=None, tie_mode="exact"):
    """Bind a decoder name to a callable ``llr -> u_hat``."""
    if decoder == "sc":
        return lambda llr: sc_decode(code, llr, quant).u_hat
    if decoder == "fast_ssc":
        return lambda llr: fast_ssc_decode(code, llr, quant, tie_mode=tie_mode).u_hat
    if decoder == "hw":
        if quant is None:
            raise ValueError("the datapath decoder requires a quantization spec")
        tree = PuTree(code.N, quant)
        return lambda llr: hw_decode_frame(tree, code, llr).u_hat
    raise ValueError(f"unknown decoder {decoder!r}")


def resolve_workers(workers=None):
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("FASTSSC_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _run_chunk(code, decode, cfg, first_frame, count):
    msgs, noise = draw_messages_and_noise(cfg, code.K, code.N, first_frame, count)
    tx = encode(code, msgs)
    llr = awgn_llr(tx, cfg, noise=noise)
    u_hat = decode(llr)
    errs = (u_hat[:, code.info_indices] != msgs)
    return TrialStats(
        frames=count,
        bit_errors=int(errs.sum()),
        frame_errors=int(errs.any(axis=1).sum()),
        info_bits_per_frame=code.K,
    )


def run_point(code, cfg, decoder="fast_ssc", quant=None, tie_mode="exact",
              stop=StopRule(), batch=2048, workers=None):
    """Simulate one Eb/N0 point until the stop rule fires."""
    decode = make_decoder(code, decoder, quant, tie_mode)
    n_workers = resolve_workers(workers)
    stats = TrialStats(info_bits_per_frame=code.K)
    next_frame = 0
    pool = ThreadPoolExecutor(max_workers=n_workers) if n_workers > 1 else None
    try:
        while stats.frame_errors < stop.min_frame_errors and stats.frames < stop.max_frames:
            want = min(batch * n_workers, stop.max_frames - stats.frames)
            chunks = []
            lo = next_frame
            while want > 0:
                step = min(batch, want)
                chunks.append((lo, step))
                lo += step
                want -= step
            next_frame = lo
            if pool is None:
                results = [_run_chunk(code, decode, cfg, c0, c1) for c0, c1 in chunks]
            else:
                futures = [pool.submit(_run_chunk, code, decode, cfg, c0, c1) for c0, c1 in chunks]
                results = [f.result() for f in futures]
            for r in results:
                stats = stats.merge(r)
    finally:
        if pool is not None:
            pool.shutdown()
    return stats


def run_ber_sweep(code, ebn0_list, decoder="fast_ssc", quant=None, tie_mode="exact",
                  stop=StopRule(), seed=0, batch=2048, workers=None):
    """BER/FER at each Eb/N0 point.

    Parameters
    ----------
    code : PolarCode
    ebn0_list : sequence of float
        Eb/N0 points in dB.
    decoder : str
        ``"sc"``, ``"fast_ssc"``, or ``"hw"``.
    quant : QuantSpec, optional
        Run the decoder in fixed point (required for ``"hw"``).
    tie_mode : str
        Tie resolution for ``"fast_ssc"`` (see :mod:`fastssc.fast`).
    stop : StopRule
    seed : int
        Every frame's randomness derives from (seed, frame index), so results
        do not depend on batching or worker count.

    Returns
    -------
    list of (ebn0_db, TrialStats)
    """
    out = []
    for ebn0 in ebn0_list:
        cfg = ChannelConfig(ebn0, code.rate, seed)
        out.append((ebn0, run_point(code, cfg, decoder, quant, tie_mode, stop, batch, workers)))
    return out


def throughput_gbps(K, cycles, freq_ghz):
    """Information throughput in Gbps: K bits per decode of ``cycles`` clocks."""
    if cycles <= 0:
        raise ValueError("cycles must be positive")
    return K * freq_ghz / cycles


def stats_csv_text(rows):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_HEADER)
    for ebn0, st in rows:
        writer.writerow([ebn0, st.frames, st.bit_errors, st.frame_errors,
                         f"{st.ber:.6e}", f"{st.fer:.6e}"])
    return buf.getvalue()


def write_stats_csv(path, rows):
    """Write sweep results with the standard header."""
    with open(path, "w", newline="") as fh:
        fh.write(stats_csv_text(rows))
