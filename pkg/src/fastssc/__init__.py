"""Polar encode/decode with pruned-tree shortcuts and a cycle-level datapath model."""

from .core import (
    CodeConstruction,
    PolarCode,
    construct_code,
    encode,
    frozen_file_text,
    polar_transform,
    read_frozen_file,
    write_frozen_file,
)
from .fast import (
    DecodeNode,
    NodeKind,
    ScheduleEntry,
    ScheduleReport,
    classify_tree,
    classified,
    fast_ssc_decode,
    latency_model,
    latency_reduction_sweep,
    node_cycles,
)
from .hw import (
    HwDecodeResult,
    PtuIo,
    PuState,
    PuTree,
    hw_decode_frame,
    ptu_route,
    pu_cycle,
    rep_hw_decode,
    spc_hw_decode,
    write_trace_jsonl,
)
from .quant import (
    QuantSpec,
    dequantize,
    quantize_channel,
    sat_add,
    saturate,
    validate_quantized,
)
from .reference import (
    DecodeResult,
    combine_beta,
    f_min_sum,
    g_function,
    hard_decision,
    sc_decode,
    sc_latency_cycles,
    two_bit_precomputed_cycles,
)
from .sim import (
    ChannelConfig,
    StopRule,
    TrialStats,
    awgn_llr,
    run_ber_sweep,
    run_point,
    stats_csv_text,
    throughput_gbps,
    write_stats_csv,
)

__version__ = "0.1.0"

__all__ = [
    "CodeConstruction",
    "PolarCode",
    "construct_code",
    "encode",
    "polar_transform",
    "frozen_file_text",
    "read_frozen_file",
    "write_frozen_file",
    "QuantSpec",
    "quantize_channel",
    "dequantize",
    "sat_add",
    "saturate",
    "validate_quantized",
    "DecodeResult",
    "f_min_sum",
    "g_function",
    "hard_decision",
    "combine_beta",
    "sc_decode",
    "sc_latency_cycles",
    "two_bit_precomputed_cycles",
    "NodeKind",
    "DecodeNode",
    "classify_tree",
    "classified",
    "fast_ssc_decode",
    "ScheduleEntry",
    "ScheduleReport",
    "node_cycles",
    "latency_model",
    "latency_reduction_sweep",
    "PuState",
    "PtuIo",
    "PuTree",
    "ptu_route",
    "pu_cycle",
    "spc_hw_decode",
    "rep_hw_decode",
    "HwDecodeResult",
    "hw_decode_frame",
    "write_trace_jsonl",
    "ChannelConfig",
    "StopRule",
    "TrialStats",
    "awgn_llr",
    "run_point",
    "run_ber_sweep",
    "throughput_gbps",
    "stats_csv_text",
    "write_stats_csv",
]
