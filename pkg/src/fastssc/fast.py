"""Pruned-tree SC decoding over constituent-code shortcuts.

The decode tree is classified once per code.  Subtrees whose frozen pattern
matches a known constituent code are decoded in one shot instead of being
traversed:

* ``RATE0``: all positions frozen; the codeword estimate is all zeros.
* ``RATE1``: no position frozen; elementwise threshold detection.
* ``REP``: only the last position unfrozen; the sign of the LLR sum,
  replicated.
* ``SPC``: only the first position frozen; threshold detection, then flip the
  least reliable bit if the parity check fails.

Everything else stays a ``BRANCH`` and recurses with the min-sum updates from
:mod:`fastssc.reference`.

Tie resolution
--------------
The shortcut rules match plain SC decoding whenever a node's LLRs contain no
exact zeros and (for SPC) no repeated magnitudes.  On such tie events both
answers are equally likely codewords, but they can differ bit-for-bit.  The
composite decoder therefore supports two modes:

* ``tie_mode="exact"`` (default): tie-risk frames are re-decoded node-locally
  with plain SC, so the output always equals :func:`fastssc.reference.sc_decode`.
* ``tie_mode="hardware"``: pure shortcut rules with deterministic tie breaks
  (lowest index wins), matching the cycle-level datapath model bit for bit.

Float Monte-Carlo frames hit tie events with probability zero; quantized
frames hit them routinely, which is why the distinction exists at all.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from .core import PolarCode, construct_code, polar_transform
from .quant import sat_add
from .reference import (
    DecodeResult,
    combine_beta,
    f_min_sum,
    g_function,
    hard_decision,
    prepare_llr,
    sc_decode,
    two_bit_precomputed_cycles,
)


class NodeKind(enum.Enum):
    RATE0 = "rate0"
    RATE1 = "rate1"
    REP = "rep"
    SPC = "spc"
    BRANCH = "branch"


@dataclass
class DecodeNode:
    """One node of the classified decode tree."""

    node_id: int
    stage: int
    offset: int
    kind: NodeKind
    children: tuple = ()

    @property
    def size(self):
        return 1 << self.stage


def classify_tree(code):
    """Classify the decode tree of a code.

    Returns the root :class:`DecodeNode`.  Node ids are assigned in preorder,
    which is also the order nodes are visited during decoding.
    """
    frozen = code.frozen
    counter = [0]

    def build(stage, offset):
        node_id = counter[0]
        counter[0] += 1
        size = 1 << stage
        mask = frozen[offset : offset + size]
        kind = _classify_mask(mask)
        if kind is not NodeKind.BRANCH:
            return DecodeNode(node_id, stage, offset, kind)
        left = build(stage - 1, offset)
        right = build(stage - 1, offset + size // 2)
        return DecodeNode(node_id, stage, offset, NodeKind.BRANCH, (left, right))

    return build(code.n, 0)


def _classify_mask(mask):
    if mask.all():
        return NodeKind.RATE0
    if not mask.any():
        return NodeKind.RATE1
    # Reached only for size >= 2 with a mixed pattern.  REP is checked before
    # SPC so the size-2 pattern [frozen, info] decodes as a repetition node,
    # which is what plain SC computes for it.
    if mask[:-1].all() and not mask[-1]:
        return NodeKind.REP
    if mask[0] and not mask[1:].any():
        return NodeKind.SPC
    return NodeKind.BRANCH


def decode_rate0(size):
    """Codeword estimate of an all-frozen node: zeros."""
    return np.zeros(size, dtype=np.uint8)


def decode_rate1(alpha):
    """Codeword estimate of an all-information node: elementwise thresholds."""
    return hard_decision(alpha)


def fold_argmin(mags):
    """Index of the minimum as a strict-less comparator tree finds it.

    Each round compares the low half of the surviving lanes against the high
    half; the challenger wins only when strictly smaller.  With a unique
    minimum this is the plain argmin.  On repeated minima the survivor
    depends on fold order, matching the comparator tree in the datapath
    model rather than a lowest-index scan.
    """
    mags = np.asarray(mags)
    vals = mags if mags.ndim == 2 else mags[None, :]
    idx = np.broadcast_to(np.arange(vals.shape[1]), vals.shape).copy()
    while vals.shape[1] > 1:
        half = vals.shape[1] // 2
        wins = vals[:, half:] < vals[:, :half]
        vals = np.where(wins, vals[:, half:], vals[:, :half])
        idx = np.where(wins, idx[:, half:], idx[:, :half])
    return idx[0, 0] if mags.ndim == 1 else idx[:, 0]


def decode_spc(alpha):
    """Single-parity-check decode: thresholds plus a parity-repair flip.

    The flipped position is the minimum |LLR|, found by fold_argmin so ties
    land where the comparator tree lands them.
    """
    alpha = np.asarray(alpha)
    beta = hard_decision(alpha)
    parity = np.bitwise_xor.reduce(beta, axis=-1)
    weakest = fold_argmin(np.abs(alpha))
    if alpha.ndim == 1:
        beta[weakest] ^= parity
    else:
        rows = np.arange(alpha.shape[0])
        beta[rows, weakest] ^= parity
    return beta


def decode_rep(alpha, spec=None):
    """Repetition decode: the sign of the LLR sum, replicated.

    The sum is accumulated pairwise over strides of half the node length,
    saturating at each level when a quantization spec is given.  That is the
    exact order the plain SC recursion (and the adder tree in the datapath
    model) accumulates it in, which keeps all three bit-identical.
    """
    alpha = np.asarray(alpha)
    total = alpha if alpha.ndim == 2 else alpha[None, :]
    while total.shape[1] > 1:
        half = total.shape[1] // 2
        if spec is None:
            total = total[:, :half] + total[:, half:]
        else:
            total = sat_add(total[:, :half], total[:, half:], spec)
    bit = hard_decision(total[:, 0])
    beta = np.repeat(bit[:, None], alpha.shape[-1], axis=1).astype(np.uint8)
    return beta[0] if alpha.ndim == 1 else beta


def _rate1_tie_risk(alpha):
    # Plain SC resolves a zero LLR using neighbouring positions; elementwise
    # thresholds resolve it locally.  Nonzero inputs provably agree.
    return (alpha == 0).any(axis=-1)


def _spc_tie_risk(alpha):
    # Beyond zeros, any repeated magnitude can steer the implicit min search
    # in plain SC away from the lowest-index argmin.  Conservative by design.
    mags = np.sort(np.abs(alpha), axis=-1)
    dup = (np.diff(mags, axis=-1) == 0).any(axis=-1)
    return dup | (mags[..., 0] == 0)


def _subcode(code, node):
    cache = getattr(code, "_subcode_cache", None)
    if cache is None:
        cache = {}
        code._subcode_cache = cache
    sub = cache.get(node.node_id)
    if sub is None:
        mask = code.frozen[node.offset : node.offset + node.size]
        sub = PolarCode.from_frozen_mask(mask)
        cache[node.node_id] = sub
    return sub


def classified(code):
    """Classified tree for a code, cached on the code object."""
    tree = getattr(code, "_decode_tree", None)
    if tree is None:
        tree = classify_tree(code)
        code._decode_tree = tree
    return tree


def fast_ssc_decode(code, llr, spec=None, tie_mode="exact"):
    """Decode with the pruned tree.

    Parameters
    ----------
    code : PolarCode
    llr : array_like
        One frame or a (batch, N) block; floats, or raw integers when a
        quantization spec is given.
    spec : QuantSpec, optional
        Saturating fixed-point arithmetic throughout.
    tie_mode : str
        ``"exact"`` reproduces plain SC bit-for-bit on every input;
        ``"hardware"`` applies the pure shortcut rules (see module docstring).

    Returns
    -------
    DecodeResult
    """
    if tie_mode not in ("exact", "hardware"):
        raise ValueError(f"unknown tie_mode {tie_mode!r}")
    tree = classified(code)
    alpha, single = prepare_llr(llr, code.N, spec)
    batch = alpha.shape[0]
    u_hat = np.zeros((batch, code.N), dtype=np.uint8)

    def emit(node, beta):
        u_hat[:, node.offset : node.offset + node.size] = polar_transform(beta)
        return beta

    def visit(node, a):
        if node.kind is NodeKind.BRANCH:
            half = node.size // 2
            near, far = a[:, half:], a[:, :half]
            beta_l = visit(node.children[0], f_min_sum(far, near))
            beta_r = visit(node.children[1], g_function(beta_l, near, far, spec))
            return combine_beta(beta_l, beta_r)
        if node.kind is NodeKind.RATE0:
            beta = np.zeros((batch, node.size), dtype=np.uint8)
        elif node.kind is NodeKind.RATE1:
            beta = decode_rate1(a)
        elif node.kind is NodeKind.REP:
            beta = decode_rep(a, spec)
        else:
            beta = decode_spc(a)
        if tie_mode == "exact" and node.kind in (NodeKind.RATE1, NodeKind.SPC):
            risk = _rate1_tie_risk(a) if node.kind is NodeKind.RATE1 else _spc_tie_risk(a)
            if risk.any():
                sub = sc_decode(_subcode(code, node), a[risk], spec)
                beta[risk] = sub.x_hat
        return emit(node, beta)

    x_hat = visit(tree, alpha)
    if single:
        return DecodeResult(u_hat[0], x_hat[0])
    return DecodeResult(u_hat, x_hat)


@dataclass
class ScheduleEntry:
    """One visited node of the decode schedule and its cycle cost."""

    node: int
    kind: str
    stage: int
    offset: int
    cycles: int


@dataclass
class ScheduleReport:
    """Cycle accounting for one decode of one code."""

    N: int
    entries: list = field(default_factory=list)

    @property
    def total_cycles(self):
        return sum(e.cycles for e in self.entries)

    def to_json(self):
        return json.dumps([e.__dict__ for e in self.entries], indent=2)


def node_cycles(node, precompute=True):
    """Cycle cost of one node visit.

    Single-bit leaves cost nothing: their decisions fall out of the parent's
    update combinationally.  That keeps an unprunable tree at exactly the
    N - 1 cycles of the precomputed schedule.
    """
    if node.stage == 0:
        return 0
    if node.kind is NodeKind.BRANCH:
        return 1 if precompute else 2
    if node.kind in (NodeKind.RATE0, NodeKind.RATE1):
        return 1
    if node.kind is NodeKind.SPC:
        return node.stage + 1
    return node.stage  # REP


def latency_model(tree, precompute=True):
    """Static cycle count of the pruned schedule.

    Walks the classified tree in decode order and sums per-node costs; the
    cycle-level datapath model reproduces the same totals by construction.
    """
    report = ScheduleReport(N=1 << tree.stage)
    def walk(node):
        report.entries.append(
            ScheduleEntry(node.node_id, node.kind.value, node.stage, node.offset,
                          node_cycles(node, precompute))
        )
        for child in node.children:
            walk(child)
    walk(tree)
    return report


def latency_reduction_sweep(N, rates, design_snr_db, method="ga", precompute=True):
    """Pruned-schedule latency across code rates.

    For each rate, constructs an (N, round(rate * N)) code and reports the
    schedule total plus its reduction relative to the 0.75 N - 1 baseline.

    Returns a list of dicts with keys rate, K, cycles, reduction.
    """
    baseline = two_bit_precomputed_cycles(N)
    rows = []
    for rate in rates:
        K = int(np.floor(rate * N + 0.5))
        code = construct_code(N, K, design_snr_db, method=method)
        total = latency_model(classified(code), precompute).total_cycles
        rows.append({
            "rate": rate,
            "K": K,
            "cycles": total,
            "reduction": 1.0 - total / baseline,
        })
    return rows
