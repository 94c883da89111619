"""Successive-cancellation reference decoder.

This is the deliberately plain tree-recursive decoder every other decoder in
the package is checked against.  Conventions, used consistently everywhere:

* min-sum check update with sign(0) = +1,
* hard decision maps LLR >= 0 to bit 0,
* frozen leaves decide 0 regardless of their LLR.

Decoders accept float LLRs or, when a :class:`~fastssc.quant.QuantSpec` is
given, raw quantized integers (floats are channel-quantized on entry); all
additions then saturate to the internal word width.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quant import QuantSpec, quantize_channel, sat_add, validate_quantized


@dataclass
class DecodeResult:
    """Decoder output: message-domain estimate and its re-encoding."""

    u_hat: np.ndarray
    x_hat: np.ndarray


def _sign_pm(a):
    # sign(0) = +1 keeps every zero-LLR decision consistent with the
    # "LLR >= 0 decides 0" convention.
    return np.where(np.asarray(a) < 0, -1, 1)


def f_min_sum(a, b):
    """Min-sum check-node update: sign(a)sign(b)min(|a|, |b|), sign(0) = +1."""
    a = np.asarray(a)
    b = np.asarray(b)
    return _sign_pm(a) * _sign_pm(b) * np.minimum(np.abs(a), np.abs(b))


def g_function(beta, a_near, a_far, spec=None):
    """Variable-node update: a_near + a_far when beta = 0, a_near - a_far when beta = 1.

    With a quantization spec the addition saturates to the internal width.
    """
    beta = np.asarray(beta)
    a_near = np.asarray(a_near)
    a_far = np.asarray(a_far)
    signed_far = np.where(beta.astype(bool), -a_far, a_far)
    if spec is None:
        return a_near + signed_far
    return sat_add(a_near, signed_far, spec)


def hard_decision(a):
    """Threshold detection: 0 for LLR >= 0, else 1."""
    return (np.asarray(a) < 0).astype(np.uint8)


def combine_beta(beta_left, beta_right):
    """Stitch child codeword estimates: [left XOR right, right]."""
    beta_left = np.asarray(beta_left, dtype=np.uint8)
    beta_right = np.asarray(beta_right, dtype=np.uint8)
    if beta_left.shape != beta_right.shape:
        raise ValueError("child estimates must have equal length")
    return np.concatenate([beta_left ^ beta_right, beta_right], axis=-1)


def prepare_llr(llr, N, spec=None):
    """Normalize decoder input to a 2-D (batch, N) array.

    Returns the array plus a flag telling whether the input was a single frame.
    Float input is channel-quantized when a spec is given; integer input is
    assumed to be raw quantized values already and is only range-checked.
    """
    arr = np.asarray(llr)
    if arr.ndim == 1:
        arr = arr[None, :]
        single = True
    elif arr.ndim == 2:
        single = False
    else:
        raise ValueError("LLR input must be 1-D or 2-D")
    if arr.shape[1] != N:
        raise ValueError(f"LLR frame length must be {N}, got {arr.shape[1]}")
    if spec is None:
        arr = arr.astype(np.float64)
    elif np.issubdtype(arr.dtype, np.integer):
        arr = validate_quantized(arr, spec)
    else:
        arr = quantize_channel(arr, spec)
    return arr, single


def sc_decode(code, llr, spec=None):
    """Decode by plain depth-first successive cancellation.

    Parameters
    ----------
    code : PolarCode
    llr : array_like
        Channel LLRs, one frame or a (batch, N) block.  Positive favors bit 0.
    spec : QuantSpec, optional
        Run the whole decode in saturating fixed point.

    Returns
    -------
    DecodeResult
        ``u_hat`` has zeros at frozen positions; ``x_hat`` is its re-encoding.
    """
    alpha, single = prepare_llr(llr, code.N, spec)
    batch = alpha.shape[0]
    u_hat = np.zeros((batch, code.N), dtype=np.uint8)
    frozen = code.frozen

    def recurse(a, lo, hi):
        if hi - lo == 1:
            if frozen[lo]:
                beta = np.zeros((batch, 1), dtype=np.uint8)
            else:
                beta = hard_decision(a)
            u_hat[:, lo] = beta[:, 0]
            return beta
        half = (hi - lo) // 2
        near, far = a[:, half:], a[:, :half]
        beta_l = recurse(f_min_sum(far, near), lo, lo + half)
        beta_r = recurse(g_function(beta_l, near, far, spec), lo + half, hi)
        return combine_beta(beta_l, beta_r)

    x_hat = recurse(alpha, 0, code.N)
    if single:
        return DecodeResult(u_hat[0], x_hat[0])
    return DecodeResult(u_hat, x_hat)


def sc_latency_cycles(code, variant="conventional"):
    """Cycle count of sequential SC schedules.

    ``"conventional"`` charges separate check and variable updates (2N - 2);
    ``"precomputed"`` computes both speculatively in one pass (N - 1).
    """
    if variant == "conventional":
        return 2 * code.N - 2
    if variant == "precomputed":
        return code.N - 1
    raise ValueError(f"unknown latency variant {variant!r}")


def two_bit_precomputed_cycles(N):
    """Latency of the stage-merged two-bit lookahead schedule: 0.75 N - 1.

    This is the baseline that pruned-tree latency reductions are quoted
    against.
    """
    return 0.75 * N - 1
