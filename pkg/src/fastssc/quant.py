"""Fixed-point LLR quantization with symmetric saturation.

A quantization scheme is written ``C,L,F``: channel LLRs are quantized to
``C`` bits, internal datapath values are held in ``L`` bits, and both share
``F`` fraction bits.  Quantized LLRs are stored as plain integers scaled by
``2**F``; all saturation limits below apply to those raw integers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class QuantSpec:
    """Fixed-point layout: channel bits, internal bits, shared fraction bits."""

    channel_bits: int
    internal_bits: int
    fraction_bits: int

    def __post_init__(self):
        c, l, f = self.channel_bits, self.internal_bits, self.fraction_bits
        # L is allowed up to 64 so that a wide spec can emulate unquantized
        # arithmetic; practical datapath layouts use L <= 16.
        if not (1 <= c <= l <= 64):
            raise ValueError(f"need 1 <= C <= L <= 64, got C={c}, L={l}")
        if not (0 <= f < c):
            raise ValueError(f"need 0 <= F < C, got F={f}, C={c}")

    @classmethod
    def from_string(cls, text):
        """Parse a ``"C,L,F"`` string such as ``"4,5,0"``."""
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError(f"quantization spec must be 'C,L,F', got {text!r}")
        try:
            c, l, f = (int(p.strip()) for p in parts)
        except ValueError:
            raise ValueError(f"quantization spec must be 'C,L,F' integers, got {text!r}") from None
        return cls(c, l, f)

    def __str__(self):
        return f"{self.channel_bits},{self.internal_bits},{self.fraction_bits}"

    @property
    def channel_limit(self):
        """Largest raw integer representable on the channel side."""
        return (1 << (self.channel_bits - 1)) - 1

    @property
    def internal_limit(self):
        """Largest raw integer representable in the internal datapath."""
        return (1 << (self.internal_bits - 1)) - 1

    @property
    def scale(self):
        """Raw integers encode value * 2**fraction_bits."""
        return 1 << self.fraction_bits


def saturate(values, bits):
    """Clamp integer values to the symmetric range of a ``bits``-bit word."""
    lim = (1 << (bits - 1)) - 1
    return np.clip(values, -lim, lim)


def quantize_channel(llr, spec):
    """Quantize float channel LLRs to raw integers.

    Rounds half away from zero to ``F`` fraction bits, then saturates to the
    symmetric ``C``-bit range.

    Parameters
    ----------
    llr : array_like of float
        Channel LLRs in natural units.
    spec : QuantSpec

    Returns
    -------
    ndarray of int64
        Raw integers encoding value * 2**F.
    """
    x = np.asarray(llr, dtype=np.float64)
    mag = np.floor(np.abs(x) * spec.scale + 0.5)
    raw = np.where(x < 0, -mag, mag)
    return saturate(raw.astype(np.int64), spec.channel_bits)


def dequantize(raw, spec):
    """Map raw quantized integers back to natural LLR units."""
    return np.asarray(raw, dtype=np.float64) / spec.scale


def sat_add(a, b, spec):
    """Add raw integers and saturate to the internal ``L``-bit range."""
    total = np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)
    return saturate(total, spec.internal_bits)


def validate_quantized(llr, spec):
    """Check that raw values already lie in the internal range."""
    arr = np.asarray(llr)
    lim = spec.internal_limit
    if arr.size and (np.abs(arr) > lim).any():
        raise ValueError(f"quantized LLR outside +/-{lim} for spec {spec}")
    return arr.astype(np.int64)
