"""Uniform RGB quantization and normalized color histograms.

The RGB cube is cut into ``2^bits`` levels per channel, so a quantizer with
``bits`` bits per channel has ``(2^bits)^3`` bins.  Bin indices are R-major:
``index = r_q * L^2 + g_q * L + b_q`` with ``c_q = c * L // 256``.  The
layout is fixed because bin order is part of the persisted index format.

Histograms are stored normalized (each bin is the fraction of pixels falling
in it), which is the form every descriptor distance operates on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, EmptyFrameError


@dataclass(frozen=True)
class ColorQuantizer:
    """Uniform cubic quantizer, 1 to 8 bits per channel."""

    bits: int = 2

    def __post_init__(self) -> None:
        if not 1 <= self.bits <= 8:
            raise ConfigError(f"bits per channel must be in [1, 8], got {self.bits}")

    @property
    def levels(self) -> int:
        return 1 << self.bits

    @property
    def bin_count(self) -> int:
        return self.levels**3

    def quantize(self, pixel) -> int:
        """Bin index of one (r, g, b) pixel."""
        r, g, b = (int(c) for c in pixel)
        lv = self.levels
        return (r * lv >> 8) * lv * lv + (g * lv >> 8) * lv + (b * lv >> 8)

    def quantize_frame(self, frame) -> np.ndarray:
        """Bin index of every pixel, as an (height, width) int32 array."""
        lv = self.levels
        q = (frame.pixels.astype(np.int32) * lv) >> 8
        return q[..., 0] * (lv * lv) + q[..., 1] * lv + q[..., 2]


@dataclass(frozen=True)
class Histogram:
    """Normalized bin-probability vector plus the population it came from."""

    bins: np.ndarray
    pixel_count: int

    def __post_init__(self) -> None:
        b = np.asarray(self.bins, dtype=np.float64)
        b.flags.writeable = False
        object.__setattr__(self, "bins", b)

    @property
    def bin_count(self) -> int:
        return len(self.bins)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Histogram):
            return NotImplemented
        return self.pixel_count == other.pixel_count and bool(
            np.array_equal(self.bins, other.bins)
        )

    def __hash__(self):
        return hash((self.pixel_count, self.bins.tobytes()))


def build_histogram(frame, quantizer: ColorQuantizer) -> Histogram:
    """Normalized color histogram of a frame under the given quantizer."""
    indices = quantizer.quantize_frame(frame)
    n = indices.size
    if n == 0:
        raise EmptyFrameError("cannot build a histogram of a zero-pixel frame")
    counts = np.bincount(indices.ravel(), minlength=quantizer.bin_count)
    return Histogram(bins=counts / n, pixel_count=n)


def histogram_from_region(indices: np.ndarray, bin_count: int) -> Histogram:
    """Histogram of a pre-quantized index block (LCH building block)."""
    n = indices.size
    if n == 0:
        raise EmptyFrameError("cannot build a histogram of an empty region")
    counts = np.bincount(indices.ravel(), minlength=bin_count)
    return Histogram(bins=counts / n, pixel_count=n)
