"""The five per-frame color descriptors and their distances.

Average RGB, global color histogram (GCH), local color histogram (LCH),
color moments, and the color coherence vector (CCV).  Each descriptor has a
``compute_*`` constructor and a ``dist_*`` comparison; ``extract_all`` bundles
the five into a :class:`DescriptorSet` under one shared configuration.

Numeric determinism matters here: descriptor values are persisted, hashed
into video ids, and checked against independent reference implementations in
the test suite.  Mean, variance, and the third central moment are therefore
computed from exact integer power sums and rounded exactly once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import ndimage

from .color_core import ColorQuantizer, Histogram, build_histogram, histogram_from_region
from .config import ExtractionConfig
from .errors import ConfigError, ConfigMismatchError
from .frame_io import FrameRGB

DESCRIPTOR_NAMES = ("avg_rgb", "gch", "lch", "moments", "ccv")

# 8-connectivity structuring element for coherence regions.
_EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


# --- Descriptor types ---


@dataclass(frozen=True)
class AvgRGB:
    mean_r: float
    mean_g: float
    mean_b: float

    def as_vector(self) -> np.ndarray:
        return np.array([self.mean_r, self.mean_g, self.mean_b])


@dataclass(frozen=True)
class GCH:
    histogram: Histogram


@dataclass(frozen=True)
class LCH:
    grid_rows: int
    grid_cols: int
    blocks: tuple[Histogram, ...]

    @property
    def block_count(self) -> int:
        return self.grid_rows * self.grid_cols


@dataclass(frozen=True)
class Moments:
    """Per-channel mean, standard deviation, and skewness (9 numbers).

    Skewness is the signed cube root of the third central moment, so a
    perfectly symmetric channel has skewness exactly 0 and darker-heavy
    distributions come out negative.
    """

    mean: tuple[float, float, float]
    stddev: tuple[float, float, float]
    skewness: tuple[float, float, float]


@dataclass(frozen=True)
class CCV:
    """Per-bin split of pixel mass into coherent and incoherent fractions.

    A pixel is coherent when its same-bin 8-connected region covers at least
    ``ceil(tau * pixel_count)`` pixels.  coherent + incoherent recovers the
    plain histogram bin for every bin.
    """

    coherent: np.ndarray
    incoherent: np.ndarray
    tau: float

    def __post_init__(self) -> None:
        for name in ("coherent", "incoherent"):
            a = np.asarray(getattr(self, name), dtype=np.float64)
            a.flags.writeable = False
            object.__setattr__(self, name, a)

    @property
    def bin_count(self) -> int:
        return len(self.coherent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CCV):
            return NotImplemented
        return (
            self.tau == other.tau
            and bool(np.array_equal(self.coherent, other.coherent))
            and bool(np.array_equal(self.incoherent, other.incoherent))
        )

    def __hash__(self):
        return hash((self.tau, self.coherent.tobytes(), self.incoherent.tobytes()))


@dataclass(frozen=True)
class DescriptorSet:
    """All five descriptors of one key frame plus the config they share."""

    avg_rgb: AvgRGB
    gch: GCH
    lch: LCH
    moments: Moments
    ccv: CCV
    config: ExtractionConfig


# --- Average RGB ---


def compute_avg_rgb(frame: FrameRGB) -> AvgRGB:
    """Arithmetic mean of each channel over all pixels."""
    n = frame.pixel_count
    sums = frame.pixels.reshape(-1, 3).sum(axis=0, dtype=np.int64)
    return AvgRGB(
        mean_r=float(int(sums[0]) / n),
        mean_g=float(int(sums[1]) / n),
        mean_b=float(int(sums[2]) / n),
    )


def dist_avg_rgb(a: AvgRGB, b: AvgRGB) -> float:
    return float(
        math.sqrt(
            (a.mean_r - b.mean_r) ** 2
            + (a.mean_g - b.mean_g) ** 2
            + (a.mean_b - b.mean_b) ** 2
        )
    )


# --- Global color histogram ---


def compute_gch(frame: FrameRGB, quantizer: ColorQuantizer) -> GCH:
    return GCH(histogram=build_histogram(frame, quantizer))


def dist_gch(a: GCH, b: GCH) -> float:
    """Euclidean distance between the two bin vectors."""
    ha, hb = a.histogram, b.histogram
    if ha.bin_count != hb.bin_count:
        raise ConfigMismatchError(
            f"histogram sizes differ: {ha.bin_count} vs {hb.bin_count}"
        )
    d = ha.bins - hb.bins
    return float(np.sqrt(np.dot(d, d)))


# --- Local color histogram ---


def _split_edges(extent: int, parts: int) -> list[int]:
    # Even split; remainder pixels land in the last block.
    base = extent // parts
    edges = [i * base for i in range(parts)]
    edges.append(extent)
    return edges


def compute_lch(
    frame: FrameRGB,
    quantizer: ColorQuantizer,
    grid_rows: int,
    grid_cols: int,
) -> LCH:
    """Per-block histograms over a fixed grid_rows x grid_cols grid.

    Blocks partition the frame; each block is normalized by its own pixel
    count, so unequal block sizes still yield comparable histograms.
    """
    if grid_rows < 1 or grid_cols < 1:
        raise ConfigError("grid dimensions must be >= 1")
    if frame.height < grid_rows or frame.width < grid_cols:
        raise ConfigMismatchError(
            f"grid {grid_rows}x{grid_cols} larger than frame "
            f"{frame.height}x{frame.width}"
        )
    indices = quantizer.quantize_frame(frame)
    row_edges = _split_edges(frame.height, grid_rows)
    col_edges = _split_edges(frame.width, grid_cols)
    blocks = []
    for r in range(grid_rows):
        for c in range(grid_cols):
            region = indices[row_edges[r] : row_edges[r + 1], col_edges[c] : col_edges[c + 1]]
            blocks.append(histogram_from_region(region, quantizer.bin_count))
    return LCH(grid_rows=grid_rows, grid_cols=grid_cols, blocks=tuple(blocks))


def dist_lch(a: LCH, b: LCH) -> float:
    """Sum over blocks of the Euclidean distance between block histograms."""
    if (a.grid_rows, a.grid_cols) != (b.grid_rows, b.grid_cols):
        raise ConfigMismatchError(
            f"grids differ: {a.grid_rows}x{a.grid_cols} vs {b.grid_rows}x{b.grid_cols}"
        )
    total = 0.0
    for ha, hb in zip(a.blocks, b.blocks):
        if ha.bin_count != hb.bin_count:
            raise ConfigMismatchError("block histogram sizes differ")
        d = ha.bins - hb.bins
        total += float(np.sqrt(np.dot(d, d)))
    return total


# --- Color moments ---


def _exact_channel_moments(values: np.ndarray) -> tuple[float, float, float]:
    # Power sums are exact in int64 for any realistic frame; the central
    # moments are then exact rationals, rounded to float64 exactly once.
    n = int(values.size)
    v = values.astype(np.int64)
    s1 = int(v.sum())
    s2 = int((v * v).sum())
    s3 = int((v * v * v).sum())
    mean = float(Fraction(s1, n))
    m2 = float(Fraction(n * s2 - s1 * s1, n * n))
    m3 = float(Fraction(n * n * s3 - 3 * n * s1 * s2 + 2 * s1**3, n**3))
    sigma = math.sqrt(m2) if m2 > 0 else 0.0
    return mean, sigma, float(np.cbrt(m3))


def compute_moments(frame: FrameRGB) -> Moments:
    """Mean, population standard deviation, and skewness per channel."""
    flat = frame.pixels.reshape(-1, 3)
    per_channel = [_exact_channel_moments(flat[:, c]) for c in range(3)]
    return Moments(
        mean=tuple(m[0] for m in per_channel),
        stddev=tuple(m[1] for m in per_channel),
        skewness=tuple(m[2] for m in per_channel),
    )


DEFAULT_MOMENT_WEIGHTS = ((1.0, 1.0, 1.0), (1.0, 1.0, 1.0), (1.0, 1.0, 1.0))


def dist_moments(a: Moments, b: Moments, weights=DEFAULT_MOMENT_WEIGHTS) -> float:
    """Weighted sum of absolute differences of the 9 moments.

    ``weights[i]`` holds the (mean, stddev, skewness) weights for channel i.
    """
    total = 0.0
    for i in range(3):
        w_mean, w_std, w_skew = weights[i]
        if w_mean < 0 or w_std < 0 or w_skew < 0:
            raise ConfigError("moment weights must be non-negative")
        total += w_mean * abs(a.mean[i] - b.mean[i])
        total += w_std * abs(a.stddev[i] - b.stddev[i])
        total += w_skew * abs(a.skewness[i] - b.skewness[i])
    return float(total)


# --- Color coherence vector ---


def coherence_threshold(tau: float, pixel_count: int) -> int:
    """ceil(tau * pixel_count) in real arithmetic.

    The small slack undoes binary representation error in decimal taus:
    0.05 * 100 evaluates to 5.000000000000001, whose plain ceil would be 6.
    """
    return math.ceil(tau * pixel_count - 1e-9)


def compute_ccv(frame: FrameRGB, quantizer: ColorQuantizer, tau: float) -> CCV:
    """Split every histogram bin into coherent and incoherent pixel mass.

    Regions are 8-connected runs of pixels sharing a quantized bin; a region
    of at least ``ceil(tau * pixel_count)`` pixels makes its pixels coherent.
    """
    if not 0.0 < tau <= 1.0:
        raise ConfigError(f"tau must lie in (0, 1], got {tau}")
    indices = quantizer.quantize_frame(frame)
    n = indices.size
    min_size = coherence_threshold(tau, n)
    coherent = np.zeros(quantizer.bin_count, dtype=np.int64)
    incoherent = np.zeros(quantizer.bin_count, dtype=np.int64)
    for bin_index in np.unique(indices):
        mask = indices == bin_index
        labels, n_regions = ndimage.label(mask, structure=_EIGHT_CONNECTED)
        if n_regions == 0:
            continue
        sizes = np.bincount(labels.ravel())[1:]  # label 0 is background
        coh = int(sizes[sizes >= min_size].sum())
        coherent[bin_index] = coh
        incoherent[bin_index] = int(sizes.sum()) - coh
    return CCV(coherent=coherent / n, incoherent=incoherent / n, tau=tau)


def dist_ccv(a: CCV, b: CCV) -> float:
    """L1 distance over the paired (coherent, incoherent) vectors.

    Keeping the two halves separate is the point of the descriptor: coherent
    mass in one image never cancels against incoherent mass in the other, so
    dist_ccv(a, b) >= the L1 distance of the corresponding plain histograms.
    """
    if a.bin_count != b.bin_count:
        raise ConfigMismatchError(f"bin counts differ: {a.bin_count} vs {b.bin_count}")
    if a.tau != b.tau:
        raise ConfigMismatchError(f"coherence thresholds differ: {a.tau} vs {b.tau}")
    return float(
        np.abs(a.coherent - b.coherent).sum() + np.abs(a.incoherent - b.incoherent).sum()
    )


# --- Bundles ---


def extract_all(frame: FrameRGB, config: ExtractionConfig) -> DescriptorSet:
    """Compute all five descriptors of a frame under one configuration."""
    q = config.quantizer
    return DescriptorSet(
        avg_rgb=compute_avg_rgb(frame),
        gch=compute_gch(frame, q),
        lch=compute_lch(frame, q, config.grid_rows, config.grid_cols),
        moments=compute_moments(frame),
        ccv=compute_ccv(frame, q, config.tau),
        config=config,
    )


def descriptor_distance(name: str, a: DescriptorSet, b: DescriptorSet) -> float:
    """Distance between two DescriptorSets along one named descriptor."""
    if name == "avg_rgb":
        return dist_avg_rgb(a.avg_rgb, b.avg_rgb)
    if name == "gch":
        return dist_gch(a.gch, b.gch)
    if name == "lch":
        return dist_lch(a.lch, b.lch)
    if name == "moments":
        return dist_moments(a.moments, b.moments)
    if name == "ccv":
        return dist_ccv(a.ccv, b.ccv)
    raise ConfigError(f"unknown descriptor {name!r}")
