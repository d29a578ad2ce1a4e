"""Brute-force reference implementations, straight from the formulas.

Everything here is deliberately naive: plain Python loops, dict counting,
BFS flood fill, exact rational arithmetic where the formulas are rational.
Nothing imports the engine's computation paths, so agreement between the two
is a real check (``float`` conversions of the same exact rationals, fsum
versus pairwise summation, and an independent cube root are the only places
the two sides can differ, all bounded well below 1e-12).
"""

from __future__ import annotations

import math
from fractions import Fraction


def pixels_of(frame) -> list[list[tuple[int, int, int]]]:
    """Frame as nested Python lists of (r, g, b) int tuples."""
    return [
        [tuple(int(c) for c in px) for px in row]
        for row in frame.pixels.tolist()
    ]


def oracle_quantize(pixel, bits: int) -> int:
    levels = 2**bits
    r, g, b = pixel
    rq = (r * levels) // 256
    gq = (g * levels) // 256
    bq = (b * levels) // 256
    return rq * levels * levels + gq * levels + bq


def oracle_histogram(frame, bits: int) -> list[float]:
    rows = pixels_of(frame)
    counts: dict[int, int] = {}
    n = 0
    for row in rows:
        for px in row:
            counts[oracle_quantize(px, bits)] = counts.get(oracle_quantize(px, bits), 0) + 1
            n += 1
    return [counts.get(i, 0) / n for i in range((2**bits) ** 3)]


def oracle_l2(a: list[float], b: list[float]) -> float:
    return math.sqrt(math.fsum((x - y) ** 2 for x, y in zip(a, b)))


def oracle_gch_dist(frame_a, frame_b, bits: int) -> float:
    return oracle_l2(oracle_histogram(frame_a, bits), oracle_histogram(frame_b, bits))


def oracle_avg_rgb(frame) -> tuple[float, float, float]:
    rows = pixels_of(frame)
    n = len(rows) * len(rows[0])
    sums = [0, 0, 0]
    for row in rows:
        for px in row:
            for c in range(3):
                sums[c] += px[c]
    return tuple(float(Fraction(s, n)) for s in sums)


def oracle_block_edges(extent: int, parts: int) -> list[tuple[int, int]]:
    """Even split with remainder pixels in the last block."""
    base = extent // parts
    spans = []
    for i in range(parts):
        lo = i * base
        hi = (i + 1) * base if i < parts - 1 else extent
        spans.append((lo, hi))
    return spans


def oracle_lch(frame, bits: int, grid_rows: int, grid_cols: int) -> list[list[float]]:
    rows = pixels_of(frame)
    height, width = len(rows), len(rows[0])
    nbins = (2**bits) ** 3
    blocks = []
    for r_lo, r_hi in oracle_block_edges(height, grid_rows):
        for c_lo, c_hi in oracle_block_edges(width, grid_cols):
            counts: dict[int, int] = {}
            n = 0
            for r in range(r_lo, r_hi):
                for c in range(c_lo, c_hi):
                    i = oracle_quantize(rows[r][c], bits)
                    counts[i] = counts.get(i, 0) + 1
                    n += 1
            blocks.append([counts.get(i, 0) / n for i in range(nbins)])
    return blocks


def oracle_lch_dist(frame_a, frame_b, bits: int, grid_rows: int, grid_cols: int) -> float:
    blocks_a = oracle_lch(frame_a, bits, grid_rows, grid_cols)
    blocks_b = oracle_lch(frame_b, bits, grid_rows, grid_cols)
    return math.fsum(oracle_l2(a, b) for a, b in zip(blocks_a, blocks_b))


def oracle_moments(frame) -> list[tuple[float, float, float]]:
    """(mean, stddev, skewness) per channel via exact rationals."""
    rows = pixels_of(frame)
    out = []
    for ch in range(3):
        values = [px[ch] for row in rows for px in row]
        n = len(values)
        mean = Fraction(sum(values), n)
        m2 = Fraction(sum((Fraction(v) - mean) ** 2 for v in values), n)
        m3 = Fraction(sum((Fraction(v) - mean) ** 3 for v in values), n)
        m3f = float(m3)
        skew = math.copysign(abs(m3f) ** (1.0 / 3.0), m3f) if m3f != 0.0 else 0.0
        out.append((float(mean), math.sqrt(float(m2)), skew))
    return out


def oracle_moments_dist(moments_a, moments_b, weights) -> float:
    total = 0.0
    for i in range(3):
        for j in range(3):
            total += weights[i][j] * abs(moments_a[i][j] - moments_b[i][j])
    return total


def oracle_ccv(frame, bits: int, tau: float) -> tuple[list[float], list[float]]:
    """Coherent/incoherent fractions per bin via BFS flood fill."""
    rows = pixels_of(frame)
    height, width = len(rows), len(rows[0])
    n = height * width
    bins = [[oracle_quantize(rows[r][c], bits) for c in range(width)] for r in range(height)]
    # Exact decimal reading of the threshold: ceil(tau * n) in real arithmetic.
    threshold = math.ceil(Fraction(str(tau)) * n)
    nbins = (2**bits) ** 3
    coherent = [0] * nbins
    incoherent = [0] * nbins
    seen = [[False] * width for _ in range(height)]
    for r0 in range(height):
        for c0 in range(width):
            if seen[r0][c0]:
                continue
            bin_index = bins[r0][c0]
            stack = [(r0, c0)]
            seen[r0][c0] = True
            component = []
            while stack:
                r, c = stack.pop()
                component.append((r, c))
                for dr in (-1, 0, 1):
                    for dc in (-1, 0, 1):
                        if dr == 0 and dc == 0:
                            continue
                        rr, cc = r + dr, c + dc
                        if 0 <= rr < height and 0 <= cc < width:
                            if not seen[rr][cc] and bins[rr][cc] == bin_index:
                                seen[rr][cc] = True
                                stack.append((rr, cc))
            if len(component) >= threshold:
                coherent[bin_index] += len(component)
            else:
                incoherent[bin_index] += len(component)
    return [c / n for c in coherent], [c / n for c in incoherent]


def oracle_ccv_dist(a: tuple[list[float], list[float]], b) -> float:
    coh_a, inc_a = a
    coh_b, inc_b = b
    return math.fsum(abs(x - y) for x, y in zip(coh_a, coh_b)) + math.fsum(
        abs(x - y) for x, y in zip(inc_a, inc_b)
    )


def random_frame(rng, max_side: int = 8, palette=None):
    """Small random frame; palette limits colors so bins collide often."""
    import numpy as np

    from ivss.frame_io import FrameRGB

    h = int(rng.integers(1, max_side + 1))
    w = int(rng.integers(1, max_side + 1))
    if palette is not None:
        idx = rng.integers(0, len(palette), size=(h, w))
        arr = np.array(palette, dtype=np.uint8)[idx]
    else:
        arr = rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8)
    return FrameRGB(arr)
