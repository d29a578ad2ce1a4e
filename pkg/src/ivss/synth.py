"""Seeded synthetic videos: test corpora and benchmark data.

Everything here is deterministic given a seed, so benchmark tables and
pipeline tests reproduce exactly.  Colors sit at the centers of the default
2-bit quantization bins (32, 96, 160, 224 per channel) and jitter stays well
inside a bin, so a video's quantized content is stable under jitter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frame_io import FrameRGB

# Bin-center palette for the default 2-bit quantizer.
RED = (224, 32, 32)
GREEN = (32, 224, 32)
BLUE = (32, 32, 224)
YELLOW = (224, 224, 32)
MAGENTA = (224, 32, 224)
CYAN = (32, 224, 224)
GRAY = (160, 160, 160)
DARK = (32, 32, 32)

JITTER = 8  # max per-channel shift; keeps colors inside their bins


@dataclass(frozen=True)
class SynthVideo:
    name: str
    label: str
    frames: tuple[FrameRGB, ...]
    expected_shots: int


def solid_frame(color, width: int = 16, height: int = 16) -> FrameRGB:
    arr = np.empty((height, width, 3), dtype=np.uint8)
    arr[:] = color
    return FrameRGB(arr)


def solid_video(color, n_frames: int, width: int = 16, height: int = 16) -> list[FrameRGB]:
    frame = solid_frame(color, width, height)
    return [frame] * n_frames


def cut_video(c1, c2, n1: int, n2: int, width: int = 16, height: int = 16) -> list[FrameRGB]:
    """Two static shots separated by a hard cut."""
    return solid_video(c1, n1, width, height) + solid_video(c2, n2, width, height)


def dithered_fade(
    c1,
    c2,
    n_frames: int,
    width: int = 16,
    height: int = 16,
    seed: int = 0,
) -> list[FrameRGB]:
    """Gradual transition that never trips the shot detector.

    Instead of blending channel values (which would hop quantization bins
    all at once), pixels flip from c1 to c2 a few at a time in a fixed
    shuffled order, so consecutive frames differ by a small histogram mass.
    """
    rng = np.random.default_rng(seed)
    npix = width * height
    order = rng.permutation(npix)
    frames = []
    for t in range(n_frames):
        k = round(t * npix / (n_frames - 1)) if n_frames > 1 else 0
        flat = np.empty((npix, 3), dtype=np.uint8)
        flat[:] = c1
        flat[order[:k]] = c2
        frames.append(FrameRGB(flat.reshape(height, width, 3)))
    return frames


def quadrant_frame(colors, width: int = 16, height: int = 16) -> FrameRGB:
    """Four solid quadrant blocks: colors = (tl, tr, bl, br)."""
    tl, tr, bl, br = colors
    arr = np.empty((height, width, 3), dtype=np.uint8)
    h2, w2 = height // 2, width // 2
    arr[:h2, :w2] = tl
    arr[:h2, w2:] = tr
    arr[h2:, :w2] = bl
    arr[h2:, w2:] = br
    return FrameRGB(arr)


def blob_frame(bg, fg, width: int = 16, height: int = 16) -> FrameRGB:
    """Per quadrant, one solid fg square covering a quarter of the quadrant."""
    arr = np.empty((height, width, 3), dtype=np.uint8)
    arr[:] = bg
    h2, w2 = height // 2, width // 2
    for r0 in (0, h2):
        for c0 in (0, w2):
            arr[r0 : r0 + h2 // 2, c0 : c0 + w2 // 2] = fg
    return FrameRGB(arr)


def dots_frame(bg, fg, width: int = 16, height: int = 16) -> FrameRGB:
    """Same per-quadrant fg mass as blob_frame but as isolated single pixels.

    Dots sit on an every-other-pixel lattice, so no two share even a corner:
    every fg pixel is its own 8-connected region of size 1.
    """
    arr = np.empty((height, width, 3), dtype=np.uint8)
    arr[:] = bg
    arr[::2, ::2] = fg
    return FrameRGB(arr)


def _jitter_color(color, rng: np.random.Generator) -> tuple[int, int, int]:
    return tuple(
        int(np.clip(c + rng.integers(-JITTER, JITTER + 1), 0, 255)) for c in color
    )


# --- Self-retrieval corpus ---


def make_selfquery_corpus(width: int = 16, height: int = 16) -> list[SynthVideo]:
    """Ten distinct videos with known shot structure.

    Four static solids (1 shot), three hard cuts (2 shots), three dithered
    fades (1 shot).  All colors are distinct, so every video has a unique
    descriptor payload.
    """
    videos: list[SynthVideo] = []
    for i, color in enumerate((RED, BLUE, GREEN, YELLOW)):
        videos.append(
            SynthVideo(
                name=f"solid_{i}",
                label="solid",
                frames=tuple(solid_video(color, 8, width, height)),
                expected_shots=1,
            )
        )
    cuts = [(RED, BLUE), (GREEN, MAGENTA), (CYAN, DARK)]
    for i, (c1, c2) in enumerate(cuts):
        videos.append(
            SynthVideo(
                name=f"cut_{i}",
                label="cut",
                frames=tuple(cut_video(c1, c2, 6, 6, width, height)),
                expected_shots=2,
            )
        )
    fades = [(RED, GREEN), (BLUE, YELLOW), (MAGENTA, GRAY)]
    for i, (c1, c2) in enumerate(fades):
        videos.append(
            SynthVideo(
                name=f"fade_{i}",
                label="fade",
                frames=tuple(dithered_fade(c1, c2, 40, width, height, seed=100 + i)),
                expected_shots=1,
            )
        )
    return videos


# --- Benchmark corpora ---


@dataclass(frozen=True)
class BenchCorpus:
    name: str
    videos: tuple[SynthVideo, ...]  # registered into the index
    queries: tuple[SynthVideo, ...]  # never registered


def _static(name: str, label: str, frame: FrameRGB, n_frames: int = 6) -> SynthVideo:
    return SynthVideo(
        name=name, label=label, frames=tuple([frame] * n_frames), expected_shots=1
    )


def make_standard_corpus(
    seed: int = 7,
    members_per_class: int = 4,
    queries_per_class: int = 2,
) -> BenchCorpus:
    """Six labeled classes that exercise each descriptor's strength.

    hue_red / hue_blue      solid colors; every descriptor separates them
    layout_rb / layout_br   same global mix, mirrored quadrants; only the
                            local histogram tells them apart
    blobs / dots            same global mix and same per-block mix; only
                            coherence tells them apart
    """
    rng = np.random.default_rng(seed)

    def class_frame(label: str, r: np.random.Generator) -> FrameRGB:
        red = _jitter_color(RED, r)
        blue = _jitter_color(BLUE, r)
        if label == "hue_red":
            return solid_frame(red)
        if label == "hue_blue":
            return solid_frame(blue)
        if label == "layout_rb":
            return quadrant_frame((red, blue, blue, red))
        if label == "layout_br":
            return quadrant_frame((blue, red, red, blue))
        if label == "blobs":
            return blob_frame(red, blue)
        if label == "dots":
            return dots_frame(red, blue)
        raise ValueError(label)

    labels = ("hue_red", "hue_blue", "layout_rb", "layout_br", "blobs", "dots")
    videos = []
    queries = []
    for label in labels:
        for m in range(members_per_class):
            videos.append(_static(f"{label}_{m}", label, class_frame(label, rng)))
        for q in range(queries_per_class):
            queries.append(_static(f"query_{label}_{q}", label, class_frame(label, rng)))
    return BenchCorpus(name="standard", videos=tuple(videos), queries=tuple(queries))


def _accent_frame(p, q, style: str, width: int = 16, height: int = 16) -> FrameRGB:
    """Gray frame carrying 1/8 of its pixels in each of two accent colors.

    solid_top / solid_bottom place the accents as two solid 4x8 bars;
    dots_even / dots_odd scatter them as isolated single pixels across the
    whole frame.  The color mix is identical in all four styles.
    """
    arr = np.empty((height, width, 3), dtype=np.uint8)
    arr[:] = GRAY
    h4, w2 = height // 4, width // 2
    if style == "solid_top":
        arr[:h4, :w2] = p
        arr[:h4, w2:] = q
    elif style == "solid_bottom":
        arr[height - h4 :, :w2] = p
        arr[height - h4 :, w2:] = q
    elif style == "dots":
        for r in range(0, height, 2):
            for c in range(0, width, 2):
                arr[r, c] = p if (r // 2 + c // 2) % 2 == 0 else q
    elif style == "mixed":
        # Half of each accent coherent, half as isolated dots.
        arr[: height // 4, : width // 4] = p
        arr[height // 4 : height // 2, : width // 4] = q
        h2, w2_ = height // 2, width // 2
        arr[h2 : h2 + h2 : 2, w2_ : w2_ + w2_ : 2] = p
        arr[h2 + 1 : h2 + h2 : 2, w2_ + 1 : w2_ + w2_ : 2] = q
    elif style == "solid_left":
        arr[: height // 2, : width // 4] = p
        arr[height // 2 :, : width // 4] = q
    else:
        raise ValueError(style)
    return FrameRGB(arr)


def make_gch_only_corpus() -> BenchCorpus:
    """Two classes whose members share a color mix but nothing spatial.

    Each class is 12.5% + 12.5% accent colors on a 75% gray background, and
    the two classes' accent pairs are channel swaps of each other, so every
    per-channel value multiset (hence average RGB and all nine moments) is
    identical across the whole corpus.  Members of one class disagree wildly
    on accent placement and coherence, which drags down the local histogram
    and the coherence vector, while the global histogram identifies the
    class exactly.
    """
    # Per channel both pairs hold {224 x 12.5%, 32 x 12.5%}.
    class_colors = {
        "mix_rc": ((224, 32, 32), (32, 224, 224)),
        "mix_yb": ((224, 224, 32), (32, 32, 224)),
    }
    member_styles = ("solid_top", "solid_bottom", "dots", "mixed")
    videos = []
    queries = []
    for label, (p, q) in class_colors.items():
        for style in member_styles:
            videos.append(_static(f"{label}_{style}", label, _accent_frame(p, q, style)))
        queries.append(
            _static(f"query_{label}_solid", label, _accent_frame(p, q, "solid_left"))
        )
        queries.append(
            _static(f"query_{label}_dots", label, _accent_frame(q, p, "dots"))
        )
    return BenchCorpus(name="gch-only", videos=tuple(videos), queries=tuple(queries))
