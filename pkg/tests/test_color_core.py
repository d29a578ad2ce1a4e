import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ivss.color_core import ColorQuantizer, Histogram, build_histogram
from ivss.errors import ConfigError, EmptyFrameError
from ivss.frame_io import FrameRGB

from conftest import frame_of
from oracles import oracle_histogram, oracle_quantize, random_frame


def test_quantizer_derived_fields():
    q = ColorQuantizer(2)
    assert q.levels == 4
    assert q.bin_count == 64
    with pytest.raises(ConfigError):
        ColorQuantizer(0)
    with pytest.raises(ConfigError):
        ColorQuantizer(9)


@pytest.mark.parametrize(
    "pixel,bits,expected",
    [
        ((0, 0, 0), 1, 0),
        ((255, 0, 0), 1, 4),
        ((255, 255, 255), 2, 63),
        ((127, 128, 255), 1, 3),  # 0*4 + 1*2 + 1
    ],
)
def test_quantize_examples(pixel, bits, expected):
    assert ColorQuantizer(bits).quantize(pixel) == expected


@given(
    r=st.integers(0, 255),
    g=st.integers(0, 255),
    b=st.integers(0, 255),
    bits=st.integers(1, 8),
)
def test_quantize_total_and_in_range(r, g, b, bits):
    q = ColorQuantizer(bits)
    idx = q.quantize((r, g, b))
    assert 0 <= idx < q.bin_count
    assert idx == oracle_quantize((r, g, b), bits)


def test_quantize_frame_matches_scalar():
    rng = np.random.default_rng(3)
    frame = FrameRGB(rng.integers(0, 256, size=(5, 7, 3), dtype=np.uint8))
    for bits in (1, 2, 3, 8):
        q = ColorQuantizer(bits)
        grid = q.quantize_frame(frame)
        for r in range(frame.height):
            for c in range(frame.width):
                assert grid[r, c] == q.quantize(frame.pixels[r, c])


class TestBuildHistogram:
    def test_all_black(self, solid):
        h = build_histogram(solid((0, 0, 0)), ColorQuantizer(2))
        assert h.bins[0] == 1.0
        assert h.bins[1:].sum() == 0.0
        assert h.pixel_count == 16

    def test_red_blue_split(self):
        frame = frame_of([[(255, 0, 0), (0, 0, 255)]])
        h = build_histogram(frame, ColorQuantizer(1))
        assert h.bins[4] == 0.5
        assert h.bins[1] == 0.5

    def test_three_color_population(self):
        # 4 black, 4 white, 8 gray cells -> {25%, 25%, 50%}
        B, W, G = (0, 0, 0), (255, 255, 255), (128, 128, 128)
        frame = frame_of(
            [[B, B, W, W], [B, B, W, W], [G, G, G, G], [G, G, G, G]]
        )
        q = ColorQuantizer(2)
        h = build_histogram(frame, q)
        assert h.bins[q.quantize(B)] == 0.25
        assert h.bins[q.quantize(W)] == 0.25
        assert h.bins[q.quantize(G)] == 0.50

    def test_empty_frame_rejected(self):
        class Stub:
            pixels = np.zeros((0, 0, 3), dtype=np.uint8)

        with pytest.raises(EmptyFrameError):
            build_histogram(Stub(), ColorQuantizer(1))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000), bits=st.integers(1, 3))
def test_histogram_normalization_and_oracle(seed, bits):
    frame = random_frame(np.random.default_rng(seed))
    h = build_histogram(frame, ColorQuantizer(bits))
    assert abs(h.bins.sum() - 1.0) <= 1e-9
    assert (h.bins >= 0).all()
    assert np.allclose(h.bins, oracle_histogram(frame, bits), atol=0, rtol=0)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_histogram_permutation_invariance(seed):
    rng = np.random.default_rng(seed)
    frame = random_frame(rng)
    flat = frame.pixels.reshape(-1, 3)
    shuffled = FrameRGB(
        flat[rng.permutation(len(flat))].reshape(frame.pixels.shape)
    )
    q = ColorQuantizer(2)
    assert build_histogram(frame, q) == build_histogram(shuffled, q)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), bits=st.integers(2, 4))
def test_histogram_refinement_consistency(seed, bits):
    """Coarsening a fine histogram equals computing the coarse one directly."""
    frame = random_frame(np.random.default_rng(seed))
    fine = build_histogram(frame, ColorQuantizer(bits))
    coarse = build_histogram(frame, ColorQuantizer(bits - 1))
    lv = 2**bits
    lv_c = lv // 2
    agg = np.zeros(lv_c**3)
    for i, value in enumerate(fine.bins):
        r, rem = divmod(i, lv * lv)
        g, b = divmod(rem, lv)
        agg[(r >> 1) * lv_c * lv_c + (g >> 1) * lv_c + (b >> 1)] += value
    assert np.abs(agg - coarse.bins).max() <= 1e-12


def test_histogram_value_equality():
    a = Histogram(np.array([0.5, 0.5]), 2)
    b = Histogram(np.array([0.5, 0.5]), 2)
    c = Histogram(np.array([1.0, 0.0]), 2)
    assert a == b and a != c
