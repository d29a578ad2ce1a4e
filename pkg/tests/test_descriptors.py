import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ivss.color_core import ColorQuantizer, Histogram
from ivss.config import ExtractionConfig
from ivss.descriptors import (
    CCV,
    GCH,
    AvgRGB,
    Moments,
    compute_avg_rgb,
    compute_ccv,
    compute_gch,
    compute_lch,
    compute_moments,
    descriptor_distance,
    dist_avg_rgb,
    dist_ccv,
    dist_gch,
    dist_lch,
    dist_moments,
    extract_all,
)
from ivss.errors import ConfigError, ConfigMismatchError
from ivss.frame_io import FrameRGB

from conftest import frame_of
from oracles import (
    oracle_avg_rgb,
    oracle_ccv,
    oracle_ccv_dist,
    oracle_gch_dist,
    oracle_histogram,
    oracle_lch,
    oracle_lch_dist,
    oracle_moments,
    oracle_moments_dist,
    random_frame,
)

Q1 = ColorQuantizer(1)
Q2 = ColorQuantizer(2)

BLACK, WHITE, GRAY = (0, 0, 0), (255, 255, 255), (128, 128, 128)

# Worked two-image example: a 4x4 three-color image pair whose global
# histograms are {25%, 25%, 50%} and {18.75%, 37.5%, 43.75%}.
IMAGE_A = frame_of(
    [
        [BLACK, BLACK, WHITE, WHITE],
        [BLACK, BLACK, WHITE, WHITE],
        [GRAY, GRAY, GRAY, GRAY],
        [GRAY, GRAY, GRAY, GRAY],
    ]
)
IMAGE_B = frame_of(
    [
        [BLACK, WHITE, WHITE, BLACK],
        [WHITE, WHITE, WHITE, WHITE],
        [GRAY, GRAY, GRAY, GRAY],
        [GRAY, BLACK, GRAY, GRAY],
    ]
)


def quadrant_image(colors):
    """4x4 image of four solid 2x2 quadrant blocks (tl, tr, bl, br)."""
    tl, tr, bl, br = colors
    return frame_of(
        [
            [tl, tl, tr, tr],
            [tl, tl, tr, tr],
            [bl, bl, br, br],
            [bl, bl, br, br],
        ]
    )


class TestAvgRGB:
    def test_constant_frame(self, solid):
        assert compute_avg_rgb(solid((10, 20, 30))) == AvgRGB(10, 20, 30)

    def test_two_point_mean(self):
        f = frame_of([[BLACK, WHITE]])
        assert compute_avg_rgb(f) == AvgRGB(127.5, 127.5, 127.5)

    def test_quarter_red(self):
        f = frame_of([[(255, 0, 0), BLACK, BLACK, BLACK]])
        a = compute_avg_rgb(f)
        assert (a.mean_r, a.mean_g, a.mean_b) == (63.75, 0.0, 0.0)

    def test_distance_is_euclidean(self):
        d = dist_avg_rgb(AvgRGB(255, 0, 0), AvgRGB(0, 0, 255))
        assert d == pytest.approx(255 * math.sqrt(2), abs=1e-12)


class TestGCH:
    def test_golden_three_bin_distance(self):
        a = GCH(Histogram(np.array([0.25, 0.25, 0.50]), 16))
        b = GCH(Histogram(np.array([0.1875, 0.375, 0.4375]), 16))
        assert dist_gch(a, b) == pytest.approx(0.153, abs=1e-3)

    def test_golden_image_pair(self):
        d = dist_gch(compute_gch(IMAGE_A, Q2), compute_gch(IMAGE_B, Q2))
        assert d == pytest.approx(0.153, abs=1e-3)

    def test_identity(self):
        g = compute_gch(IMAGE_A, Q2)
        assert dist_gch(g, g) == 0.0

    def test_maximal_two_bin(self):
        a = GCH(Histogram(np.array([1.0, 0.0]), 4))
        b = GCH(Histogram(np.array([0.0, 1.0]), 4))
        assert dist_gch(a, b) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_bin_count_mismatch(self):
        a = GCH(Histogram(np.array([1.0]), 1))
        b = GCH(Histogram(np.array([0.5, 0.5]), 2))
        with pytest.raises(ConfigMismatchError):
            dist_gch(a, b)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(5)
        frame = random_frame(rng, max_side=6)
        flat = frame.pixels.reshape(-1, 3)
        shuffled = FrameRGB(flat[rng.permutation(len(flat))].reshape(frame.pixels.shape))
        assert compute_gch(frame, Q2) == compute_gch(shuffled, Q2)


class TestLCH:
    def test_four_equal_blocks(self):
        lch = compute_lch(IMAGE_A, Q2, 2, 2)
        assert len(lch.blocks) == 4
        assert all(b.pixel_count == 4 for b in lch.blocks)

    def test_uniform_frame_blocks_equal_global(self, solid):
        f = solid((200, 10, 10), width=6, height=6)
        lch = compute_lch(f, Q2, 2, 2)
        global_hist = compute_gch(f, Q2).histogram
        for block in lch.blocks:
            assert np.array_equal(block.bins, global_hist.bins)

    def test_remainder_goes_to_last(self, solid):
        lch = compute_lch(solid((0, 0, 0), width=5, height=5), Q2, 2, 2)
        assert [b.pixel_count for b in lch.blocks] == [4, 6, 6, 9]  # (2,3)x(2,3)

    def test_grid_larger_than_frame(self, solid):
        with pytest.raises(ConfigMismatchError):
            compute_lch(solid((0, 0, 0), width=2, height=2), Q2, 3, 3)

    def test_golden_image_pair(self):
        d = dist_lch(compute_lch(IMAGE_A, Q2, 2, 2), compute_lch(IMAGE_B, Q2, 2, 2))
        assert d == pytest.approx(1.768, abs=5e-3)

    def test_identical_images(self):
        a = compute_lch(IMAGE_A, Q2, 2, 2)
        assert dist_lch(a, a) == 0.0

    def test_grid_mismatch(self):
        a = compute_lch(IMAGE_A, Q2, 2, 2)
        b = compute_lch(IMAGE_A, Q2, 1, 2)
        with pytest.raises(ConfigMismatchError):
            dist_lch(a, b)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_random_pairs_match_oracle(self, seed):
        rng = np.random.default_rng(seed)
        palette = [BLACK, WHITE, GRAY]
        a = random_frame(rng, max_side=4, palette=palette)
        b = random_frame(rng, max_side=4, palette=palette)
        if a.height < 2 or a.width < 2 or (a.width, a.height) != (b.width, b.height):
            return
        d = dist_lch(compute_lch(a, Q2, 2, 2), compute_lch(b, Q2, 2, 2))
        assert d == pytest.approx(oracle_lch_dist(a, b, 2, 2, 2), abs=1e-12)

    def test_pixel_permutation_can_change_lch(self):
        a = quadrant_image((BLACK, WHITE, WHITE, BLACK))
        b = quadrant_image((WHITE, BLACK, BLACK, WHITE))  # same pixels, rearranged
        assert compute_gch(a, Q2) == compute_gch(b, Q2)
        assert dist_lch(compute_lch(a, Q2, 2, 2), compute_lch(b, Q2, 2, 2)) > 0


class TestRotationOrdering:
    """A 90-degree rotation leaves GCH distances alone but breaks LCH ones."""

    def check(self, d_img, e_img):
        d_rot = FrameRGB(np.rot90(d_img.pixels, k=-1).copy())
        gch_d = dist_gch(compute_gch(d_img, Q2), compute_gch(e_img, Q2))
        gch_rot = dist_gch(compute_gch(d_rot, Q2), compute_gch(e_img, Q2))
        lch_d = dist_lch(compute_lch(d_img, Q2, 2, 2), compute_lch(e_img, Q2, 2, 2))
        lch_rot = dist_lch(compute_lch(d_rot, Q2, 2, 2), compute_lch(e_img, Q2, 2, 2))
        assert abs(gch_d - gch_rot) <= 1e-12
        assert lch_d > lch_rot

    def test_two_blocks_differ(self):
        # E differs from rotated D in exactly two blocks.
        d_img = quadrant_image((BLACK, WHITE, GRAY, GRAY))
        e_img = quadrant_image((GRAY, BLACK, WHITE, GRAY))
        self.check(d_img, e_img)

    def test_distinct_global_histogram(self):
        # Same ordering with a non-zero GCH distance on both sides.
        d_img = quadrant_image((BLACK, WHITE, GRAY, GRAY))
        e_img = quadrant_image((WHITE, BLACK, GRAY, WHITE))
        gch_d = dist_gch(compute_gch(d_img, Q2), compute_gch(e_img, Q2))
        assert gch_d > 0
        self.check(d_img, e_img)


class TestMoments:
    def test_constant_channel(self, solid):
        m = compute_moments(solid((7, 7, 7)))
        assert m.mean == (7.0, 7.0, 7.0)
        assert m.stddev == (0.0, 0.0, 0.0)
        assert m.skewness == (0.0, 0.0, 0.0)

    def test_symmetric_two_point(self):
        f = frame_of([[BLACK, BLACK, WHITE, WHITE]])
        m = compute_moments(f)
        assert m.mean[0] == 127.5
        assert m.stddev[0] == 127.5
        assert m.skewness[0] == 0.0

    def test_asymmetric_four_point(self):
        # Channel values {0, 0, 0, 255}; expectations from the exact oracle.
        f = frame_of([[BLACK, BLACK, BLACK, WHITE]])
        m = compute_moments(f)
        assert m.mean[0] == 63.75
        assert m.stddev[0] == pytest.approx(110.41823898251593, abs=1e-12)
        assert m.skewness[0] == pytest.approx(115.84143779304887, abs=1e-12)

    def test_negative_skew_is_signed(self):
        f = frame_of([[WHITE, WHITE, WHITE, BLACK]])
        m = compute_moments(f)
        assert m.skewness[0] == pytest.approx(-115.84143779304887, abs=1e-12)

    def test_distance_identity_and_example(self):
        a = Moments(mean=(1.0, 1.0, 1.0), stddev=(0.0,) * 3, skewness=(0.0,) * 3)
        b = Moments(mean=(0.0, 0.0, 0.0), stddev=(0.0,) * 3, skewness=(0.0,) * 3)
        assert dist_moments(a, a) == 0.0
        assert dist_moments(a, b) == 3.0

    def test_negative_weight_rejected(self):
        m = compute_moments(frame_of([[BLACK]]))
        with pytest.raises(ConfigError):
            dist_moments(m, m, weights=((1, -1, 1),) * 3)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_random_distance_matches_oracle(self, seed):
        rng = np.random.default_rng(seed)
        a = random_frame(rng)
        b = random_frame(rng)
        ma, mb = compute_moments(a), compute_moments(b)
        weights = tuple(tuple(float(w) for w in rng.uniform(0, 2, 3)) for _ in range(3))
        got = dist_moments(ma, mb, weights)
        oa = oracle_moments(a)
        ob = oracle_moments(b)
        assert got == pytest.approx(oracle_moments_dist(oa, ob, weights), abs=1e-12)


class TestCCV:
    def test_uniform_frame_fully_coherent(self, solid):
        f = solid((200, 30, 30))
        ccv = compute_ccv(f, Q2, tau=0.01)
        bin_index = Q2.quantize((200, 30, 30))
        assert ccv.coherent[bin_index] == 1.0
        assert ccv.incoherent.sum() == 0.0

    def test_isolated_pixel_example(self):
        arr = np.zeros((10, 10, 3), dtype=np.uint8)
        arr[5, 5] = 255
        ccv = compute_ccv(FrameRGB(arr), Q2, tau=0.05)
        white = Q2.quantize((255, 255, 255))
        assert (ccv.coherent[0], ccv.incoherent[0]) == (0.99, 0.0)
        assert (ccv.coherent[white], ccv.incoherent[white]) == (0.0, 0.01)

    def test_tau_out_of_range(self, solid):
        with pytest.raises(ConfigError):
            compute_ccv(solid(BLACK), Q2, tau=0.0)
        with pytest.raises(ConfigError):
            compute_ccv(solid(BLACK), Q2, tau=1.5)

    def test_partition_identity(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            f = random_frame(rng, palette=[BLACK, WHITE, GRAY])
            ccv = compute_ccv(f, Q2, tau=0.1)
            gch = compute_gch(f, Q2)
            assert np.abs((ccv.coherent + ccv.incoherent) - gch.histogram.bins).max() <= 1e-12
            assert abs((ccv.coherent.sum() + ccv.incoherent.sum()) - 1.0) <= 1e-9

    def test_identical_ccvs(self):
        ccv = compute_ccv(IMAGE_A, Q2, tau=0.01)
        assert dist_ccv(ccv, ccv) == 0.0

    def test_mismatch_rejected(self, solid):
        a = compute_ccv(solid(BLACK), Q2, tau=0.01)
        b = compute_ccv(solid(BLACK), Q2, tau=0.02)
        with pytest.raises(ConfigMismatchError):
            dist_ccv(a, b)
        c = compute_ccv(solid(BLACK), Q1, tau=0.01)
        with pytest.raises(ConfigMismatchError):
            dist_ccv(a, c)

    def test_separates_solid_from_scattered(self):
        """Same color mix, opposite coherence: GCH blind, CCV not."""
        solid_block = np.zeros((8, 8, 3), dtype=np.uint8)
        solid_block[:4, :4] = 255  # one 16-pixel white square
        scattered = np.zeros((8, 8, 3), dtype=np.uint8)
        scattered[::2, ::2] = 255  # 16 isolated white pixels (no shared corners)
        a = FrameRGB(solid_block)
        b = FrameRGB(scattered)
        assert compute_gch(a, Q2) == compute_gch(b, Q2)
        ca = compute_ccv(a, Q2, tau=0.1)  # threshold 7: square yes, dots no
        cb = compute_ccv(b, Q2, tau=0.1)
        assert dist_ccv(ca, cb) > 0

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10_000), tau=st.sampled_from([0.01, 0.05, 0.1, 0.3, 1.0]))
    def test_ccv_dominates_gch_l1(self, seed, tau):
        rng = np.random.default_rng(seed)
        palette = [BLACK, WHITE, GRAY, (255, 0, 0)]
        a = random_frame(rng, palette=palette)
        b = random_frame(rng, palette=palette)
        ca = compute_ccv(a, Q2, tau)
        cb = compute_ccv(b, Q2, tau)
        ga = compute_gch(a, Q2).histogram.bins
        gb = compute_gch(b, Q2).histogram.bins
        l1 = float(np.abs(ga - gb).sum())
        assert dist_ccv(ca, cb) >= l1 - 1e-12


class TestExtractAll:
    CFG = ExtractionConfig(bits=2, grid_rows=2, grid_cols=2, tau=0.01)

    def test_uniform_red_degenerate(self, solid):
        f = solid((255, 0, 0), width=4, height=4)
        ds = extract_all(f, self.CFG)
        assert ds.avg_rgb == AvgRGB(255.0, 0.0, 0.0)
        red_bin = Q2.quantize((255, 0, 0))
        assert ds.gch.histogram.bins[red_bin] == 1.0
        for block in ds.lch.blocks:
            assert np.array_equal(block.bins, ds.gch.histogram.bins)
        assert ds.moments.stddev == (0.0, 0.0, 0.0)
        assert ds.moments.skewness == (0.0, 0.0, 0.0)
        assert ds.ccv.coherent[red_bin] == 1.0
        assert ds.ccv.incoherent.sum() == 0.0

    def test_determinism(self):
        a = extract_all(IMAGE_B, self.CFG)
        b = extract_all(IMAGE_B, self.CFG)
        assert a == b

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_invariants_hold(self, seed):
        frame = random_frame(np.random.default_rng(seed), max_side=6)
        if frame.height < 2 or frame.width < 2:
            return
        ds = extract_all(frame, self.CFG)
        assert abs(ds.gch.histogram.bins.sum() - 1.0) <= 1e-9
        assert len(ds.lch.blocks) == 4
        assert all(s >= 0 for s in ds.moments.stddev)
        total = ds.ccv.coherent + ds.ccv.incoherent
        assert np.abs(total - ds.gch.histogram.bins).max() <= 1e-12
        assert ds.config == self.CFG


class TestMetricAxioms:
    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_axioms_on_random_triples(self, seed):
        rng = np.random.default_rng(seed)
        cfg = ExtractionConfig(bits=1, grid_rows=2, grid_cols=2, tau=0.1)
        frames = []
        h = int(rng.integers(2, 7))
        w = int(rng.integers(2, 7))
        for _ in range(3):
            arr = rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8)
            frames.append(FrameRGB(arr))
        ds = [extract_all(f, cfg) for f in frames]
        for name in ("avg_rgb", "gch", "lch", "moments", "ccv"):
            dists = {}
            for i in range(3):
                for j in range(3):
                    dists[i, j] = descriptor_distance(name, ds[i], ds[j])
            for i in range(3):
                assert dists[i, i] == 0.0
                for j in range(3):
                    assert dists[i, j] >= 0
                    assert dists[i, j] == pytest.approx(dists[j, i], abs=1e-12)
        # Triangle inequality for the L2 and L1 style distances.
        for name in ("gch", "ccv"):
            for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
                dij = descriptor_distance(name, ds[i], ds[j])
                djk = descriptor_distance(name, ds[j], ds[k])
                dik = descriptor_distance(name, ds[i], ds[k])
                assert dik <= dij + djk + 1e-12


class TestOracleEquivalence:
    """Engine output equals the brute-force references on small frames."""

    def test_descriptors_match(self):
        rng = np.random.default_rng(42)
        palette = [BLACK, WHITE, GRAY, (255, 0, 0), (30, 200, 90)]
        for trial in range(120):
            bits = 1 + trial % 2
            q = ColorQuantizer(bits)
            frame = random_frame(rng, palette=palette if trial % 3 else None)
            tau = [0.01, 0.05, 0.1, 1.0][trial % 4]

            avg = compute_avg_rgb(frame)
            oa = oracle_avg_rgb(frame)
            assert (avg.mean_r, avg.mean_g, avg.mean_b) == pytest.approx(oa, abs=1e-12)

            gch = compute_gch(frame, q)
            assert np.allclose(gch.histogram.bins, oracle_histogram(frame, bits), atol=0)

            m = compute_moments(frame)
            for ch, (mean, std, skew) in enumerate(oracle_moments(frame)):
                assert m.mean[ch] == pytest.approx(mean, abs=1e-12)
                assert m.stddev[ch] == pytest.approx(std, abs=1e-12)
                assert m.skewness[ch] == pytest.approx(skew, abs=1e-12)

            ccv = compute_ccv(frame, q, tau)
            coh, inc = oracle_ccv(frame, bits, tau)
            assert np.allclose(ccv.coherent, coh, atol=1e-12, rtol=0)
            assert np.allclose(ccv.incoherent, inc, atol=1e-12, rtol=0)

            if frame.height >= 2 and frame.width >= 2:
                lch = compute_lch(frame, q, 2, 2)
                for block, oblock in zip(lch.blocks, oracle_lch(frame, bits, 2, 2)):
                    assert np.allclose(block.bins, oblock, atol=0)

    def test_distances_match(self):
        rng = np.random.default_rng(43)
        for trial in range(60):
            bits = 1 + trial % 2
            q = ColorQuantizer(bits)
            h = int(rng.integers(2, 9))
            w = int(rng.integers(2, 9))
            a = FrameRGB(rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8))
            b = FrameRGB(rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8))
            tau = [0.01, 0.1, 0.5][trial % 3]

            assert dist_gch(compute_gch(a, q), compute_gch(b, q)) == pytest.approx(
                oracle_gch_dist(a, b, bits), abs=1e-12
            )
            assert dist_lch(
                compute_lch(a, q, 2, 2), compute_lch(b, q, 2, 2)
            ) == pytest.approx(oracle_lch_dist(a, b, bits, 2, 2), abs=1e-12)
            assert dist_ccv(
                compute_ccv(a, q, tau), compute_ccv(b, q, tau)
            ) == pytest.approx(
                oracle_ccv_dist(oracle_ccv(a, bits, tau), oracle_ccv(b, bits, tau)),
                abs=1e-12,
            )
            assert dist_moments(
                compute_moments(a), compute_moments(b)
            ) == pytest.approx(
                oracle_moments_dist(
                    oracle_moments(a),
                    oracle_moments(b),
                    ((1.0,) * 3,) * 3,
                ),
                abs=1e-12,
            )
