import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ivss.color_core import ColorQuantizer
from ivss.config import ExtractionConfig
from ivss.errors import EmptySourceError
from ivss.keyframes import Shot, detect_shots, extract_keyframes, group_scenes
from ivss.synth import RED, BLUE, GREEN, dithered_fade, solid_video, cut_video

from oracles import oracle_gch_dist

Q2 = ColorQuantizer(2)
CFG = ExtractionConfig()


class TestDetectShots:
    def test_hard_cut(self):
        frames = cut_video(RED, BLUE, 10, 10)
        shots = detect_shots(frames, Q2, shot_threshold=0.5)
        assert shots == [Shot(0, 9), Shot(10, 19)]

    def test_constant_video_single_shot(self):
        frames = solid_video(GREEN, 12)
        assert detect_shots(frames, Q2, shot_threshold=0.01) == [Shot(0, 11)]

    def test_gradual_fade_stays_one_shot(self):
        frames = dithered_fade(RED, BLUE, 100, seed=4)
        # Verify the construction really is gradual before trusting the shots.
        steps = [
            oracle_gch_dist(frames[i], frames[i + 1], bits=2)
            for i in range(len(frames) - 1)
        ]
        assert max(steps) < 0.35
        assert detect_shots(frames, Q2, shot_threshold=0.35) == [Shot(0, 99)]

    def test_empty_source(self):
        with pytest.raises(EmptySourceError):
            detect_shots([], Q2, shot_threshold=0.3)

    def test_partition_covers_all_frames(self):
        frames = cut_video(RED, BLUE, 3, 4) + solid_video(GREEN, 2)
        shots = detect_shots(frames, Q2, shot_threshold=0.5)
        covered = []
        for shot in shots:
            covered.extend(range(shot.start, shot.end + 1))
        assert covered == list(range(len(frames)))

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 5_000))
    def test_threshold_monotonicity(self, seed):
        rng = np.random.default_rng(seed)
        from ivss.frame_io import FrameRGB

        frames = [
            FrameRGB(rng.integers(0, 256, size=(4, 4, 3), dtype=np.uint8))
            for _ in range(12)
        ]
        counts = [
            len(detect_shots(frames, Q2, shot_threshold=t))
            for t in (0.05, 0.2, 0.5, 1.0, 1.5)
        ]
        assert counts == sorted(counts, reverse=True)


class TestExtractKeyframes:
    def test_static_shot_single_keyframe(self):
        frames = solid_video(RED, 9)
        shots = [Shot(0, 8)]
        kfs = extract_keyframes(frames, shots, cluster_delta=25.0, config=CFG)
        assert len(kfs) == 1
        assert kfs[0].shot_id == 0
        assert 0 <= kfs[0].frame_index <= 8

    def test_alternating_colors_two_plus_keyframes(self):
        frames = []
        for i in range(8):
            frames.extend(solid_video(RED if i % 2 == 0 else BLUE, 1))
        shots = [Shot(0, 7)]
        kfs = extract_keyframes(frames, shots, cluster_delta=10.0, config=CFG)
        assert len(kfs) >= 2
        avgs = {(kf.descriptors.avg_rgb.mean_r, kf.descriptors.avg_rgb.mean_b) for kf in kfs}
        assert (float(RED[0]), float(RED[2])) in avgs
        assert (float(BLUE[0]), float(BLUE[2])) in avgs

    def test_all_red_keyframe_average(self):
        frames = solid_video((255, 0, 0), 5)
        kfs = extract_keyframes(frames, [Shot(0, 4)], cluster_delta=25.0, config=CFG)
        avg = kfs[0].descriptors.avg_rgb
        assert (avg.mean_r, avg.mean_g, avg.mean_b) == (255.0, 0.0, 0.0)

    def test_keyframes_stay_in_their_shot(self):
        frames = cut_video(RED, BLUE, 5, 7)
        shots = detect_shots(frames, Q2, shot_threshold=0.5)
        kfs = extract_keyframes(frames, shots, cluster_delta=25.0, config=CFG)
        for kf in kfs:
            shot = shots[kf.shot_id]
            assert shot.start <= kf.frame_index <= shot.end
        per_shot = {i: 0 for i in range(len(shots))}
        for kf in kfs:
            per_shot[kf.shot_id] += 1
        for i, shot in enumerate(shots):
            assert 1 <= per_shot[i] <= shot.length

    def test_determinism(self):
        frames = dithered_fade(RED, GREEN, 30, seed=9)
        shots = detect_shots(frames, Q2, shot_threshold=0.35)
        a = extract_keyframes(frames, shots, cluster_delta=25.0, config=CFG)
        b = extract_keyframes(frames, shots, cluster_delta=25.0, config=CFG)
        assert [kf.frame_index for kf in a] == [kf.frame_index for kf in b]
        assert a == b


def test_group_scenes_passthrough():
    shots = [Shot(0, 4), Shot(5, 9)]
    scenes = group_scenes(shots)
    assert [s.shot_ids for s in scenes] == [(0,), (1,)]
