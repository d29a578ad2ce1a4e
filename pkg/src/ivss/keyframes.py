"""Shot boundary detection and key-frame selection.

A shot is a maximal run of consecutive frames whose color content does not
change significantly: a boundary is declared between frames t and t+1 when
the Euclidean distance of their global color histograms exceeds the shot
threshold.  Within each shot, frames are clustered on their average RGB by a
single-pass threshold rule and one key frame is kept per cluster (the member
nearest the final centroid), so a static shot yields one key frame and a
busy shot several.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .color_core import ColorQuantizer
from .config import ExtractionConfig
from .descriptors import DescriptorSet, compute_avg_rgb, compute_gch, dist_gch, extract_all
from .errors import EmptySourceError
from .frame_io import FrameRGB


@dataclass(frozen=True)
class Shot:
    """Inclusive frame-index range [start, end] of one shot."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start > self.end or self.start < 0:
            raise ValueError(f"bad shot range [{self.start}, {self.end}]")

    @property
    def length(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class KeyFrame:
    frame_index: int
    shot_id: int
    descriptors: DescriptorSet
    thumbnail: FrameRGB | None = None


@dataclass(frozen=True)
class Scene:
    """Grouping level above shots.

    Semantic grouping is out of scope; :func:`group_scenes` maps one scene
    per shot so the level exists for callers that expect it.
    """

    shot_ids: tuple[int, ...]


def detect_shots(
    source: Iterable[FrameRGB],
    quantizer: ColorQuantizer,
    shot_threshold: float,
) -> list[Shot]:
    """Split a frame sequence into shots by consecutive-frame GCH distance.

    Single streaming pass; a boundary falls between t and t+1 exactly when
    dist_gch(H_t, H_{t+1}) > shot_threshold.
    """
    shots: list[Shot] = []
    prev_gch = None
    start = 0
    count = 0
    for i, frame in enumerate(source):
        gch = compute_gch(frame, quantizer)
        if prev_gch is not None and dist_gch(prev_gch, gch) > shot_threshold:
            shots.append(Shot(start, i - 1))
            start = i
        prev_gch = gch
        count = i + 1
    if count == 0:
        raise EmptySourceError("cannot detect shots in an empty source")
    shots.append(Shot(start, count - 1))
    return shots


def _cluster_indices(avgs: Sequence[np.ndarray], cluster_delta: float) -> list[list[int]]:
    """Single-pass threshold clustering over average-RGB vectors.

    A frame joins the current cluster when its distance to the running
    centroid is within cluster_delta, otherwise it starts a new cluster.
    """
    clusters: list[list[int]] = []
    centroid: np.ndarray | None = None
    for i, v in enumerate(avgs):
        if centroid is not None and float(np.linalg.norm(v - centroid)) <= cluster_delta:
            clusters[-1].append(i)
            members = clusters[-1]
            centroid = centroid + (v - centroid) / len(members)
        else:
            clusters.append([i])
            centroid = v.astype(np.float64)
    return clusters


def extract_keyframes(
    frames: Sequence[FrameRGB],
    shots: Sequence[Shot],
    cluster_delta: float,
    config: ExtractionConfig,
) -> list[KeyFrame]:
    """Pick one key frame per average-RGB cluster inside every shot.

    The key frame of a cluster is the member closest to the cluster's final
    centroid, lowest frame index on ties.  Key frames carry full descriptor
    sets computed under ``config``.
    """
    keyframes: list[KeyFrame] = []
    for shot_id, shot in enumerate(shots):
        shot_frames = frames[shot.start : shot.end + 1]
        avgs = [compute_avg_rgb(f).as_vector() for f in shot_frames]
        for members in _cluster_indices(avgs, cluster_delta):
            centroid = np.mean([avgs[m] for m in members], axis=0)
            best = min(members, key=lambda m: (float(np.linalg.norm(avgs[m] - centroid)), m))
            frame_index = shot.start + best
            keyframes.append(
                KeyFrame(
                    frame_index=frame_index,
                    shot_id=shot_id,
                    descriptors=extract_all(frames[frame_index], config),
                )
            )
    return keyframes


def group_scenes(shots: Sequence[Shot]) -> list[Scene]:
    """Pass-through grouping: one scene per shot."""
    return [Scene(shot_ids=(i,)) for i in range(len(shots))]
