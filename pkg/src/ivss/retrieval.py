"""Query-by-clip retrieval over a feature index.

The query clip runs through the same pipeline as registration (shots, key
frames, descriptors, all under the index config).  Each candidate video is
scored by best-match aggregation: for every query key frame take the minimum
integrated distance to any candidate key frame, then average those minima.
A query clip fully contained in a longer indexed video therefore scores 0.

Results serialize to a line-oriented structured text document shared by the
CLI and the HTTP API, so the two surfaces are byte-comparable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .config import IndexConfig
from .errors import ConfigError, EmptyIndexError, EmptySourceError, ParseError
from .frame_io import FrameRGB, FrameSource
from .index_store import FeatureIndex, VideoRecord, register_video
from .keyframes import KeyFrame, detect_shots, extract_keyframes
from .similarity import (
    FeatureSelection,
    NormalizerProfile,
    default_normalizer,
    format_selection,
    integrated_distance,
    parse_selection,
)

RESULTS_HEADER = "#ivss-results 1"


@dataclass(frozen=True)
class MatchPair:
    """One query key frame matched to its closest candidate key frame."""

    query_frame: int
    db_frame: int
    distance: float


@dataclass(frozen=True)
class RankedMatch:
    video_id: str
    distance: float
    best_matches: tuple[MatchPair, ...]


@dataclass(frozen=True)
class QueryResult:
    ranked: tuple[RankedMatch, ...]
    selection: FeatureSelection


def _query_keyframes(index: FeatureIndex, source) -> list[KeyFrame]:
    frames = list(source)
    if not frames:
        raise EmptySourceError("query clip has no frames")
    cfg = index.config
    extraction = cfg.extraction()
    shots = detect_shots(frames, extraction.quantizer, cfg.shot_threshold)
    return extract_keyframes(frames, shots, cfg.cluster_delta, extraction)


def _score_candidate(
    query_kfs: list[KeyFrame],
    record: VideoRecord,
    sel: FeatureSelection,
    norm: NormalizerProfile,
) -> RankedMatch:
    pairs = []
    total = 0.0
    for qkf in query_kfs:
        best_d = None
        best_kf = None
        for ckf in record.keyframes:
            d = integrated_distance(qkf.descriptors, ckf.descriptors, sel, norm)
            if best_d is None or d < best_d:
                best_d = d
                best_kf = ckf
        pairs.append(
            MatchPair(
                query_frame=qkf.frame_index,
                db_frame=best_kf.frame_index,
                distance=best_d,
            )
        )
        total += best_d
    return RankedMatch(
        video_id=record.video_id,
        distance=total / len(query_kfs),
        best_matches=tuple(pairs),
    )


def query_by_clip(
    index: FeatureIndex,
    query_source: FrameSource | Iterable[FrameRGB],
    sel: FeatureSelection,
    top_k: int,
) -> QueryResult:
    """Rank indexed videos by integrated distance to the query clip."""
    if top_k < 1:
        raise ConfigError(f"top_k must be >= 1, got {top_k}")
    if not index.records:
        raise EmptyIndexError("no videos registered in the index")
    query_kfs = _query_keyframes(index, query_source)
    norm = default_normalizer(index.config.extraction())
    scored = [_score_candidate(query_kfs, rec, sel, norm) for rec in index.records]
    scored.sort(key=lambda m: (m.distance, m.video_id))
    return QueryResult(ranked=tuple(scored[:top_k]), selection=sel)


def compare_pair(
    a_source,
    b_source,
    sel: FeatureSelection,
    index_config=None,
    norm: NormalizerProfile | None = None,
) -> float:
    """Distance the retrieval stage would assign to candidate b for query a.

    Best-match aggregation is directional: compare_pair(a, b) and
    compare_pair(b, a) may differ.  With the default normalizer this equals
    the distance query_by_clip reports for b; passing a unit-scale profile
    reduces a single-descriptor selection to that descriptor's raw distance.
    """
    cfg = index_config if index_config is not None else IndexConfig()
    result = register_video(FeatureIndex(config=cfg), b_source, "candidate")
    if norm is None:
        norm = default_normalizer(cfg.extraction())
    query_kfs = _query_keyframes(result.index, a_source)
    return _score_candidate(query_kfs, result.record, sel, norm).distance


# --- Structured text serialization ---


def format_results(result: QueryResult) -> str:
    """Serialize a QueryResult to the structured text document.

    One record per line: rank, video id, distance to 6 decimals, then the
    best-match pairs as query_frame:db_frame:distance. Distances are
    canonical %.6f strings, so parse/format round-trips byte for byte.
    """
    lines = [RESULTS_HEADER, f"#selection {format_selection(result.selection)}"]
    lines.append(f"#count {len(result.ranked)}")
    for rank, match in enumerate(result.ranked, start=1):
        pairs = ";".join(
            f"{p.query_frame}:{p.db_frame}:{p.distance:.6f}" for p in match.best_matches
        )
        lines.append(f"{rank}\t{match.video_id}\t{match.distance:.6f}\t{pairs}")
    return "\n".join(lines) + "\n"


def parse_results(text: str) -> QueryResult:
    """Parse the structured text document back into a QueryResult."""
    lines = text.splitlines()
    if not lines or lines[0] != RESULTS_HEADER:
        raise ParseError("missing results header line")
    selection = None
    ranked = []
    expected_rank = 1
    for line in lines[1:]:
        if not line.strip():
            continue
        if line.startswith("#selection "):
            selection = parse_selection(line[len("#selection ") :])
            continue
        if line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise ParseError(f"bad result line: {line!r}")
        rank_s, video_id, dist_s, pairs_s = fields
        if int(rank_s) != expected_rank:
            raise ParseError(f"ranks out of order at {line!r}")
        expected_rank += 1
        pairs = []
        if pairs_s:
            for part in pairs_s.split(";"):
                q, db, d = part.split(":")
                pairs.append(
                    MatchPair(query_frame=int(q), db_frame=int(db), distance=float(d))
                )
        ranked.append(
            RankedMatch(
                video_id=video_id,
                distance=float(dist_s),
                best_matches=tuple(pairs),
            )
        )
    if selection is None:
        raise ParseError("missing #selection line")
    return QueryResult(ranked=tuple(ranked), selection=selection)


def format_results_text(result: QueryResult) -> str:
    """Human-readable table of the same ranking."""
    lines = [f"selection: {format_selection(result.selection)}"]
    if not result.ranked:
        lines.append("(no results)")
    for rank, match in enumerate(result.ranked, start=1):
        lines.append(f"{rank:4d}  {match.distance:12.6f}  {match.video_id}")
        for p in match.best_matches:
            lines.append(
                f"      query frame {p.query_frame} ~ db frame {p.db_frame}"
                f"  ({p.distance:.6f})"
            )
    return "\n".join(lines) + "\n"
