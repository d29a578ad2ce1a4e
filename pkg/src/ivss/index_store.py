"""The feature index: registered videos and their on-disk IVSSIDX1 format.

An index holds one :class:`VideoRecord` per registered video: its shots, key
frames, and per-key-frame descriptor sets, all computed under the index's
single configuration.  Indexes are immutable in memory; registration returns
a new index value, and :func:`save` writes atomically (temp file + rename).

On disk an index is a single self-describing container: 8-byte magic
``IVSSIDX1``, a format version, a human-readable config header, then one
length-prefixed binary block per record with every real number stored as a
little-endian float64, so save/load round-trips descriptor values exactly.
"""

from __future__ import annotations

import hashlib
import io
import logging
import os
import struct
import tempfile
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable

import numpy as np

from .color_core import Histogram
from .config import IndexConfig
from .descriptors import CCV, GCH, LCH, AvgRGB, DescriptorSet, Moments
from .errors import (
    ConfigMismatchError,
    EmptySourceError,
    ParseError,
    VersionError,
)
from .frame_io import FrameRGB, FrameSource, downscale
from .keyframes import KeyFrame, Shot, detect_shots, extract_keyframes

log = logging.getLogger("ivss")

INDEX_MAGIC = b"IVSSIDX1"
FORMAT_VERSION = 1
THUMBNAIL_MAX_DIM = 256


@dataclass(frozen=True)
class VideoRecord:
    video_id: str
    display_name: str
    source_locator: str
    shots: tuple[Shot, ...]
    keyframes: tuple[KeyFrame, ...]
    indexed_at: float


@dataclass(frozen=True)
class FeatureIndex:
    config: IndexConfig
    records: tuple[VideoRecord, ...] = ()
    format_version: int = FORMAT_VERSION

    def find(self, video_id: str) -> VideoRecord | None:
        for rec in self.records:
            if rec.video_id == video_id:
                return rec
        return None

    def with_record(self, record: VideoRecord) -> "FeatureIndex":
        extraction = self.config.extraction()
        for kf in record.keyframes:
            if kf.descriptors.config != extraction:
                raise ConfigMismatchError(
                    "record descriptors were computed under a different config"
                )
        return replace(self, records=self.records + (record,))

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class RegisterResult:
    index: FeatureIndex
    record: VideoRecord
    created: bool


def register_video(
    index: FeatureIndex,
    source: FrameSource | Iterable[FrameRGB],
    display_name: str,
    source_locator: str | None = None,
) -> RegisterResult:
    """Run the full pipeline on a source and append the resulting record.

    The video id is a content hash of the descriptor payload, so registering
    identical pixel content twice is an idempotent no-op (the existing record
    is returned and ``created`` is False).
    """
    frames = list(source)
    if not frames:
        raise EmptySourceError("cannot register an empty source")
    cfg = index.config
    extraction = cfg.extraction()
    shots = detect_shots(frames, extraction.quantizer, cfg.shot_threshold)
    keyframes = extract_keyframes(frames, shots, cfg.cluster_delta, extraction)
    keyframes = [
        replace(kf, thumbnail=downscale(frames[kf.frame_index], THUMBNAIL_MAX_DIM))
        for kf in keyframes
    ]
    video_id = content_id(cfg, shots, keyframes)
    existing = index.find(video_id)
    if existing is not None:
        log.info(
            "source %r has the same content as registered video %s; keeping the existing record",
            display_name,
            video_id,
        )
        return RegisterResult(index=index, record=existing, created=False)
    if source_locator is None:
        source_locator = getattr(source, "locator", "") or ""
    record = VideoRecord(
        video_id=video_id,
        display_name=display_name,
        source_locator=source_locator,
        shots=tuple(shots),
        keyframes=tuple(keyframes),
        indexed_at=time.time(),
    )
    return RegisterResult(index=index.with_record(record), record=record, created=True)


# --- Binary packing ---

_U16 = struct.Struct("<H")
_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")
_F64 = struct.Struct("<d")


def _pack_str(out: io.BytesIO, s: str) -> None:
    data = s.encode("utf-8")
    if len(data) > 0xFFFF:
        raise ValueError("string field too long")
    out.write(_U16.pack(len(data)))
    out.write(data)


def _pack_floats(out: io.BytesIO, values) -> None:
    out.write(np.asarray(values, dtype="<f8").tobytes())


def _pack_histogram(out: io.BytesIO, hist: Histogram) -> None:
    out.write(_U32.pack(hist.bin_count))
    _pack_floats(out, hist.bins)
    out.write(_U64.pack(hist.pixel_count))


def _pack_keyframe(out: io.BytesIO, kf: KeyFrame, with_thumbnail: bool) -> None:
    d = kf.descriptors
    out.write(_U32.pack(kf.frame_index))
    out.write(_U32.pack(kf.shot_id))
    _pack_floats(out, [d.avg_rgb.mean_r, d.avg_rgb.mean_g, d.avg_rgb.mean_b])
    _pack_histogram(out, d.gch.histogram)
    out.write(_U16.pack(d.lch.grid_rows))
    out.write(_U16.pack(d.lch.grid_cols))
    for block in d.lch.blocks:
        _pack_histogram(out, block)
    _pack_floats(out, list(d.moments.mean) + list(d.moments.stddev) + list(d.moments.skewness))
    out.write(_F64.pack(d.ccv.tau))
    out.write(_U32.pack(d.ccv.bin_count))
    _pack_floats(out, d.ccv.coherent)
    _pack_floats(out, d.ccv.incoherent)
    if with_thumbnail and kf.thumbnail is not None:
        out.write(_U16.pack(kf.thumbnail.width))
        out.write(_U16.pack(kf.thumbnail.height))
        out.write(kf.thumbnail.pixels.tobytes())
    else:
        out.write(_U16.pack(0))
        out.write(_U16.pack(0))


def _pack_record_body(record: VideoRecord, with_thumbnails: bool = True) -> bytes:
    out = io.BytesIO()
    _pack_str(out, record.video_id)
    _pack_str(out, record.display_name)
    _pack_str(out, record.source_locator)
    out.write(_F64.pack(record.indexed_at))
    out.write(_U32.pack(len(record.shots)))
    for shot in record.shots:
        out.write(_U32.pack(shot.start))
        out.write(_U32.pack(shot.end))
    out.write(_U32.pack(len(record.keyframes)))
    for kf in record.keyframes:
        _pack_keyframe(out, kf, with_thumbnails)
    return out.getvalue()


def _config_text(cfg: IndexConfig) -> str:
    return (
        f"bits={cfg.bits}\n"
        f"grid={cfg.grid_rows}x{cfg.grid_cols}\n"
        f"tau={cfg.tau!r}\n"
        f"shot_threshold={cfg.shot_threshold!r}\n"
        f"cluster_delta={cfg.cluster_delta!r}\n"
    )


def _parse_config_text(text: str) -> IndexConfig:
    fields: dict[str, str] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()
    try:
        rows, _, cols = fields["grid"].partition("x")
        return IndexConfig(
            bits=int(fields["bits"]),
            grid_rows=int(rows),
            grid_cols=int(cols),
            tau=float(fields["tau"]),
            shot_threshold=float(fields["shot_threshold"]),
            cluster_delta=float(fields["cluster_delta"]),
        )
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad index config header: {exc}") from exc


def content_id(cfg: IndexConfig, shots, keyframes) -> str:
    """Content hash of the descriptor payload (thumbnails excluded)."""
    out = io.BytesIO()
    out.write(_config_text(cfg).encode("utf-8"))
    out.write(_U32.pack(len(shots)))
    for shot in shots:
        out.write(_U32.pack(shot.start))
        out.write(_U32.pack(shot.end))
    for kf in keyframes:
        _pack_keyframe(out, kf, with_thumbnail=False)
    return hashlib.sha256(out.getvalue()).hexdigest()[:16]


# --- Reading ---


class _Cursor:
    def __init__(self, data: bytes, offset: int = 0) -> None:
        self.data = data
        self.pos = offset

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise ParseError(
                f"index file truncated at byte {len(self.data)} "
                f"(needed {self.pos + n})"
            )
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u16(self) -> int:
        return _U16.unpack(self.take(2))[0]

    def u32(self) -> int:
        return _U32.unpack(self.take(4))[0]

    def u64(self) -> int:
        return _U64.unpack(self.take(8))[0]

    def f64(self) -> float:
        return _F64.unpack(self.take(8))[0]

    def floats(self, n: int) -> np.ndarray:
        return np.frombuffer(self.take(8 * n), dtype="<f8").copy()

    def string(self) -> str:
        n = self.u16()
        return self.take(n).decode("utf-8")


def _read_histogram(cur: _Cursor) -> Histogram:
    n = cur.u32()
    bins = cur.floats(n)
    pixel_count = cur.u64()
    return Histogram(bins=bins, pixel_count=pixel_count)


def _read_keyframe(cur: _Cursor, cfg: IndexConfig) -> KeyFrame:
    frame_index = cur.u32()
    shot_id = cur.u32()
    avg = cur.floats(3)
    gch = GCH(histogram=_read_histogram(cur))
    grid_rows = cur.u16()
    grid_cols = cur.u16()
    blocks = tuple(_read_histogram(cur) for _ in range(grid_rows * grid_cols))
    m = cur.floats(9)
    tau = cur.f64()
    nbins = cur.u32()
    coherent = cur.floats(nbins)
    incoherent = cur.floats(nbins)
    tw = cur.u16()
    th = cur.u16()
    thumbnail = None
    if tw and th:
        raw = cur.take(tw * th * 3)
        thumbnail = FrameRGB(np.frombuffer(raw, dtype=np.uint8).reshape(th, tw, 3))
    descriptors = DescriptorSet(
        avg_rgb=AvgRGB(mean_r=float(avg[0]), mean_g=float(avg[1]), mean_b=float(avg[2])),
        gch=gch,
        lch=LCH(grid_rows=grid_rows, grid_cols=grid_cols, blocks=blocks),
        moments=Moments(
            mean=tuple(float(x) for x in m[0:3]),
            stddev=tuple(float(x) for x in m[3:6]),
            skewness=tuple(float(x) for x in m[6:9]),
        ),
        ccv=CCV(coherent=coherent, incoherent=incoherent, tau=tau),
        config=cfg.extraction(),
    )
    return KeyFrame(
        frame_index=frame_index,
        shot_id=shot_id,
        descriptors=descriptors,
        thumbnail=thumbnail,
    )


def _read_record(data: bytes, cfg: IndexConfig, base_offset: int) -> VideoRecord:
    cur = _Cursor(data)
    try:
        video_id = cur.string()
        display_name = cur.string()
        source_locator = cur.string()
        indexed_at = cur.f64()
        shots = tuple(Shot(cur.u32(), cur.u32()) for _ in range(cur.u32()))
        keyframes = tuple(_read_keyframe(cur, cfg) for _ in range(cur.u32()))
    except ParseError:
        raise ParseError(f"corrupt record block at byte {base_offset}") from None
    return VideoRecord(
        video_id=video_id,
        display_name=display_name,
        source_locator=source_locator,
        shots=shots,
        keyframes=keyframes,
        indexed_at=indexed_at,
    )


def save(index: FeatureIndex, path: str | Path) -> None:
    """Write the index to disk atomically."""
    out = io.BytesIO()
    out.write(INDEX_MAGIC)
    out.write(_U32.pack(index.format_version))
    config_blob = _config_text(index.config).encode("utf-8")
    out.write(_U32.pack(len(config_blob)))
    out.write(config_blob)
    out.write(_U32.pack(len(index.records)))
    for record in index.records:
        body = _pack_record_body(record)
        out.write(_U32.pack(len(body)))
        out.write(body)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(out.getvalue())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load(path: str | Path) -> FeatureIndex:
    """Read an IVSSIDX1 file back into a FeatureIndex."""
    data = Path(path).read_bytes()
    cur = _Cursor(data)
    magic = cur.take(8)
    if magic != INDEX_MAGIC:
        raise ParseError(f"bad index magic {magic!r}")
    version = cur.u32()
    if version > FORMAT_VERSION:
        raise VersionError(
            f"index written by format version {version}, "
            f"this build reads up to {FORMAT_VERSION}"
        )
    config_blob = cur.take(cur.u32())
    cfg = _parse_config_text(config_blob.decode("utf-8"))
    record_count = cur.u32()
    records = []
    for _ in range(record_count):
        base = cur.pos
        body = cur.take(cur.u32())
        records.append(_read_record(body, cfg, base))
    return FeatureIndex(config=cfg, records=tuple(records), format_version=version)


def load_or_create(path: str | Path, cfg: IndexConfig | None = None) -> FeatureIndex:
    """Load an index if the file exists, otherwise start an empty one."""
    if Path(path).exists():
        return load(path)
    return FeatureIndex(config=cfg if cfg is not None else IndexConfig())
