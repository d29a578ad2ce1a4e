"""Frame loading: binary PPM files, frame directories, and raw RGB streams.

Every video enters the engine as an ordered sequence of ``FrameRGB`` values.
Decoding of real container formats (MPEG, AVI, ...) is out of process: an
external decoder pipes raw RGB into the ``IVSSRAW1`` stream format documented
in the README, and :func:`open_raw_stream` picks it up from there.
"""

from __future__ import annotations

import io
import re
import struct
import warnings
from pathlib import Path
from typing import BinaryIO, Callable, Iterable, Iterator

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptySourceError,
    GapWarning,
    ParseError,
    TruncatedError,
    UnsupportedError,
)

RAW_MAGIC = b"IVSSRAW1"
RAW_HEADER = struct.Struct("<8sII")

FRAME_FILE_RE = re.compile(r"^frame_(\d+)\.ppm$")
FRAME_FILE_FMT = "frame_%06d.ppm"


class FrameRGB:
    """One decoded frame: an immutable (height, width, 3) uint8 raster."""

    __slots__ = ("pixels",)

    def __init__(self, pixels) -> None:
        arr = np.asarray(pixels)
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError("pixel values must be integers")
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("channel values must lie in [0, 255]")
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError("expected an array of shape (height, width, 3)")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("frame must contain at least one pixel")
        arr = np.ascontiguousarray(arr, dtype=np.uint8).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)

    def __setattr__(self, name, value):
        raise AttributeError("FrameRGB is immutable")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def pixel_count(self) -> int:
        return self.pixels.shape[0] * self.pixels.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FrameRGB):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    def __hash__(self):
        return hash((self.pixels.shape, self.pixels.tobytes()))

    def __repr__(self) -> str:
        return f"FrameRGB({self.width}x{self.height})"


class FrameSource:
    """An ordered, dimension-uniform sequence of frames.

    ``frame_count`` is known up front for directory and single-image sources
    and only after exhaustion for raw streams.  Raw-stream sources are
    single-use; directory sources may be iterated repeatedly.  Iteration is
    single-consumer either way.
    """

    def __init__(
        self,
        kind: str,
        locator: str,
        make_iter: Callable[["FrameSource"], Iterator[FrameRGB]],
        frame_count: int | None = None,
        width: int | None = None,
        height: int | None = None,
        reiterable: bool = True,
    ) -> None:
        self.kind = kind
        self.locator = locator
        self.frame_count = frame_count
        self.width = width
        self.height = height
        self._make_iter = make_iter
        self._reiterable = reiterable
        self._consumed = False

    def __iter__(self) -> Iterator[FrameRGB]:
        if self._consumed and not self._reiterable:
            raise RuntimeError(f"{self.kind} source is single-use and already consumed")
        self._consumed = True
        return self._make_iter(self)

    def read_all(self) -> list[FrameRGB]:
        return list(self)

    def __repr__(self) -> str:
        return f"FrameSource(kind={self.kind!r}, locator={self.locator!r}, frames={self.frame_count})"


# --- PPM (binary P6, maxval 255) ---


def _parse_ppm_header(data: bytes) -> tuple[int, int, int, int]:
    """Return (width, height, maxval, pixel_data_offset) for a P6 header."""
    if data[:2] != b"P6":
        raise ParseError("not a binary PPM: missing P6 magic")
    pos = 2
    fields: list[int] = []
    while len(fields) < 3:
        if pos >= len(data):
            raise ParseError("PPM header ended before width/height/maxval")
        c = data[pos : pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            nl = data.find(b"\n", pos)
            if nl < 0:
                raise ParseError("unterminated comment in PPM header")
            pos = nl + 1
        elif c.isdigit():
            start = pos
            while pos < len(data) and data[pos : pos + 1].isdigit():
                pos += 1
            fields.append(int(data[start:pos]))
        else:
            raise ParseError(f"unexpected byte {c!r} in PPM header")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise ParseError("PPM header must end with a single whitespace byte")
    pos += 1
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise ParseError(f"illegal PPM dimensions {width}x{height}")
    return width, height, maxval, pos


def load_ppm(data: bytes) -> FrameRGB:
    """Decode binary PPM bytes. Only maxval 255 is supported."""
    width, height, maxval, offset = _parse_ppm_header(data)
    if maxval != 255:
        raise UnsupportedError(f"PPM maxval {maxval} not supported (need 255)")
    need = width * height * 3
    raw = data[offset : offset + need]
    if len(raw) < need:
        raise TruncatedError(
            f"PPM pixel data truncated: expected {need} bytes, got {len(raw)}"
        )
    arr = np.frombuffer(raw, dtype=np.uint8).reshape(height, width, 3)
    return FrameRGB(arr)


def write_ppm(frame: FrameRGB) -> bytes:
    """Encode a frame as canonical binary PPM (single-whitespace header)."""
    header = b"P6\n%d %d\n255\n" % (frame.width, frame.height)
    return header + frame.pixels.tobytes()


def load_ppm_file(path: str | Path) -> FrameRGB:
    return load_ppm(Path(path).read_bytes())


def write_ppm_file(frame: FrameRGB, path: str | Path) -> None:
    Path(path).write_bytes(write_ppm(frame))


# --- Frame directories ---


def open_frame_dir(path: str | Path) -> FrameSource:
    """Open a directory of ``frame_<index>.ppm`` files as a FrameSource.

    Frames iterate in index order.  Gaps in the index sequence produce a
    GapWarning but are otherwise tolerated; mixed dimensions are not.
    """
    root = Path(path)
    if not root.is_dir():
        raise EmptySourceError(f"not a directory: {root}")
    entries: list[tuple[int, Path]] = []
    for p in root.iterdir():
        m = FRAME_FILE_RE.match(p.name)
        if m:
            entries.append((int(m.group(1)), p))
    if not entries:
        raise EmptySourceError(f"no frame_<index>.ppm files in {root}")
    entries.sort(key=lambda e: e[0])

    indices = [i for i, _ in entries]
    if indices != list(range(indices[0], indices[0] + len(indices))):
        warnings.warn(
            f"frame indices in {root} have gaps: {indices[0]}..{indices[-1]} "
            f"with {len(indices)} files",
            GapWarning,
            stacklevel=2,
        )

    dims: tuple[int, int] | None = None
    for idx, p in entries:
        with open(p, "rb") as fh:
            head = fh.read(512)
        w, h, _, _ = _parse_ppm_header(head)
        if dims is None:
            dims = (w, h)
        elif dims != (w, h):
            raise DimensionMismatchError(
                f"{p.name} is {w}x{h}, expected {dims[0]}x{dims[1]}"
            )
    assert dims is not None

    files = [p for _, p in entries]

    def gen(_src: FrameSource) -> Iterator[FrameRGB]:
        for p in files:
            yield load_ppm_file(p)

    return FrameSource(
        kind="frame-directory",
        locator=str(root),
        make_iter=gen,
        frame_count=len(files),
        width=dims[0],
        height=dims[1],
        reiterable=True,
    )


def write_frame_dir(frames: Iterable[FrameRGB], path: str | Path) -> int:
    """Dump frames as frame_%06d.ppm files; returns the number written."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    n = 0
    for i, frame in enumerate(frames):
        write_ppm_file(frame, root / (FRAME_FILE_FMT % i))
        n += 1
    return n


# --- IVSSRAW1 streams ---


def open_raw_stream(stream: BinaryIO, locator: str = "<stream>") -> FrameSource:
    """Open an IVSSRAW1 byte stream as a lazy, single-use FrameSource.

    Layout: 8-byte magic ``IVSSRAW1``, u32le width, u32le height, then
    width*height*3 RGB bytes per frame until end of stream.
    """
    header = stream.read(RAW_HEADER.size)
    if len(header) < RAW_HEADER.size:
        raise ParseError(
            f"raw stream header truncated: got {len(header)} of {RAW_HEADER.size} bytes"
        )
    magic, width, height = RAW_HEADER.unpack(header)
    if magic != RAW_MAGIC:
        raise ParseError(f"bad raw stream magic {magic!r}")
    if width < 1 or height < 1:
        raise ParseError(f"illegal raw stream dimensions {width}x{height}")
    frame_bytes = width * height * 3

    def gen(src: FrameSource) -> Iterator[FrameRGB]:
        offset = RAW_HEADER.size
        count = 0
        while True:
            chunk = stream.read(frame_bytes)
            if not chunk:
                break
            if len(chunk) < frame_bytes:
                raise TruncatedError(
                    f"partial frame at byte offset {offset}: "
                    f"got {len(chunk)} of {frame_bytes} bytes"
                )
            arr = np.frombuffer(chunk, dtype=np.uint8).reshape(height, width, 3)
            yield FrameRGB(arr)
            offset += frame_bytes
            count += 1
        src.frame_count = count

    return FrameSource(
        kind="raw-stream",
        locator=locator,
        make_iter=gen,
        frame_count=None,
        width=width,
        height=height,
        reiterable=False,
    )


def write_raw_stream(frames: Iterable[FrameRGB]) -> bytes:
    """Encode frames as one IVSSRAW1 byte string (all frames same size)."""
    out = io.BytesIO()
    dims: tuple[int, int] | None = None
    for frame in frames:
        if dims is None:
            dims = (frame.width, frame.height)
            out.write(RAW_HEADER.pack(RAW_MAGIC, frame.width, frame.height))
        elif dims != (frame.width, frame.height):
            raise DimensionMismatchError(
                f"frame is {frame.width}x{frame.height}, expected {dims[0]}x{dims[1]}"
            )
        out.write(frame.pixels.tobytes())
    if dims is None:
        raise EmptySourceError("no frames to write")
    return out.getvalue()


# --- Misc sources ---


def open_single_image(path: str | Path) -> FrameSource:
    """Treat one PPM file as a one-frame video."""
    frame = load_ppm_file(path)

    def gen(_src: FrameSource) -> Iterator[FrameRGB]:
        yield frame

    return FrameSource(
        kind="single-image",
        locator=str(path),
        make_iter=gen,
        frame_count=1,
        width=frame.width,
        height=frame.height,
        reiterable=True,
    )


def frames_source(frames: list[FrameRGB], locator: str = "<memory>") -> FrameSource:
    """Wrap an in-memory frame list as a FrameSource (test and synth helper)."""
    if not frames:
        raise EmptySourceError("no frames")
    w, h = frames[0].width, frames[0].height
    for f in frames[1:]:
        if (f.width, f.height) != (w, h):
            raise DimensionMismatchError("frames differ in size")

    def gen(_src: FrameSource) -> Iterator[FrameRGB]:
        return iter(frames)

    return FrameSource(
        kind="frame-directory",
        locator=locator,
        make_iter=gen,
        frame_count=len(frames),
        width=w,
        height=h,
        reiterable=True,
    )


def open_source(path: str | Path) -> FrameSource:
    """Open a path as whichever source kind it looks like.

    Directories become frame-directory sources; ``.ppm`` files single-image
    sources; anything else is read as an IVSSRAW1 stream.
    """
    p = Path(path)
    if p.is_dir():
        return open_frame_dir(p)
    if p.suffix.lower() == ".ppm":
        return open_single_image(p)
    return open_raw_stream(open(p, "rb"), locator=str(p))


def downscale(frame: FrameRGB, max_dim: int = 256) -> FrameRGB:
    """Nearest-neighbor downscale so that max(width, height) <= max_dim."""
    h, w = frame.height, frame.width
    m = max(h, w)
    if m <= max_dim:
        return frame
    nh = max(1, h * max_dim // m)
    nw = max(1, w * max_dim // m)
    rows = np.arange(nh) * h // nh
    cols = np.arange(nw) * w // nw
    return FrameRGB(frame.pixels[rows][:, cols])
