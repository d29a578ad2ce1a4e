"""Minimal PNG writer for key-frame thumbnails.

Truecolor 8-bit, no interlace, filter 0 on every scanline. Enough for the
gallery endpoint; reading PNGs is out of scope.
"""

from __future__ import annotations

import struct
import zlib

from .frame_io import FrameRGB

_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def _chunk(tag: bytes, payload: bytes) -> bytes:
    crc = zlib.crc32(tag + payload) & 0xFFFFFFFF
    return struct.pack(">I", len(payload)) + tag + payload + struct.pack(">I", crc)


def encode_png(frame: FrameRGB) -> bytes:
    ihdr = struct.pack(">IIBBBBB", frame.width, frame.height, 8, 2, 0, 0, 0)
    raw = b"".join(b"\x00" + row.tobytes() for row in frame.pixels)
    return (
        _SIGNATURE
        + _chunk(b"IHDR", ihdr)
        + _chunk(b"IDAT", zlib.compress(raw, 9))
        + _chunk(b"IEND", b"")
    )
