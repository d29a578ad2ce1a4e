"""HTTP facade over the engine: register videos, search, serve thumbnails.

Endpoints:

  POST /api/videos                       register a video (raw upload or path)
  POST /api/search                       query by clip, returns the structured
                                         results document (same bytes as the CLI)
  GET  /api/videos                       list registered videos
  GET  /api/videos/{id}                  one record with key-frame details
  GET  /api/keyframes/{id}/{frame}.png   stored key-frame thumbnail
  GET  /                                 static UI bundle (or a placeholder)

Request bodies are either JSON (``{"path": ..., "name": ...}`` referencing a
server-side source) or ``application/octet-stream`` carrying an IVSSRAW1
stream, with ``name`` / ``selection`` / ``top_k`` as query parameters.

The in-memory index sits behind an atomic-swap handle: searches snapshot the
reference once, registration builds a new index value under a writer lock and
swaps it in, so a search never observes a partially registered video.
"""

from __future__ import annotations

import io
import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .config import IndexConfig
from .errors import (
    ConfigError,
    EmptyIndexError,
    EmptySourceError,
    IvssError,
    ParseError,
    TruncatedError,
    UnsupportedError,
)
from .frame_io import open_raw_stream, open_source
from .index_store import FeatureIndex, load, register_video, save
from .pngenc import encode_png
from .retrieval import format_results, query_by_clip
from .similarity import all_descriptors, parse_selection

log = logging.getLogger("ivss.api")

PLACEHOLDER_PAGE = b"""<!doctype html>
<html><head><title>ivss</title></head>
<body>
<h1>ivss</h1>
<p>The web UI bundle is not built. The API is live under <code>/api/</code>:</p>
<ul>
<li>POST /api/videos</li>
<li>POST /api/search</li>
<li>GET /api/videos</li>
</ul>
</body></html>
"""


class ApiError(Exception):
    """Handler failure with a fixed (HTTP status, machine code) pair."""

    def __init__(self, status: int, code: str, message: str) -> None:
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class App:
    """Engine state shared by all request handler threads."""

    def __init__(
        self,
        index_path: str | Path,
        config: IndexConfig | None = None,
        static_dir: str | Path | None = None,
        max_upload_bytes: int = 256 * 1024 * 1024,
    ) -> None:
        self.index_path = Path(index_path)
        if self.index_path.exists():
            self._index = load(self.index_path)
        else:
            self._index = FeatureIndex(config=config if config else IndexConfig())
        self._write_lock = threading.Lock()
        self.static_dir = Path(static_dir) if static_dir else None
        self.max_upload_bytes = max_upload_bytes

    @property
    def index(self) -> FeatureIndex:
        return self._index  # reference read is atomic; snapshot once per request

    def register(self, source, name: str, locator: str) -> tuple[dict, bool]:
        with self._write_lock:
            result = register_video(self._index, source, name, source_locator=locator)
            if result.created:
                save(result.index, self.index_path)
                self._index = result.index
        rec = result.record
        summary = {
            "video_id": rec.video_id,
            "display_name": rec.display_name,
            "shot_count": len(rec.shots),
            "keyframe_count": len(rec.keyframes),
        }
        return summary, result.created


def _record_summary(rec) -> dict:
    return {
        "video_id": rec.video_id,
        "display_name": rec.display_name,
        "source_locator": rec.source_locator,
        "indexed_at": rec.indexed_at,
        "shot_count": len(rec.shots),
        "keyframe_count": len(rec.keyframes),
    }


def _record_detail(rec) -> dict:
    detail = _record_summary(rec)
    detail["shots"] = [{"start": s.start, "end": s.end} for s in rec.shots]
    detail["keyframes"] = [
        {
            "frame_index": kf.frame_index,
            "shot_id": kf.shot_id,
            "thumbnail": f"/api/keyframes/{rec.video_id}/{kf.frame_index}.png",
        }
        for kf in rec.keyframes
    ]
    return detail


class Handler(BaseHTTPRequestHandler):
    app: App  # set by make_server

    # --- plumbing ---

    def log_message(self, fmt, *args):
        log.debug("%s " + fmt, self.address_string(), *args)

    def _send(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload) -> None:
        self._send(status, json.dumps(payload, indent=1).encode("utf-8"),
                   "application/json; charset=utf-8")

    def _send_error_json(self, err: ApiError) -> None:
        self._send_json(err.status, {"code": err.code, "message": err.message})

    def _read_body(self) -> bytes:
        length = int(self.headers.get("Content-Length", "0") or "0")
        if length > self.app.max_upload_bytes:
            raise ApiError(413, "too-large",
                           f"upload exceeds {self.app.max_upload_bytes} bytes")
        return self.rfile.read(length)

    def _query_params(self) -> dict[str, str]:
        qs = parse_qs(urlparse(self.path).query)
        return {k: v[0] for k, v in qs.items()}

    def _route(self) -> str:
        return urlparse(self.path).path

    # --- request sources ---

    def _body_source(self, body: bytes, params: dict[str, str]):
        """Interpret a POST body as a frame source; returns (source, locator)."""
        ctype = (self.headers.get("Content-Type") or "").split(";")[0].strip()
        if ctype == "application/json":
            try:
                payload = json.loads(body.decode("utf-8"))
            except (ValueError, UnicodeDecodeError) as exc:
                raise ApiError(400, "bad-json", f"malformed JSON body: {exc}") from exc
            if not isinstance(payload, dict) or "path" not in payload:
                raise ApiError(400, "bad-json", "JSON body must carry a 'path' field")
            path = str(payload["path"])
            try:
                source = open_source(path)
            except (ParseError, UnsupportedError) as exc:
                raise ApiError(400, "bad-source", str(exc)) from exc
            except (EmptySourceError, OSError) as exc:
                raise ApiError(422, "empty-source", str(exc)) from exc
            return source, path, payload
        # Raw IVSSRAW1 upload.
        try:
            source = open_raw_stream(io.BytesIO(body), locator="<upload>")
        except ParseError as exc:
            raise ApiError(400, "bad-stream", str(exc)) from exc
        return source, "<upload>", params

    # --- handlers ---

    def do_GET(self) -> None:  # noqa: N802 (http.server API)
        try:
            route = self._route()
            if route == "/api/videos":
                index = self.app.index
                self._send_json(200, [_record_summary(r) for r in index.records])
            elif route.startswith("/api/videos/"):
                video_id = route[len("/api/videos/") :]
                rec = self.app.index.find(video_id)
                if rec is None:
                    raise ApiError(404, "unknown-video", f"no video {video_id!r}")
                self._send_json(200, _record_detail(rec))
            elif route.startswith("/api/keyframes/"):
                self._serve_thumbnail(route)
            else:
                self._serve_static(route)
        except ApiError as err:
            self._send_error_json(err)
        except Exception as exc:  # pragma: no cover - last-resort guard
            log.exception("unhandled error in GET %s", self.path)
            self._send_error_json(ApiError(500, "internal", str(exc)))

    def do_POST(self) -> None:  # noqa: N802
        try:
            route = self._route()
            params = self._query_params()
            body = self._read_body()
            if route == "/api/videos":
                self._post_video(body, params)
            elif route == "/api/search":
                self._post_search(body, params)
            else:
                raise ApiError(404, "unknown-endpoint", f"no endpoint {route}")
        except ApiError as err:
            self._send_error_json(err)
        except Exception as exc:  # pragma: no cover
            log.exception("unhandled error in POST %s", self.path)
            self._send_error_json(ApiError(500, "internal", str(exc)))

    def _post_video(self, body: bytes, params: dict[str, str]) -> None:
        source, locator, payload = self._body_source(body, params)
        name = None
        if isinstance(payload, dict):
            name = payload.get("name") or params.get("name")
        if not name:
            name = Path(locator).stem if locator != "<upload>" else "upload"
        try:
            summary, created = self.app.register(source, str(name), locator)
        except EmptySourceError as exc:
            raise ApiError(422, "empty-source", str(exc)) from exc
        except (ParseError, TruncatedError, UnsupportedError) as exc:
            raise ApiError(400, "bad-source", str(exc)) from exc
        if created:
            self._send_json(201, summary)
        else:
            self._send_json(409, {"code": "duplicate-content", **summary})

    def _post_search(self, body: bytes, params: dict[str, str]) -> None:
        source, _, payload = self._body_source(body, params)
        opts = payload if isinstance(payload, dict) else params
        selection_text = opts.get("selection")
        try:
            sel = parse_selection(str(selection_text)) if selection_text else all_descriptors()
        except ConfigError as exc:
            raise ApiError(400, "bad-selection", str(exc)) from exc
        try:
            top_k = int(opts.get("top_k", 5))
        except (TypeError, ValueError) as exc:
            raise ApiError(400, "bad-top-k", f"top_k must be an integer") from exc
        try:
            result = query_by_clip(self.app.index, source, sel, top_k=top_k)
        except EmptyIndexError as exc:
            raise ApiError(409, "empty-index", str(exc)) from exc
        except EmptySourceError as exc:
            raise ApiError(422, "empty-source", str(exc)) from exc
        except (ParseError, TruncatedError, ConfigError) as exc:
            raise ApiError(400, "bad-query", str(exc)) from exc
        self._send(200, format_results(result).encode("utf-8"),
                   "text/plain; charset=utf-8")

    def _serve_thumbnail(self, route: str) -> None:
        tail = route[len("/api/keyframes/") :]
        parts = tail.split("/")
        if len(parts) != 2 or not parts[1].endswith(".png"):
            raise ApiError(404, "unknown-thumbnail", f"bad thumbnail path {route}")
        video_id, frame_part = parts
        try:
            frame_index = int(frame_part[: -len(".png")])
        except ValueError:
            raise ApiError(404, "unknown-thumbnail", f"bad frame index in {route}") from None
        rec = self.app.index.find(video_id)
        if rec is None:
            raise ApiError(404, "unknown-video", f"no video {video_id!r}")
        for kf in rec.keyframes:
            if kf.frame_index == frame_index and kf.thumbnail is not None:
                self._send(200, encode_png(kf.thumbnail), "image/png")
                return
        raise ApiError(404, "unknown-keyframe",
                       f"video {video_id} has no key frame {frame_index}")

    def _serve_static(self, route: str) -> None:
        if self.app.static_dir is None or not self.app.static_dir.is_dir():
            if route in ("/", "/index.html"):
                self._send(200, PLACEHOLDER_PAGE, "text/html; charset=utf-8")
                return
            raise ApiError(404, "not-found", f"no static file {route}")
        rel = route.lstrip("/") or "index.html"
        base = self.app.static_dir.resolve()
        target = (base / rel).resolve()
        if base not in target.parents and target != base:
            raise ApiError(404, "not-found", "path escapes the static root")
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            raise ApiError(404, "not-found", f"no static file {route}")
        content_types = {
            ".html": "text/html; charset=utf-8",
            ".js": "text/javascript; charset=utf-8",
            ".css": "text/css; charset=utf-8",
            ".png": "image/png",
            ".map": "application/json",
        }
        ctype = content_types.get(target.suffix, "application/octet-stream")
        self._send(200, target.read_bytes(), ctype)


def make_server(app: App, host: str = "127.0.0.1", port: int = 0) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (Handler,), {"app": app})
    return ThreadingHTTPServer((host, port), handler)


def serve(
    index_path: str | Path,
    host: str = "127.0.0.1",
    port: int = 8765,
    static_dir: str | Path | None = None,
    max_upload_bytes: int = 256 * 1024 * 1024,
    config: IndexConfig | None = None,
) -> None:
    """Run the HTTP service until interrupted."""
    app = App(
        index_path=index_path,
        config=config,
        static_dir=static_dir,
        max_upload_bytes=max_upload_bytes,
    )
    server = make_server(app, host=host, port=port)
    log.info("serving on http://%s:%d (index: %s)", host, server.server_address[1], index_path)
    print(f"ivss API listening on http://{host}:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
