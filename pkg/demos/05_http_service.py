"""Drive the HTTP service end to end in one process.

Starts the API on an ephemeral port, registers two clips (one by server-side
path, one as a raw IVSSRAW1 upload), searches, and fetches a key-frame
thumbnail -- the same surface the web UI consumes.

Run:  python demos/05_http_service.py
"""

import json
import tempfile
import threading
import urllib.request
from pathlib import Path

from ivss.api import App, make_server
from ivss.frame_io import write_frame_dir, write_raw_stream
from ivss.synth import BLUE, RED, cut_video, solid_video

workdir = Path(tempfile.mkdtemp(prefix="ivss_demo_"))
red_dir = workdir / "red"
write_frame_dir(solid_video(RED, 6), red_dir)

app = App(index_path=workdir / "demo.ivssidx")
server = make_server(app, port=0)
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{server.server_address[1]}"
print(f"API up at {base}")


def call(path, data=None, content_type=None):
    req = urllib.request.Request(base + path, data=data, method="POST" if data else "GET")
    if content_type:
        req.add_header("Content-Type", content_type)
    with urllib.request.urlopen(req) as resp:
        return resp.status, resp.read()


status, body = call("/api/videos", json.dumps({"path": str(red_dir), "name": "red"}).encode(),
                    "application/json")
print(f"\nPOST /api/videos (path)   -> {status} {body.decode()}")

raw = write_raw_stream(cut_video(RED, BLUE, 5, 5))
status, body = call("/api/videos?name=cut-upload", raw, "application/octet-stream")
print(f"POST /api/videos (upload) -> {status} {body.decode()}")

status, body = call("/api/search", json.dumps({"path": str(red_dir), "top_k": 2}).encode(),
                    "application/json")
print(f"\nPOST /api/search -> {status}; structured results document:")
print(body.decode())

status, body = call("/api/videos")
listing = json.loads(body)
detail_status, detail = call(f"/api/videos/{listing[0]['video_id']}")
thumb_url = json.loads(detail)["keyframes"][0]["thumbnail"]
status, png = call(thumb_url)
signature_ok = "ok" if png[:4] == b"\x89PNG" else "BAD"
print(f"GET {thumb_url} -> {status}, {len(png)} PNG bytes (signature {signature_ok})")

server.shutdown()
server.server_close()
print("\nserver stopped; see frontend/ for the browser client on this API")
