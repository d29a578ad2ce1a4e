/**
 * Thin client over the ivss HTTP API. Everything the app needs from the
 * network goes through the ApiClient interface so tests can stub it.
 */
export class ApiError extends Error {
    constructor(status, code, message) {
        super(message);
        this.status = status;
        this.code = code;
    }
}
async function errorFrom(response) {
    let code = "error";
    let message = `${response.status}`;
    try {
        const payload = await response.json();
        code = payload.code ?? code;
        message = payload.message ?? message;
    }
    catch {
        // non-JSON error body; keep the status text
    }
    return new ApiError(response.status, code, message);
}
export class HttpApiClient {
    constructor(base = "") {
        this.base = base;
    }
    async listVideos() {
        const response = await fetch(`${this.base}/api/videos`);
        if (!response.ok)
            throw await errorFrom(response);
        return response.json();
    }
    async getVideo(videoId) {
        const response = await fetch(`${this.base}/api/videos/${videoId}`);
        if (!response.ok)
            throw await errorFrom(response);
        return response.json();
    }
    async search(request) {
        let response;
        if (request.kind === "path") {
            response = await fetch(`${this.base}/api/search`, {
                method: "POST",
                headers: { "Content-Type": "application/json" },
                body: JSON.stringify({
                    path: request.path,
                    selection: request.selection,
                    top_k: request.topK,
                }),
            });
        }
        else {
            const params = new URLSearchParams({
                selection: request.selection,
                top_k: String(request.topK),
            });
            response = await fetch(`${this.base}/api/search?${params}`, {
                method: "POST",
                headers: { "Content-Type": "application/octet-stream" },
                body: request.data,
            });
        }
        if (!response.ok)
            throw await errorFrom(response);
        return response.text();
    }
    async handleRegister(response) {
        if (response.status === 201 || response.status === 409) {
            const payload = await response.json();
            return {
                created: response.status === 201,
                videoId: payload.video_id,
                shotCount: payload.shot_count ?? 0,
                keyframeCount: payload.keyframe_count ?? 0,
            };
        }
        throw await errorFrom(response);
    }
    async registerUpload(data, name) {
        const params = new URLSearchParams({ name });
        const response = await fetch(`${this.base}/api/videos?${params}`, {
            method: "POST",
            headers: { "Content-Type": "application/octet-stream" },
            body: data,
        });
        return this.handleRegister(response);
    }
    async registerPath(path, name) {
        const response = await fetch(`${this.base}/api/videos`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ path, name }),
        });
        return this.handleRegister(response);
    }
}
