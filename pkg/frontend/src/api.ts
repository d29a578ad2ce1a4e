/**
 * Thin client over the ivss HTTP API. Everything the app needs from the
 * network goes through the ApiClient interface so tests can stub it.
 */

import type { SearchRequest } from "./state.js"

export interface VideoSummary {
  video_id: string
  display_name: string
  shot_count: number
  keyframe_count: number
}

export interface KeyframeInfo {
  frame_index: number
  shot_id: number
  thumbnail: string
}

export interface VideoDetail extends VideoSummary {
  keyframes: KeyframeInfo[]
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message)
  }
}

export interface RegisterOutcome {
  created: boolean
  videoId: string
  shotCount: number
  keyframeCount: number
}

export interface ApiClient {
  listVideos(): Promise<VideoSummary[]>
  getVideo(videoId: string): Promise<VideoDetail>
  /** Returns the raw structured results document. */
  search(request: SearchRequest): Promise<string>
  registerUpload(data: Blob, name: string): Promise<RegisterOutcome>
  registerPath(path: string, name: string): Promise<RegisterOutcome>
}

async function errorFrom(response: Response): Promise<ApiError> {
  let code = "error"
  let message = `${response.status}`
  try {
    const payload = await response.json()
    code = payload.code ?? code
    message = payload.message ?? message
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, code, message)
}

export class HttpApiClient implements ApiClient {
  constructor(private base: string = "") {}

  async listVideos(): Promise<VideoSummary[]> {
    const response = await fetch(`${this.base}/api/videos`)
    if (!response.ok) throw await errorFrom(response)
    return response.json()
  }

  async getVideo(videoId: string): Promise<VideoDetail> {
    const response = await fetch(`${this.base}/api/videos/${videoId}`)
    if (!response.ok) throw await errorFrom(response)
    return response.json()
  }

  async search(request: SearchRequest): Promise<string> {
    let response: Response
    if (request.kind === "path") {
      response = await fetch(`${this.base}/api/search`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({
          path: request.path,
          selection: request.selection,
          top_k: request.topK,
        }),
      })
    } else {
      const params = new URLSearchParams({
        selection: request.selection,
        top_k: String(request.topK),
      })
      response = await fetch(`${this.base}/api/search?${params}`, {
        method: "POST",
        headers: { "Content-Type": "application/octet-stream" },
        body: request.data,
      })
    }
    if (!response.ok) throw await errorFrom(response)
    return response.text()
  }

  private async handleRegister(response: Response): Promise<RegisterOutcome> {
    if (response.status === 201 || response.status === 409) {
      const payload = await response.json()
      return {
        created: response.status === 201,
        videoId: payload.video_id,
        shotCount: payload.shot_count ?? 0,
        keyframeCount: payload.keyframe_count ?? 0,
      }
    }
    throw await errorFrom(response)
  }

  async registerUpload(data: Blob, name: string): Promise<RegisterOutcome> {
    const params = new URLSearchParams({ name })
    const response = await fetch(`${this.base}/api/videos?${params}`, {
      method: "POST",
      headers: { "Content-Type": "application/octet-stream" },
      body: data,
    })
    return this.handleRegister(response)
  }

  async registerPath(path: string, name: string): Promise<RegisterOutcome> {
    const response = await fetch(`${this.base}/api/videos`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ path, name }),
    })
    return this.handleRegister(response)
  }
}
