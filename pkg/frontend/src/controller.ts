/**
 * The app's behavior with the DOM stripped away: submit a search, register a
 * video, surface API errors as inline messages. app.ts binds this to the
 * page; the contract tests drive it with a stubbed ApiClient.
 */

import { ApiError, type ApiClient, type RegisterOutcome } from "./api.js"
import { parseResultsDocument, toViewModel, type ResultViewModel } from "./results.js"
import { buildSearchRequest, canSubmit, type SearchFormState } from "./state.js"

export type SearchOutcome =
  | { kind: "results"; viewModel: ResultViewModel }
  | { kind: "error"; message: string }

/**
 * POST the search described by the form state and shape the response for
 * display. API failures come back as inline messages, never exceptions.
 */
export async function submitSearch(
  state: SearchFormState,
  client: ApiClient,
  namesById: Record<string, string>,
): Promise<SearchOutcome> {
  if (!canSubmit(state)) {
    return { kind: "error", message: "Enable at least one descriptor and pick a query source." }
  }
  const request = buildSearchRequest(state)
  try {
    const document = await client.search(request)
    const queryVideoId =
      state.source && state.source.kind === "registered" ? state.source.videoId : null
    const viewModel = toViewModel(parseResultsDocument(document), {
      namesById,
      queryVideoId,
    })
    return { kind: "results", viewModel }
  } catch (err) {
    if (err instanceof ApiError) {
      if (err.code === "empty-index") {
        return {
          kind: "error",
          message: "The index is empty. Register a video first, then search.",
        }
      }
      return { kind: "error", message: `Search failed (${err.code}): ${err.message}` }
    }
    throw err
  }
}

export type RegisterResultView =
  | { kind: "registered"; outcome: RegisterOutcome }
  | { kind: "duplicate"; outcome: RegisterOutcome }
  | { kind: "error"; message: string }

export async function registerVideo(
  client: ApiClient,
  source: { kind: "upload"; data: Blob } | { kind: "path"; path: string },
  name: string,
): Promise<RegisterResultView> {
  try {
    const outcome =
      source.kind === "upload"
        ? await client.registerUpload(source.data, name)
        : await client.registerPath(source.path, name)
    return outcome.created
      ? { kind: "registered", outcome }
      : { kind: "duplicate", outcome }
  } catch (err) {
    if (err instanceof ApiError) {
      return { kind: "error", message: `Registration failed (${err.code}): ${err.message}` }
    }
    throw err
  }
}
