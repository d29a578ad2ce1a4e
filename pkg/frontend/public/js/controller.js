/**
 * The app's behavior with the DOM stripped away: submit a search, register a
 * video, surface API errors as inline messages. app.ts binds this to the
 * page; the contract tests drive it with a stubbed ApiClient.
 */
import { ApiError } from "./api.js";
import { parseResultsDocument, toViewModel } from "./results.js";
import { buildSearchRequest, canSubmit } from "./state.js";
/**
 * POST the search described by the form state and shape the response for
 * display. API failures come back as inline messages, never exceptions.
 */
export async function submitSearch(state, client, namesById) {
    if (!canSubmit(state)) {
        return { kind: "error", message: "Enable at least one descriptor and pick a query source." };
    }
    const request = buildSearchRequest(state);
    try {
        const document = await client.search(request);
        const queryVideoId = state.source && state.source.kind === "registered" ? state.source.videoId : null;
        const viewModel = toViewModel(parseResultsDocument(document), {
            namesById,
            queryVideoId,
        });
        return { kind: "results", viewModel };
    }
    catch (err) {
        if (err instanceof ApiError) {
            if (err.code === "empty-index") {
                return {
                    kind: "error",
                    message: "The index is empty. Register a video first, then search.",
                };
            }
            return { kind: "error", message: `Search failed (${err.code}): ${err.message}` };
        }
        throw err;
    }
}
export async function registerVideo(client, source, name) {
    try {
        const outcome = source.kind === "upload"
            ? await client.registerUpload(source.data, name)
            : await client.registerPath(source.path, name);
        return outcome.created
            ? { kind: "registered", outcome }
            : { kind: "duplicate", outcome };
    }
    catch (err) {
        if (err instanceof ApiError) {
            return { kind: "error", message: `Registration failed (${err.code}): ${err.message}` };
        }
        throw err;
    }
}
