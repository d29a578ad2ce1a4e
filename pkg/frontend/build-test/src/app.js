/**
 * DOM wiring for the search client: renders the descriptor form, runs
 * searches through the controller, and paints result cards in exactly the
 * order the API returned them.
 */
import { HttpApiClient } from "./api.js";
import { registerVideo, submitSearch } from "./controller.js";
import { DESCRIPTORS, DESCRIPTOR_LABELS, canSubmit, defaultFormState, selectAll, setSource, setTopK, setWeight, toggleDescriptor, } from "./state.js";
const client = new HttpApiClient("");
let state = defaultFormState();
let namesById = {};
let searchToken = 0;
function el(id) {
    const node = document.getElementById(id);
    if (!node)
        throw new Error(`missing element #${id}`);
    return node;
}
function updateState(next) {
    state = next;
    el("search-button").disabled = !canSubmit(state);
}
// --- Form rendering ---
function renderDescriptorRows() {
    const container = el("descriptor-rows");
    container.innerHTML = "";
    for (const name of DESCRIPTORS) {
        const row = document.createElement("div");
        row.className = "descriptor-row";
        const checkbox = document.createElement("input");
        checkbox.type = "checkbox";
        checkbox.id = `enable-${name}`;
        checkbox.checked = state.descriptors[name].enabled;
        checkbox.addEventListener("change", () => {
            updateState(toggleDescriptor(state, name, checkbox.checked));
        });
        const label = document.createElement("label");
        label.htmlFor = checkbox.id;
        label.textContent = DESCRIPTOR_LABELS[name];
        const weight = document.createElement("input");
        weight.type = "range";
        weight.min = "0";
        weight.max = "5";
        weight.step = "0.1";
        weight.value = String(state.descriptors[name].weight);
        weight.className = "weight-slider";
        const weightEcho = document.createElement("span");
        weightEcho.className = "weight-echo";
        weightEcho.textContent = weight.value;
        weight.addEventListener("input", () => {
            weightEcho.textContent = weight.value;
            updateState(setWeight(state, name, Number(weight.value)));
        });
        row.append(checkbox, label, weight, weightEcho);
        container.append(row);
    }
}
async function refreshVideoList() {
    let videos = [];
    try {
        videos = await client.listVideos();
    }
    catch {
        // the list is a convenience; the form still works with uploads
    }
    namesById = {};
    const select = el("registered-select");
    select.innerHTML = "";
    const placeholder = document.createElement("option");
    placeholder.value = "";
    placeholder.textContent = videos.length ? "pick a registered video" : "(nothing registered yet)";
    select.append(placeholder);
    for (const video of videos) {
        namesById[video.video_id] = video.display_name;
        const option = document.createElement("option");
        option.value = video.video_id;
        option.textContent = `${video.display_name} (${video.shot_count} shots)`;
        select.append(option);
    }
}
function currentSourceFromInputs() {
    const mode = document.querySelector('input[name="source-mode"]:checked')
        ?.value;
    if (mode === "upload") {
        const file = el("query-file").files?.[0] ?? null;
        updateState(setSource(state, file ? { kind: "upload", data: file, filename: file.name } : null));
    }
    else {
        const select = el("registered-select");
        const videoId = select.value;
        if (!videoId) {
            updateState(setSource(state, null));
            return;
        }
        client
            .getVideo(videoId)
            .then((detail) => updateState(setSource(state, {
            kind: "registered",
            videoId,
            path: detail.source_locator,
        })))
            .catch(() => updateState(setSource(state, null)));
    }
}
// --- Results rendering ---
function renderResults(viewModel) {
    el("search-status").textContent = `selection: ${viewModel.selection}`;
    const container = el("results");
    container.innerHTML = "";
    if (viewModel.cards.length === 0) {
        container.textContent = "No results.";
        return;
    }
    for (const card of viewModel.cards) {
        const node = document.createElement("div");
        node.className = "result-card";
        const title = document.createElement("h3");
        title.textContent = `#${card.rank}  ${card.name}`;
        const distance = document.createElement("span");
        distance.className = "distance";
        distance.textContent = card.distanceDisplay;
        title.append(distance);
        node.append(title);
        const pairs = document.createElement("div");
        pairs.className = "pairs";
        for (const pair of card.pairs) {
            const cell = document.createElement("div");
            cell.className = "pair";
            if (pair.queryThumbUrl) {
                const queryImg = document.createElement("img");
                queryImg.src = pair.queryThumbUrl;
                queryImg.alt = `query frame ${pair.queryFrame}`;
                cell.append(queryImg);
            }
            else {
                const queryLabel = document.createElement("span");
                queryLabel.className = "frame-label";
                queryLabel.textContent = `q${pair.queryFrame}`;
                cell.append(queryLabel);
            }
            const arrow = document.createElement("span");
            arrow.textContent = "→";
            const matchImg = document.createElement("img");
            matchImg.src = pair.dbThumbUrl;
            matchImg.alt = `matched frame ${pair.dbFrame}`;
            const pairDist = document.createElement("span");
            pairDist.className = "pair-distance";
            pairDist.textContent = pair.distanceDisplay;
            cell.append(arrow, matchImg, pairDist);
            pairs.append(cell);
        }
        node.append(pairs);
        container.append(node);
    }
}
function showSearchError(message) {
    el("search-status").textContent = message;
    el("results").innerHTML = "";
}
async function onSearch() {
    const token = ++searchToken;
    el("search-status").textContent = "searching...";
    const outcome = await submitSearch(state, client, namesById);
    if (token !== searchToken) {
        return; // a newer submission superseded this one
    }
    if (outcome.kind === "results") {
        renderResults(outcome.viewModel);
    }
    else {
        showSearchError(outcome.message);
    }
}
// --- Register flow ---
async function onRegister() {
    const status = el("register-status");
    const preview = el("register-preview");
    preview.innerHTML = "";
    const name = el("register-name").value || "upload";
    const file = el("register-file").files?.[0];
    const path = el("register-path").value.trim();
    if (!file && !path) {
        status.textContent = "Choose an IVSSRAW1 file or give a server-side path.";
        return;
    }
    status.textContent = "registering...";
    const source = file
        ? { kind: "upload", data: file }
        : { kind: "path", path };
    const result = await registerVideo(client, source, name);
    if (result.kind === "error") {
        status.textContent = result.message;
        return;
    }
    const outcome = result.outcome;
    status.textContent =
        result.kind === "duplicate"
            ? `Already registered as ${outcome.videoId}.`
            : `Registered ${outcome.videoId}: ${outcome.shotCount} shots, ${outcome.keyframeCount} key frames.`;
    try {
        const detail = await client.getVideo(outcome.videoId);
        for (const keyframe of detail.keyframes) {
            const img = document.createElement("img");
            img.src = keyframe.thumbnail;
            img.alt = `key frame ${keyframe.frame_index}`;
            img.title = `shot ${keyframe.shot_id}, frame ${keyframe.frame_index}`;
            preview.append(img);
        }
    }
    catch {
        // preview is best-effort
    }
    await refreshVideoList();
}
// --- Boot ---
export function boot() {
    renderDescriptorRows();
    el("select-all").addEventListener("click", () => {
        updateState(selectAll(state));
        renderDescriptorRows();
    });
    el("top-k").addEventListener("change", (event) => {
        updateState(setTopK(state, Number(event.target.value)));
    });
    for (const radio of document.querySelectorAll('input[name="source-mode"]')) {
        radio.addEventListener("change", currentSourceFromInputs);
    }
    el("query-file").addEventListener("change", currentSourceFromInputs);
    el("registered-select").addEventListener("change", currentSourceFromInputs);
    el("search-button").addEventListener("click", () => {
        void onSearch();
    });
    el("register-button").addEventListener("click", () => {
        void onRegister();
    });
    updateState(state);
    void refreshVideoList();
}
if (typeof document !== "undefined") {
    document.addEventListener("DOMContentLoaded", boot);
}
