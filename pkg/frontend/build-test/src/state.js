/**
 * Search form state: which descriptors are on, their weights, the query
 * source, and how many results to ask for.
 *
 * Everything the next search request carries is derived from this state and
 * nothing else, so a request body is always reconstructible from what the
 * form shows.
 */
export const DESCRIPTORS = ["avg_rgb", "gch", "lch", "moments", "ccv"];
export const DESCRIPTOR_LABELS = {
    avg_rgb: "Average RGB",
    gch: "Global color histogram",
    lch: "Local color histogram",
    moments: "Color moments",
    ccv: "Color coherence vector",
};
export function defaultFormState() {
    const descriptors = {};
    for (const name of DESCRIPTORS) {
        descriptors[name] = { enabled: true, weight: 1 };
    }
    return { source: null, descriptors, topK: 5 };
}
export function enabledDescriptors(state) {
    return DESCRIPTORS.filter((name) => state.descriptors[name].enabled);
}
/** Submit is legal only with a source and at least one enabled descriptor. */
export function canSubmit(state) {
    return state.source !== null && enabledDescriptors(state).length > 0;
}
export function toggleDescriptor(state, name, enabled) {
    return {
        ...state,
        descriptors: {
            ...state.descriptors,
            [name]: { ...state.descriptors[name], enabled },
        },
    };
}
/** Weights never go negative; bad input clamps to zero. */
export function setWeight(state, name, weight) {
    const safe = Number.isFinite(weight) && weight > 0 ? weight : 0;
    return {
        ...state,
        descriptors: {
            ...state.descriptors,
            [name]: { ...state.descriptors[name], weight: safe },
        },
    };
}
/** The "select all" affordance: every descriptor on (weights kept). */
export function selectAll(state) {
    let next = state;
    for (const name of DESCRIPTORS) {
        next = toggleDescriptor(next, name, true);
    }
    return next;
}
export function setTopK(state, topK) {
    const safe = Number.isFinite(topK) && topK >= 1 ? Math.floor(topK) : 1;
    return { ...state, topK: safe };
}
export function setSource(state, source) {
    return { ...state, source };
}
/** Flat selection text the engine understands: "gch:1,ccv:2". */
export function buildSelection(state) {
    return enabledDescriptors(state)
        .map((name) => `${name}:${state.descriptors[name].weight}`)
        .join(",");
}
export function parseSelection(text) {
    const weights = {};
    for (const part of text.split(",")) {
        if (!part.trim())
            continue;
        const [name, weight] = part.split(":");
        weights[name.trim()] = weight === undefined ? 1 : Number(weight);
    }
    return weights;
}
/**
 * The exact request the client will send. Throws rather than building a
 * request from an unsubmittable state.
 */
export function buildSearchRequest(state) {
    if (!canSubmit(state)) {
        throw new Error("cannot search: pick a query source and enable at least one descriptor");
    }
    const selection = buildSelection(state);
    const source = state.source;
    if (source.kind === "upload") {
        return { kind: "upload", data: source.data, selection, topK: state.topK };
    }
    return { kind: "path", path: source.path, selection, topK: state.topK };
}
