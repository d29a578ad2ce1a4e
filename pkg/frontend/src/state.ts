/**
 * Search form state: which descriptors are on, their weights, the query
 * source, and how many results to ask for.
 *
 * Everything the next search request carries is derived from this state and
 * nothing else, so a request body is always reconstructible from what the
 * form shows.
 */

export const DESCRIPTORS = ["avg_rgb", "gch", "lch", "moments", "ccv"] as const
export type DescriptorName = (typeof DESCRIPTORS)[number]

export const DESCRIPTOR_LABELS: Record<DescriptorName, string> = {
  avg_rgb: "Average RGB",
  gch: "Global color histogram",
  lch: "Local color histogram",
  moments: "Color moments",
  ccv: "Color coherence vector",
}

export interface DescriptorChoice {
  enabled: boolean
  weight: number
}

export type QuerySource =
  | { kind: "upload"; data: Blob; filename: string }
  | { kind: "registered"; videoId: string; path: string }

export interface SearchFormState {
  source: QuerySource | null
  descriptors: Record<DescriptorName, DescriptorChoice>
  topK: number
}

export function defaultFormState(): SearchFormState {
  const descriptors = {} as Record<DescriptorName, DescriptorChoice>
  for (const name of DESCRIPTORS) {
    descriptors[name] = { enabled: true, weight: 1 }
  }
  return { source: null, descriptors, topK: 5 }
}

export function enabledDescriptors(state: SearchFormState): DescriptorName[] {
  return DESCRIPTORS.filter((name) => state.descriptors[name].enabled)
}

/** Submit is legal only with a source and at least one enabled descriptor. */
export function canSubmit(state: SearchFormState): boolean {
  return state.source !== null && enabledDescriptors(state).length > 0
}

export function toggleDescriptor(
  state: SearchFormState,
  name: DescriptorName,
  enabled: boolean,
): SearchFormState {
  return {
    ...state,
    descriptors: {
      ...state.descriptors,
      [name]: { ...state.descriptors[name], enabled },
    },
  }
}

/** Weights never go negative; bad input clamps to zero. */
export function setWeight(
  state: SearchFormState,
  name: DescriptorName,
  weight: number,
): SearchFormState {
  const safe = Number.isFinite(weight) && weight > 0 ? weight : 0
  return {
    ...state,
    descriptors: {
      ...state.descriptors,
      [name]: { ...state.descriptors[name], weight: safe },
    },
  }
}

/** The "select all" affordance: every descriptor on (weights kept). */
export function selectAll(state: SearchFormState): SearchFormState {
  let next = state
  for (const name of DESCRIPTORS) {
    next = toggleDescriptor(next, name, true)
  }
  return next
}

export function setTopK(state: SearchFormState, topK: number): SearchFormState {
  const safe = Number.isFinite(topK) && topK >= 1 ? Math.floor(topK) : 1
  return { ...state, topK: safe }
}

export function setSource(state: SearchFormState, source: QuerySource | null): SearchFormState {
  return { ...state, source }
}

/** Flat selection text the engine understands: "gch:1,ccv:2". */
export function buildSelection(state: SearchFormState): string {
  return enabledDescriptors(state)
    .map((name) => `${name}:${state.descriptors[name].weight}`)
    .join(",")
}

export function parseSelection(text: string): Record<string, number> {
  const weights: Record<string, number> = {}
  for (const part of text.split(",")) {
    if (!part.trim()) continue
    const [name, weight] = part.split(":")
    weights[name.trim()] = weight === undefined ? 1 : Number(weight)
  }
  return weights
}

export type SearchRequest =
  | { kind: "path"; path: string; selection: string; topK: number }
  | { kind: "upload"; data: Blob; selection: string; topK: number }

/**
 * The exact request the client will send. Throws rather than building a
 * request from an unsubmittable state.
 */
export function buildSearchRequest(state: SearchFormState): SearchRequest {
  if (!canSubmit(state)) {
    throw new Error("cannot search: pick a query source and enable at least one descriptor")
  }
  const selection = buildSelection(state)
  const source = state.source as QuerySource
  if (source.kind === "upload") {
    return { kind: "upload", data: source.data, selection, topK: state.topK }
  }
  return { kind: "path", path: source.path, selection, topK: state.topK }
}
