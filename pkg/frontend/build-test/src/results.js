/**
 * Parsing the structured results document and shaping it for display.
 *
 * The view model mirrors the API ranking exactly: same order, same pairs,
 * no filtering and no rescaling. Distances are shown to 3 decimals.
 */
const HEADER = "#ivss-results 1";
export function parseResultsDocument(text) {
    const lines = text.split("\n");
    if (lines[0] !== HEADER) {
        throw new Error("not a results document");
    }
    let selection = "";
    const rows = [];
    for (const line of lines.slice(1)) {
        if (!line.trim())
            continue;
        if (line.startsWith("#selection ")) {
            selection = line.slice("#selection ".length);
            continue;
        }
        if (line.startsWith("#"))
            continue;
        const fields = line.split("\t");
        if (fields.length !== 4) {
            throw new Error(`bad result line: ${line}`);
        }
        const pairs = [];
        if (fields[3]) {
            for (const part of fields[3].split(";")) {
                const [q, db, d] = part.split(":");
                pairs.push({ queryFrame: Number(q), dbFrame: Number(db), distance: Number(d) });
            }
        }
        rows.push({
            rank: Number(fields[0]),
            videoId: fields[1],
            distance: Number(fields[2]),
            pairs,
        });
    }
    return { selection, rows };
}
export function thumbnailUrl(videoId, frameIndex) {
    return `/api/keyframes/${videoId}/${frameIndex}.png`;
}
/** Cards come out in exactly the order the rows came in. */
export function toViewModel(parsed, options) {
    const queryVideoId = options.queryVideoId ?? null;
    const cards = parsed.rows.map((row) => ({
        rank: row.rank,
        videoId: row.videoId,
        name: options.namesById[row.videoId] ?? row.videoId,
        distanceDisplay: row.distance.toFixed(3),
        pairs: row.pairs.map((pair) => ({
            queryFrame: pair.queryFrame,
            dbFrame: pair.dbFrame,
            queryThumbUrl: queryVideoId ? thumbnailUrl(queryVideoId, pair.queryFrame) : null,
            dbThumbUrl: thumbnailUrl(row.videoId, pair.dbFrame),
            distanceDisplay: pair.distance.toFixed(3),
        })),
    }));
    return { selection: parsed.selection, cards };
}
