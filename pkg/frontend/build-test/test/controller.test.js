import assert from "node:assert/strict";
import { test } from "node:test";
import { ApiError } from "../src/api.js";
import { registerVideo, submitSearch } from "../src/controller.js";
import { DESCRIPTORS, defaultFormState, setSource, toggleDescriptor, } from "../src/state.js";
function stubClient(overrides) {
    const unused = async () => {
        throw new Error("unexpected call");
    };
    return {
        listVideos: unused,
        getVideo: unused,
        search: unused,
        registerUpload: unused,
        registerPath: unused,
        ...overrides,
    };
}
const DOC = [
    "#ivss-results 1",
    "#selection gch:1.0",
    "#count 2",
    "1\tvid-one\t0.000000\t0:0:0.000000",
    "2\tvid-two\t0.250000\t0:3:0.250000",
    "",
].join("\n");
const READY_STATE = setSource(defaultFormState(), {
    kind: "registered",
    videoId: "qvid",
    path: "/srv/q",
});
test("search outcome mirrors the stubbed response order", async () => {
    const requests = [];
    const client = stubClient({
        search: async (request) => {
            requests.push(request);
            return DOC;
        },
    });
    const outcome = await submitSearch(READY_STATE, client, { "vid-one": "first video" });
    assert.equal(outcome.kind, "results");
    if (outcome.kind === "results") {
        assert.deepEqual(outcome.viewModel.cards.map((c) => c.videoId), ["vid-one", "vid-two"]);
        assert.equal(outcome.viewModel.cards[0].name, "first video");
        assert.equal(outcome.viewModel.cards[0].distanceDisplay, "0.000");
    }
    assert.equal(requests.length, 1);
    assert.equal(requests[0].kind, "path");
});
test("zero descriptors: blocked before any network call", async () => {
    let state = READY_STATE;
    for (const name of DESCRIPTORS) {
        state = toggleDescriptor(state, name, false);
    }
    let called = false;
    const client = stubClient({
        search: async () => {
            called = true;
            return DOC;
        },
    });
    const outcome = await submitSearch(state, client, {});
    assert.equal(outcome.kind, "error");
    assert.equal(called, false);
});
test("empty index maps to register-first guidance", async () => {
    const client = stubClient({
        search: async () => {
            throw new ApiError(409, "empty-index", "no videos registered in the index");
        },
    });
    const outcome = await submitSearch(READY_STATE, client, {});
    assert.equal(outcome.kind, "error");
    if (outcome.kind === "error") {
        assert.match(outcome.message, /[Rr]egister/);
    }
});
test("registered-video queries get query-side thumbnails", async () => {
    const client = stubClient({ search: async () => DOC });
    const outcome = await submitSearch(READY_STATE, client, {});
    assert.equal(outcome.kind, "results");
    if (outcome.kind === "results") {
        assert.equal(outcome.viewModel.cards[0].pairs[0].queryThumbUrl, "/api/keyframes/qvid/0.png");
    }
});
test("register flow: created, duplicate, and failure all surface inline", async () => {
    const created = await registerVideo(stubClient({
        registerPath: async () => ({
            created: true,
            videoId: "new-id",
            shotCount: 2,
            keyframeCount: 3,
        }),
    }), { kind: "path", path: "/srv/x" }, "x");
    assert.equal(created.kind, "registered");
    const duplicate = await registerVideo(stubClient({
        registerUpload: async () => ({
            created: false,
            videoId: "old-id",
            shotCount: 1,
            keyframeCount: 1,
        }),
    }), { kind: "upload", data: new Blob([new Uint8Array(4)]) }, "again");
    assert.equal(duplicate.kind, "duplicate");
    if (duplicate.kind === "duplicate") {
        assert.equal(duplicate.outcome.videoId, "old-id");
    }
    const failed = await registerVideo(stubClient({
        registerPath: async () => {
            throw new ApiError(400, "bad-source", "bad raw stream magic");
        },
    }), { kind: "path", path: "/srv/broken" }, "broken");
    assert.equal(failed.kind, "error");
    if (failed.kind === "error") {
        assert.match(failed.message, /bad-source/);
    }
});
