"""Retrieval benchmark: per-descriptor precision over a labeled corpus.

Runs every single-descriptor selection plus the all-descriptors integration
over a labeled corpus and reports precision@k per method and per query
class.  The built-in corpora come from :mod:`ivss.synth` and are seeded, so
two runs print identical tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .config import IndexConfig
from .descriptors import DESCRIPTOR_NAMES
from .errors import ConfigError, ParseError
from .frame_io import open_source
from .index_store import FeatureIndex, register_video
from .retrieval import query_by_clip
from .similarity import FeatureSelection
from .synth import BenchCorpus, SynthVideo, make_gch_only_corpus, make_standard_corpus

METHODS = DESCRIPTOR_NAMES + ("all",)


@dataclass(frozen=True)
class BenchReport:
    corpus: str
    k: int
    classes: tuple[str, ...]
    precision: dict[str, dict[str, float]]  # method -> class -> precision@k

    def overall(self, method: str) -> float:
        per_class = self.precision[method]
        return sum(per_class.values()) / len(per_class)

    def worst_single(self, cls: str) -> float:
        return min(self.precision[m][cls] for m in DESCRIPTOR_NAMES)


def _method_selection(method: str) -> FeatureSelection:
    if method == "all":
        return FeatureSelection(enabled=DESCRIPTOR_NAMES)
    return FeatureSelection(enabled=(method,))


def _build_index(videos, cfg: IndexConfig) -> tuple[FeatureIndex, dict[str, str]]:
    index = FeatureIndex(config=cfg)
    id_to_label: dict[str, str] = {}
    for video in videos:
        result = register_video(index, list(video.frames), video.name)
        if not result.created:
            raise ConfigError(
                f"corpus videos {video.name!r} and "
                f"{result.record.display_name!r} have identical content"
            )
        index = result.index
        id_to_label[result.record.video_id] = video.label
    return index, id_to_label


def run_bench(corpus: BenchCorpus, cfg: IndexConfig | None = None, k: int = 5) -> BenchReport:
    """Index the corpus videos and score every method on every query."""
    cfg = cfg if cfg is not None else IndexConfig()
    index, id_to_label = _build_index(corpus.videos, cfg)
    classes = tuple(dict.fromkeys(q.label for q in corpus.queries))
    precision: dict[str, dict[str, float]] = {}
    for method in METHODS:
        sel = _method_selection(method)
        per_class: dict[str, list[float]] = {c: [] for c in classes}
        for query in corpus.queries:
            result = query_by_clip(index, list(query.frames), sel, top_k=k)
            hits = sum(
                1 for m in result.ranked if id_to_label[m.video_id] == query.label
            )
            per_class[query.label].append(hits / k)
        precision[method] = {
            c: sum(vals) / len(vals) for c, vals in per_class.items() if vals
        }
    return BenchReport(corpus=corpus.name, k=k, classes=classes, precision=precision)


def format_bench_table(report: BenchReport) -> str:
    """Fixed-width comparison table, one row per method."""
    name_w = max(len(m) for m in METHODS)
    cols = list(report.classes) + ["overall"]
    col_w = max(8, max(len(c) for c in cols) + 2)
    lines = [f"precision@{report.k} on corpus {report.corpus!r}"]
    header = "method".ljust(name_w) + "".join(c.rjust(col_w) for c in cols)
    lines.append(header)
    lines.append("-" * len(header))
    for method in METHODS:
        cells = [f"{report.precision[method][c]:.3f}".rjust(col_w) for c in report.classes]
        cells.append(f"{report.overall(method):.3f}".rjust(col_w))
        lines.append(method.ljust(name_w) + "".join(cells))
    return "\n".join(lines) + "\n"


BUILTIN_CORPORA = {
    "standard": make_standard_corpus,
    "gch-only": make_gch_only_corpus,
}


def builtin_corpus(name: str) -> BenchCorpus:
    try:
        return BUILTIN_CORPORA[name]()
    except KeyError:
        raise ConfigError(
            f"unknown corpus {name!r}; choose from {sorted(BUILTIN_CORPORA)}"
        ) from None


# --- Manifest-driven corpora ---


def parse_manifest(text: str) -> list[tuple[str, str, str]]:
    """Parse a bench manifest: one ``label<TAB>name<TAB>path`` line per video."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError(f"manifest line {lineno}: expected label<TAB>name<TAB>path")
        rows.append((parts[0], parts[1], parts[2]))
    if not rows:
        raise ParseError("manifest lists no videos")
    return rows


def corpus_from_manifest(path: str | Path) -> BenchCorpus:
    """Load a labeled corpus from disk; queries are the videos themselves.

    With no held-out queries, benchmarking is leave-one-out: each corpus
    video queries an index from which its own record is skipped at scoring
    time (see run_bench_loo).
    """
    rows = parse_manifest(Path(path).read_text())
    videos = []
    for label, name, source_path in rows:
        frames = tuple(open_source(source_path))
        videos.append(SynthVideo(name=name, label=label, frames=frames, expected_shots=0))
    return BenchCorpus(name=str(path), videos=tuple(videos), queries=())


def run_bench_loo(corpus: BenchCorpus, cfg: IndexConfig | None = None, k: int = 5) -> BenchReport:
    """Leave-one-out benchmark over a corpus without held-out queries."""
    cfg = cfg if cfg is not None else IndexConfig()
    index, id_to_label = _build_index(corpus.videos, cfg)
    name_to_id = {rec.display_name: rec.video_id for rec in index.records}
    classes = tuple(dict.fromkeys(v.label for v in corpus.videos))
    precision: dict[str, dict[str, float]] = {}
    for method in METHODS:
        sel = _method_selection(method)
        per_class: dict[str, list[float]] = {c: [] for c in classes}
        for video in corpus.videos:
            result = query_by_clip(index, list(video.frames), sel, top_k=k + 1)
            own = name_to_id[video.name]
            ranked = [m for m in result.ranked if m.video_id != own][:k]
            hits = sum(1 for m in ranked if id_to_label[m.video_id] == video.label)
            per_class[video.label].append(hits / k)
        precision[method] = {c: sum(v) / len(v) for c, v in per_class.items() if v}
    return BenchReport(corpus=corpus.name, k=k, classes=classes, precision=precision)
