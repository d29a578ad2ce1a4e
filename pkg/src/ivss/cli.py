"""The ``ivss`` command line: index, search, compare, export, bench, serve.

Exit codes are uniform across subcommands: 0 success, 1 runtime or data
error, 2 usage error.  Flags describing engine configuration never silently
reconfigure an existing index; a mismatch between a flag and the on-disk
config is a hard error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench as bench_mod
from .config import IndexConfig
from .errors import ConfigMismatchError, IvssError
from .frame_io import open_source, write_ppm_file
from .index_store import FeatureIndex, load, register_video, save
from .keyframes import detect_shots, extract_keyframes
from .retrieval import compare_pair, format_results, format_results_text, query_by_clip
from .similarity import FeatureSelection, all_descriptors, parse_selection


def _selection_arg(text: str) -> FeatureSelection:
    # Raised errors become argparse usage errors (exit 2).
    try:
        return parse_selection(text)
    except IvssError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _grid_arg(text: str) -> tuple[int, int]:
    rows, sep, cols = text.partition("x")
    if not sep:
        raise argparse.ArgumentTypeError(f"grid must look like 2x2, got {text!r}")
    try:
        return int(rows), int(cols)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 2x2, got {text!r}") from None


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--bits", type=int, default=None, help="quantizer bits per channel")
    parser.add_argument("--grid", type=_grid_arg, default=None, metavar="RxC",
                        help="local histogram grid, e.g. 2x2")
    parser.add_argument("--tau", type=float, default=None, help="coherence area fraction")
    parser.add_argument("--shot-threshold", type=float, default=None)
    parser.add_argument("--cluster-delta", type=float, default=None)


def _config_from_flags(args) -> IndexConfig:
    defaults = IndexConfig()
    grid = args.grid if args.grid is not None else (defaults.grid_rows, defaults.grid_cols)
    return IndexConfig(
        bits=args.bits if args.bits is not None else defaults.bits,
        grid_rows=grid[0],
        grid_cols=grid[1],
        tau=args.tau if args.tau is not None else defaults.tau,
        shot_threshold=(
            args.shot_threshold if args.shot_threshold is not None else defaults.shot_threshold
        ),
        cluster_delta=(
            args.cluster_delta if args.cluster_delta is not None else defaults.cluster_delta
        ),
    )


def _check_flags_match(args, cfg: IndexConfig) -> None:
    """Explicit flags on an existing index must agree with its config."""
    checks = [
        ("bits", args.bits, cfg.bits),
        ("grid", args.grid, (cfg.grid_rows, cfg.grid_cols)),
        ("tau", args.tau, cfg.tau),
        ("shot-threshold", args.shot_threshold, cfg.shot_threshold),
        ("cluster-delta", args.cluster_delta, cfg.cluster_delta),
    ]
    for name, flag, actual in checks:
        if flag is not None and flag != actual:
            raise ConfigMismatchError(
                f"--{name} {flag} does not match index config ({actual}); "
                f"flags never reconfigure an existing index"
            )


def _open_index(args) -> FeatureIndex:
    path = Path(args.index)
    if path.exists():
        index = load(path)
        _check_flags_match(args, index.config)
        return index
    return FeatureIndex(config=_config_from_flags(args))


# --- Subcommands ---


def cmd_index_add(args) -> int:
    index = _open_index(args)
    source = open_source(args.source)
    name = args.name if args.name else Path(args.source).stem
    result = register_video(index, source, name, source_locator=str(args.source))
    if result.created:
        save(result.index, args.index)
        print(result.record.video_id)
    else:
        print(f"already registered as {result.record.video_id}")
    return 0


def cmd_index_list(args) -> int:
    index = _open_index(args)
    for rec in index.records:
        print(
            f"{rec.video_id}\t{rec.display_name}\t"
            f"{len(rec.shots)} shots\t{len(rec.keyframes)} keyframes"
        )
    return 0


def cmd_search(args) -> int:
    index = _open_index(args)
    source = open_source(args.query)
    sel = args.select if args.select is not None else all_descriptors()
    result = query_by_clip(index, source, sel, top_k=args.top_k)
    if args.format == "structured":
        sys.stdout.write(format_results(result))
    else:
        sys.stdout.write(format_results_text(result))
    return 0


def cmd_compare(args) -> int:
    sel = args.select if args.select is not None else all_descriptors()
    cfg = _config_from_flags(args)
    d = compare_pair(open_source(args.a), open_source(args.b), sel, index_config=cfg)
    print(f"{d:.6f}")
    return 0


def cmd_keyframes(args) -> int:
    cfg = _config_from_flags(args)
    source = open_source(args.source)
    frames = list(source)
    extraction = cfg.extraction()
    shots = detect_shots(frames, extraction.quantizer, cfg.shot_threshold)
    keyframes = extract_keyframes(frames, shots, cfg.cluster_delta, extraction)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = Path(args.source).stem or "video"
    report_lines = [f"source: {args.source}", f"frames: {len(frames)}", f"shots: {len(shots)}"]
    for i, shot in enumerate(shots):
        kfs = [kf.frame_index for kf in keyframes if kf.shot_id == i]
        report_lines.append(
            f"shot {i}: frames {shot.start}..{shot.end}, keyframes {kfs}"
        )
    for kf in keyframes:
        out = out_dir / f"key_{name}_{kf.shot_id:04d}_{kf.frame_index:06d}.ppm"
        write_ppm_file(frames[kf.frame_index], out)
    report = "\n".join(report_lines) + "\n"
    (out_dir / "report.txt").write_text(report)
    sys.stdout.write(report)
    return 0


def cmd_bench(args) -> int:
    cfg = _config_from_flags(args)
    if args.manifest:
        corpus = bench_mod.corpus_from_manifest(args.manifest)
        report = bench_mod.run_bench_loo(corpus, cfg, k=args.k)
    else:
        corpus = bench_mod.builtin_corpus(args.corpus)
        report = bench_mod.run_bench(corpus, cfg, k=args.k)
    sys.stdout.write(bench_mod.format_bench_table(report))
    return 0


def cmd_serve(args) -> int:
    from .api import serve  # deferred: pulls in the HTTP stack

    serve(
        index_path=args.index,
        host=args.host,
        port=args.port,
        static_dir=args.static,
        max_upload_bytes=args.max_upload_mb * 1024 * 1024,
        config=_config_from_flags(args),
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ivss",
        description="Color-feature video indexing and query-by-clip search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="manage a feature index")
    index_sub = p_index.add_subparsers(dest="index_command", required=True)

    p_add = index_sub.add_parser("add", help="register a video")
    p_add.add_argument("--index", required=True)
    p_add.add_argument("--name", default=None)
    _add_config_flags(p_add)
    p_add.add_argument("source", help="frame directory, .ppm file, or IVSSRAW1 file")
    p_add.set_defaults(func=cmd_index_add)

    p_list = index_sub.add_parser("list", help="list registered videos")
    p_list.add_argument("--index", required=True)
    _add_config_flags(p_list)
    p_list.set_defaults(func=cmd_index_list)

    p_search = sub.add_parser("search", help="query by clip")
    p_search.add_argument("--index", required=True)
    p_search.add_argument("--select", type=_selection_arg, default=None,
                          help="descriptor selection, e.g. gch:1.0,ccv:2.0")
    p_search.add_argument("--top-k", type=int, default=5)
    p_search.add_argument("--format", choices=("text", "structured"), default="text")
    _add_config_flags(p_search)
    p_search.add_argument("query")
    p_search.set_defaults(func=cmd_search)

    p_compare = sub.add_parser("compare", help="distance between two clips")
    p_compare.add_argument("--select", type=_selection_arg, default=None)
    _add_config_flags(p_compare)
    p_compare.add_argument("a")
    p_compare.add_argument("b")
    p_compare.set_defaults(func=cmd_compare)

    p_kf = sub.add_parser("keyframes", help="export key frames and a shot report")
    _add_config_flags(p_kf)
    p_kf.add_argument("source")
    p_kf.add_argument("out_dir")
    p_kf.set_defaults(func=cmd_keyframes)

    p_bench = sub.add_parser("bench", help="per-descriptor retrieval benchmark")
    p_bench.add_argument("--manifest", default=None,
                         help="labeled corpus manifest (label<TAB>name<TAB>path)")
    p_bench.add_argument("--corpus", choices=sorted(bench_mod.BUILTIN_CORPORA),
                         default="standard", help="built-in synthetic corpus")
    p_bench.add_argument("--k", type=int, default=5)
    _add_config_flags(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--index", required=True)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8765)
    p_serve.add_argument("--static", default=None, help="directory of UI files to serve at /")
    p_serve.add_argument("--max-upload-mb", type=int, default=256)
    _add_config_flags(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IvssError as exc:
        print(f"ivss: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ivss: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
