"""ivss: query-by-clip video search over color features of key frames.

Videos are split into shots by color-content change, one or more key frames
are picked per shot by average-RGB clustering, and each key frame is
described by five color features (average RGB, global and local color
histograms, color moments, and the color coherence vector).  Search ranks
indexed videos by a user-weighted combination of the per-descriptor
distances.
"""

from .color_core import ColorQuantizer, Histogram, build_histogram
from .config import ExtractionConfig, IndexConfig
from .descriptors import (
    CCV,
    DESCRIPTOR_NAMES,
    GCH,
    LCH,
    AvgRGB,
    DescriptorSet,
    Moments,
    compute_avg_rgb,
    compute_ccv,
    compute_gch,
    compute_lch,
    compute_moments,
    dist_avg_rgb,
    dist_ccv,
    dist_gch,
    dist_lch,
    dist_moments,
    extract_all,
)
from .errors import (
    ConfigError,
    ConfigMismatchError,
    DimensionMismatchError,
    EmptyFrameError,
    EmptyIndexError,
    EmptySourceError,
    GapWarning,
    IvssError,
    ParseError,
    TruncatedError,
    UnsupportedError,
    VersionError,
)
from .frame_io import (
    FrameRGB,
    FrameSource,
    frames_source,
    load_ppm,
    open_frame_dir,
    open_raw_stream,
    open_source,
    write_ppm,
    write_raw_stream,
)
from .index_store import FeatureIndex, VideoRecord, load, register_video, save
from .keyframes import KeyFrame, Scene, Shot, detect_shots, extract_keyframes, group_scenes
from .retrieval import (
    MatchPair,
    QueryResult,
    RankedMatch,
    compare_pair,
    format_results,
    parse_results,
    query_by_clip,
)
from .similarity import (
    FeatureSelection,
    NormalizerProfile,
    all_descriptors,
    default_normalizer,
    format_selection,
    integrated_distance,
    parse_selection,
)

__version__ = "0.1.0"
