"""Engine configuration shared by descriptor extraction and the index."""

from __future__ import annotations

from dataclasses import dataclass

from .color_core import ColorQuantizer
from .errors import ConfigError

DEFAULT_BITS = 2
DEFAULT_GRID = (2, 2)
DEFAULT_TAU = 0.01
DEFAULT_SHOT_THRESHOLD = 0.35
DEFAULT_CLUSTER_DELTA = 25.0


@dataclass(frozen=True)
class ExtractionConfig:
    """Parameters every descriptor of one index is computed under."""

    bits: int = DEFAULT_BITS
    grid_rows: int = DEFAULT_GRID[0]
    grid_cols: int = DEFAULT_GRID[1]
    tau: float = DEFAULT_TAU

    def __post_init__(self) -> None:
        if self.grid_rows < 1 or self.grid_cols < 1:
            raise ConfigError("grid dimensions must be >= 1")
        if not 0.0 < self.tau <= 1.0:
            raise ConfigError(f"tau must lie in (0, 1], got {self.tau}")
        ColorQuantizer(self.bits)  # validates bits

    @property
    def quantizer(self) -> ColorQuantizer:
        return ColorQuantizer(self.bits)

    @property
    def block_count(self) -> int:
        return self.grid_rows * self.grid_cols


@dataclass(frozen=True)
class IndexConfig:
    """Full pipeline configuration persisted with a feature index."""

    bits: int = DEFAULT_BITS
    grid_rows: int = DEFAULT_GRID[0]
    grid_cols: int = DEFAULT_GRID[1]
    tau: float = DEFAULT_TAU
    shot_threshold: float = DEFAULT_SHOT_THRESHOLD
    cluster_delta: float = DEFAULT_CLUSTER_DELTA

    def __post_init__(self) -> None:
        self.extraction()  # validates bits/grid/tau
        if self.shot_threshold <= 0:
            raise ConfigError("shot_threshold must be > 0")
        if self.cluster_delta < 0:
            raise ConfigError("cluster_delta must be >= 0")

    def extraction(self) -> ExtractionConfig:
        return ExtractionConfig(
            bits=self.bits,
            grid_rows=self.grid_rows,
            grid_cols=self.grid_cols,
            tau=self.tau,
        )
