"""Combining per-descriptor distances into one integrated distance.

The five descriptors live on incomparable scales (a GCH distance tops out at
sqrt(2), a moments distance at hundreds), so raw distances are first divided
by per-descriptor normalization scales, then averaged under the user's
weights.  With a single enabled descriptor at unit weight and scale this
reduces to the raw descriptor distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import ExtractionConfig
from .descriptors import DESCRIPTOR_NAMES, DescriptorSet, descriptor_distance
from .errors import ConfigError, ConfigMismatchError


@dataclass(frozen=True)
class FeatureSelection:
    """Which descriptors take part in a search, and with what weights."""

    enabled: tuple[str, ...]
    weights: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.enabled:
            raise ConfigError("at least one descriptor must be enabled")
        seen = set()
        for name in self.enabled:
            if name not in DESCRIPTOR_NAMES:
                raise ConfigError(f"unknown descriptor {name!r}")
            if name in seen:
                raise ConfigError(f"descriptor {name!r} listed twice")
            seen.add(name)
        # Canonical order and a weight for every enabled descriptor.
        ordered = tuple(n for n in DESCRIPTOR_NAMES if n in seen)
        weights = {n: float(self.weights.get(n, 1.0)) for n in ordered}
        for n, w in weights.items():
            if w < 0:
                raise ConfigError(f"negative weight for {n}: {w}")
        if sum(weights.values()) <= 0:
            raise ConfigError("weights must not all be zero")
        object.__setattr__(self, "enabled", ordered)
        object.__setattr__(self, "weights", weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FeatureSelection):
            return NotImplemented
        return self.enabled == other.enabled and self.weights == other.weights

    def __hash__(self):
        return hash((self.enabled, tuple(sorted(self.weights.items()))))


def all_descriptors() -> FeatureSelection:
    return FeatureSelection(enabled=DESCRIPTOR_NAMES)


def parse_selection(text: str) -> FeatureSelection:
    """Parse the flat ``gch:1.0,ccv:2.0`` form (weight defaults to 1)."""
    enabled = []
    weights = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, weight = part.partition(":")
        name = name.strip()
        enabled.append(name)
        if weight:
            try:
                weights[name] = float(weight)
            except ValueError:
                raise ConfigError(f"bad weight {weight!r} for {name!r}") from None
    if not enabled:
        raise ConfigError(f"empty selection {text!r}")
    return FeatureSelection(enabled=tuple(enabled), weights=weights)


def format_selection(sel: FeatureSelection) -> str:
    return ",".join(f"{n}:{sel.weights[n]!r}" for n in sel.enabled)


@dataclass(frozen=True)
class NormalizerProfile:
    """Per-descriptor distance divisors making raw distances commensurable."""

    scale: dict[str, float]

    def __post_init__(self) -> None:
        for name, s in self.scale.items():
            if name not in DESCRIPTOR_NAMES:
                raise ConfigError(f"unknown descriptor {name!r}")
            if s <= 0:
                raise ConfigError(f"scale for {name} must be > 0, got {s}")


# Analytic distance upper bounds under the default weights:
#   gch     L2 of two probability vectors       <= sqrt(2)
#   lch     M blocks, each <= sqrt(2)           <= M * sqrt(2)
#   ccv     L1 of two unit-mass splits          <= 2
#   avg_rgb diagonal of the RGB cube            <= 255 * sqrt(3)
#   moments per channel |dE| <= 255, |dsigma| <= 127.5, |ds| <= 255
def default_normalizer(config: ExtractionConfig) -> NormalizerProfile:
    sigma_max = 0.5 * 255.0
    return NormalizerProfile(
        scale={
            "avg_rgb": 255.0 * math.sqrt(3.0),
            "gch": math.sqrt(2.0),
            "lch": config.block_count * math.sqrt(2.0),
            "moments": 3.0 * (255.0 + sigma_max + 255.0),
            "ccv": 2.0,
        }
    )


def integrated_distance(
    a: DescriptorSet,
    b: DescriptorSet,
    sel: FeatureSelection,
    norm: NormalizerProfile,
) -> float:
    """Weighted mean of normalized per-descriptor distances.

    Weights are normalized by their sum, so scaling all weights by a common
    positive factor changes nothing (and in particular changes no ranking).
    """
    if a.config != b.config:
        raise ConfigMismatchError(
            f"descriptor sets built under different configs: {a.config} vs {b.config}"
        )
    num = 0.0
    den = 0.0
    for name in sel.enabled:
        w = sel.weights[name]
        if w == 0.0:
            continue
        num += w * (descriptor_distance(name, a, b) / norm.scale[name])
        den += w
    return num / den
