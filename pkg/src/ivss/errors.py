"""Exception types shared across the ivss package."""


class IvssError(Exception):
    """Base class for all ivss errors."""


class ParseError(IvssError):
    """Input bytes do not match the expected format."""


class TruncatedError(IvssError):
    """Input ended before the declared payload was complete."""


class UnsupportedError(IvssError):
    """The format variant is valid but not supported."""


class EmptySourceError(IvssError):
    """A frame source yielded no frames."""


class DimensionMismatchError(IvssError):
    """Frames in one source do not share a single width and height."""


class EmptyFrameError(IvssError):
    """A frame with zero pixels reached a pixel-level operation."""


class ConfigError(IvssError):
    """A configuration value is out of its legal range."""


class ConfigMismatchError(IvssError):
    """Two values built under different configurations were combined."""


class EmptyIndexError(IvssError):
    """A query was issued against an index with no registered videos."""


class VersionError(IvssError):
    """A persisted file was written by an incompatible format version."""


class GapWarning(UserWarning):
    """Frame indices in a directory source are not contiguous."""
