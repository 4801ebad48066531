class ExportError(Exception):
    """Base class for exporter failures."""


class MissingCaptionError(ExportError, ValueError):
    """A manifest video has no caption line (or more than one)."""


class ModelLoadError(ExportError):
    """The requested checkpoint could not be loaded."""


class DecodeError(ExportError):
    """A manifest frame image could not be decoded."""


class ManifestFormatError(ExportError, ValueError):
    """Manifest or captions file violates its schema."""
