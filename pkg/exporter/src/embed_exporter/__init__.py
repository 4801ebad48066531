"""embed_exporter: produce KSEC embedding containers from frame manifests.

Backends: a deterministic mock (hash-seeded Gaussian vectors, for CI and
format cross-checks) and any CLIP-compatible checkpoint via transformers.
"""

from .container import caption_key, frame_key, read_container, write_container
from .jobs import ExportJob, load_captions, load_frame_refs
from .mock import export_mock, mock_vector
from .model import export_model

__version__ = "0.1.0"

__all__ = [
    "ExportJob",
    "caption_key",
    "export_mock",
    "export_model",
    "frame_key",
    "load_captions",
    "load_frame_refs",
    "mock_vector",
    "read_container",
    "write_container",
]
