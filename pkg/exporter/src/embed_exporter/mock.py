"""Deterministic mock embedder.

Each vector is derived from a stable key: SHA-256 of the key seeds a PCG64
generator, one Gaussian sample per component, then L2 normalization. The
chain is fixed so containers are byte-identical across runs and hosts, and
simple enough to re-derive in another language when cross-checking the
container format.

Frame vectors key on "{video_id}#{frame_index}"; caption vectors key on the
caption text itself, so verbatim-identical captions share a vector.
"""

from __future__ import annotations

import hashlib

import numpy as np

from . import container
from .jobs import ExportJob


def mock_vector(key: str, dim: int) -> np.ndarray:
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    seed = int.from_bytes(digest[:8], "little")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim)
    return (v / np.linalg.norm(v)).astype(np.float32)


def export_mock(job: ExportJob) -> tuple[str, str]:
    """Write frame and caption containers; returns the two output paths."""
    if job.backend != "mock":
        raise ValueError(f"export_mock called with backend {job.backend!r}")
    job.load()

    frame_ids = [container.frame_key(ref.video_id, ref.frame_index) for ref in job.frames]
    frame_vectors = [mock_vector(fid, job.dimension) for fid in frame_ids]
    container.write_container(frame_ids, frame_vectors, job.out_frames)

    text_ids = [container.caption_key(vid) for vid in job.video_ids]
    text_vectors = [mock_vector(job.captions[vid], job.dimension) for vid in job.video_ids]
    container.write_container(text_ids, text_vectors, job.out_texts)
    return job.out_frames, job.out_texts
