"""Vector primitives shared by scoring and evaluation.

All math runs in float64. Embeddings are treated as immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptySetError,
    TooFewFramesError,
    ZeroVectorError,
)

NORM_EPS = 1e-12


@dataclass(eq=False)
class Embedding:
    """A single D-dimensional vector with an opaque id label."""

    values: np.ndarray
    id: str = ""
    normalized: bool = False

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("embedding must be a non-empty 1-D vector")
        if not np.all(np.isfinite(v)):
            raise ValueError("embedding contains non-finite values")
        self.values = v

    @property
    def dimension(self) -> int:
        return int(self.values.shape[0])


@dataclass(eq=False)
class EmbeddingSet:
    """Frame embeddings plus the caption embedding for one video.

    `frames` follows manifest order (ascending frame index). When
    `frame_indices` is omitted, positions 0..T-1 are used.
    """

    frames: list[Embedding]
    caption: Embedding
    frame_indices: list[int] | None = None
    video_id: str = ""

    def __post_init__(self) -> None:
        dims = {f.dimension for f in self.frames}
        dims.add(self.caption.dimension)
        if len(dims) > 1:
            raise DimensionMismatchError(f"mixed dimensions in embedding set: {sorted(dims)}")
        if self.frame_indices is not None:
            if len(self.frame_indices) != len(self.frames):
                raise ValueError("frame_indices must align one-to-one with frames")
            if any(b <= a for a, b in zip(self.frame_indices, self.frame_indices[1:])):
                raise ValueError("frame_indices must be strictly increasing")

    @property
    def dimension(self) -> int:
        return self.caption.dimension

    def indices(self) -> list[int]:
        if self.frame_indices is not None:
            return list(self.frame_indices)
        return list(range(len(self.frames)))


def l2_normalize(v: np.ndarray, id: str = "") -> Embedding:
    """Scale `v` to unit L2 norm, preserving direction.

    Raises ZeroVectorError when the norm is at or below 1e-12.
    """
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("expected a non-empty 1-D vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector contains non-finite values")
    norm = float(np.linalg.norm(arr))
    if norm <= NORM_EPS:
        raise ZeroVectorError(f"cannot normalize vector with norm {norm!r}")
    return Embedding(arr / norm, id=id, normalized=True)


def cosine(a: Embedding, b: Embedding) -> float:
    """Cosine similarity of two unit vectors, clamped to [-1, 1]."""
    if a.dimension != b.dimension:
        raise DimensionMismatchError(f"dimensions differ: {a.dimension} vs {b.dimension}")
    # clamp kills the occasional 1 + 1e-16 from rounding
    return float(np.clip(a.values @ b.values, -1.0, 1.0))


def mean_pool(frames: list[Embedding], id: str = "") -> Embedding:
    """Component-wise mean of unit vectors, re-normalized to unit length."""
    if not frames:
        raise EmptySetError("cannot pool an empty frame list")
    dims = {f.dimension for f in frames}
    if len(dims) > 1:
        raise DimensionMismatchError(f"mixed dimensions: {sorted(dims)}")
    mean = np.mean(np.stack([f.values for f in frames]), axis=0)
    return l2_normalize(mean, id=id)


def leave_one_out_pool(frames: list[Embedding], i: int) -> Embedding:
    """mean_pool of `frames` with element `i` removed."""
    if len(frames) < 2:
        raise TooFewFramesError("leave-one-out pooling needs at least two frames")
    if not 0 <= i < len(frames):
        raise IndexError(f"index {i} out of range for {len(frames)} frames")
    return mean_pool(frames[:i] + frames[i + 1 :])
